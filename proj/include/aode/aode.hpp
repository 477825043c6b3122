#pragma once

// Umbrella header: the whole library.

#include "aode/number.hpp"
#include "aode/upoly.hpp"
#include "aode/factor.hpp"
#include "aode/ratfunc.hpp"
#include "aode/mpoly.hpp"
#include "aode/diffpoly.hpp"
#include "aode/heights.hpp"
#include "aode/lazy_magnitude.hpp"
#include "aode/bounds.hpp"
#include "aode/transform.hpp"
#include "aode/groebner.hpp"
#include "aode/modular.hpp"
#include "aode/solver.hpp"
#include "aode/testgen.hpp"
#include "aode/parser.hpp"
#include "aode/pipeline.hpp"
