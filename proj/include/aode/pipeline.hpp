#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "aode/bounds.hpp"
#include "aode/parser.hpp"
#include "aode/solver.hpp"
#include "aode/transform.hpp"

namespace aode {

/// How far the pipeline runs.
enum class PipelineStage { Classify, Bound, Solve };

inline std::string to_string(PipelineStage s) {
  switch (s) {
    case PipelineStage::Classify: return "classify";
    case PipelineStage::Bound: return "bound";
    default: return "solve";
  }
}

struct PipelineOptions {
  PipelineStage stage = PipelineStage::Solve;
  long bound_cap = 25;
  std::uint64_t seed = 0;
  bool show_transform = false;
  long digit_threshold = kDefaultDigitThreshold;
  SolverConfig solver;
};

struct BoundReport {
  std::string tag;
  std::string formula;
  LazyMagnitude value;       // floor of the bound
  std::optional<Rat> exact;  // rational value of the linear bounds
};

struct TransformReport {
  MobiusMap map;
  std::string equation;  // the transformed equation in (t, z, z')
  std::vector<InvariantCheck> checks;
};

struct SolutionReport {
  RatFunc value;
  int degree = 0;
  bool verified = false;
};

struct Report {
  PipelineStage stage = PipelineStage::Solve;
  DiffPoly f;  // normalized
  std::string equation;
  std::string normalized;
  int deg_t = 0;
  Classification classification;
  std::vector<BoundReport> bounds;  // empty when not computed or none applies
  std::optional<BoundReport> chosen;
  long cap = 0;
  long effective_bound = 0;
  bool truncated = false;
  std::optional<TransformReport> transform;
  bool solved = false;
  ConstantSolutions constants;
  std::vector<SolutionReport> solutions;
  std::vector<SolutionFamily> families;
  bool budget_exhausted = false;
  bool incomplete = false;
  std::vector<std::string> warnings;
  double timing_ms = 0;

  /// The solver ran out of budget and found nothing.
  bool exhausted_without_results() const {
    return solved && budget_exhausted && solutions.empty() && families.empty();
  }
};

namespace detail::report {

/// "(dp,dq), ..." for the selected passes, shortened after the first few.
inline std::string pass_list(const std::vector<PassSummary>& passes, bool (*select)(const PassSummary&)) {
  constexpr std::size_t kShown = 6;
  std::string out;
  std::size_t n = 0;
  for (const auto& p : passes) {
    if (!select(p)) continue;
    if (n++ < kShown) out += (out.empty() ? "" : ", ") + ("(" + std::to_string(p.dp) + "," + std::to_string(p.dq) + ")");
  }
  if (n > kShown) out += " and " + std::to_string(n - kShown) + " more";
  return out;
}

}  // namespace detail::report

/// normalize, check irreducibility, classify, bound, transform, solve and verify.
inline Report run_pipeline(const EquationSource& src, const PipelineOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::require_order(src.parsed, "run_pipeline");
  Report rep;
  rep.stage = options.stage;
  rep.warnings = src.warnings;
  rep.equation = print_equation(src.parsed);
  rep.f = normalize(src.parsed);
  rep.normalized = print_equation(rep.f);
  rep.deg_t = rep.f.poly().degree_in(kT);
  rep.classification = classify(rep.f, options.seed);
  const Classification& c = rep.classification;
  switch (c.irreducibility.status) {
    case IrreducibilityStatus::Irreducible: break;
    case IrreducibilityStatus::Reducible:
      rep.warnings.push_back("the equation is reducible" +
                             (c.irreducibility.witness ? " (factor " + to_string(*c.irreducibility.witness) + ")"
                                                       : std::string()) +
                             "; the degree bounds assume an irreducible equation");
      break;
    default:
      rep.warnings.push_back("irreducibility could not be decided; the degree bounds assume an irreducible equation");
  }

  std::optional<LazyMagnitude> degree_bound;
  if (options.stage != PipelineStage::Classify) {
    try {
      const BestBound best = best_bound(rep.f, c, options.digit_threshold);
      for (const auto& e : best.entries) {
        rep.bounds.push_back({to_string(e.kind), describe(e.kind), e.value, e.exact});
        if (e.kind == best.kind) rep.chosen = rep.bounds.back();
      }
      degree_bound = best.value;
      if (best.undecided) rep.warnings.push_back("some bound comparisons exceeded the digit threshold");
    } catch (const NoApplicableBound& e) {
      rep.warnings.push_back(std::string(e.what()) + "; the search is limited to the cap");
    }
    if (options.show_transform && c.index > 0) {
      const ReductionResult red = mobius_reduce(rep.f);
      rep.transform = TransformReport{red.map, to_string(red.normalized, kTransformedNames), red.checks};
      // g is irreducible whenever f is; the probe only flags a disagreement, it does not override
      if (c.irreducibility.status == IrreducibilityStatus::Irreducible &&
          irreducibility_check(red.normalized, options.seed).status == IrreducibilityStatus::Reducible)
        rep.warnings.push_back("the transformed equation tested reducible although the equation is irreducible");
    }
  }

  rep.cap = options.bound_cap;
  if (options.stage == PipelineStage::Solve) {
    SolverConfig cfg = options.solver;
    cfg.seed = options.seed;
    const SolutionSet set = find_rational_solutions(rep.f, degree_bound, options.bound_cap, cfg);
    rep.solved = true;
    rep.effective_bound = set.effective_bound;
    rep.truncated = set.truncated;
    rep.constants = set.constants;
    for (const auto& r : set.rational_solutions) rep.solutions.push_back({r, ratfunc_degree(r), true});
    rep.families = set.families;
    rep.budget_exhausted = set.budget_exhausted;
    rep.incomplete = set.incomplete;
    if (set.truncated)
      rep.warnings.push_back("the search stops at degree " + std::to_string(set.effective_bound) +
                             (degree_bound ? ", below the degree bound" : ""));
    if (set.budget_exhausted)
      rep.warnings.push_back("the solver budget ran out in passes " +
                             detail::report::pass_list(set.passes, [](const PassSummary& p) {
                               return p.outcome == PassOutcome::BudgetExceeded;
                             }) +
                             "; solutions of those shapes may be missing");
    const auto unresolved = [](const PassSummary& p) { return !p.complete && !p.oversized; };
    const auto oversized = [](const PassSummary& p) { return p.oversized; };
    if (std::any_of(set.passes.begin(), set.passes.end(), unresolved))
      rep.warnings.push_back("positive-dimensional components were not fully resolved in passes " +
                             detail::report::pass_list(set.passes, unresolved));
    if (std::any_of(set.passes.begin(), set.passes.end(), oversized))
      rep.warnings.push_back("passes with more than " + std::to_string(kMaxVars - 1) +
                             " unknowns were not searched: " + detail::report::pass_list(set.passes, oversized));
    if (set.constants.every_constant_solves()) rep.warnings.push_back("every constant solves the equation");
  } else if (degree_bound) {
    auto cmp = compare(*degree_bound, LazyMagnitude::exact(Integer(options.bound_cap)), options.digit_threshold);
    rep.truncated = !(cmp && *cmp != std::strong_ordering::greater);
    rep.effective_bound = rep.truncated ? options.bound_cap : degree_bound->exact_value().get_si();
  } else {
    rep.truncated = true;
    rep.effective_bound = options.bound_cap;
  }
  rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline Report run_pipeline(std::string_view text, const PipelineOptions& options = {}) {
  return run_pipeline(parse_equation(text), options);
}

enum class ReportFormat { Text, Json };

namespace detail::report {

using Json = nlohmann::ordered_json;

/// A number when it fits in 64 bits, otherwise its decimal string.
inline Json integer_json(const Integer& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return Json(n.get_si());
  return Json(n.get_str());
}

inline Json magnitude_json(const LazyMagnitude& v, long digit_threshold) {
  if (auto n = v.materialize(digit_threshold)) return integer_json(*n);
  const auto& tw = v.tower_value();
  const DigitBracket digits = v.digit_bracket();
  Json out{{"coeff", integer_json(tw.coeff)},
           {"base", integer_json(tw.base)},
           {"exponent", integer_json(tw.exponent)},
           {"digits_lo", integer_json(digits.lo)},
           {"digits_hi", integer_json(digits.hi)}};
  if (sgn(tw.addend) > 0) out["addend"] = integer_json(tw.addend);
  return out;
}

inline bool is_tower(const LazyMagnitude& v, long digit_threshold) { return !v.materialize(digit_threshold); }

inline Json bound_json(const BoundReport& b, long digit_threshold) {
  Json out{{"tag", b.tag}, {"kind", is_tower(b.value, digit_threshold) ? "tower" : "exact"}};
  out["value"] = magnitude_json(b.value, digit_threshold);
  if (b.exact) out["rational"] = b.exact->get_str();
  out["formula"] = b.formula;
  return out;
}

inline std::string magnitude_text(const LazyMagnitude& v, long digit_threshold) {
  if (auto n = v.materialize(digit_threshold)) return n->get_str();
  const DigitBracket d = v.digit_bracket();
  return v.to_string(digit_threshold) + " (between " + d.lo.get_str() + " and " + d.hi.get_str() + " digits)";
}

}  // namespace detail::report

/// Renders a report. Every solution is verified again against the equation at this point.
inline std::string emit_report(const Report& r, ReportFormat format, long digit_threshold = kDefaultDigitThreshold) {
  using detail::report::Json;
  const Classification& c = r.classification;
  std::vector<bool> verified;
  for (const auto& s : r.solutions) verified.push_back(verify_solution(r.f, s.value));

  if (format == ReportFormat::Json) {
    Json j;
    j["mode"] = to_string(r.stage);
    j["equation"] = r.equation;
    j["normalized"] = r.normalized;
    j["degrees"] = Json{{"t", r.deg_t}, {"y", c.deg_y}, {"yp", c.deg_yp}, {"tdeg_yyp", c.total_degree}};
    j["height"] = detail::report::integer_json(c.height);
    j["msindex"] = c.index;
    j["maximally_comparable"] = c.maximally_comparable;
    j["irreducibility"] = to_string(c.irreducibility.status);
    Json bounds = Json::array();
    for (const auto& b : r.bounds) bounds.push_back(detail::report::bound_json(b, digit_threshold));
    j["bounds"] = bounds;
    j["chosen_bound"] = r.chosen ? detail::report::magnitude_json(r.chosen->value, digit_threshold) : Json(nullptr);
    j["chosen_tag"] = r.chosen ? Json(r.chosen->tag) : Json(nullptr);
    j["cap"] = r.cap;
    j["effective_bound"] = r.effective_bound;
    j["truncated"] = r.truncated;
    if (r.transform) {
      Json checks = Json::array();
      for (const auto& ch : r.transform->checks) checks.push_back(Json{{"name", ch.name}, {"holds", ch.holds}});
      j["transform"] = Json{{"kind", to_string(r.transform->map.kind)},
                            {"c", r.transform->map.c.get_str()},
                            {"equation", r.transform->equation},
                            {"checks", checks}};
    } else {
      j["transform"] = nullptr;
    }
    if (r.solved) {
      Json roots = Json::array();
      for (const auto& x : r.constants.rational_roots) roots.push_back(x.get_str());
      j["constant_variety"] = Json{{"poly", to_string(r.constants.variety, "c")}, {"rational_roots", roots}};
      Json sols = Json::array();
      for (std::size_t i = 0; i < r.solutions.size(); ++i)
        sols.push_back(Json{{"expr", to_string(r.solutions[i].value)},
                            {"degree", r.solutions[i].degree},
                            {"verified", static_cast<bool>(verified[i])}});
      j["solutions"] = sols;
      Json fams = Json::array();
      for (const auto& fam : r.families) {
        Json fj{{"expr", fam.expression()},
                {"parameter", fam.parametrized ? Json("c") : Json(nullptr)},
                {"representative", to_string(fam.representative)},
                {"representative_verified", verify_solution(r.f, fam.representative)}};
        if (!fam.parametrized) fj["basis"] = fam.basis;
        fams.push_back(fj);
      }
      j["families"] = fams;
      j["budget_exhausted"] = r.budget_exhausted;
      j["incomplete"] = r.incomplete;
    } else {
      j["constant_variety"] = nullptr;
      j["solutions"] = nullptr;
      j["families"] = nullptr;
    }
    j["warnings"] = r.warnings;
    j["timing_ms"] = r.timing_ms;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "equation:        " << r.equation << "\n";
  out << "normalized:      " << r.normalized << "\n";
  out << "degrees:         t " << r.deg_t << ", y " << c.deg_y << ", y' " << c.deg_yp << ", total in (y, y') "
      << c.total_degree << "\n";
  out << "height:          " << c.height.get_str() << "\n";
  out << "msindex:         " << c.index << "\n";
  out << "max. comparable: " << (c.maximally_comparable ? "yes" : "no") << "\n";
  out << "irreducibility:  " << to_string(c.irreducibility.status) << "\n";
  if (r.stage != PipelineStage::Classify) {
    out << "bounds:\n";
    if (r.bounds.empty()) out << "  (none applies)\n";
    for (const auto& b : r.bounds)
      out << "  " << b.tag << ": " << detail::report::magnitude_text(b.value, digit_threshold) << "   [" << b.formula
          << "]\n";
    out << "chosen bound:    "
        << (r.chosen ? detail::report::magnitude_text(r.chosen->value, digit_threshold) + " (" + r.chosen->tag + ")"
                     : std::string("none"))
        << "\n";
  }
  if (r.stage != PipelineStage::Classify)
    out << "cap:             " << r.cap << (r.truncated ? " (search truncated)" : "") << "\n";
  if (r.transform) {
    out << "transform:       " << to_string(r.transform->map.kind) << ", y = "
        << (r.transform->map.kind == MobiusMap::Kind::Invert ? std::string("1/z")
                                                              : "(" + r.transform->map.c.get_str() + "*z + 1)/z")
        << "\n";
    out << "  g = " << r.transform->equation << "\n";
    for (const auto& ch : r.transform->checks) out << "  " << (ch.holds ? "ok   " : "FAIL ") << ch.name << "\n";
  }
  if (r.solved) {
    out << "constant variety: " << to_string(r.constants.variety, "c");
    if (!r.constants.rational_roots.empty()) {
      out << "  rational roots:";
      for (const auto& x : r.constants.rational_roots) out << " " << x.get_str();
    }
    out << "\n";
    out << "rational solutions (degree <= " << r.effective_bound << "):\n";
    if (r.solutions.empty()) out << "  none\n";
    for (std::size_t i = 0; i < r.solutions.size(); ++i)
      out << "  " << to_string(r.solutions[i].value) << "   degree " << r.solutions[i].degree
          << (verified[i] ? ", verified" : ", NOT verified") << "\n";
    if (!r.families.empty()) out << "families:\n";
    for (const auto& fam : r.families) {
      if (fam.parametrized) {
        out << "  " << fam.expression() << "   parameter c, e.g. " << to_string(fam.representative) << "\n";
      } else {
        out << "  positive-dimensional component through " << to_string(fam.representative) << ", equations:\n";
        for (const auto& b : fam.basis) out << "    " << b << "\n";
      }
    }
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  out << "time:            " << static_cast<long>(r.timing_ms) << " ms\n";
  return out.str();
}

}  // namespace aode
