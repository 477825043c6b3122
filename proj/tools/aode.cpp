// Command line front end: solve, classify and bound first-order algebraic ODEs.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aode/aode.hpp"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kParse = 2, kOrder = 3, kBudget = 4 };

struct CommonOptions {
  std::string input;
  long cap = 25;
  bool json = false;
  std::uint64_t seed = 0;
  bool show_transform = false;
  long digit_threshold = aode::kDefaultDigitThreshold;
};

// "@path" reads a file, "-" reads standard input, anything else is the equation itself.
std::string read_input(const std::string& arg) {
  auto slurp = [](std::istream& in) { return std::string(std::istreambuf_iterator<char>(in), {}); };
  std::string text;
  if (arg == "-") {
    text = slurp(std::cin);
  } else if (!arg.empty() && arg[0] == '@') {
    std::ifstream file(arg.substr(1));
    if (!file) throw aode::Error("cannot read " + arg.substr(1));
    text = slurp(file);
  } else {
    return arg;
  }
  // lines starting with '#' are comments; the remaining lines form one equation
  std::istringstream lines(text);
  std::string line, out;
  while (std::getline(lines, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos && line[line.find_first_not_of(" \t\r")] != '#')
      out += line + " ";
  return out;
}

int run(aode::PipelineStage stage, const CommonOptions& o) {
  aode::EquationSource src;
  try {
    src = aode::parse_equation(read_input(o.input));
  } catch (const aode::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  }
  if (src.parsed.is_zero() || !src.parsed.poly().uses_var(aode::kYP)) {
    std::cerr << "order error: the equation does not involve y'\n";
    return kOrder;
  }
  aode::PipelineOptions opts;
  opts.stage = stage;
  opts.bound_cap = o.cap;
  opts.seed = o.seed;
  opts.show_transform = o.show_transform;
  opts.digit_threshold = o.digit_threshold;
  const aode::Report report = aode::run_pipeline(src, opts);
  std::cout << aode::emit_report(report, o.json ? aode::ReportFormat::Json : aode::ReportFormat::Text,
                                 o.digit_threshold);
  return report.exhausted_without_results() ? kBudget : kOk;
}

struct GenOptions {
  int count = 10;
  std::uint64_t seed = 0;
  int max_degree = 4;
  int msindex = 0;
  int yp_degree = 1;
  int height = 1;
  bool json = false;
};

// Planted-solution equations, or equations of prescribed msindex when --msindex is positive.
int generate(const GenOptions& g) {
  nlohmann::ordered_json corpus = nlohmann::ordered_json::array();
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<int> degree(1, std::max(1, g.max_degree));
  for (int i = 0; i < g.count; ++i) {
    const std::uint64_t seed = g.seed * 1000u + static_cast<std::uint64_t>(i);
    nlohmann::ordered_json item;
    if (g.msindex > 0) {
      const aode::DiffPoly f = aode::testgen::random_with_msindex(g.yp_degree, g.msindex, g.height, seed);
      item["equation"] = aode::print_equation(f);
    } else {
      const aode::RatFunc r = aode::testgen::random_ratfunc_of_degree(rng, degree(rng), 3);
      const aode::DiffPoly f = aode::testgen::plant_equation({r, {1, 1, 1}, seed});
      item["equation"] = aode::print_equation(f);
      item["solution"] = aode::to_string(r);
    }
    if (g.json) {
      corpus.push_back(item);
    } else {
      std::cout << item["equation"].get<std::string>();
      if (item.contains("solution")) std::cout << "    # solution " << item["solution"].get<std::string>();
      std::cout << "\n";
    }
  }
  if (g.json) std::cout << corpus.dump(2) << "\n";
  return kOk;
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("equation", o.input, "equation in t, y and y', or @file, or - for standard input")->required();
  cmd->add_option("--cap", o.cap, "largest solution degree searched")->check(CLI::NonNegativeNumber);
  cmd->add_flag("--json", o.json, "print the report as JSON");
  cmd->add_option("--seed", o.seed, "seed for the randomized steps");
  cmd->add_flag("--show-transform", o.show_transform, "include the reduction of positive-index equations");
  cmd->add_option("--digit-threshold", o.digit_threshold, "largest number of digits printed in full")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational solutions of first-order algebraic ODEs f(t, y, y') = 0"};
  app.require_subcommand(1);
  CommonOptions solve_opts, classify_opts, bound_opts;
  GenOptions gen_opts;
  auto* solve = app.add_subcommand("solve", "classify, bound and list the rational solutions");
  auto* classify = app.add_subcommand("classify", "degrees, index and irreducibility only");
  auto* bound = app.add_subcommand("bound", "classification and degree bounds, without solving");
  auto* gen = app.add_subcommand("gen", "");  // hidden: the empty description keeps it out of --help
  add_common(solve, solve_opts);
  add_common(classify, classify_opts);
  add_common(bound, bound_opts);
  gen->group("");
  gen->add_option("--count", gen_opts.count)->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_opts.seed);
  gen->add_option("--max-degree", gen_opts.max_degree)->check(CLI::PositiveNumber);
  gen->add_option("--msindex", gen_opts.msindex)->check(CLI::NonNegativeNumber);
  gen->add_option("--yp-degree", gen_opts.yp_degree)->check(CLI::PositiveNumber);
  gen->add_option("--height", gen_opts.height)->check(CLI::NonNegativeNumber);
  gen->add_flag("--json", gen_opts.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (*solve) return run(aode::PipelineStage::Solve, solve_opts);
    if (*classify) return run(aode::PipelineStage::Classify, classify_opts);
    if (*bound) return run(aode::PipelineStage::Bound, bound_opts);
    return generate(gen_opts);
  } catch (const aode::OrderError& e) {
    std::cerr << e.what() << "\n";
    return kOrder;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
