// homcheck: decide whether a unital completely positive map between
// finite-dimensional C*-algebras is a *-homomorphism.
//
// Exit codes:
//   0  homomorphism          (analyze), all properties pass (verify), success
//   1  not a homomorphism    (analyze), some property fails (verify)
//   2  indeterminate         (analyze)
//   3  map is not unital CP
//   4  unreadable input or invalid arguments
//   5  internal inconsistency between criteria

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "homcheck/homcheck.hpp"

namespace {

using namespace homcheck;

constexpr int kExitNotUcp = 3;
constexpr int kExitBadInput = 4;
constexpr int kExitInternal = 5;

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      sizes.push_back(n);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad block list \"" + text + "\"");
    }
  }
  if (sizes.empty()) throw Error(ErrorKind::ParseError, "empty block list");
  return sizes;
}

Algebra parse_blocks(const std::string& text) { return Algebra(parse_ints(text)); }

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

struct AnalyzeArgs {
  std::string mapfile;
  std::optional<double> tol;
  std::optional<double> entropy_tol;
  std::string log_base = "e";
  std::uint64_t seed = 0;
  int trials = 50;
  int k_max = 2;
  std::string output;
};

int run_analyze(const AnalyzeArgs& args) {
  const LinMap phi = linmap_from_json(read_json_file(args.mapfile));
  AnalyzeOptions o;
  o.tol = args.tol;
  o.entropy_tol = args.entropy_tol;
  o.base = LogBase::parse(args.log_base);
  o.seed = args.seed;
  o.trials = args.trials;
  o.k_max = args.k_max;
  o.source = args.mapfile;
  const AnalysisReport report = analyze(phi, o);
  emit(dump(to_json(report)), args.output);
  if (!report.consistent) std::fprintf(stderr, "homcheck: %s\n", report.inconsistency.c_str());
  return report.exit_code();
}

struct GenArgs {
  std::string kind = "ucp";
  std::string domain;
  std::string codomain;
  std::string mult;
  std::uint64_t seed = 0;
  double eps = 0.1;
  std::string output;
};

int run_gen(const GenArgs& args) {
  const Algebra a = parse_blocks(args.domain);
  const Algebra b = parse_blocks(args.codomain);
  LinMap phi = LinMap::identity(a);
  if (args.kind == "ucp") {
    std::vector<int> mult;
    if (args.mult.empty()) {
      Rng rng(Seed{args.seed}, 1);
      mult = generic_multiplicities(a, b, rng);
    } else {
      mult = parse_ints(args.mult);
    }
    phi = random_ucp(a, b, mult, Seed{args.seed});
  } else {
    phi = random_homomorphism(a, b, Seed{args.seed});
    if (args.kind == "perturbed") {
      phi = perturb_toward_scrambling(phi, args.eps, Seed{args.seed ^ 0x9e3779b97f4a7c15ULL});
    }
  }
  emit(dump(to_json(phi)), args.output);
  return 0;
}

struct VerifyArgs {
  VerifyOptions options;
};

int run_verify(const VerifyArgs& args) {
  const auto results = verify(args.options);
  bool all = true;
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %4d/%-4d worst %.3e  threshold %.1e  %s", r.name.c_str(),
                  r.passed, r.total, r.worst, r.threshold, r.ok() ? "PASS" : "FAIL");
    std::string text = line;
    if (r.first_failing_seed) text += "  (first failing seed " + std::to_string(*r.first_failing_seed) + ")";
    std::puts(text.c_str());
    all = all && r.ok();
  }
  return all ? 0 : 1;
}

struct CjArgs {
  std::string input;
  std::string adjoint;
  bool from_choi = false;
  bool dual_check = false;
  std::string domain;
  std::string codomain;
  std::optional<double> tol;
  std::string output;
};

int run_cj(const CjArgs& args) {
  const Json in = read_json_file(args.input);
  if (args.from_choi) {
    const Element c = element_from_json(in);
    emit(dump(to_json(map_from_adjusted_choi(c, parse_blocks(args.domain),
                                             parse_blocks(args.codomain)))),
         args.output);
    return 0;
  }
  const LinMap phi = linmap_from_json(in);
  if (args.dual_check) {
    const CjDualCheck c = cj_dual_check(phi, args.tol.value_or(default_tolerance(phi)));
    Json j;
    j["scaled_choi_projection_defect"] = format_defect(c.projection.defect);
    j["dual_is_homomorphism"] = c.projection.holds;
    j["conjugation_residual"] = format_defect(c.conjugation_residual);
    emit(dump(j), args.output);
    return 0;
  }
  if (args.adjoint == "dagger") {
    emit(dump(to_json(dagger_adjoint(phi))), args.output);
  } else if (args.adjoint == "ddagger") {
    emit(dump(to_json(ddagger_adjoint(phi))), args.output);
  } else {
    Json j = to_json(adjusted_choi(phi));
    j["note"] = kOpStorageNote;
    emit(dump(j), args.output);
  }
  return 0;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotUCP:
    case ErrorKind::NotTracePreserving: return kExitNotUcp;
    case ErrorKind::InternalSpectralError:
    case ErrorKind::InternalInconsistency: return kExitInternal;
    default: return kExitBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide whether a unital CP map between finite-dimensional C*-algebras is a homomorphism"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run every homomorphism criterion on a map file");
  analyze_cmd->add_option("mapfile", analyze_args.mapfile, "Map in JSON")->required();
  analyze_cmd->add_option("--tol", analyze_args.tol, "Defect tolerance (default 1e-9 sqrt(dim A dim B))");
  analyze_cmd->add_option("--entropy-tol", analyze_args.entropy_tol, "Entropy tolerance (default 1e-8 dim B)");
  analyze_cmd->add_option("--log-base", analyze_args.log_base, "Logarithm base")
      ->check(CLI::IsMember({"e", "2", "10"}));
  analyze_cmd->add_option("--seed", analyze_args.seed, "Refuter seed");
  analyze_cmd->add_option("--trials", analyze_args.trials, "Refuter trials (0 disables)")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--k-max", analyze_args.k_max, "Largest ancilla size for the refuter")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("-o,--output", analyze_args.output, "Report file (default stdout)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random map");
  gen_cmd->add_option("--kind", gen_args.kind, "ucp, hom or perturbed")
      ->check(CLI::IsMember({"ucp", "hom", "perturbed"}));
  gen_cmd->add_option("--domain", gen_args.domain, "Domain block sizes, e.g. 2,3")->required();
  gen_cmd->add_option("--codomain", gen_args.codomain, "Codomain block sizes")->required();
  gen_cmd->add_option("--mult", gen_args.mult, "Stinespring multiplicities per domain block (ucp)");
  gen_cmd->add_option("--seed", gen_args.seed, "Generator seed");
  gen_cmd->add_option("--eps", gen_args.eps, "Perturbation weight (perturbed)")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("-o,--output", gen_args.output, "Map file (default stdout)");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suites");
  verify_cmd->add_option("--seeds", verify_args.options.seeds, "Number of seeds per property")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--first-seed", verify_args.options.first_seed, "First seed");
  verify_cmd->add_option("--max-dim", verify_args.options.max_dim, "Largest trace dimension of generated algebras")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trials", verify_args.options.trials, "Refuter trials per map")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--property", verify_args.options.properties, "Run only these properties");
  verify_cmd->add_flag("--poison", verify_args.options.poison, "Flip the sign of the dual map (harness self-test)");

  CjArgs cj_args;
  auto* cj_cmd = app.add_subcommand("cj", "Adjusted Choi matrix, adjoints, and channel-state duality");
  cj_cmd->add_option("input", cj_args.input, "Map file, or an element file with --from-choi")->required();
  auto* adjoint_opt = cj_cmd->add_option("--adjoint", cj_args.adjoint, "Emit the dagger or ddagger adjoint map")
                          ->check(CLI::IsMember({"dagger", "ddagger"}));
  auto* from_choi_opt = cj_cmd->add_flag("--from-choi", cj_args.from_choi, "Rebuild a map from its adjusted Choi matrix");
  auto* dual_opt = cj_cmd->add_flag("--dual-check", cj_args.dual_check,
                                    "Check the channel-state duality for a trace-preserving CP map");
  auto* domain_opt = cj_cmd->add_option("--domain", cj_args.domain, "Domain block sizes (--from-choi)");
  auto* codomain_opt = cj_cmd->add_option("--codomain", cj_args.codomain, "Codomain block sizes (--from-choi)");
  cj_cmd->add_option("--tol", cj_args.tol, "Tolerance for --dual-check");
  cj_cmd->add_option("-o,--output", cj_args.output, "Output file (default stdout)");
  adjoint_opt->excludes(from_choi_opt)->excludes(dual_opt);
  from_choi_opt->excludes(dual_opt);
  domain_opt->needs(from_choi_opt);
  codomain_opt->needs(from_choi_opt);
  from_choi_opt->needs(domain_opt)->needs(codomain_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze_args);
    if (*gen_cmd) return run_gen(gen_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*cj_cmd) return run_cj(cj_args);
  } catch (const Error& e) {
    std::fprintf(stderr, "homcheck: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "homcheck: %s\n", e.what());
    return kExitInternal;
  }
  return kExitBadInput;
}
