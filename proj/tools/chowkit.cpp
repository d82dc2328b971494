// Command-line driver: runs verification suites and writes a structured
// report (report.jsonl) and a rendered summary (summary.txt).

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chowkit/binforms.hpp"
#include "chowkit/chern.hpp"
#include "chowkit/faber.hpp"
#include "chowkit/m3bar.hpp"
#include "chowkit/report.hpp"

using namespace chowkit;

namespace {

struct Options {
  int max_N = 8;
  std::size_t budget = 0;
  std::string out = "chowkit-report";
  std::string variants = "search";
  long degree_bound = 6;
};

using Check = std::function<VerificationReport()>;

// Runs one check, timing it; budget exhaustion becomes an inconclusive report.
VerificationReport run_check(const std::string& module, const std::string& name, const Check& check) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  try {
    r = check();
  } catch (const BudgetExhausted& e) {
    r = make_report(module, name, "engine budget exhausted before a verdict");
    r.status = Status::Inconclusive;
    r.add("diagnostic", e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

class Runner {
 public:
  explicit Runner(const Options& opt) : opt_(opt) {}

  void appendix() {
    int n = opt_.max_N;
    add("binforms", "pushforward_oracle", [n] { return check_pushforward_sweep(n); });
    add("binforms", "small_diagonal", [n] { return check_small_diagonal(n); });
    add("binforms", "combinatorial_identities", [] { return check_combinatorial_identities(12, 6, 4); });
    add("binforms", "square_power", [n] { return check_square_power_range(n, 2 * n); });
    add("binforms", "affine_cone", [] { return check_affine_cone(); });
    for (auto [k, N] : two_generator_cases())
      if (N <= n) add("binforms", "two_generator_theorem", [k, N] { return verify_two_generator_theorem(k, N); });
    for (auto [k, N] : square_h_cases())
      if (N <= n)
        for (int t = 0; t < k; ++t) add("binforms", "square_h", [t, k, N] { return check_square_h(t, k, N); });
  }

  void presentation() {
    const auto& a = assignment();
    add("m3bar", "degree_audit", [this, a] { return audit_degrees(pres(), a); });
    if (searched_) {
      auto search = *searched_;
      add("m3bar", "variant_search", [search] { return search; });
    }
    add("m3bar", "open_stratum_restriction", [this, a] { return check_open_stratum_restriction(pres(), a); });
  }

  void simplify() {
    const auto& a = assignment();
    long bound = opt_.degree_bound;
    add("m3bar", "rational_simplification", [this, a, bound] { return check_rational_simplification(pres(), a, bound); });
  }

  void faber() {
    const auto& a = assignment();
    long bound = opt_.degree_bound;
    EngineOptions eo;
    eo.budget = opt_.budget;
    add("faber", "coordinate_change", [] { return check_faber_maps(); });
    add("faber", "transported_ideal", [this, a, bound, eo] {
      auto simp = rational_simplify(pres(), a, bound);
      return check_faber_comparison(simp.system.relations, bound, eo);
    });
  }

  void classes() {
    add("chern", "open_stratum_classes", [] { return check_open_stratum_classes(); });
    add("chern", "open_classes", [] {
      auto r = make_report("chern", "open_classes", "classes of the open strata in lambda1, lambda2, lambda3");
      auto rec = calibrate_lambda_convention();
      r.add("calibration", rec.to_string());
      for (int n = 2; n <= 7; ++n) r.add("A" + std::to_string(n), to_string(an_open_class(n, rec.convention)));
      r.status = Status::Pass;
      return r;
    });
  }

  ReportContext context() {
    ReportContext ctx;
    ctx.fields.emplace_back("calibration", calibrate_lambda_convention().to_string());
    ctx.fields.emplace_back("relations_sha256", pres().checksum);
    if (assignment_) ctx.fields.emplace_back("variants", assignment_id(pres(), *assignment_));
    ctx.fields.emplace_back("max_N", std::to_string(opt_.max_N));
    ctx.fields.emplace_back("degree_bound", std::to_string(opt_.degree_bound));
    ctx.fields.emplace_back("budget", std::to_string(opt_.budget));
    return ctx;
  }

  const std::vector<VerificationReport>& results() const { return results_; }

 private:
  void add(const std::string& module, const std::string& name, const Check& c) {
    results_.push_back(run_check(module, name, c));
  }

  const Presentation& pres() {
    if (!pres_) pres_ = load_presentation();
    return *pres_;
  }

  // --variants search: the first consistent assignment, or the default
  // reading when none survives (the search report then fails).
  const Assignment& assignment() {
    if (assignment_) return *assignment_;
    if (opt_.variants == "search") {
      auto s = search_variants(pres(), opt_.degree_bound);
      searched_ = s.report;
      assignment_ = s.surviving.empty() ? default_assignment(pres()) : s.candidates[s.surviving.front()].assignment;
    } else {
      assignment_ = parse_assignment(pres(), opt_.variants.substr(std::string("fixed:").size()));
    }
    return *assignment_;
  }

  Options opt_;
  std::optional<Presentation> pres_;
  std::optional<Assignment> assignment_;
  std::optional<VerificationReport> searched_;
  std::vector<VerificationReport> results_;
};

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact verification of Chow ring relations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--max-N", opt.max_N, "largest N in the appendix sweeps")->check(CLI::Range(2, 12));
  app.add_option("--budget", opt.budget, "reduction step budget for Groebner computations (0: unlimited)");
  app.add_option("--out", opt.out, "output directory for report.jsonl and summary.txt");
  app.add_option("--variants", opt.variants, "search, or fixed:<assignment id>")
      ->check([](const std::string& v) {
        return v == "search" || v.rfind("fixed:", 0) == 0 ? std::string() : std::string("expected search or fixed:<id>");
      });
  app.add_option("--degree-bound", opt.degree_bound, "degree bound for minimal generators and Hilbert functions")
      ->check(CLI::Range(4, 10));

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* v_appendix = verify->add_subcommand("appendix", "pushforward sweep and binary-form identities");
  auto* v_pres = verify->add_subcommand("presentation", "degree audit and variant resolution");
  auto* simplify = app.add_subcommand("simplify", "rational simplification");
  simplify->require_subcommand(1);
  auto* s_rational = simplify->add_subcommand("rational", "eliminate lambda2, delta111, lambda3");
  auto* compare = app.add_subcommand("compare", "comparison with Faber's generators");
  compare->require_subcommand(1);
  auto* c_faber = compare->add_subcommand("faber", "transport the simplified ideal");
  auto* emit = app.add_subcommand("emit", "print classes");
  emit->require_subcommand(1);
  auto* e_classes = emit->add_subcommand("classes", "open-stratum classes");
  auto* report = app.add_subcommand("report", "run everything");
  report->require_subcommand(1);
  auto* r_all = report->add_subcommand("all", "every suite");
  for (auto* sub : {v_appendix, v_pres, s_rational, c_faber, e_classes, r_all}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Runner run(opt);
    bool all = r_all->parsed();
    if (all || v_appendix->parsed()) run.appendix();
    if (all || v_pres->parsed()) run.presentation();
    if (all || s_rational->parsed()) run.simplify();
    if (all || c_faber->parsed()) run.faber();
    if (all || e_classes->parsed()) run.classes();
    auto ctx = run.context();
    emit_report(opt.out, ctx, run.results());
    std::cout << render_summary(ctx, run.results());
    return exit_status(run.results());
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
