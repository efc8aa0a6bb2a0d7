#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include "g2forge/app.hpp"

using namespace g2forge;
using g2forge::app::json;

namespace {

bool color_enabled() {
  const char* env = std::getenv("G2FORGE_COLOR");
  if (env) {
    std::string v = env;
    if (v == "0" || v == "false" || v == "never" || v == "off") return false;
  }
  return ::isatty(1);
}

void emit(const json& report, const std::string& format) {
  if (format == "json")
    std::cout << report.dump(2) << "\n";
  else if (format == "md")
    std::cout << app::render_markdown(report);
  else
    std::cout << app::render_text(report, color_enabled());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Invariant SU(3)- and G2-structures on Lie algebras"};
  cli.require_subcommand(1);

  std::string ring = "natural", format = "json";
  app::Options opts;
  cli.add_option("--ring", ring, "Coefficient ring: exact or float (default: what the inputs need)")
      ->check(CLI::IsMember({"natural", "exact", "float"}));
  cli.add_option("--tol", opts.tol, "Tolerance for float comparisons")->capture_default_str();
  cli.add_option("--seed", opts.seed, "Seed for randomized runs")->capture_default_str();
  cli.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "md", "text"}))->capture_default_str();

  std::function<json()> run;

  auto* algebra = cli.add_subcommand("algebra", "Browse the algebra catalog");
  algebra->require_subcommand(1);
  algebra->add_subcommand("list", "List catalog algebras and forms")->callback([&] { run = [] { return app::algebra_list(); }; });
  std::string show_name;
  auto* show = algebra->add_subcommand("show", "Structure equations and basic invariants");
  show->add_option("algebra", show_name, "Catalog name or structure equations")->required();
  show->callback([&] { run = [&] { return app::algebra_show(show_name, opts); }; });

  std::string su3_algebra, omega, sigma;
  bool lenient = false;
  auto* su3 = cli.add_subcommand("su3", "SU(3)-structures on 6-dimensional algebras");
  su3->require_subcommand(1);
  auto* su3_check = su3->add_subcommand("check", "Check a pair (omega, sigma)");
  su3_check->add_option("algebra", su3_algebra)->required();
  su3_check->add_option("--omega", omega, "2-form")->required();
  su3_check->add_option("--sigma", sigma, "3-form")->required();
  su3_check->add_flag("--lenient", lenient, "Report omega ^ sigma != 0 instead of rejecting it");
  su3_check->callback([&] { run = [&] { return app::su3_check(su3_algebra, omega, sigma, lenient, opts); }; });

  std::string metric_algebra;
  std::optional<std::string> metric;
  auto* metric_cmd = cli.add_subcommand("metric", "Curvature of left-invariant metrics");
  metric_cmd->require_subcommand(1);
  auto* analyze = metric_cmd->add_subcommand("analyze", "Ricci tensor, Einstein and nilsoliton checks");
  analyze->add_option("algebra", metric_algebra)->required();
  analyze->add_option("--metric", metric, "Metric matrix (default identity)");
  analyze->callback([&] { run = [&] { return app::metric_analyze(metric_algebra, metric, opts); }; });

  std::string g2_algebra, phi, orientation = "coframe";
  auto* g2 = cli.add_subcommand("g2", "G2-structures on 7-dimensional algebras");
  g2->require_subcommand(1);
  auto* g2_analyze = g2->add_subcommand("analyze", "Metric, torsion forms and curvature of phi");
  g2_analyze->add_option("algebra", g2_algebra)->required();
  g2_analyze->add_option("--phi", phi, "3-form")->required();
  g2_analyze->add_option("--orientation", orientation, "Volume orientation")
      ->check(CLI::IsMember({"coframe", "induced"}))
      ->capture_default_str();
  g2_analyze->callback([&] {
    run = [&] {
      return app::g2_analyze(g2_algebra, phi,
                             orientation == "induced" ? G2Orientation::induced : G2Orientation::coframe, opts);
    };
  });

  cli.add_subcommand("lambda-table", "Hitchin invariant of the generic 3-form on every nilpotent algebra")
      ->callback([&] { run = [&] { return app::lambda_table(opts); }; });

  std::string which;
  int trials = 0;
  auto* obstruction = cli.add_subcommand("obstruction", "Sampling checks for algebras without coupled structures");
  obstruction->add_option("which", which)->required()->check(CLI::IsMember({"n4", "n9"}));
  obstruction->add_option("--trials", trials, "Trials (default 100 for n4, 200 for n9)");
  obstruction->callback([&] {
    run = [&] { return app::obstruction(which, trials > 0 ? trials : (which == "n4" ? 100 : 200), opts); };
  });

  app::ReproduceOptions ropts;
  ropts.golden_dir = G2FORGE_GOLDEN_DIR;
  std::string only;
  auto* reproduce = cli.add_subcommand("reproduce", "Run every worked example and criterion");
  reproduce->add_option("--only", only, "Run a single item")->check(CLI::IsMember(app::reproduce_items()));
  reproduce->add_flag("--update-golden", ropts.update_golden, "Rewrite the golden files");
  reproduce->add_option("--golden-dir", ropts.golden_dir, "Golden file directory")->capture_default_str();
  reproduce->callback([&] {
    if (!only.empty()) ropts.only = only;
    run = [&] { return app::reproduce(opts, ropts); };
  });

  std::string file;
  auto* check = cli.add_subcommand("check", "Run a scenario file");
  check->add_option("file", file)->required();
  check->callback([&] { run = [&] { return app::check_file(file, opts); }; });

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opts.ring = app::parse_ring_choice(ring);
    json report = run();
    emit(report, format);
    return app::report_passed(report) ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
