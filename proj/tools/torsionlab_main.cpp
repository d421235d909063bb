#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "torsionlab/acceptance.hpp"
#include "torsionlab/config.hpp"
#include "torsionlab/experiments.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/model_spectra.hpp"
#include "torsionlab/spectrum.hpp"
#include "torsionlab/trace_series.hpp"
#include "torsionlab/zeta.hpp"

namespace fs = std::filesystem;
using namespace torsionlab;

namespace {

constexpr int kExitUsage = 64;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  std::string only;
  int seed = -1;
};

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config_file(opts.config_path);
  if (const char* env = std::getenv("TORSIONLAB_OUT"); env && opts.out_dir.empty() &&
                                                       opts.config_path.empty())
    cfg.out_dir = env;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.jobs > 0) cfg.jobs = opts.jobs;
  if (opts.seed >= 0) cfg.seed = unsigned(opts.seed);
  cfg.validate();
  return cfg;
}

void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec || !fs::is_directory(cfg.out_dir))
    throw std::runtime_error("cannot create output directory: " + cfg.out_dir);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
}

nlohmann::json zeta_json(const ZetaResult& z) {
  nlohmann::json j;
  j["zeta_at_zero"] = z.zeta_at_zero;
  j["zeta_prime_at_zero"] = z.zeta_prime_at_zero;
  j["log_torsion"] = z.log_torsion;
  j["method"] = z.method;
  j["error_budget"] = z.error_budget;
  j["constant_term_violation"] = z.constant_term_violation;
  for (const auto& [k, v] : z.diagnostics) j["diagnostics"][k] = v;
  return j;
}

int cmd_spectrum(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const CircleGeometry circle{cfg.L};
  const FiberModel fiber{cfg.k, cfg.tau, cfg.cutoff};
  write_spectrum_csv_file(cfg.out_dir + "/base.csv", circle_hodge_spectrum(circle, cfg.max_mode));
  write_spectrum_csv_file(cfg.out_dir + "/fiber.csv", fiber_witten_spectrum(fiber));
  ScalingParams sc;
  write_spectrum_csv_file(
      cfg.out_dir + "/product.csv",
      product_spectrum(circle_hodge_spectrum(circle, cfg.max_mode),
                       fiber_witten_spectrum(fiber, true), sc));
  if (cfg.alpha != 0.0)
    write_spectrum_csv_file(cfg.out_dir + "/twisted.csv",
                            holonomy_twisted_spectrum(circle, fiber, cfg.alpha, cfg.max_mode));
  std::cout << "spectra written to " << cfg.out_dir << "\n";
  return 0;
}

int cmd_torsion(const RunConfig& cfg) {
  ensure_out_dir(cfg);
  const TorsionSummary s = compute_torsion_summary(cfg.L, cfg.tau, cfg.alpha, cfg.lab_geometry());

  const Spectrum base = circle_hodge_spectrum({cfg.L}, cfg.max_mode);
  const ZetaResult closed = torsion_zeta_closed_form(base);
  const ThetaSeries theta_m = theta_series_from_spectrum(base, TraceWeight::NBase);
  const ZetaResult heat_m = torsion_heat_split_auto(theta_m, theta_m.kernel_coef);
  write_text(cfg.out_dir + "/zeta_M_closed.json", zeta_json(closed).dump(2) + "\n");
  write_text(cfg.out_dir + "/zeta_M_heat_split.json", zeta_json(heat_m).dump(2) + "\n");

  nlohmann::json main_j;
  main_j["log_torsion_E_heat"] = s.log_torsion_E_heat;
  main_j["log_torsion_M_closed"] = s.log_torsion_M_closed;
  main_j["log_torsion_M_heat"] = s.log_torsion_M_heat;
  main_j["correction"] = s.correction;
  main_j["residual"] = s.residual;
  main_j["budget"] = s.budget;
  main_j["exploratory"] = cfg.alpha != 0.0;
  write_text(cfg.out_dir + "/main_theorem.json", main_j.dump(2) + "\n");

  std::cout << "log T(M) closed  = " << format_g17(closed.log_torsion) << "\n"
            << "log T(M) heat    = " << format_g17(heat_m.log_torsion) << "\n"
            << "log T(E) heat    = " << format_g17(s.log_torsion_E_heat) << "\n"
            << "correction       = " << format_g17(s.correction) << "\n"
            << "residual         = " << format_g17(s.residual) << "\n";
  const double disagreement = std::abs(closed.log_torsion - heat_m.log_torsion);
  if (disagreement > closed.error_budget + heat_m.error_budget + 1e-3) {
    std::cerr << "method disagreement " << format_g17(disagreement) << " exceeds the error budget\n";
    return 2;
  }
  return 0;
}

int run_reports(const RunConfig& cfg, const std::string& only, bool acceptance_only) {
  ensure_out_dir(cfg);
  std::vector<ExperimentReport> reports;
  for (double alpha : cfg.grid.alphas) {
    LabGeometry geom = cfg.lab_geometry();
    geom.alpha = alpha;
    const std::string suffix = alpha == 0.0 ? "_untwisted" : "_twisted";
    auto collect = [&](ExperimentReport rep) {
      rep.theorem += suffix;
      reports.push_back(std::move(rep));
    };
    collect(spectral_gap_sweep(cfg.grid, geom));
    collect(supertrace_limit_check(1.0, cfg.grid, geom));
    collect(index_limit_check(1.0, cfg.grid, geom));
    collect(alpha_form_check(cfg.grid, geom));
    collect(rectangle_contour_check(2.0, 4.0, 0.1, geom));
    collect(fiber_supertrace_decay_check(cfg.grid, geom));
    collect(large_time_limit_check(1.0, cfg.grid, geom));
    for (double tau : cfg.grid.taus) {
      auto rep = main_theorem_check(cfg.L, tau, alpha, geom);
      rep.theorem += "_tau" + format_g17(tau) + suffix;
      reports.push_back(std::move(rep));
    }
  }

  bool all_pass = true;
  std::vector<std::string> failing;
  for (const auto& rep : reports) {
    if (!only.empty() && rep.theorem.find(only) == std::string::npos) continue;
    std::ofstream csv(cfg.out_dir + "/" + rep.theorem + ".csv");
    rep.write_csv(csv);
    write_text(cfg.out_dir + "/" + rep.theorem + ".json", rep.summary_json() + "\n");
    const bool counts = !acceptance_only || rep.acceptance;
    std::cout << (rep.overall ? "[pass] " : "[FAIL] ") << rep.theorem
              << (rep.acceptance ? "" : " (exploratory)") << "\n";
    if (counts && !rep.overall) {
      all_pass = false;
      failing.push_back(rep.theorem);
    }
  }
  if (!all_pass) {
    std::cerr << "failing reports:";
    for (const auto& f : failing) std::cerr << ' ' << f;
    std::cerr << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& only) {
  ensure_out_dir(cfg);
  const auto results = run_acceptance_criteria(cfg, only);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " — "
              << r.detail << " (" << format_g17(r.seconds) << " s)\n";
    all = all && r.pass;
  }
  if (results.empty()) {
    std::cerr << "no criterion matches --only filter\n";
    return kExitUsage;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torsionlab: analytic torsion and adiabatic-limit workbench"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "configuration file (flat key = value)");
    sub->add_option("--out", opts.out_dir, "output directory (default: TORSIONLAB_OUT or ./out)");
    sub->add_option("--jobs", opts.jobs, "parallel grid execution bound");
    sub->add_option("--only", opts.only, "run only reports/criteria whose tag contains this string");
    sub->add_option("--seed", opts.seed, "seed for randomized algebra identity tests");
  };
  auto* sub_spectrum = app.add_subcommand("spectrum", "write base/fiber/product spectra as CSV");
  auto* sub_torsion = app.add_subcommand("torsion", "zeta results and the torsion comparison");
  auto* sub_adiabatic = app.add_subcommand("adiabatic", "run the experiment reports");
  auto* sub_verify = app.add_subcommand("verify", "run the acceptance suite");
  for (auto* s : {sub_spectrum, sub_torsion, sub_adiabatic, sub_verify}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const RunConfig cfg = resolve_config(opts);
    if (sub_spectrum->parsed()) return cmd_spectrum(cfg);
    if (sub_torsion->parsed()) return cmd_torsion(cfg);
    if (sub_adiabatic->parsed()) return run_reports(cfg, opts.only, false);
    if (sub_verify->parsed()) return cmd_verify(cfg, opts.only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string what = e.what();
    if (what.find("config") != std::string::npos) {
      std::cerr << app.help() << "\n";
      return kExitUsage;
    }
    return 1;
  }
  return kExitUsage;
}
