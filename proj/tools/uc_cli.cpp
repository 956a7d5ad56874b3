// Command-line front end: kernel rows, single recombination steps, time
// evolution, fixed points, coefficient transforms, and the consistency
// check suite. Data goes to files or standard output; diagnostics go to
// standard error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "uc/dynamics.hpp"
#include "uc/fixpoint.hpp"
#include "uc/genfunc.hpp"
#include "uc/io.hpp"
#include "uc/kernel.hpp"
#include "uc/measure.hpp"
#include "uc/recomb.hpp"
#include "uc/verify.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::optional<double> q;
  bool takahata = false;
  std::size_t nmax = uc::kDefaultTruncation;
  double leak = uc::kDefaultLeakThreshold;
};

uc::RecombinatorSpec make_spec(const CommonFlags& f) {
  if (f.takahata && f.q) throw uc::UsageError("--q and --takahata conflict");
  if (f.takahata) return uc::RecombinatorSpec::takahata(f.nmax, f.leak);
  if (!f.q) throw uc::UsageError("one of --q or --takahata is required");
  return uc::RecombinatorSpec::general_q(*f.q, f.nmax, f.leak);
}

void write_or_print(const std::optional<std::string>& path,
                    const uc::Distribution& p) {
  if (path)
    uc::write_distribution_csv(*path, p);
  else
    uc::write_distribution_csv(std::cout, p);
}

int cmd_kernel(double q, std::size_t k, std::size_t l,
               const std::optional<std::string>& out_path) {
  const uc::KernelQ kernel(q);
  std::ostringstream csv;
  csv << "i,j,T\n";
  for (std::size_t i = 0; i <= k + l; ++i)
    csv << i << ',' << (k + l - i) << ','
        << uc::format_double(kernel.transition(i, k + l - i, k, l)) << '\n';
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw uc::UsageError("cannot open output file: " + *out_path);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }
  return 0;
}

int cmd_step(const std::string& in_path, const CommonFlags& flags,
             const std::optional<std::string>& out_path) {
  const uc::Distribution p = uc::read_distribution_csv(in_path);
  const uc::Recombinator recomb(make_spec(flags));
  write_or_print(out_path, recomb(p));
  return 0;
}

int cmd_evolve(const std::string& in_path, const std::string& mode,
               const CommonFlags& flags, std::size_t steps, double t_end,
               double dt, double stop_tol,
               const std::optional<std::string>& target_path,
               const std::optional<std::string>& out_path,
               std::optional<std::string> final_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const uc::Distribution p0 = uc::read_distribution_csv(in_path);

  uc::EvolveConfig cfg;
  cfg.recomb = make_spec(flags);
  cfg.steps = steps;
  cfg.t_end = t_end;
  cfg.dt = dt;
  cfg.stop_tol = stop_tol;
  if (target_path) cfg.target = uc::read_distribution_csv(*target_path);
  if (mode == "discrete")
    cfg.mode = uc::EvolveMode::discrete;
  else if (mode == "continuous")
    cfg.mode = uc::EvolveMode::continuous;
  else
    throw uc::UsageError("--mode must be discrete or continuous");

  const uc::Trajectory traj = (cfg.mode == uc::EvolveMode::discrete)
                                  ? uc::evolve_discrete(p0, cfg)
                                  : uc::evolve_continuous(p0, cfg);

  if (out_path)
    uc::write_trajectory_csv(*out_path, traj);
  else
    uc::write_trajectory_csv(std::cout, traj);

  if (!final_path && out_path) *&final_path = *out_path + ".final.csv";
  if (final_path) uc::write_distribution_csv(*final_path, traj.back().state);

  const uc::Recombinator recomb(cfg.recomb);
  const std::vector<double> f = uc::rhs(recomb, traj.back().state);
  double residual = 0.0;
  for (double v : f) residual += std::abs(v);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json summary = {
      {"final_state", final_path ? json(*final_path) : json(nullptr)},
      {"iterations", traj.iterations},
      {"converged", traj.converged},
      {"final_residual", residual},
      {"wall_time_s", wall},
  };
  std::ostream& sink = out_path ? std::cout : std::cerr;
  sink << summary.dump(2) << '\n';
  return 0;
}

int cmd_fixpoint(const CommonFlags& flags, double m, double tol,
                 std::size_t max_iter, std::size_t window,
                 const std::optional<std::string>& out_path) {
  uc::FixedPointResult result;
  double rev = 0.0;
  if (flags.takahata) {
    result = uc::analytic_takahata(m, flags.nmax);
  } else if (!flags.q) {
    throw uc::UsageError("one of --q or --takahata is required");
  } else if (*flags.q == 0.0) {
    result = uc::analytic_internal(m, flags.nmax);
    rev = uc::reversibility_residual(result.distribution, uc::KernelQ(0.0),
                                     window);
  } else if (*flags.q == 1.0) {
    result = uc::analytic_random(m, flags.nmax);
    rev = uc::reversibility_residual(result.distribution, uc::KernelQ(1.0),
                                     window);
  } else {
    result = uc::solve_numeric(*flags.q, m, flags.nmax, tol, max_iter);
    rev = uc::reversibility_residual(result.distribution,
                                     uc::KernelQ(*flags.q), window);
  }

  write_or_print(out_path, result.distribution);

  json report = {
      {"m", m},
      {"mean", uc::mean(result.distribution)},
      {"residual", result.residual},
      {"iterations", result.iterations},
      {"provenance",
       result.provenance == uc::FixedPointResult::Provenance::analytic
           ? "analytic"
           : "iterative"},
      {"reversibility_residual", rev},
  };
  if (flags.takahata)
    report["variant"] = "takahata";
  else
    report["q"] = *flags.q;
  std::ostream& sink = out_path ? std::cout : std::cerr;
  sink << report.dump(2) << '\n';
  return 0;
}

int cmd_coeffs(const std::string& in_path, std::size_t K, double gamma,
               double delta, const std::optional<std::string>& out_path) {
  const uc::Distribution p = uc::read_distribution_csv(in_path);
  const uc::CoeffVector a = uc::coeffs_from_distribution(p, K, gamma, delta);
  if (out_path)
    uc::write_coeffs_csv(*out_path, a);
  else
    uc::write_coeffs_csv(std::cout, a);
  return 0;
}

int cmd_verify(const std::optional<std::string>& out_path) {
  uc::VerifyOptions options;
  if (const char* env = std::getenv("UC_SEED"))
    options.seed = std::strtoull(env, nullptr, 10);

  const std::vector<uc::CheckResult> results = uc::verify_suite(options);
  json report = json::array();
  std::size_t failures = 0;
  for (const auto& r : results) {
    report.push_back({{"check", r.name},
                      {"pass", r.pass},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance}});
    if (!r.pass) ++failures;
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
              << " measured=" << r.measured << " tol=" << r.tolerance << '\n';
  }
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw uc::UsageError("cannot open output file: " + *out_path);
    out << report.dump(2) << '\n';
  } else {
    std::cout << report.dump(2) << '\n';
  }
  std::cerr << (results.size() - failures) << "/" << results.size()
            << " checks passed (seed " << options.seed << ")\n";
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unequal-crossover recombination dynamics toolkit"};
  app.require_subcommand(1);

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "dump one kernel row as CSV");
  double kq = 1.0;
  std::size_t kk = 0, kl = 0;
  std::optional<std::string> kernel_out;
  kernel_cmd->add_option("--q", kq, "penalty parameter in [0,1]")->required();
  kernel_cmd->add_option("--k", kk, "first parent copy number")->required();
  kernel_cmd->add_option("--l", kl, "second parent copy number")->required();
  kernel_cmd->add_option("--out", kernel_out, "output CSV path");

  // step
  auto* step_cmd = app.add_subcommand("step", "apply one recombination step");
  std::string step_in;
  CommonFlags step_flags;
  std::optional<std::string> step_out;
  step_cmd->add_option("--in", step_in, "input distribution CSV")->required();
  step_cmd->add_option("--q", step_flags.q, "penalty parameter in [0,1]");
  step_cmd->add_flag("--takahata", step_flags.takahata, "Takahata variant");
  step_cmd->add_option("--nmax", step_flags.nmax, "truncation bound");
  step_cmd->add_option("--leak", step_flags.leak, "tail mass threshold");
  step_cmd->add_option("--out", step_out, "output CSV path");

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "iterate the dynamics");
  std::string evolve_in, evolve_mode = "discrete";
  CommonFlags evolve_flags;
  std::size_t evolve_steps = 100;
  double evolve_t_end = 10.0, evolve_dt = 0.1, evolve_stop = 1e-10;
  std::optional<std::string> evolve_target, evolve_out, evolve_final;
  evolve_cmd->add_option("--in", evolve_in, "initial distribution CSV")
      ->required();
  evolve_cmd->add_option("--mode", evolve_mode, "discrete|continuous");
  evolve_cmd->add_option("--q", evolve_flags.q, "penalty parameter");
  evolve_cmd->add_flag("--takahata", evolve_flags.takahata, "Takahata variant");
  evolve_cmd->add_option("--steps", evolve_steps, "generations (discrete)");
  evolve_cmd->add_option("--t-end", evolve_t_end, "end time (continuous)");
  evolve_cmd->add_option("--dt", evolve_dt, "integrator step (continuous)");
  evolve_cmd->add_option("--nmax", evolve_flags.nmax, "truncation bound");
  evolve_cmd->add_option("--stop-tol", evolve_stop,
                         "stop when successive TV falls below this");
  evolve_cmd->add_option("--target", evolve_target,
                         "distribution CSV for tv_to_target monitoring");
  evolve_cmd->add_option("--out", evolve_out, "trajectory CSV path");
  evolve_cmd->add_option("--final-out", evolve_final, "final state CSV path");

  // fixpoint
  auto* fix_cmd = app.add_subcommand("fixpoint", "fixed point for given mean");
  CommonFlags fix_flags;
  double fix_m = 0.0, fix_tol = 1e-11;
  std::size_t fix_iter = 10000, fix_window = 12;
  std::optional<std::string> fix_out;
  fix_cmd->add_option("--q", fix_flags.q, "penalty parameter");
  fix_cmd->add_flag("--takahata", fix_flags.takahata, "Takahata variant");
  fix_cmd->add_option("--m", fix_m, "mean copy number")->required();
  fix_cmd->add_option("--nmax", fix_flags.nmax, "truncation bound");
  fix_cmd->add_option("--tol", fix_tol, "successive TV tolerance");
  fix_cmd->add_option("--max-iter", fix_iter, "iteration budget");
  fix_cmd->add_option("--window", fix_window, "reversibility check window");
  fix_cmd->add_option("--out", fix_out, "output CSV path");

  // coeffs
  auto* coeffs_cmd =
      app.add_subcommand("coeffs", "size-biased expansion coefficients");
  std::string coeffs_in;
  std::size_t coeffs_K = uc::kDefaultCoeffK;
  double coeffs_gamma = uc::kDefaultGamma, coeffs_delta = 0.0;
  std::optional<std::string> coeffs_out;
  coeffs_cmd->add_option("--in", coeffs_in, "input distribution CSV")
      ->required();
  coeffs_cmd->add_option("--K", coeffs_K, "coefficient truncation");
  coeffs_cmd->add_option("--gamma", coeffs_gamma, "metric parameter");
  coeffs_cmd->add_option("--delta", coeffs_delta,
                         "bound parameter (0 = estimate from data)");
  coeffs_cmd->add_option("--out", coeffs_out, "output CSV path");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the consistency check suite");
  std::optional<std::string> verify_out;
  verify_cmd->add_option("--out", verify_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (kernel_cmd->parsed()) return cmd_kernel(kq, kk, kl, kernel_out);
    if (step_cmd->parsed()) return cmd_step(step_in, step_flags, step_out);
    if (evolve_cmd->parsed())
      return cmd_evolve(evolve_in, evolve_mode, evolve_flags, evolve_steps,
                        evolve_t_end, evolve_dt, evolve_stop, evolve_target,
                        evolve_out, evolve_final);
    if (fix_cmd->parsed())
      return cmd_fixpoint(fix_flags, fix_m, fix_tol, fix_iter, fix_window,
                          fix_out);
    if (coeffs_cmd->parsed())
      return cmd_coeffs(coeffs_in, coeffs_K, coeffs_gamma, coeffs_delta,
                        coeffs_out);
    if (verify_cmd->parsed()) return cmd_verify(verify_out);
  } catch (const uc::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const uc::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
