// Command-line front end: model loading, Gibbs/inference drivers, and
// figure-data emission (curves, toeplitz sweeps).

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nht/errors.hpp"
#include "nht/geometry.hpp"
#include "nht/gibbs.hpp"
#include "nht/matrix_io.hpp"
#include "nht/maxent.hpp"
#include "nht/metric.hpp"
#include "nht/models.hpp"

namespace {

using nlohmann::json;

struct ModelSpec {
  std::string model = "example1";  // example1 | toeplitz | file
  std::string h_file;
  std::string k_file;
  int n = 8;
  double d = 0.0;
  bool two_charge = false;
};

void add_model_flags(CLI::App* cmd, ModelSpec* spec) {
  cmd->add_option("--model", spec->model, "Built-in model: example1 | toeplitz")
      ->check(CLI::IsMember({"example1", "toeplitz", "file"}));
  cmd->add_option("--h-file", spec->h_file, "Matrix JSON file for H");
  cmd->add_option("--k-file", spec->k_file, "Matrix JSON file for K (default H)");
  cmd->add_option("--n", spec->n, "Toeplitz dimension");
  cmd->add_option("--d", spec->d, "Toeplitz non-Hermiticity parameter");
  cmd->add_flag("--two-charge", spec->two_charge,
                "Use H^2/4 as the second charge for the Toeplitz model");
}

nht::ObservablePair load_pair(const ModelSpec& spec) {
  if (!spec.h_file.empty() || spec.model == "file") {
    if (spec.h_file.empty()) {
      throw nht::InvalidParameter("--h-file is required for --model file");
    }
    nht::ComplexMatrix h = nht::load_matrix(spec.h_file);
    nht::ComplexMatrix k =
        spec.k_file.empty() ? h : nht::load_matrix(spec.k_file);
    return nht::ObservablePair::build(std::move(h), std::move(k));
  }
  if (spec.model == "example1") return nht::example1();
  const nht::ToeplitzModel m = nht::toeplitz_model(spec.n, spec.d);
  return spec.two_charge ? nht::toeplitz_pair_two_charge(m)
                         : nht::toeplitz_pair(m);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw nht::ParseError("cannot open " + out_path + " for writing");
  out << text;
}

int cmd_inspect(const ModelSpec& spec, const std::string& out_path) {
  const nht::ObservablePair pair = load_pair(spec);
  json report;
  report["dim"] = pair.dim();
  report["eigenvalues"] = std::vector<double>(
      pair.energies().data(), pair.energies().data() + pair.dim());
  report["charge_eigenvalues"] = std::vector<double>(
      pair.charges().data(), pair.charges().data() + pair.dim());
  report["biorthogonality_residual"] =
      pair.eigensystem().biorthogonality_residual();
  report["completeness_residual"] = pair.eigensystem().completeness_residual();
  report["source_residual"] = pair.eigensystem().source_residual();
  report["metric_min_eigenvalue"] = pair.metric().min_eigenvalue();
  report["pseudo_hermiticity_residual_h"] =
      nht::pseudo_hermiticity_residual(pair.metric(), pair.h());
  report["pseudo_hermiticity_residual_k"] =
      nht::pseudo_hermiticity_residual(pair.metric(), pair.k());
  report["commutator_norm"] = (pair.h() * pair.k() - pair.k() * pair.h()).norm();
  emit(out_path, report.dump(2) + "\n");
  return 0;
}

json scalars_to_json(const nht::GibbsScalars& s) {
  json j;
  j["beta"] = s.beta;
  j["zeta"] = s.zeta;
  j["log_z"] = s.log_z;
  j["mean_h"] = s.mean_h;
  j["mean_k"] = s.mean_k;
  j["entropy"] = s.entropy;
  j["covariance"] = {{s.covariance(0, 0), s.covariance(0, 1)},
                     {s.covariance(1, 0), s.covariance(1, 1)}};
  return j;
}

int cmd_gibbs(const ModelSpec& spec, double beta, double zeta,
              const std::string& out_path) {
  if (std::abs(beta) > 1e3 || std::abs(zeta) > 1e3) {
    throw nht::InvalidParameter("|beta|, |zeta| must be <= 1e3");
  }
  const nht::ObservablePair pair = load_pair(spec);
  emit(out_path, scalars_to_json(nht::gibbs_scalars(pair, beta, zeta)).dump(2) + "\n");
  return 0;
}

int cmd_infer(const ModelSpec& spec, double target_h, double target_k,
              const std::string& solver, double tol,
              const std::string& out_path) {
  const nht::ObservablePair pair = load_pair(spec);
  nht::SolverConfig cfg;
  if (tol > 0) cfg.tol = tol;
  json j;
  if (solver == "intersection") {
    const nht::PolarSolution sol =
        nht::infer_by_intersection(pair, {target_h, target_k}, cfg);
    j["beta0"] = sol.beta0;
    j["theta"] = sol.theta;
    j["beta"] = sol.beta0 * std::cos(sol.theta);
    j["zeta"] = sol.beta0 * std::sin(sol.theta);
    const nht::GibbsScalars s =
        nht::gibbs_scalars(pair, j["beta"].get<double>(), j["zeta"].get<double>());
    j["mean_h"] = s.mean_h;
    j["mean_k"] = s.mean_k;
    j["entropy"] = s.entropy;
    j["solver"] = "intersection";
  } else {
    const nht::InferenceResult r = nht::infer(pair, {target_h, target_k}, cfg);
    j["beta"] = r.beta;
    j["zeta"] = r.zeta;
    j["mean_h"] = r.state.mean_h;
    j["mean_k"] = r.state.mean_k;
    j["entropy"] = r.state.entropy;
    j["iterations"] = r.iterations;
    j["charge_redundant"] = r.charge_redundant;
    j["solver"] = "newton";
  }
  emit(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_curves(const ModelSpec& spec, std::vector<double> beta0s,
               std::vector<double> thetas, int theta_grid, int beta0_grid,
               double beta0_max, const std::string& out_path) {
  const nht::ObservablePair pair = load_pair(spec);
  if (beta0s.empty()) beta0s = {0.1, 0.5, 1, 1.5, 2, 4, 8, 16, 32};
  if (thetas.empty()) {
    for (int k = -7; k <= 8; ++k) thetas.push_back(k * M_PI / 8.0);
  }

  std::ostringstream csv;
  csv << "series,beta0,theta,x,y,entropy\n";
  auto row = [&](const char* series, const nht::CurveSample& s) {
    csv << series << ',' << fmt(s.beta0) << ',' << fmt(s.theta) << ','
        << fmt(s.x) << ',' << fmt(s.y) << ',' << fmt(s.entropy) << '\n';
  };

  std::vector<double> theta_samples(theta_grid + 1);
  for (int i = 0; i <= theta_grid; ++i) {
    theta_samples[i] = -M_PI + 2.0 * M_PI * i / theta_grid;
  }
  for (double beta0 : beta0s) {
    for (const auto& s : nht::gamma_beta0(pair, beta0, theta_samples)) {
      row("gamma_beta0", s);
    }
  }
  std::vector<double> beta0_samples(beta0_grid + 1);
  for (int i = 0; i <= beta0_grid; ++i) {
    beta0_samples[i] = beta0_max * i / beta0_grid;
  }
  for (double theta : thetas) {
    for (const auto& s : nht::gamma_theta(pair, theta, beta0_samples)) {
      row("gamma_theta", s);
    }
  }

  const nht::HullPolygon hull = nht::joint_hull(pair);
  for (std::size_t i = 0; i <= hull.vertices.size(); ++i) {
    const auto& v = hull.vertices[i % hull.vertices.size()];
    csv << "hull,,," << fmt(v.x()) << ',' << fmt(v.y()) << ",\n";
  }
  for (const auto& z : nht::metric_numerical_range_boundary(pair, theta_grid)) {
    csv << "fov,,," << fmt(z.real()) << ',' << fmt(z.imag()) << ",\n";
  }
  emit(out_path, csv.str());
  return 0;
}

int cmd_toeplitz(int n, std::vector<double> ds, double beta_min,
                 double beta_max, double beta_step,
                 const std::string& out_path) {
  if (ds.empty()) ds = {0.0, std::sqrt(7.0) / 4.0};
  if (beta_step <= 0) throw nht::InvalidParameter("--beta-step must be > 0");

  std::ostringstream csv;
  csv << "d,beta,log_z_exact,log_z_em_approx,rel_error,mean_h,entropy\n";
  std::ostringstream summary;
  for (double d : ds) {
    const nht::ToeplitzModel model = nht::toeplitz_model(n, d);
    const nht::ObservablePair pair = nht::toeplitz_pair(model);
    std::vector<double> log_zs, entropies, mean_hs;
    for (double beta = beta_min; beta <= beta_max + 1e-12; beta += beta_step) {
      const nht::GibbsScalars s = nht::gibbs_scalars(pair, beta, 0.0);
      const nht::PartitionApproximation em =
          nht::euler_maclaurin_partition(model, beta);
      const double log_em = std::log(em.endpoint_corrected);
      csv << fmt(d) << ',' << fmt(beta) << ',' << fmt(s.log_z) << ','
          << fmt(log_em) << ','
          << fmt(std::abs(em.endpoint_corrected - em.exact) / em.exact) << ','
          << fmt(s.mean_h) << ',' << fmt(s.entropy) << '\n';
      log_zs.push_back(s.log_z);
      entropies.push_back(s.entropy);
      mean_hs.push_back(s.mean_h);
    }
    bool convex = true, concave = true;
    for (std::size_t i = 1; i + 1 < log_zs.size(); ++i) {
      if (log_zs[i + 1] - 2 * log_zs[i] + log_zs[i - 1] < -1e-9) convex = false;
      // entropy vs <H>: nonuniform spacing second difference
      const double h1 = mean_hs[i] - mean_hs[i - 1];
      const double h2 = mean_hs[i + 1] - mean_hs[i];
      if (h1 != 0 && h2 != 0) {
        const double dd = 2.0 * (h1 * (entropies[i + 1] - entropies[i]) -
                                 h2 * (entropies[i] - entropies[i - 1])) /
                          (h1 * h2 * (h1 + h2));
        if (dd > 1e-9) concave = false;
      }
    }
    summary << "# summary d=" << fmt(d)
            << " logz_convex=" << (convex ? "PASS" : "FAIL")
            << " entropy_concave=" << (concave ? "PASS" : "FAIL") << '\n';
  }
  emit(out_path, csv.str() + summary.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium statistical thermodynamics for non-Hermitian "
               "Hamiltonians with real spectra"};
  app.require_subcommand(1);

  ModelSpec spec;
  std::string out_path;
  double beta = 0.0, zeta = 0.0, target_h = 0.0, target_k = 0.0, tol = 0.0;
  std::string solver = "newton";
  std::vector<double> beta0s, thetas;
  int theta_grid = 512, beta0_grid = 256;
  double beta0_max = 32.0;
  double beta_min = -2.0, beta_max = 2.0, beta_step = 0.05;

  auto* inspect = app.add_subcommand("inspect", "Spectral and metric diagnostics");
  add_model_flags(inspect, &spec);
  inspect->add_option("--out", out_path);

  auto* gibbs = app.add_subcommand("gibbs", "Gibbs-state scalars at (beta, zeta)");
  add_model_flags(gibbs, &spec);
  gibbs->add_option("--beta", beta)->required();
  gibbs->add_option("--zeta", zeta);
  gibbs->add_option("--out", out_path);

  auto* infer = app.add_subcommand("infer", "Recover multipliers from target expectations");
  add_model_flags(infer, &spec);
  infer->add_option("--target-h", target_h)->required();
  infer->add_option("--target-k", target_k)->required();
  infer->add_option("--solver", solver)
      ->check(CLI::IsMember({"newton", "intersection"}));
  infer->add_option("--tol", tol);
  infer->add_option("--out", out_path);

  auto* curves = app.add_subcommand("curves", "Gamma-curve families, hull and field-of-values CSV");
  add_model_flags(curves, &spec);
  curves->add_option("--beta0", beta0s);
  curves->add_option("--theta", thetas);
  curves->add_option("--theta-grid", theta_grid);
  curves->add_option("--beta0-grid", beta0_grid);
  curves->add_option("--beta0-max", beta0_max);
  curves->add_option("--out", out_path);

  auto* toeplitz = app.add_subcommand("toeplitz", "Partition-function sweep for the Toeplitz model");
  std::vector<double> sweep_ds;
  int sweep_n = 50;
  toeplitz->add_option("--n", sweep_n);
  toeplitz->add_option("--d", sweep_ds);
  toeplitz->add_option("--beta-min", beta_min);
  toeplitz->add_option("--beta-max", beta_max);
  toeplitz->add_option("--beta-step", beta_step);
  toeplitz->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (inspect->parsed()) return cmd_inspect(spec, out_path);
    if (gibbs->parsed()) return cmd_gibbs(spec, beta, zeta, out_path);
    if (infer->parsed())
      return cmd_infer(spec, target_h, target_k, solver, tol, out_path);
    if (curves->parsed())
      return cmd_curves(spec, beta0s, thetas, theta_grid, beta0_grid,
                        beta0_max, out_path);
    if (toeplitz->parsed())
      return cmd_toeplitz(sweep_n, sweep_ds, beta_min, beta_max, beta_step,
                          out_path);
  } catch (const nht::Error& e) {
    nlohmann::json err{{"error", e.name()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return nht::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
