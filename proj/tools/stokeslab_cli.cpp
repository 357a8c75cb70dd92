// Command-line front end: verification suites, divergence/Stokes solves from
// serialized fields, CSV reports.
//
// Exit codes: 0 = pass, 1 = check failure, 2 = usage/parse error.
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "stokeslab/stokeslab.hpp"

using namespace stokeslab;

namespace {

struct RunConfig {
  int n_r = 64;
  int n_theta = 16;
  int n_t = 24;
  int modes = 60;  // counterexample truncation N
  double eps = 1e-30;
  double s = 2.0;
  double l = 2.0;
  std::string out_dir = ".";
  std::vector<std::string> tol_overrides;
  unsigned seed = 1234;

  double tol(const std::string& name, double fallback) const {
    for (const auto& ov : tol_overrides) {
      auto pos = ov.find('=');
      if (pos != std::string::npos && ov.substr(0, pos) == name)
        return std::stod(ov.substr(pos + 1));
    }
    return fallback;
  }
  std::string path(const std::string& file) const {
    return (std::filesystem::path(out_dir) / file).string();
  }
  void add_meta(CsvWriter& w) const {
    w.set_meta("n_r", std::to_string(n_r));
    w.set_meta("n_theta", std::to_string(n_theta));
    w.set_meta("n_t", std::to_string(n_t));
    w.set_meta("modes", std::to_string(modes));
    w.set_meta("eps", std::to_string(eps));
    w.set_meta("s", std::to_string(s));
    w.set_meta("l", std::to_string(l));
    w.set_meta("seed", std::to_string(seed));
  }
};

int fail_check(const std::string& name) {
  std::cerr << "check failed: " << name << "\n";
  return 1;
}

int cmd_counterexample(const RunConfig& cfg) {
  CounterexampleSpec spec;
  spec.N = cfg.modes;
  spec.eps = cfg.eps;
  spec.n_r = cfg.n_r;
  spec.n_t = cfg.n_t;
  try {
    spec.validate();
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  auto rows = norm_table(spec);
  CsvWriter nt(cfg.path("norm_table.csv"),
               {"N", "dtw_sq", "hess_w_sq", "w_l2", "grad_w_l2", "p_l2",
                "dtg_sq", "dtg_dual_sq", "dtw_sq_limit", "hess_w_sq_limit"});
  for (const auto& r : rows)
    nt.add_row({double(r.N), r.dtw_sq, r.hess_w_sq, r.w_l2, r.grad_w_l2, r.p_l2,
                r.dtg_sq, r.dtg_dual_sq, r.dtw_sq_limit, r.hess_w_sq_limit});
  cfg.add_meta(nt);
  nt.write();

  auto divr = divergence_demonstration(spec);
  CsvWriter dv(cfg.path("divergence.csv"), {"N", "I_closed", "I_quad", "S_N", "S_N_over_N"});
  for (const auto& r : divr)
    dv.add_row({double(r.n), r.I_closed, r.I_quad, r.S, r.S_over_N});
  cfg.add_meta(dv);
  dv.write();

  CsvWriter ac(cfg.path("alpha_checks.csv"),
               {"n", "boundary_value_err", "boundary_slope_err", "support_violation",
                "c3", "c6", "strictly_inside_unit", "pass"});
  bool alpha_ok = true;
  for (int n : {1, 2, 5, 10, 50, 200}) {
    AlphaChecks ch = alpha_checks(n);
    alpha_ok = alpha_ok && ch.pass();
    ac.add_row({double(n), ch.boundary_value_err, ch.boundary_slope_err,
                ch.support_violation, ch.c3, ch.c6,
                ch.strictly_inside_unit ? 1.0 : 0.0, ch.pass() ? 1.0 : 0.0});
  }
  cfg.add_meta(ac);
  ac.write();

  if (!alpha_ok) return fail_check("alpha_checks");
  for (const auto& r : divr) {
    if (r.n <= 20 && std::abs(r.I_quad - r.I_closed) > 1e-8 * r.I_closed)
      return fail_check("I_n quadrature agreement at n=" + std::to_string(r.n));
  }
  for (size_t i = 1; i < divr.size(); ++i)
    if (divr[i].S <= divr[i - 1].S) return fail_check("S_N monotonicity");
  if (spec.N >= 60) {
    double ratio = divr[59].S_over_N;
    if (!(ratio >= 1.0 / 6.0 - 0.01 && ratio <= 1.0 / 6.0))
      return fail_check("S_60/60 outside [1/6-0.01, 1/6]");
  }
  double bd = boundary_divergence_check(spec);
  if (bd > cfg.tol("boundary_divergence", 1e-6))
    return fail_check("boundary_divergence_check");
  std::cout << "counterexample: all checks passed\n";
  return 0;
}

DiscField default_divsolve_input(DiscGridPtr grid) {
  // g = r^2 sin 2theta
  DiscField g = DiscField::scalar(grid);
  Eigen::VectorXcd prof(grid->n_r());
  for (int j = 0; j < grid->n_r(); ++j) prof[j] = std::pow(grid->r()[j], 2);
  g.add_mode(2, prof / Complex(0.0, 2.0));
  g.add_mode(-2, -prof / Complex(0.0, 2.0));
  return g;
}

int cmd_divsolve(const RunConfig& cfg, const std::string& input) {
  DiscGridPtr grid = DiscGrid::make(cfg.n_r, cfg.n_theta);
  DiscField g = input.empty() ? default_divsolve_input(grid)
                              : field_from_json(load_json(input));
  DivSolution sol = solve_div(g, NormOrder(cfg.s, cfg.l));
  save_json(field_to_json(sol.u), cfg.path("u.json"));
  save_norm_report(sol.report, cfg.path("divsolve_report.csv"),
                   {{"command", "divsolve"}, {"n_r", std::to_string(g.grid()->n_r())},
                    {"n_theta", std::to_string(g.grid()->n_theta())}});
  if (sol.residual_div > cfg.tol("residual_div", 1e-4))
    return fail_check("residual_div");
  if (sol.residual_boundary > cfg.tol("residual_boundary", 1e-4))
    return fail_check("residual_boundary");
  std::cout << "divsolve: residual_div " << sol.residual_div
            << " residual_boundary " << sol.residual_boundary << "\n";
  return 0;
}

int cmd_stokes(const RunConfig& cfg, const std::string& f_path,
               const std::string& g_path) {
  DiscGridPtr grid = DiscGrid::make(cfg.n_r, cfg.n_theta);
  SpaceTimeGrid tg(0.0, 1.0, cfg.n_t);
  ProblemData data{SpaceTimeField(tg, grid, FieldRank::Vector),
                   SpaceTimeField(tg, grid, FieldRank::Scalar),
                   NormOrder(cfg.s, cfg.l)};
  if (!f_path.empty()) data.f = spacetime_field_from_json(load_json(f_path), grid);
  if (!g_path.empty()) data.g = spacetime_field_from_json(load_json(g_path), grid);
  SolutionPair sol = solve_stokes(data);
  save_json(spacetime_field_to_json(sol.v), cfg.path("v.json"));
  save_json(spacetime_field_to_json(sol.p), cfg.path("p.json"));
  save_norm_report(sol.report, cfg.path("stokes_report.csv"),
                   {{"command", "stokes"}, {"n_r", std::to_string(cfg.n_r)},
                    {"n_theta", std::to_string(cfg.n_theta)},
                    {"n_t", std::to_string(cfg.n_t)}});
  std::cout << "stokes: done";
  if (sol.report.has("estimate_ratio"))
    std::cout << " (estimate ratio " << sol.report.get("estimate_ratio") << ")";
  std::cout << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };
  DiscGridPtr grid = DiscGrid::make(48, 8);

  {  // disc-core
    DiscField one = DiscField::scalar(grid);
    one.mode(0).setConstant(1.0);
    check("disc-core: integrate 1 over disc = pi",
          std::abs(integrate_disc(one, 2.0) - std::sqrt(M_PI)) < 1e-10);
    DiscField rc = DiscField::scalar(grid);
    Eigen::VectorXcd pr = grid->r().cast<Complex>();
    rc.add_mode(1, 0.5 * pr);
    rc.add_mode(-1, 0.5 * pr);
    DiscField gr = gradient(rc);
    check("disc-core: gradient of r cos(theta)",
          (gr.mode(1, 0).array() - 0.5).matrix().cwiseAbs().maxCoeff() < 1e-10);
  }
  {  // elliptic
    DiscField g4 = DiscField::scalar(grid);
    g4.mode(0).setConstant(4.0);
    DirichletSolution ds = solve_dirichlet(g4);
    double err = 0.0;
    for (int j = 0; j < grid->n_r(); ++j)
      err = std::max(err, std::abs(ds.phi.mode(0)(j).real() -
                                   (grid->r()[j] * grid->r()[j] - 1.0)));
    check("elliptic: Dirichlet g=4 -> r^2-1", err < 1e-10);
    check("elliptic: kappa = 2", std::abs(ds.kappa.mode(0) - Complex(2.0)) < 1e-9);
  }
  {  // norms
    double lam;
    DiscField ef = dirichlet_eigenfunction(grid, 2, 1, true, &lam);
    check("norms: dual norm of eigenfunction = 1/sqrt(lambda)",
          std::abs(dual_norm(ef) - 1.0 / std::sqrt(lam)) < 1e-8);
    DiscField one = DiscField::scalar(grid);
    one.mode(0).setConstant(1.0);
    check("norms: trace ratio of constant = sqrt(2)",
          std::abs(trace_inequality_ratio(one, 2.0) - std::sqrt(2.0)) < 1e-10);
  }
  {  // boundary-ops
    const auto& ker = ExtensionKernel::instance();
    check("boundary-ops: kernel moments", std::abs(ker.moment0() - 1.0) < 1e-10 &&
                                              std::abs(ker.moment1()) < 1e-10);
    BoundaryTrace kap(grid->n_theta());
    kap.mode_ref(3) = 0.5;
    kap.mode_ref(-3) = 0.5;
    DiscField w = solenoidal_lift(grid, kap);
    check("boundary-ops: lift divergence-free",
          l2_norm_disc(divergence(w)) < cfg.tol("lift_div", 1e-6));
  }
  {  // div-solver
    DivSolution sol = solve_div(default_divsolve_input(grid), NormOrder(2, 2));
    check("div-solver: residuals", sol.residual_div < 1e-4 &&
                                       sol.residual_boundary < 1e-4);
  }
  {  // stokes (zero data -> zero solution)
    SpaceTimeGrid tg(0.0, 1.0, 6);
    ProblemData data{SpaceTimeField(tg, grid, FieldRank::Vector),
                     SpaceTimeField(tg, grid, FieldRank::Scalar), NormOrder(2, 2)};
    SolutionPair sol = solve_stokes(data);
    double m = 0.0;
    for (int k = 0; k < sol.v.n_slices(); ++k)
      m = std::max(m, l2_norm_disc(sol.v.slice(k)));
    check("stokes: zero data -> zero solution", m == 0.0);
  }
  {  // counterexample
    check("counterexample: alpha certificate n=5", alpha_checks(5).pass());
    CounterexampleSpec spec{1, 1e-30, 32, 4, 8};
    auto rows = divergence_demonstration(spec);
    check("counterexample: I_1 = 37/384",
          std::abs(rows[0].I_closed - 37.0 / 384.0) < 1e-12);
  }
  {  // localization
    IterationInstance inst{[](double) { return 0.0; }, 1.0, 2.0, 0.125};
    auto res = iteration_lemma(inst, 0.25, 1.0);
    check("localization: iteration lemma B closed form",
          std::abs(res.B_series - res.B_closed) < 1e-10 && res.conclusion_holds);
    auto [lhs, rhs] = young_split(1.0, 1.0, 2.0, 0.5);
    check("localization: young split", lhs <= rhs + 1e-14);
  }
  if (failures == 0) std::cout << "verify: all checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the nonstationary Stokes problem on the unit disc"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--n-r", cfg.n_r, "radial points");
  app.add_option("--n-theta", cfg.n_theta, "angular mode count");
  app.add_option("--n-t", cfg.n_t, "time steps");
  app.add_option("--modes", cfg.modes, "series truncation N");
  app.add_option("--eps", cfg.eps, "time endpoint offset");
  app.add_option("--s", cfg.s, "spatial exponent");
  app.add_option("--l", cfg.l, "temporal exponent");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--tol", cfg.tol_overrides, "tolerance override NAME=VALUE");
  app.add_option("--seed", cfg.seed, "random seed");

  auto* c_cex = app.add_subcommand("counterexample", "series norms and the divergent sum");
  auto* c_div = app.add_subcommand("divsolve", "solve div u = g");
  std::string input, f_path, g_path;
  c_div->add_option("--input", input, "serialized scalar field g");
  auto* c_stk = app.add_subcommand("stokes", "solve the Stokes problem");
  c_stk->add_option("--f", f_path, "serialized forcing");
  c_stk->add_option("--g", g_path, "serialized divergence data");
  auto* c_ver = app.add_subcommand("verify", "run the module property suites");
  for (auto* sc : {c_cex, c_div, c_stk, c_ver}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!(cfg.s > 1.0 && cfg.l > 1.0)) {
      std::cerr << "usage error: need 1 < s, l\n";
      return 2;
    }
    std::filesystem::create_directories(cfg.out_dir);
    if (c_cex->parsed()) return cmd_counterexample(cfg);
    if (c_div->parsed()) return cmd_divsolve(cfg, input);
    if (c_stk->parsed()) return cmd_stokes(cfg, f_path, g_path);
    if (c_ver->parsed()) return cmd_verify(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
