#pragma once

// The verification suite: one entry per acceptance criterion, each pinned to
// its tolerance. cmd_verify and the acceptance test binary both run this.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rotgas/asymptotics.hpp"
#include "rotgas/covderiv.hpp"
#include "rotgas/cumulants.hpp"
#include "rotgas/curvature.hpp"
#include "rotgas/oracles.hpp"
#include "rotgas/partition.hpp"
#include "rotgas/poisson.hpp"
#include "rotgas/rigidbody.hpp"

namespace rotgas {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string module_tag;
    bool pass = false;
    double worst = 0.0;     // worst observed deviation
    double tolerance = 0.0; // applied tolerance
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    double tolerance_scale = 1.0;
    unsigned long long seed = 20240913ull;
    std::string only; // module tag filter, empty = all
};

namespace verify_detail {

struct Check {
    double worst = 0.0;
    std::ostringstream note;

    void observe(double deviation, const std::string& what = "") {
        if (deviation > worst) {
            worst = deviation;
            if (!what.empty()) {
                note.str("");
                note << what;
            }
        }
    }
};

inline GeneralizedTemperature random_point(std::mt19937_64& rng, double wmin = 0.0, double wmax = 3.0) {
    std::uniform_real_distribution<double> ub(0.5, 2.0);
    std::uniform_real_distribution<double> uw(wmin, wmax);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    GeneralizedTemperature p;
    p.beta = ub(rng);
    Vec3 dir{ud(rng), ud(rng), ud(rng)};
    double nn = dir.norm();
    if (nn < 1e-6) dir = {1, 0, 0}, nn = 1.0;
    p.omega = (uw(rng) / nn) * dir;
    return p;
}

// quadratic observable in (beta, r) with exact gradient
inline ObservableFn random_quadratic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    std::array<double, 4> lin{};
    std::array<std::array<double, 4>, 4> quad{};
    for (auto& v : lin) v = ud(rng);
    for (auto& row : quad)
        for (auto& v : row) v = 0.5 * ud(rng);
    ObservableFn f;
    f.value = [lin, quad](const FlatPoint& x) {
        Vec4 c = x.coords();
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            s += lin[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
            for (int j = 0; j < 4; ++j)
                s += quad[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i)] *
                     c[static_cast<std::size_t>(j)];
        }
        return s;
    };
    f.gradient = [lin, quad](const FlatPoint& x) {
        Vec4 c = x.coords();
        Vec4 g{};
        for (int i = 0; i < 4; ++i) {
            g[static_cast<std::size_t>(i)] = lin[static_cast<std::size_t>(i)];
            for (int j = 0; j < 4; ++j)
                g[static_cast<std::size_t>(i)] += (quad[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                                   quad[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) *
                                                  c[static_cast<std::size_t>(j)];
        }
        return g;
    };
    return f;
}

} // namespace verify_detail

using CriterionFn = std::function<void(const VerifyOptions&, verify_detail::Check&)>;

struct Criterion {
    int id;
    std::string name;
    std::string module_tag;
    double tolerance;
    CriterionFn run;
};

inline std::vector<Criterion> acceptance_criteria() {
    using verify_detail::Check;
    using verify_detail::random_point;
    std::vector<Criterion> cs;

    // 1. Rigid-body hyperbolicity: FD sectional curvatures equal -1/(4C).
    cs.push_back({1, "rigid-body hyperbolic sectional curvature", "rigidbody", 1e-8,
                  [](const VerifyOptions& opt, Check& ck) {
                      std::mt19937_64 rng(opt.seed);
                      Mat3 I3;
                      I3(0, 0) = 1.3; I3(1, 1) = 0.7; I3(2, 2) = 2.1;
                      I3(0, 1) = I3(1, 0) = 0.2; I3(0, 2) = I3(2, 0) = -0.1; I3(1, 2) = I3(2, 1) = 0.15;
                      for (double C : {0.5, 1.5, 3.0}) {
                          for (int body = 0; body < 2; ++body) {
                              RigidBodyParams rb = body == 0 ? RigidBodyParams::make_spherical(C, 1.2)
                                                             : RigidBodyParams::make_general(C, I3);
                              MetricField mf = [&rb](const Vec4& x) {
                                  return tensor_to_mat(rb_z_partials(rb, FlatPoint::from_coords(x), 2));
                              };
                              int npts = body == 0 ? 20 : 20;
                              for (int t = 0; t < npts; ++t) {
                                  auto p = random_point(rng, 0.1, 2.0);
                                  HessianTriple ht = rb_hessian_triple(rb, p);
                                  CovTensor R = christoffel_riemann_fd(mf, to_flat(p).coords(), Chart::Flat);
                                  auto se = sectional_extrema(R, ht.g, 10, opt.seed + t);
                                  double target = -1.0 / (4.0 * C);
                                  ck.observe(std::abs(se.min - target), "C=" + std::to_string(C));
                                  ck.observe(std::abs(se.max - target), "C=" + std::to_string(C));
                              }
                          }
                      }
                  }});

    // 2. Dual Hessian constancy: kappa(h) = 1/C for the entropy structure.
    cs.push_back({2, "dual entropy structure has Hessian sectional 1/C", "rigidbody", 1e-8,
                  [](const VerifyOptions& opt, Check& ck) {
                      std::mt19937_64 rng(opt.seed + 1);
                      std::uniform_real_distribution<double> ud(-1.0, 1.0);
                      for (double C : {0.5, 1.5, 3.0}) {
                          RigidBodyParams rb = RigidBodyParams::make_spherical(C, 0.8);
                          for (int t = 0; t < 8; ++t) {
                              auto p = random_point(rng, 0.1, 2.0);
                              auto q = rb_momenta(rb, p);
                              HessianTriple dual{rb_dual_partials(rb, q.E, q.M, 2),
                                                 rb_dual_partials(rb, q.E, q.M, 3),
                                                 rb_dual_partials(rb, q.E, q.M, 4)};
                              CovTensor K = hessian_curvature_tensor(dual);
                              for (int m = 0; m < 5; ++m) {
                                  CovTensor h(2, Chart::BetaM);
                                  for (int i = 0; i < 4; ++i)
                                      for (int j = i; j < 4; ++j) {
                                          double v = ud(rng);
                                          h.at({i, j}) = v;
                                          h.at({j, i}) = v;
                                      }
                                  double kap = hessian_sectional(K, dual.g, h);
                                  ck.observe(std::abs(kap - 1.0 / C) * C, "C=" + std::to_string(C));
                              }
                          }
                      }
                  }});

    // 3. Partition cross-validation: three zrot routes agree.
    cs.push_back({3, "zrot: quadrature, incomplete gamma, marginal normalization", "partition", 1e-10,
                  [](const VerifyOptions&, Check& ck) {
                      GasParameters gp;
                      for (int i = 0; i < 30; ++i) {
                          double t = std::pow(10.0, -3.0 + 8.0 * i / 29.0);
                          auto r = z_rot_routes(t, gp);
                          double scale = std::abs(r.direct);
                          ck.observe(std::abs(r.gamma_form - r.direct) / scale, "theta=" + std::to_string(t));
                          ck.observe(std::abs(r.marginal - r.direct) / scale, "theta=" + std::to_string(t));
                      }
                  }});

    // 4. Zero-rotation inertia vs the 3-D uniform-ball oracle.
    cs.push_back({4, "I(0) = (2/5) m R^2 against the ball oracle", "partition", 1e-10,
                  [](const VerifyOptions&, Check& ck) {
                      for (auto [m, R] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.5}}) {
                          GasParameters gp{m, R};
                          double oracle = m * R * R * ball_uniform_rho2k(1);
                          double got = inertia(0.0, gp).I;
                          ck.observe(std::abs(got - oracle) / oracle, "m=" + std::to_string(m));
                          ck.observe(std::abs(got - 0.4 * m * R * R) / (0.4 * m * R * R), "exact");
                      }
                  }});

    // 5. Faa di Bruno vs finite differences; total symmetry.
    cs.push_back({5, "D^n z: Faa di Bruno vs FD oracle", "covderiv", 1e-5,
                  [](const VerifyOptions& opt, Check& ck) {
                      GasParameters gp;
                      std::mt19937_64 rng(opt.seed + 2);
                      for (int t = 0; t < 10; ++t) {
                          auto p = random_point(rng, 0.0, 3.0);
                          for (int n = 2; n <= 4; ++n) {
                              CovTensor a = cov_diff_z(n, p, gp);
                              CovTensor b = fd_oracle(n, p, gp);
                              double rel = (a - b).frobenius_norm() / a.frobenius_norm();
                              // n = 4 carries a 1e-3 budget; scale it onto the 1e-5 gate
                              if (n == 4) rel /= 100.0;
                              ck.observe(rel, "n=" + std::to_string(n));
                              ck.observe(a.symmetry_defect() * 1e-5 / 1e-12, "symmetry n=" + std::to_string(n));
                          }
                      }
                  }});

    // 6. Order-4 closed forms match the generic formula.
    cs.push_back({6, "generic Faa di Bruno equals hand-coded order 1..4 forms", "covderiv", 1e-10,
                  [](const VerifyOptions& opt, Check& ck) {
                      GasParameters gp;
                      std::mt19937_64 rng(opt.seed + 3);
                      for (int t = 0; t < 5; ++t) {
                          auto p = random_point(rng, 0.2, 3.0);
                          for (int n = 1; n <= 4; ++n) {
                              CovTensor a = cov_diff_zrot(n, p, gp);
                              CovTensor b = cov_diff_zrot_closed(n, p, gp);
                              ck.observe((a - b).frobenius_norm() / a.frobenius_norm(),
                                         "n=" + std::to_string(n));
                          }
                      }
                  }});

    // 7. Moment-cumulant duality: series round trip and E[f_n] = c_n.
    cs.push_back({7, "power series round trip and f_n recursion vs cumulants", "cumulants", 1e-9,
                  [](const VerifyOptions& opt, Check& ck) {
                      std::mt19937_64 rng(opt.seed + 4);
                      std::uniform_real_distribution<double> ud(-0.5, 0.5);
                      for (int t = 0; t < 20; ++t) {
                          PowerSeries s(8);
                          for (int k = 1; k <= 8; ++k) s.a[static_cast<std::size_t>(k)] = ud(rng);
                          PowerSeries rt = series_log(series_exp(s));
                          double dev = 0.0;
                          for (int k = 0; k <= 8; ++k)
                              dev = std::max(dev, std::abs(rt.a[static_cast<std::size_t>(k)] -
                                                           s.a[static_cast<std::size_t>(k)]));
                          ck.observe(dev * 1e-9 / 1e-12, "series round trip");
                      }
                      GasParameters gp;
                      for (double theta : {0.0, 1.0, 10.0, 1000.0}) {
                          CumulantTable c = cumulants_of_iota(theta, gp, 6);
                          for (int n = 1; n <= 6; ++n) {
                              double e = fn_expected(theta, gp, n);
                              ck.observe(std::abs(e - c[n]) / (std::abs(c[n]) + 1e-300),
                                         "theta=" + std::to_string(theta) + " n=" + std::to_string(n));
                          }
                      }
                  }});

    // 8. Scaling law z(beta, eta omega) = 3 ln eta + z(eta^2 beta, omega).
    cs.push_back({8, "scaling law of the partition function", "partition", 1e-10,
                  [](const VerifyOptions& opt, Check& ck) {
                      GasParameters gp;
                      std::mt19937_64 rng(opt.seed + 5);
                      for (int t = 0; t < 10; ++t) {
                          auto p = random_point(rng, 0.1, 2.5);
                          for (double eta : {0.5, 2.0, 10.0}) {
                              GeneralizedTemperature lhs{p.beta, eta * p.omega};
                              GeneralizedTemperature rhs{eta * eta * p.beta, p.omega};
                              double zl = massieu(to_flat(lhs), gp);
                              double zr = 3.0 * std::log(eta) + massieu(to_flat(rhs), gp);
                              ck.observe(std::abs(zl - zr) / (std::abs(zl) + 1.0), "eta=" + std::to_string(eta));
                          }
                      }
                  }});

    // 9. (beta, M) chart: vanishing cross block, closed-form diagonal blocks.
    cs.push_back({9, "beta-M chart block structure of the metric", "curvature", 1e-9,
                  [](const VerifyOptions& opt, Check& ck) {
                      GasParameters gp;
                      std::mt19937_64 rng(opt.seed + 6);
                      for (int t = 0; t < 8; ++t) {
                          auto p = random_point(rng, 0.3, 3.0);
                          CovTensor g = metric(p, gp, Chart::BetaM);
                          double scale = g.max_abs();
                          for (int i = 1; i < 4; ++i) {
                              ck.observe(std::abs(g.at({0, i})) / scale, "cross block");
                              ck.observe(std::abs(g.at({i, 0})) / scale, "cross block");
                          }
                          double theta = p.theta();
                          InertiaValue iv = inertia(theta, gp);
                          double den = 2.0 * theta * iv.Iprime + iv.I;
                          double gbb = (1.5 + 0.5 * iv.I * theta * theta * iv.Iprime / den) /
                                       (p.beta * p.beta);
                          ck.observe(std::abs(g.at({0, 0}) - gbb) / scale, "g_bb closed form");
                          Vec3 M = momenta(p, gp).M;
                          double M2 = M.norm2();
                          for (int i = 0; i < 3; ++i)
                              for (int j = 0; j < 3; ++j) {
                                  double mij = (M2 > 0) ? M[i] * M[j] / M2 : (i == j ? 1.0 : 0.0) / 3.0;
                                  double target = (p.beta / iv.I) * ((i == j ? 1.0 : 0.0) - mij) +
                                                  (p.beta / den) * mij;
                                  ck.observe(std::abs(g.at({i + 1, j + 1}) - target) / scale,
                                             "M block closed form");
                              }
                      }
                  }});

    // 10. Asymptotic limits with monotone error decay.
    cs.push_back({10, "high-velocity limits of cumulants, inertia, norms", "asymptotics", 0.05,
                  [](const VerifyOptions&, Check& ck) {
                      GasParameters gp;
                      std::vector<double> grid{1e2, 1e3, 1e4};
                      auto sweeps = limit_suite(gp, grid);
                      auto get = [&](const std::string& name) -> const SweepResult& {
                          for (auto& ns : sweeps)
                              if (ns.name == name) {
                                  if (ns.failed) throw accuracy_error("sweep failed: " + name, 0, 0);
                                  return ns.sweep;
                              }
                          throw std::logic_error("missing sweep " + name);
                      };
                      struct Item {
                          const char* name;
                          double budget; // relative to the 0.05 gate
                      };
                      for (auto item : {Item{"cumulant2", 1.0}, Item{"cumulant3", 1.0},
                                        Item{"inertia", 0.001 / 0.05}, Item{"beta_du_norm2", 1.0},
                                        Item{"beta_domega_norm2", 1.0}, Item{"heat_capacity_uu", 1.0}}) {
                          const SweepResult& sw = get(item.name);
                          ck.observe(sw.rel_error.back() / item.budget, item.name);
                          if (!sw.monotone) ck.observe(1.0, std::string(item.name) + " not monotone");
                      }
                  }});

    // 11. Curvature limit: sectional -> -1/12, Kulkarni-Nomizu deviation -> 0.
    cs.push_back({11, "sectional curvature -1/12 and Kulkarni-Nomizu limit", "curvature", 0.05,
                  [](const VerifyOptions& opt, Check& ck) {
                      GasParameters gp;
                      std::vector<double> kn;
                      for (double theta : {1e2, 1e3, 1e4}) {
                          GeneralizedTemperature p{1.0, {0.0, 0.0, std::sqrt(theta)}};
                          HessianTriple ht = gas_hessian_triple(p, gp);
                          CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
                          kn.push_back(kn_deviation(R, ht.g));
                          if (theta == 1e4) {
                              auto se = sectional_extrema(R, ht.g, 50, opt.seed);
                              double target = -1.0 / 12.0;
                              ck.observe(std::abs(se.min / target - 1.0), "sectional min");
                              ck.observe(std::abs(se.max / target - 1.0), "sectional max");
                              ck.observe(kn.back(), "kn deviation");
                          }
                      }
                      if (!(kn[2] < kn[1] && kn[1] < kn[0]))
                          ck.observe(1.0, "kn deviation not decreasing");
                  }});

    // 12. Weak limit of the Gibbs measures against test functions.
    cs.push_back({12, "weak limit: circle averages of 1, rho^2, y^2, qx^2", "asymptotics", 0.01,
                  [](const VerifyOptions&, Check& ck) {
                      GasParameters gp;
                      double beta = 1.0;
                      Vec3 omega{0.0, 0.0, 100.0}; // theta = 1e4
                      struct TF {
                          const char* name;
                          BallFn f;
                      };
                      std::vector<TF> fns;
                      fns.push_back({"1", [](double, double, double) { return 1.0; }});
                      fns.push_back({"rho^2", [](double rho, double, double) { return rho * rho; }});
                      fns.push_back({"y^2", [](double, double y, double) { return y * y; }});
                      fns.push_back({"qx^2", [](double rho, double, double phi) {
                                         double qx = rho * std::cos(phi);
                                         return qx * qx;
                                     }});
                      for (auto& tf : fns) {
                          double got = weak_limit_integral(tf.f, beta, omega, gp);
                          double want = circle_average(tf.f, gp);
                          ck.observe(std::abs(got - want) / (gp.R * gp.R), tf.name);
                      }
                  }});

    // 13. Watson first-order limit.
    cs.push_back({13, "Watson lemma scaled integrals", "asymptotics", 0.005,
                  [](const VerifyOptions&, Check& ck) {
                      std::vector<double> grid{1e2, 1e3, 1e4};
                      auto s1 = watson_first_order([](double) { return 1.0; }, 0.0, 1.0, grid);
                      auto s2 = watson_first_order([](double) { return 1.0; }, 0.5, 1.0, grid);
                      auto s3 = watson_first_order([](double x) { return x; }, 0.5, 1.0, grid);
                      ck.observe(s1.rel_error.back(), "(1, 0)");
                      ck.observe(s2.rel_error.back(), "(1, 1/2)");
                      ck.observe(s3.rel_error.back(), "(x, 1/2)");
                  }});

    // 14. Poisson algebra.
    cs.push_back({14, "Poisson bracket: antisymmetry, Leibniz, so3 relations, Casimirs", "poisson", 1e-6,
                  [](const VerifyOptions& opt, Check& ck) {
                      GasParameters gp;
                      std::mt19937_64 rng(opt.seed + 7);
                      auto Mo = [&](int i) { return angular_momentum_observable(i, gp); };
                      for (int t = 0; t < 5; ++t) {
                          auto p = random_point(rng, 0.3, 2.5);
                          FlatPoint x = to_flat(p);
                          PoissonContext ctx = gas_poisson_context(p, gp);
                          auto f1 = verify_detail::random_quadratic(rng);
                          auto f2 = verify_detail::random_quadratic(rng);
                          auto f3 = verify_detail::random_quadratic(rng);
                          double scale = 1.0 + std::abs(bracket_with(ctx, f1.grad(x), f2.grad(x)));
                          // antisymmetry
                          ck.observe(std::abs(bracket_with(ctx, f1.grad(x), f2.grad(x)) +
                                              bracket_with(ctx, f2.grad(x), f1.grad(x))) /
                                         scale,
                                     "antisymmetry");
                          // Leibniz {f1 f2, f3} = f1 {f2,f3} + f2 {f1,f3}
                          double v1 = f1.value(x), v2 = f2.value(x);
                          Vec4 gprod{};
                          Vec4 g1 = f1.grad(x), g2 = f2.grad(x);
                          for (int i = 0; i < 4; ++i)
                              gprod[static_cast<std::size_t>(i)] =
                                  v1 * g2[static_cast<std::size_t>(i)] + v2 * g1[static_cast<std::size_t>(i)];
                          double lhs = bracket_with(ctx, gprod, f3.grad(x));
                          double rhs = v1 * bracket_with(ctx, g2, f3.grad(x)) +
                                       v2 * bracket_with(ctx, g1, f3.grad(x));
                          ck.observe(std::abs(lhs - rhs) / (1.0 + std::abs(rhs)), "Leibniz");
                          // {M_x, M_y} = +M_z (cyclically)
                          for (int i = 0; i < 3; ++i) {
                              int j = (i + 1) % 3, k = (i + 2) % 3;
                              double br = bracket_with(ctx, Mo(i).grad(x), Mo(j).grad(x));
                              double mk = Mo(k).value(x);
                              ck.observe(std::abs(br - mk) / (1.0 + std::abs(mk)), "so3 relation");
                          }
                          // Casimir phi(beta, |M|^2)
                          Vec3 M = momenta(p, gp).M;
                          double M2 = M.norm2();
                          double dphi_db = std::cos(p.beta);
                          double dphi_dn = 0.7 + 0.1 * std::sin(M2);
                          Vec4 gcas{dphi_db, 0, 0, 0};
                          for (int i = 0; i < 3; ++i) {
                              Vec4 gm = Mo(i).grad(x);
                              for (int a = 0; a < 4; ++a)
                                  gcas[static_cast<std::size_t>(a)] += dphi_dn * 2.0 * M[i] * gm[static_cast<std::size_t>(a)];
                          }
                          for (int h = 0; h < 4; ++h) {
                              auto fh = verify_detail::random_quadratic(rng);
                              double br = bracket_with(ctx, gcas, fh.grad(x));
                              ck.observe(std::abs(br) / (1.0 + M.norm()), "Casimir");
                          }
                          // leaf factor
                          double lf = leaf_factor(p, gp);
                          ck.observe(std::abs(lf - 1.0 / inertia(p.theta(), gp).I), "leaf factor");
                      }
                  }});

    return cs;
}

struct VerifyReport {
    std::vector<CriterionResult> results;
    bool all_pass = true;
};

inline VerifyReport run_verification(const VerifyOptions& opt = {}) {
    VerifyReport rep;
    for (auto& c : acceptance_criteria()) {
        if (!opt.only.empty() && c.module_tag.find(opt.only) == std::string::npos) continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.module_tag = c.module_tag;
        r.tolerance = c.tolerance * opt.tolerance_scale;
        auto t0 = std::chrono::steady_clock::now();
        verify_detail::Check ck;
        try {
            c.run(opt, ck);
            r.worst = ck.worst;
            r.pass = ck.worst <= r.tolerance;
            r.detail = ck.note.str();
        } catch (const std::exception& e) {
            r.pass = false;
            r.worst = std::nan("");
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.all_pass = rep.all_pass && r.pass;
        rep.results.push_back(std::move(r));
    }
    return rep;
}

} // namespace rotgas
