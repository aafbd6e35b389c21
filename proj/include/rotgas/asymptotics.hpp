#pragma once

// High-velocity asymptotics: the first-order Watson limit, the weak limit of
// the positional Gibbs measures against test functions on the closed ball,
// and the convergence sweeps for every limit statement of the theory.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rotgas/cumulants.hpp"
#include "rotgas/curvature.hpp"
#include "rotgas/partition.hpp"
#include "rotgas/quadrature.hpp"
#include "rotgas/rigidbody.hpp"
#include "rotgas/thermo.hpp"

namespace rotgas {

struct SweepResult {
    std::vector<double> x;       // theta or lambda grid, strictly increasing
    std::vector<double> value;   // quantity at each grid point
    double limit = 0.0;          // target
    std::vector<double> rel_error; // |value-limit|/|limit| (absolute error when limit = 0)
    bool monotone = false;       // error non-increasing over the last three points
    double fitted_exponent = 0.0; // least-squares slope of ln err vs ln x

    void finish() {
        rel_error.clear();
        double denom = std::abs(limit);
        for (double v : value) {
            double e = std::abs(v - limit);
            if (denom > 0.0) e /= denom;
            rel_error.push_back(e);
        }
        monotone = true;
        std::size_t n = rel_error.size();
        for (std::size_t i = (n >= 3 ? n - 3 : 0); i + 1 < n; ++i)
            if (rel_error[i + 1] > rel_error[i] + 1e-12) monotone = false;
        // fit ln err = a + p ln x over the second half of the grid
        std::size_t lo = n / 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (std::size_t i = lo; i < n; ++i) {
            if (!(rel_error[i] > 1e-15) || !std::isfinite(rel_error[i])) continue;
            double X = std::log(x[i]), Y = std::log(rel_error[i]);
            sx += X;
            sy += Y;
            sxx += X * X;
            sxy += X * Y;
            ++cnt;
        }
        fitted_exponent = (cnt >= 2) ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    }
};

// lambda^{alpha+1} e^{-lambda A} int_0^A F(x) (A-x)^alpha e^{lambda x} dx for
// each lambda on the grid; converges to F(A) Gamma(alpha+1). Evaluated on the
// scaled layer variable t = sqrt(lambda) sqrt(A - x):
//   scaled = 2 int_0^{sqrt(lambda A)} F(A - t^2/lambda) t^{2 alpha + 1} e^{-t^2} dt.
inline SweepResult watson_first_order(const std::function<double(double)>& F, double alpha, double A,
                                      const std::vector<double>& lambda_grid) {
    if (!(alpha > -1.0)) throw std::domain_error("watson_first_order: alpha must exceed -1");
    if (!(A > 0.0)) throw std::domain_error("watson_first_order: A must be positive");
    SweepResult sw;
    sw.limit = F(A) * std::tgamma(alpha + 1.0);
    for (double lam : lambda_grid) {
        if (!(lam > 0.0)) throw std::domain_error("watson_first_order: lambda must be positive");
        double tmax = std::min(std::sqrt(lam * A), 40.0);
        auto integrand = [&](double t) {
            return F(A - t * t / lam) * std::pow(t, 2.0 * alpha + 1.0) * std::exp(-t * t);
        };
        // mild endpoint singularity at t = 0 when 2 alpha + 1 < 1
        auto r = quad::integrate_layered(integrand, 0.0, tmax, 0.25, false, 1e-13, 1e-12);
        sw.x.push_back(lam);
        sw.value.push_back(2.0 * r.value);
    }
    sw.finish();
    return sw;
}

// Test function on the closed ball in cylinder coordinates aligned with
// omega: f(rho, y, phi) with rho the distance to the axis, y the axial
// coordinate and phi the angle.
using BallFn = std::function<double(double rho, double y, double phi)>;

// int f d(nu_{beta,omega}) over the ball, by tensorized quadrature in the
// layer variable v = sqrt(1 - rho^2/R^2) (adaptive), the scaled axial
// coordinate w = y/(R v) (Gauss-Legendre), and the angle (trapezoid).
inline double weak_limit_integral(const BallFn& f, double beta, const Vec3& omega,
                                  const GasParameters& gp) {
    gp.validate();
    if (!(beta > 0.0)) throw std::domain_error("weak_limit_integral: beta must be positive");
    if (!(omega.norm2() > 0.0)) throw std::domain_error("weak_limit_integral: omega must be nonzero");
    double theta = beta * omega.norm2();
    double lambda = lambda_of(theta, gp);
    double R = gp.R;
    constexpr int kAngle = 64;

    auto slab_average = [&](double v) {
        double rho = R * std::sqrt(std::max(0.0, 1.0 - v * v));
        double acc = 0.0;
        for (int ia = 0; ia < kAngle; ++ia) {
            double phi = 2.0 * kPi * ia / kAngle;
            double inner = 0.0;
            for (std::size_t iw = 0; iw < quad::kGL15Nodes.size(); ++iw)
                inner += quad::kGL15Weights[iw] * f(rho, R * v * quad::kGL15Nodes[iw], phi);
            acc += 0.5 * inner; // GL over w in [-1, 1] has total weight 2
        }
        return acc / kAngle;
    };

    double num, den;
    if (lambda <= 1.0) {
        num = quad::integrate([&](double v) { return v * v * std::exp(-lambda * v * v) * slab_average(v); },
                              0.0, 1.0, 1e-13, 1e-11)
                  .value;
        den = quad::integrate([&](double v) { return v * v * std::exp(-lambda * v * v); }, 0.0, 1.0,
                              1e-14, 1e-12)
                  .value;
    } else {
        double smax = std::min(std::sqrt(lambda), 40.0);
        num = quad::integrate(
                  [&](double s) { return s * s * std::exp(-s * s) * slab_average(s / std::sqrt(lambda)); },
                  0.0, smax, 1e-13, 1e-11)
                  .value;
        den = quad::integrate([&](double s) { return s * s * std::exp(-s * s); }, 0.0, smax, 1e-14, 1e-12)
                  .value;
    }
    return num / den;
}

// (1/2 pi) int f(R, 0, phi) dphi: the expected weak limit, the uniform
// average over the equatorial great circle.
inline double circle_average(const BallFn& f, const GasParameters& gp) {
    constexpr int kAngle = 512;
    double acc = 0.0;
    for (int ia = 0; ia < kAngle; ++ia) acc += f(gp.R, 0.0, 2.0 * kPi * ia / kAngle);
    return acc / kAngle;
}

struct NamedSweep {
    std::string name;
    SweepResult sweep;
    bool failed = false;
    std::string error;
};

// The rigid-body comparison form of beta^{-n/2} D^n z in the (u, omega)
// chart: 3 (n-1)! du^{(x)n} + I_inf * Sym(du^{(x)(n-2)} (x) <dw|dw>)/2.
inline CovTensor rb_limit_form(int n, double I_inf) {
    CovTensor t(n, Chart::UOmega);
    double lead = 3.0 * static_cast<double>(factorial(n - 1));
    t[0] = lead; // all-u component
    CovTensor mixed(n, Chart::UOmega);
    for (int i = 1; i < 4; ++i) {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        idx[static_cast<std::size_t>(n) - 2] = i;
        idx[static_cast<std::size_t>(n) - 1] = i;
        std::size_t f = 0;
        for (int s = 0; s < n; ++s) f = f * kDim + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
        mixed[f] = I_inf;
    }
    t += sym_unnormalized(mixed) * 0.5;
    return t;
}

// Convergence sweeps for the high-velocity limits; per-entry failures are
// recorded, not propagated. beta = 1 throughout (the scaling law makes
// (beta, theta) redundant).
inline std::vector<NamedSweep> limit_suite(const GasParameters& gp, const std::vector<double>& theta_grid) {
    gp.validate();
    double I_inf = gp.m * gp.R * gp.R;
    std::vector<NamedSweep> out;

    auto add = [&](const std::string& name, double limit,
                   const std::function<double(double)>& eval) {
        NamedSweep ns;
        ns.name = name;
        ns.sweep.limit = limit;
        try {
            for (double th : theta_grid) {
                ns.sweep.x.push_back(th);
                ns.sweep.value.push_back(eval(th));
            }
            ns.sweep.finish();
        } catch (const std::exception& e) {
            ns.failed = true;
            ns.error = e.what();
        }
        out.push_back(std::move(ns));
    };

    auto point_at = [&](double th) {
        GeneralizedTemperature p;
        p.beta = 1.0;
        p.omega = {0.0, 0.0, std::sqrt(th)};
        return p;
    };

    for (int k = 1; k <= 4; ++k)
        add("moment_hat" + std::to_string(k), moment_limit_constant(k), [&, k](double th) {
            return central_moments(th, gp, k)[static_cast<std::size_t>(k)] * std::pow(th, k);
        });
    for (int n = 2; n <= 4; ++n)
        add("cumulant" + std::to_string(n), cumulant_limit(n), [&, n](double th) {
            return cumulants_of_iota(th, gp, n)[n] * std::pow(th, n);
        });
    add("inertia", I_inf, [&](double th) { return inertia(th, gp).I; });

    add("beta_du_norm2", 1.0 / 3.0, [&](double th) {
        auto p = point_at(th);
        Mat4 gi = metric_inverse(cov_diff_z(2, p, gp));
        // du = -beta^{-3/2} dbeta in the flat chart
        double b = p.beta;
        return b * gi(0, 0) * std::pow(b, -3.0);
    });
    // The limit metric g/beta -> 3 du(x)du + I_inf sum_i dw_i(x)dw_i forces
    // beta |dw|^2 -> 3/I_inf under the plain bundle norm (the symmetrised
    // contraction would double both this and the du-norm limit).
    add("beta_domega_norm2", 3.0 / I_inf, [&](double th) {
        auto p = point_at(th);
        Mat4 gi = metric_inverse(cov_diff_z(2, p, gp));
        FlatPoint x = to_flat(p);
        double b = p.beta;
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
            Vec4 dw{x.r[i] / (b * b), 0, 0, 0};
            dw[static_cast<std::size_t>(i + 1)] = -1.0 / b;
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c)
                    s += gi(a, c) * dw[static_cast<std::size_t>(a)] * dw[static_cast<std::size_t>(c)];
        }
        return b * s;
    });
    add("heat_capacity_uu", 3.0, [&](double th) {
        auto p = point_at(th);
        CovTensor g = metric(p, gp, Chart::UOmega);
        return g.at({0, 0}) / p.beta;
    });

    for (int n = 2; n <= 4; ++n)
        add("dz" + std::to_string(n) + "_rigid_body_dev", 0.0, [&, n](double th) {
            auto p = point_at(th);
            CovTensor t = to_chart(cov_diff_z(n, p, gp), Chart::UOmega, p, gp);
            t *= std::pow(p.beta, -0.5 * n);
            CovTensor form = rb_limit_form(n, I_inf);
            return (t - form).frobenius_norm() / form.frobenius_norm();
        });

    add("sectional_min", -1.0 / 12.0, [&](double th) {
        auto p = point_at(th);
        HessianTriple ht = gas_hessian_triple(p, gp);
        CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
        return sectional_extrema(R, ht.g, 50, 20240913ull).min;
    });
    add("sectional_max", -1.0 / 12.0, [&](double th) {
        auto p = point_at(th);
        HessianTriple ht = gas_hessian_triple(p, gp);
        CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
        return sectional_extrema(R, ht.g, 50, 20240913ull).max;
    });
    add("kn_deviation", 0.0, [&](double th) {
        auto p = point_at(th);
        HessianTriple ht = gas_hessian_triple(p, gp);
        CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
        return kn_deviation(R, ht.g);
    });

    return out;
}

} // namespace rotgas
