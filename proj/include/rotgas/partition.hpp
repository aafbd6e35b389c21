#pragma once

// Log-partition functions of the confined rotating gas and moments of the
// radial observable iota = (1/2) m rho^2 under the radial marginal of the
// Gibbs measure. Everything is evaluated in log space; the layer variable
// v = sqrt(1 - rho^2/R^2) removes both the endpoint singularity of the
// marginal weight and the e^lambda overflow.

#include <cmath>
#include <numbers>
#include <vector>

#include "rotgas/errors.hpp"
#include "rotgas/model.hpp"
#include "rotgas/quadrature.hpp"
#include "rotgas/special.hpp"

namespace rotgas {

inline constexpr double kPi = std::numbers::pi_v<double>;

// lambda = (1/2) beta m omega^2 R^2, the Laplace parameter of the marginal.
inline double lambda_of(double theta, const GasParameters& gp) {
    return 0.5 * gp.m * gp.R * gp.R * theta;
}

// Kinetic factor: z_int = (3/2) ln(2 pi m / beta). Includes the Liouville
// m^3 normalization; it only shifts z by a constant.
inline double z_int(double beta, const GasParameters& gp) {
    gp.validate();
    if (!(beta > 0.0)) throw std::domain_error("z_int: beta must be positive");
    return 1.5 * std::log(2.0 * kPi * gp.m / beta);
}

namespace detail {

// Wallis-type series for Zrot/(2 pi R^3) = sum_{n>=1} lambda^{n-1} W_n / n!
// with W_n = int_0^1 (1-y^2)^n dy. Regular at lambda = 0.
inline double zrot_series_log(double lambda, double R) {
    double W = 1.0; // W_0
    double lam_pow = 1.0;
    double fact = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 64; ++n) {
        W *= 2.0 * n / (2.0 * n + 1.0);
        fact *= n;
        double term = lam_pow * W / fact;
        sum += term;
        if (term < 1e-17 * sum) break;
        lam_pow *= lambda;
    }
    return std::log(2.0 * kPi * R * R * R) + std::log(sum);
}

// int_0^1 e^{-lambda y^2} dy, computed on a scaled grid for large lambda.
inline double gauss_segment_integral(double lambda) {
    if (lambda <= 1.0) {
        return quad::integrate([lambda](double y) { return std::exp(-lambda * y * y); }, 0.0, 1.0,
                               1e-15, 1e-14)
            .value;
    }
    double s_max = std::min(std::sqrt(lambda), 40.0);
    double val = quad::integrate_layered([](double s) { return std::exp(-s * s); }, 0.0, s_max, 1.0,
                                         false, 1e-15, 1e-14)
                     .value;
    return val / std::sqrt(lambda);
}

// N_w(lambda) = int_0^1 w(v)^? ... weight integrals int_0^1 p(v) v^2 e^{-lambda v^2} dv
// for a polynomial-in-v^2 factor supplied as a callable p(v2).
template <class P>
double marginal_weight_integral(double lambda, P&& p) {
    if (lambda <= 1.0) {
        return quad::integrate(
                   [&](double v) {
                       double v2 = v * v;
                       return p(v2) * v2 * std::exp(-lambda * v2);
                   },
                   0.0, 1.0, 1e-16, 1e-14)
            .value;
    }
    double s_max = std::min(std::sqrt(lambda), 40.0);
    double val = quad::integrate_layered(
                     [&](double s) {
                         double v2 = s * s / lambda;
                         return p(v2) * s * s * std::exp(-s * s);
                     },
                     0.0, s_max, 1.0, false, 1e-15, 1e-14)
                     .value;
    return val / (lambda * std::sqrt(lambda));
}

} // namespace detail

// Positional log-partition zrot as a function of theta = beta omega^2.
// Primary route: the 1-D y-integral of the partial Gaussian, in log space.
// Below
// lambda = 1/4 the integral minus e^{-lambda} cancels to O(lambda) and the
// quotient with the 1/lambda prefactor loses ~1/lambda digits, so the
// regular series takes over there (it converges to 1e-17 well past 1/4;
// a noise-free small-lambda branch is what keeps the FD oracle quiet
// around omega = 0).
inline double z_rot(double theta, const GasParameters& gp) {
    gp.validate();
    if (theta < 0.0) throw std::domain_error("z_rot: theta = beta omega^2 must be non-negative");
    double lambda = lambda_of(theta, gp);
    double R3 = gp.R * gp.R * gp.R;
    if (lambda < 0.25) return detail::zrot_series_log(lambda, gp.R);
    double G = detail::gauss_segment_integral(lambda) - std::exp(-lambda);
    return std::log(2.0 * kPi * R3 / lambda) + lambda + std::log(G);
}

struct ZrotRoutes {
    double direct;     // 1-D y-integral (production path)
    double gamma_form; // lower incomplete gamma closed form
    double marginal;   // normalization of the radial marginal
};

// Three independent evaluations of zrot; they must agree to ~1e-10 relative.
inline ZrotRoutes z_rot_routes(double theta, const GasParameters& gp) {
    gp.validate();
    if (theta < 0.0) throw std::domain_error("z_rot_routes: theta must be non-negative");
    double lambda = lambda_of(theta, gp);
    double R3 = gp.R * gp.R * gp.R;

    ZrotRoutes out{};
    out.direct = z_rot(theta, gp);

    // gamma route: Zrot = (2 pi R^3 / lambda) e^lambda (gamma(1/2,lambda)/(2 sqrt(lambda)) - e^-lambda).
    // For small lambda the two terms cancel; the n>=1 tail of the gamma series
    // is the cancellation-free form.
    if (lambda < 1e-12) {
        out.gamma_form = detail::zrot_series_log(lambda, gp.R);
    } else if (lambda < 1.0) {
        // e^lambda (gamma(1/2,lambda)/(2 sqrt(lambda)) - e^-lambda)
        //   = sum_{n>=1} lambda^n / prod_{j=1..n} (1/2 + j)
        double term = 1.0;
        double sum = 0.0;
        for (int n = 1; n < 128; ++n) {
            term *= lambda / (0.5 + n);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        out.gamma_form = std::log(2.0 * kPi * R3 / lambda) + std::log(sum);
    } else {
        double p = gamma_p(0.5, lambda); // regularized
        double val = std::sqrt(kPi) * p / (2.0 * std::sqrt(lambda)) - std::exp(-lambda);
        out.gamma_form = std::log(2.0 * kPi * R3 / lambda) + lambda + std::log(val);
    }

    // marginal route: Zrot = 4 pi R^3 e^lambda int_0^1 v^2 e^{-lambda v^2} dv.
    double N = detail::marginal_weight_integral(lambda, [](double) { return 1.0; });
    out.marginal = std::log(4.0 * kPi * R3) + lambda + std::log(N);
    return out;
}

// Radial marginal of the Gibbs measure: density proportional to
// e^{lambda rho^2/R^2} rho sqrt(R^2-rho^2) drho on [0, R).
struct RadialMarginal {
    double theta = 0.0;
    GasParameters gp{};

    double lambda() const {
        gp.validate();
        if (theta < 0.0) throw std::domain_error("RadialMarginal: theta must be non-negative");
        return lambda_of(theta, gp);
    }

    // Unnormalized density against drho, with the overall e^lambda scaled out.
    double density_scaled(double rho) const {
        double R2 = gp.R * gp.R;
        double one_minus = 1.0 - rho * rho / R2;
        return std::exp(-lambda() * one_minus) * rho * std::sqrt(std::max(0.0, R2 - rho * rho));
    }

    // Total mass of the normalized density; equals 1 by construction and is
    // exposed for the normalization invariant test. The density localises in
    // a layer of width ~R/lambda at rho = R, hence the layered panels.
    double total_probability() const {
        double lam = lambda();
        double norm = detail::marginal_weight_integral(lam, [](double) { return 1.0; }) * gp.R * gp.R * gp.R;
        auto r = quad::integrate_layered([this](double rho) { return density_scaled(rho); }, 0.0,
                                         gp.R, gp.R / (2.0 * (1.0 + lam)), true, 1e-15, 1e-13);
        return r.value / norm;
    }
};

// Raw moments E[iota^k], k = 0..max_k, of iota = (1/2) m rho^2.
inline std::vector<double> raw_moments(double theta, const GasParameters& gp, int max_k) {
    gp.validate();
    if (theta < 0.0) throw std::domain_error("raw_moments: theta must be non-negative");
    if (max_k < 0 || max_k > 8) throw std::domain_error("raw_moments: max_k must be in 0..8");
    double lambda = lambda_of(theta, gp);
    double iota_max = 0.5 * gp.m * gp.R * gp.R;
    double N = detail::marginal_weight_integral(lambda, [](double) { return 1.0; });
    std::vector<double> mom(static_cast<std::size_t>(max_k) + 1, 1.0);
    double scale = 1.0;
    for (int k = 1; k <= max_k; ++k) {
        scale *= iota_max;
        double Mk = detail::marginal_weight_integral(lambda, [k](double v2) {
            double t = 1.0 - v2; // rho^2/R^2
            double p = 1.0;
            for (int i = 0; i < k; ++i) p *= t;
            return p;
        });
        mom[static_cast<std::size_t>(k)] = scale * Mk / N;
    }
    return mom;
}

// Central moments E[(iota - E[iota])^k], k = 0..max_k, by a two-pass rule:
// the mean enters the second-pass integrand directly, which keeps the
// cancellation inside the quadrature sum. Index 1 is exactly zero.
inline std::vector<double> central_moments(double theta, const GasParameters& gp, int max_k) {
    gp.validate();
    if (theta < 0.0) throw std::domain_error("central_moments: theta must be non-negative");
    if (max_k < 0 || max_k > 8) throw std::domain_error("central_moments: max_k must be in 0..8");
    double lambda = lambda_of(theta, gp);
    double iota_max = 0.5 * gp.m * gp.R * gp.R;
    double N = detail::marginal_weight_integral(lambda, [](double) { return 1.0; });
    double M1 = detail::marginal_weight_integral(lambda, [](double v2) { return 1.0 - v2; }) / N;
    std::vector<double> cm(static_cast<std::size_t>(max_k) + 1, 0.0);
    cm[0] = 1.0;
    double scale = iota_max;
    for (int k = 2; k <= max_k; ++k) {
        scale *= iota_max;
        double Mk = detail::marginal_weight_integral(lambda, [k, M1](double v2) {
            double t = (1.0 - v2) - M1;
            double p = 1.0;
            for (int i = 0; i < k; ++i) p *= t;
            return p;
        });
        cm[static_cast<std::size_t>(k)] = scale * Mk / N;
    }
    if (max_k >= 1) cm[1] = 0.0;
    return cm;
}

inline double mean_iota(double theta, const GasParameters& gp) {
    return raw_moments(theta, gp, 1)[1];
}

struct InertiaValue {
    double I = 0.0;      // I(theta) = 2 E[iota]
    double Iprime = 0.0; // I'(theta) = 2 Var(iota) >= 0
};

inline InertiaValue inertia(double theta, const GasParameters& gp) {
    InertiaValue out;
    out.I = 2.0 * mean_iota(theta, gp);
    out.Iprime = 2.0 * central_moments(theta, gp, 2)[2];
    return out;
}

} // namespace rotgas
