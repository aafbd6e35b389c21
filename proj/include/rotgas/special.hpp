#pragma once

// Lower incomplete gamma via the standard series / continued-fraction split.
// Used as the closed-form cross-check route for the rotational partition
// function; the series split point x = a + 1 lands at 1.5 for a = 1/2.

#include <cmath>
#include <stdexcept>

namespace rotgas {

namespace detail {

// P(a,x) by the series x^a e^-x / Gamma(a) * sum x^n / (a (a+1) ... (a+n)).
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 512; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Q(a,x) by the Lentz continued fraction; valid for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 512; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return h * std::exp(a * std::log(x) - x - std::lgamma(a));
}

} // namespace detail

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw std::domain_error("gamma_p: a must be positive");
    if (x < 0.0) throw std::domain_error("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_cf(a, x);
}

// gamma(a, x), the unregularized lower incomplete gamma.
inline double gamma_lower(double a, double x) { return gamma_p(a, x) * std::tgamma(a); }

} // namespace rotgas
