#pragma once

// Deterministic adaptive Gauss-Legendre quadrature. The radial partition
// integrals localise in an endpoint layer of width ~1/lambda, so the
// adaptive driver accepts a geometric pre-split towards one endpoint.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rotgas/errors.hpp"

namespace rotgas::quad {

inline constexpr std::array<double, 15> kGL15Nodes = {
    -0.9879925180204854285, -0.9372733924007059043, -0.8482065834104272162,
    -0.7244177313601700474, -0.5709721726085388475, -0.3941513470775633699,
    -0.2011940939974345223, 0.0,                    0.2011940939974345223,
    0.3941513470775633699,  0.5709721726085388475,  0.7244177313601700474,
    0.8482065834104272162,  0.9372733924007059043,  0.9879925180204854285};

inline constexpr std::array<double, 15> kGL15Weights = {
    0.03075324199611726835, 0.07036604748810812471, 0.107159220467171935,
    0.1395706779261543144,  0.1662692058169939336,  0.186161000015562211,
    0.1984314853271115765,  0.2025782419255612729,  0.1984314853271115765,
    0.186161000015562211,   0.1662692058169939336,  0.1395706779261543144,
    0.107159220467171935,   0.07036604748810812471, 0.03075324199611726835};

inline constexpr std::array<double, 31> kGL31Nodes = {
    -0.9970874818194770741, -0.984685909665152484,  -0.9625039250929496618,
    -0.930756997896648165,  -0.8897600299482710434, -0.8399203201462673401,
    -0.7817331484166249404, -0.7157767845868532839, -0.6427067229242603462,
    -0.5632491614071492627, -0.4781937820449024804, -0.3883859016082329431,
    -0.2947180699817016166, -0.1981211993355706288, -0.09955531215234152033,
    0.0,                    0.09955531215234152033, 0.1981211993355706288,
    0.2947180699817016166,  0.3883859016082329431,  0.4781937820449024804,
    0.5632491614071492627,  0.6427067229242603462,  0.7157767845868532839,
    0.7817331484166249404,  0.8399203201462673401,  0.8897600299482710434,
    0.930756997896648165,   0.9625039250929496618,  0.984685909665152484,
    0.9970874818194770741};

inline constexpr std::array<double, 31> kGL31Weights = {
    0.007470831579248775859, 0.01731862079031058246, 0.0270090191849794218,
    0.03643227391238546402,  0.0454937075272011029,  0.05410308242491685371,
    0.06217478656102842691,  0.06962858323541036617, 0.07639038659877661643,
    0.0823929917615892639,   0.08757674060847787613, 0.09189011389364147822,
    0.09529024291231951281,  0.09774333538632872509, 0.09922501122667230787,
    0.09972054479342645143,  0.09922501122667230787, 0.09774333538632872509,
    0.09529024291231951281,  0.09189011389364147822, 0.08757674060847787613,
    0.0823929917615892639,   0.07639038659877661643, 0.06962858323541036617,
    0.06217478656102842691,  0.05410308242491685371, 0.0454937075272011029,
    0.03643227391238546402,  0.0270090191849794218,  0.01731862079031058246,
    0.007470831579248775859};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evals = 0;
};

template <class F>
double gl15(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < 15; ++i) s += kGL15Weights[i] * f(mid + half * kGL15Nodes[i]);
    return s * half;
}

template <class F>
double gl31(F&& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < 31; ++i) s += kGL31Weights[i] * f(mid + half * kGL31Nodes[i]);
    return s * half;
}

namespace detail {

template <class F>
void adapt(F& f, double a, double b, double whole, double tol, int depth, Result& r) {
    double mid = 0.5 * (a + b);
    double left = gl15(f, a, mid);
    double right = gl15(f, mid, b);
    r.evals += 30;
    double err = std::abs(left + right - whole);
    // floor the budget at the roundoff level of the panel values
    double floor_tol = 1e-16 * (std::abs(left) + std::abs(right)) + 1e-305;
    if (err <= std::max(tol, floor_tol) || depth >= 32 || r.evals > 4000000) {
        r.value += left + right;
        r.abs_error += err;
        return;
    }
    adapt(f, a, mid, left, 0.5 * tol, depth + 1, r);
    adapt(f, mid, b, right, 0.5 * tol, depth + 1, r);
}

} // namespace detail

// Adaptive Gauss-Legendre on [a, b] with absolute + relative tolerance.
// Throws accuracy_error when the local-error budget was exhausted.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-13, double rel_tol = 1e-13) {
    Result r;
    if (a == b) return r;
    double whole = gl15(f, a, b);
    r.evals = 15;
    detail::adapt(f, a, b, whole, abs_tol, 0, r);
    double tol = abs_tol + rel_tol * std::abs(r.value);
    if (!(r.abs_error <= 64.0 * tol) || !std::isfinite(r.value))
        throw accuracy_error("quadrature did not converge", r.value, r.abs_error);
    return r;
}

// Adaptive integration with the interval pre-split geometrically towards one
// endpoint: panel widths layer_width * {1, 1, 2, 4, ...} starting at the
// endpoint where the integrand localises.
template <class F>
Result integrate_layered(F&& f, double a, double b, double layer_width, bool layer_at_b,
                         double abs_tol = 1e-13, double rel_tol = 1e-13) {
    std::vector<double> cuts;
    cuts.push_back(a);
    double len = b - a;
    if (layer_width > 0.0 && layer_width < 0.5 * len) {
        std::vector<double> offs;
        double w = layer_width;
        double off = w;
        while (off < 0.75 * len) {
            offs.push_back(off);
            w *= 2.0;
            off += w;
        }
        if (layer_at_b) {
            for (auto it = offs.rbegin(); it != offs.rend(); ++it) cuts.push_back(b - *it);
        } else {
            for (double o : offs) cuts.push_back(a + o);
        }
    }
    cuts.push_back(b);
    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Result r;
        double lo = cuts[i], hi = cuts[i + 1];
        double whole = gl15(f, lo, hi);
        r.evals = 15;
        detail::adapt(f, lo, hi, whole, abs_tol / static_cast<double>(cuts.size()), 0, r);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evals += r.evals;
    }
    double tol = abs_tol + rel_tol * std::abs(total.value);
    if (!(total.abs_error <= 64.0 * tol) || !std::isfinite(total.value))
        throw accuracy_error("layered quadrature did not converge", total.value, total.abs_error);
    return total;
}

} // namespace rotgas::quad
