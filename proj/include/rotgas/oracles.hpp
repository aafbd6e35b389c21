#pragma once

// Convention-free oracles used by the verification suite and the tests:
// a Riemann tensor built from Christoffel symbols of a metric field by
// finite differences alone, and plain 3-D quadrature over the uniform ball.

#include <array>
#include <cmath>
#include <functional>

#include "rotgas/linalg.hpp"
#include "rotgas/quadrature.hpp"
#include "rotgas/tensor.hpp"

namespace rotgas {

using MetricField = std::function<Mat4(const Vec4&)>;

namespace oracle_detail {

// 4th-order central difference of a matrix field along one axis.
inline Mat4 d_matrix(const std::function<Mat4(const Vec4&)>& f, const Vec4& x, int axis, double h) {
    auto shift = [&](double s) {
        Vec4 y = x;
        y[static_cast<std::size_t>(axis)] += s;
        return f(y);
    };
    Mat4 fp1 = shift(h), fm1 = shift(-h), fp2 = shift(2 * h), fm2 = shift(-2 * h);
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r(i, j) = (-fp2(i, j) + 8.0 * fp1(i, j) - 8.0 * fm1(i, j) + fm2(i, j)) / (12.0 * h);
    return r;
}

struct Christoffel {
    // G[k](i,j) = Gamma^k_{ij}
    std::array<Mat4, 4> G{};
};

inline Christoffel christoffel_at(const MetricField& g, const Vec4& x, const Vec4& h) {
    Mat4 gm = g(x);
    Mat4 gi = gm.inverse();
    std::array<Mat4, 4> dg;
    for (int a = 0; a < 4; ++a) dg[static_cast<std::size_t>(a)] = d_matrix(g, x, a, h[static_cast<std::size_t>(a)]);
    Christoffel c;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l)
                    s += gi(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                     dg[static_cast<std::size_t>(l)](i, j));
                c.G[static_cast<std::size_t>(k)](i, j) = 0.5 * s;
            }
    return c;
}

} // namespace oracle_detail

namespace oracle_detail {

inline CovTensor riemann_single_step(const MetricField& g, const Vec4& x, Chart chart,
                                     double rel_step);

} // namespace oracle_detail

// Totally covariant Riemann tensor of the metric field at x, from finite
// differences of the Christoffel symbols with one Richardson level on top of
// 4th-order stencils. Sign and slot conventions match
// R_{abcd} = (1/2)(K_{abcd} - K_{bacd}), i.e. sec(u,v) = R(u,v,u,v)/Gram.
inline CovTensor christoffel_riemann_fd(const MetricField& g, const Vec4& x, Chart chart,
                                        double rel_step = 0.01) {
    CovTensor coarse = oracle_detail::riemann_single_step(g, x, chart, rel_step);
    CovTensor fine = oracle_detail::riemann_single_step(g, x, chart, 0.5 * rel_step);
    return fine * (16.0 / 15.0) - coarse * (1.0 / 15.0);
}

namespace oracle_detail {

inline CovTensor riemann_single_step(const MetricField& g, const Vec4& x, Chart chart,
                                     double rel_step) {
    Vec4 h;
    h[0] = rel_step * std::abs(x[0]);
    double rs = std::max(1.0, std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]));
    for (int i = 1; i < 4; ++i) h[static_cast<std::size_t>(i)] = rel_step * rs;
    if (x[0] - 2.5 * h[0] <= 0.0) h[0] = x[0] / 4.0;

    // dGamma^l_{jk} / dx^i by 4th-order differences of christoffel_at
    std::array<std::array<Mat4, 4>, 4> dG{}; // dG[i][l](j,k)
    for (int i = 0; i < 4; ++i) {
        auto gfun = [&](const Vec4& y) { return oracle_detail::christoffel_at(g, y, h); };
        double hi = h[static_cast<std::size_t>(i)];
        auto shift = [&](double s) {
            Vec4 y = x;
            y[static_cast<std::size_t>(i)] += s;
            return gfun(y);
        };
        auto cp1 = shift(hi), cm1 = shift(-hi), cp2 = shift(2 * hi), cm2 = shift(-2 * hi);
        for (int l = 0; l < 4; ++l)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    dG[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)](j, k) =
                        (-cp2.G[static_cast<std::size_t>(l)](j, k) + 8.0 * cp1.G[static_cast<std::size_t>(l)](j, k) -
                         8.0 * cm1.G[static_cast<std::size_t>(l)](j, k) + cm2.G[static_cast<std::size_t>(l)](j, k)) /
                        (12.0 * hi);
    }
    oracle_detail::Christoffel c0 = oracle_detail::christoffel_at(g, x, h);
    Mat4 gm = g(x);

    // R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
    CovTensor R(4, chart);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                    double v = dG[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)](j, k) -
                               dG[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)](i, k);
                    for (int m = 0; m < 4; ++m)
                        v += c0.G[static_cast<std::size_t>(l)](i, m) * c0.G[static_cast<std::size_t>(m)](j, k) -
                             c0.G[static_cast<std::size_t>(l)](j, m) * c0.G[static_cast<std::size_t>(m)](i, k);
                    // lower the upper slot: R_{ijkl'} = g(R(e_i,e_j) e_k, e_l')
                    for (int lp = 0; lp < 4; ++lp) R.at({i, j, k, lp}) += gm(l, lp) * v;
                }
            }
    // Match the Hessian convention sec(u,v) = R(u,v,u,v)/Gram: with the
    // standard R(u,v)w ordering above, sec = g(R(u,v)v, u)/Gram, so swap the
    // last two slots.
    CovTensor out(4, chart);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int cc = 0; cc < 4; ++cc)
                for (int d = 0; d < 4; ++d) out.at({a, b, cc, d}) = R.at({a, b, d, cc});
    return out;
}

} // namespace oracle_detail

// Moments of the squared cylindrical radius over the uniform unit ball by
// honest 3-D tensorized quadrature (radius x polar cosine x angle).
inline double ball_uniform_rho2k(int k) {
    // E[(s^2 (1 - mu^2))^k] over the ball, s = radius, mu = cos(theta)
    double num = 0.0, den = 0.0;
    for (std::size_t is = 0; is < quad::kGL31Nodes.size(); ++is) {
        double s = 0.5 * (quad::kGL31Nodes[is] + 1.0);
        double ws = 0.5 * quad::kGL31Weights[is];
        for (std::size_t im = 0; im < quad::kGL31Nodes.size(); ++im) {
            double mu = quad::kGL31Nodes[im];
            double wm = quad::kGL31Weights[im];
            // angle integral contributes 2 pi to both numerator and denominator
            double w = ws * wm * s * s;
            double rho2 = s * s * (1.0 - mu * mu);
            double p = 1.0;
            for (int i = 0; i < k; ++i) p *= rho2;
            num += w * p;
            den += w;
        }
    }
    return num / den;
}

} // namespace rotgas
