#pragma once

// Hessian curvature K = (1/2)(D^2 g - g^{ef} Dg Dg), the Riemann tensor
// R_{abcd} = (1/2)(K_{abcd} - K_{bacd}), sectional curvatures, and the
// Kulkarni-Nomizu comparison behind the asymptotic hyperbolicity statement.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rotgas/covderiv.hpp"
#include "rotgas/tensor.hpp"
#include "rotgas/thermo.hpp"

namespace rotgas {

// The three Hessian differentials of a potential in one flat chart:
// g = D^2 z, Dg = D^3 z, D^2 g = D^4 z.
struct HessianTriple {
    CovTensor g;   // order 2
    CovTensor dg;  // order 3
    CovTensor d2g; // order 4
};

inline Mat4 metric_inverse(const CovTensor& g) { return tensor_to_mat(g).inverse(); }

// K_{abcd} = 1/2 ( (D^2 g)_{abcd} - g^{ef} (Dg)_{ace} (Dg)_{bdf} ).
inline CovTensor hessian_curvature_tensor(const HessianTriple& h) {
    Mat4 gi = metric_inverse(h.g);
    CovTensor K(4, h.g.chart());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int e = 0; e < 4; ++e)
                        for (int f = 0; f < 4; ++f)
                            s += gi(e, f) * h.dg.at({a, c, e}) * h.dg.at({b, d, f});
                    K.at({a, b, c, d}) = 0.5 * (h.d2g.at({a, b, c, d}) - s);
                }
    return K;
}

inline CovTensor riemann_from_curvature(const CovTensor& K) {
    CovTensor R(4, K.chart());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    R.at({a, b, c, d}) = 0.5 * (K.at({a, b, c, d}) - K.at({b, a, c, d}));
    return R;
}

// Riem(u,v,u,v) / (|u|^2 |v|^2 - g(u,v)^2); rejects near-degenerate planes.
inline double sectional(const CovTensor& riem, const CovTensor& g, const Vec4& u, const Vec4& v) {
    Mat4 gm = tensor_to_mat(g);
    auto ip = [&](const Vec4& a, const Vec4& b) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += gm(i, j) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
        return s;
    };
    double uu = ip(u, u), vv = ip(v, v), uv = ip(u, v);
    double gram = uu * vv - uv * uv;
    if (!(gram > 1e-12 * uu * vv)) throw std::invalid_argument("sectional: degenerate plane");
    double num = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    num += riem.at({a, b, c, d}) * u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)] *
                           u[static_cast<std::size_t>(c)] * v[static_cast<std::size_t>(d)];
    return num / gram;
}

// kappa(h) = K_{abcd} h^{ac} h^{bd} / |h|^2 for symmetric covariant h.
inline double hessian_sectional(const CovTensor& K, const CovTensor& g, const CovTensor& h) {
    if (h.order() != 2) throw std::invalid_argument("hessian_sectional: h must have order 2");
    Mat4 gi = metric_inverse(g);
    Mat4 hm = tensor_to_mat(h);
    Mat4 hup; // h with both indices raised
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += gi(a, i) * gi(b, j) * hm(i, j);
            hup(a, b) = s;
        }
    double norm2 = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) norm2 += hup(a, b) * hm(a, b);
    if (!(norm2 > 0.0)) throw std::invalid_argument("hessian_sectional: h must be nonzero");
    double num = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) num += K.at({a, b, c, d}) * hup(a, c) * hup(b, d);
    return num / norm2;
}

// Kulkarni-Nomizu product of two symmetric 2-tensors:
// (h ^ k)_{abcd} = h_ac k_bd + h_bd k_ac - h_ad k_bc - h_bc k_ad.
inline CovTensor kulkarni_nomizu(const CovTensor& h, const CovTensor& k) {
    CovTensor out(4, h.chart());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    out.at({a, b, c, d}) = h.at({a, c}) * k.at({b, d}) + h.at({b, d}) * k.at({a, c}) -
                                           h.at({a, d}) * k.at({b, c}) - h.at({b, c}) * k.at({a, d});
    return out;
}

// | Riem + (1/12) (g^g)/2 | / |Riem| in Frobenius norm; the constant
// -1/12 curvature model of the high-velocity limit.
inline double kn_deviation(const CovTensor& riem, const CovTensor& g) {
    CovTensor model = kulkarni_nomizu(g, g) * (1.0 / 24.0);
    CovTensor diff = riem + model;
    return diff.frobenius_norm() / riem.frobenius_norm();
}

// ---------------------------------------------------------------------------
// Gas geometry entry points.
// ---------------------------------------------------------------------------

inline HessianTriple gas_hessian_triple(const GeneralizedTemperature& p, const GasParameters& gp) {
    return {cov_diff_z(2, p, gp), cov_diff_z(3, p, gp), cov_diff_z(4, p, gp)};
}

// Fisher-Rao metric of the Gibbs set in the requested chart.
inline CovTensor metric(const GeneralizedTemperature& p, const GasParameters& gp, Chart chart = Chart::Flat) {
    return to_chart(cov_diff_z(2, p, gp), chart, p, gp);
}

// Closed-form metric (3/2) dbeta^2/beta^2 + beta I <domega|domega> +
// (I'/2) dtheta (x) dtheta, assembled in the flat chart. Used as a
// cross-check of the Faa di Bruno order-2 output.
inline CovTensor metric_closed_form(const GeneralizedTemperature& p, const GasParameters& gp) {
    FlatPoint x = to_flat(p);
    InertiaValue iv = inertia(x.theta(), gp);
    VectorValuedForm domega(ValueSpace::So3, 1, Chart::Flat);
    for (int i = 0; i < 3; ++i) {
        Vec4 comp{};
        comp[0] = x.r[i] / (x.beta * x.beta);
        comp[static_cast<std::size_t>(i + 1)] = -1.0 / x.beta;
        domega.component(i) = covector(comp);
    }
    CovTensor dodo = contract(domega, domega);
    CovTensor dbeta = covector({1.0, 0.0, 0.0, 0.0});
    CovTensor dtheta = theta_partials(1, x);
    CovTensor g = tensor_product(dbeta, dbeta) * (1.5 / (x.beta * x.beta));
    g += dodo * (x.beta * iv.I);
    g += tensor_product(dtheta, dtheta) * (0.5 * iv.Iprime);
    return g;
}

inline CovTensor hessian_curvature(const GeneralizedTemperature& p, const GasParameters& gp,
                                   Chart chart = Chart::Flat) {
    CovTensor K = hessian_curvature_tensor(gas_hessian_triple(p, gp));
    return to_chart(K, chart, p, gp);
}

inline CovTensor riemann(const GeneralizedTemperature& p, const GasParameters& gp,
                         Chart chart = Chart::Flat) {
    CovTensor R = riemann_from_curvature(hessian_curvature_tensor(gas_hessian_triple(p, gp)));
    return to_chart(R, chart, p, gp);
}

struct SectionalSample {
    double min = 0.0;
    double max = 0.0;
    int planes = 0;
};

// Extrema of the sectional curvature over the 6 coordinate planes plus
// `n_random` seeded random planes.
inline SectionalSample sectional_extrema(const CovTensor& riem, const CovTensor& g, int n_random,
                                         unsigned long long seed) {
    SectionalSample s;
    s.min = 1e300;
    s.max = -1e300;
    auto consider = [&](const Vec4& u, const Vec4& v) {
        Mat4 gm = tensor_to_mat(g);
        double uu = 0, vv = 0, uv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                uu += gm(i, j) * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
                vv += gm(i, j) * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
                uv += gm(i, j) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
            }
        if (!(uu * vv - uv * uv > 1e-12 * uu * vv)) return;
        double k = sectional(riem, g, u, v);
        s.min = std::min(s.min, k);
        s.max = std::max(s.max, k);
        ++s.planes;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Vec4 u{}, v{};
            u[static_cast<std::size_t>(i)] = 1.0;
            v[static_cast<std::size_t>(j)] = 1.0;
            consider(u, v);
        }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int t = 0; t < n_random; ++t) {
        Vec4 u, v;
        for (int i = 0; i < 4; ++i) {
            u[static_cast<std::size_t>(i)] = dist(rng);
            v[static_cast<std::size_t>(i)] = dist(rng);
        }
        consider(u, v);
    }
    return s;
}

struct CurvatureReport {
    GeneralizedTemperature point;
    Chart chart = Chart::Flat;
    CovTensor g, g_inv, Dg, D2g, K, Riem;
    SectionalSample sect;
    double kn_dev = 0.0;
};

inline CurvatureReport curvature_report(const GeneralizedTemperature& p, const GasParameters& gp,
                                        Chart chart, int n_planes = 50,
                                        unsigned long long seed = 20240913ull) {
    CurvatureReport rep;
    rep.point = p;
    rep.chart = chart;
    HessianTriple ht = gas_hessian_triple(p, gp);
    CovTensor Kf = hessian_curvature_tensor(ht);
    CovTensor Rf = riemann_from_curvature(Kf);
    rep.sect = sectional_extrema(Rf, ht.g, n_planes, seed); // chart-invariant scalars
    rep.kn_dev = kn_deviation(Rf, ht.g);
    rep.g = to_chart(ht.g, chart, p, gp);
    rep.Dg = to_chart(ht.dg, chart, p, gp);
    rep.D2g = to_chart(ht.d2g, chart, p, gp);
    rep.K = to_chart(Kf, chart, p, gp);
    rep.Riem = to_chart(Rf, chart, p, gp);
    rep.g_inv = mat_to_tensor(metric_inverse(rep.g), chart);
    return rep;
}

} // namespace rotgas
