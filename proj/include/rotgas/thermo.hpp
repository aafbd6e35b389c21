#pragma once

// Thermodynamic observables of the Gibbs set (expected energy and angular
// momentum, entropy, Massieu potential) and the chart registry with the
// Jacobian data used to transport tensors out of the flat chart.

#include <array>
#include <cmath>

#include "rotgas/model.hpp"
#include "rotgas/partition.hpp"
#include "rotgas/tensor.hpp"

namespace rotgas {

struct Momenta {
    double E = 0.0; // expected energy
    Vec3 M{};       // expected angular momentum (so3*, hat-map components)
};

// Q = (E, M) = -dz: E = 3/(2 beta) + (1/2) I(theta) omega^2, M = I(theta) omega.
inline Momenta momenta(const GeneralizedTemperature& p, const GasParameters& gp) {
    p.validate();
    double theta = p.theta();
    double I = inertia(theta, gp).I;
    Momenta q;
    q.E = 1.5 / p.beta + 0.5 * I * p.omega.norm2();
    q.M = I * p.omega;
    return q;
}

struct Potentials {
    double s = 0.0; // entropy
    double z = 0.0; // Massieu potential (log-partition)
};

// s = z + beta E - beta <omega, M>; reduces to z + beta E at omega = 0.
inline Potentials entropy_and_massieu(const GeneralizedTemperature& p, const GasParameters& gp) {
    Potentials out;
    out.z = z_int(p.beta, gp) + z_rot(p.theta(), gp);
    Momenta q = momenta(p, gp);
    out.s = out.z + p.beta * q.E - p.beta * dot(p.omega, q.M);
    return out;
}

inline double massieu(const FlatPoint& x, const GasParameters& gp) {
    return z_int(x.beta, gp) + z_rot(x.theta(), gp);
}

// Jacobian data of a chart y against the flat coordinates x = (beta, r):
// first derivatives both ways plus the chart-map Hessian, which carries the
// connection coefficients of D in the chart.
struct ChartJacobian {
    Chart chart = Chart::Flat;
    Mat4 flat_by_chart = Mat4::identity();            // dx^a / dy^i
    Mat4 chart_by_flat = Mat4::identity();            // dy^i / dx^a
    std::array<Mat4, 4> d2_flat_by_chart{};           // d^2 x^a / dy^i dy^j

    // Connection coefficients of the flat connection expressed in the chart:
    // Gamma^k_ij = (dy^k/dx^a) d^2 x^a / dy^i dy^j.
    double christoffel(int k, int i, int j) const {
        double s = 0.0;
        for (int a = 0; a < 4; ++a) s += chart_by_flat(k, a) * d2_flat_by_chart[static_cast<std::size_t>(a)](i, j);
        return s;
    }
};

// d(beta, M)/d(beta, r) at a point; needs I and I' of the gas.
inline Mat4 beta_m_by_flat(const FlatPoint& x, const GasParameters& gp) {
    double theta = x.theta();
    InertiaValue iv = inertia(theta, gp);
    // M_i = -I(theta) r_i / beta, theta = r^2/beta
    Mat4 J;
    J(0, 0) = 1.0;
    for (int i = 0; i < 3; ++i) {
        double ri = x.r[i];
        // dM_i/dbeta = -I' dtheta/dbeta r_i/beta + I r_i/beta^2
        J(i + 1, 0) = iv.Iprime * (x.r.norm2() / (x.beta * x.beta)) * ri / x.beta + iv.I * ri / (x.beta * x.beta);
        for (int j = 0; j < 3; ++j) {
            double d = (i == j) ? 1.0 : 0.0;
            J(i + 1, j + 1) = -iv.Iprime * (2.0 * x.r[j] / x.beta) * ri / x.beta - iv.I * d / x.beta;
        }
    }
    return J;
}

// Jacobian data for the purely coordinate charts (no gas dependence).
inline ChartJacobian coordinate_chart_jacobian(Chart chart, const GeneralizedTemperature& p) {
    ChartJacobian cj;
    cj.chart = chart;
    double beta = p.beta;
    const Vec3& w = p.omega;
    switch (chart) {
        case Chart::Flat:
            break;
        case Chart::BetaM:
            throw std::invalid_argument("coordinate_chart_jacobian: beta-M needs the model");
        case Chart::BetaOmega: {
            // x = (beta, r = -beta omega), y = (beta, omega)
            Mat4 J;
            J(0, 0) = 1.0;
            for (int i = 0; i < 3; ++i) {
                J(i + 1, 0) = -w[i];
                J(i + 1, i + 1) = -beta;
            }
            cj.flat_by_chart = J;
            cj.chart_by_flat = J.inverse();
            for (int i = 0; i < 3; ++i) {
                cj.d2_flat_by_chart[static_cast<std::size_t>(i + 1)](0, i + 1) = -1.0;
                cj.d2_flat_by_chart[static_cast<std::size_t>(i + 1)](i + 1, 0) = -1.0;
            }
            break;
        }
        case Chart::UOmega: {
            // u = 2 beta^{-1/2}: beta = 4/u^2, r_i = -4 omega_i / u^2
            double u = 2.0 / std::sqrt(beta);
            double u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
            Mat4 J;
            J(0, 0) = -8.0 / u3;
            for (int i = 0; i < 3; ++i) {
                J(i + 1, 0) = 8.0 * w[i] / u3;
                J(i + 1, i + 1) = -4.0 / u2;
            }
            cj.flat_by_chart = J;
            cj.chart_by_flat = J.inverse();
            cj.d2_flat_by_chart[0](0, 0) = 24.0 / u4;
            for (int i = 0; i < 3; ++i) {
                cj.d2_flat_by_chart[static_cast<std::size_t>(i + 1)](0, 0) = -24.0 * w[i] / u4;
                cj.d2_flat_by_chart[static_cast<std::size_t>(i + 1)](0, i + 1) = 8.0 / u3;
                cj.d2_flat_by_chart[static_cast<std::size_t>(i + 1)](i + 1, 0) = 8.0 / u3;
            }
            break;
        }
    }
    return cj;
}

inline ChartJacobian chart_jacobian(Chart chart, const GeneralizedTemperature& p, const GasParameters& gp) {
    if (chart != Chart::BetaM) return coordinate_chart_jacobian(chart, p);
    ChartJacobian cj;
    cj.chart = chart;
    FlatPoint x = to_flat(p);
    double beta = p.beta;
    switch (chart) {
        default:
            break;
        case Chart::BetaM: {
            Mat4 Jydx = beta_m_by_flat(x, gp); // dy/dx
            cj.chart_by_flat = Jydx;
            cj.flat_by_chart = Jydx.inverse();
            // d^2 x / dy dy = -(dx/dy) d^2 y/dx dx (dx/dy)(dx/dy)
            // second derivatives of M need I'' = 2 c3(theta)
            double theta = x.theta();
            auto cm = central_moments(theta, gp, 3);
            InertiaValue iv = inertia(theta, gp);
            double I2 = 2.0 * cm[3]; // I''
            // dtheta/dx
            Vec4 dth{-theta / beta, 2.0 * x.r.x / beta, 2.0 * x.r.y / beta, 2.0 * x.r.z / beta};
            // d2 theta/dx dx (exact partials of r^2/beta)
            Mat4 d2th;
            d2th(0, 0) = 2.0 * x.r.norm2() / (beta * beta * beta);
            for (int i = 0; i < 3; ++i) {
                d2th(0, i + 1) = d2th(i + 1, 0) = -2.0 * x.r[i] / (beta * beta);
                d2th(i + 1, i + 1) = 2.0 / beta;
            }
            // y^0 = beta: second derivatives vanish. y^{i+1} = M_i = -I(theta) r_i / beta = I(theta) g_i
            // with g_i = -r_i/beta (= omega_i).
            std::array<Mat4, 4> d2y{};
            for (int i = 0; i < 3; ++i) {
                // g_i partials
                Vec4 dg{};
                dg[0] = x.r[i] / (beta * beta);
                dg[static_cast<std::size_t>(i + 1)] += -1.0 / beta;
                Mat4 d2g;
                d2g(0, 0) = -2.0 * x.r[i] / (beta * beta * beta);
                d2g(0, i + 1) = d2g(i + 1, 0) = 1.0 / (beta * beta);
                double gi = -x.r[i] / beta;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) {
                        d2y[static_cast<std::size_t>(i + 1)](a, b) =
                            I2 * dth[static_cast<std::size_t>(a)] * dth[static_cast<std::size_t>(b)] * gi +
                            iv.Iprime * (d2th(a, b) * gi + dth[static_cast<std::size_t>(a)] * dg[static_cast<std::size_t>(b)] +
                                         dth[static_cast<std::size_t>(b)] * dg[static_cast<std::size_t>(a)]) +
                            iv.I * d2g(a, b);
                    }
            }
            for (int a = 0; a < 4; ++a) {
                Mat4 acc;
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) {
                        double s = 0.0;
                        for (int b = 0; b < 4; ++b)
                            for (int cc = 0; cc < 4; ++cc)
                                for (int dd = 0; dd < 4; ++dd)
                                    s += cj.flat_by_chart(a, b) * d2y[static_cast<std::size_t>(b)](cc, dd) *
                                         cj.flat_by_chart(cc, i) * cj.flat_by_chart(dd, j);
                        acc(i, j) = -s;
                    }
                cj.d2_flat_by_chart[static_cast<std::size_t>(a)] = acc;
            }
            break;
        }
    }
    return cj;
}

// Transport a flat-chart covariant tensor into the requested chart.
inline CovTensor to_chart(const CovTensor& flat_tensor, Chart chart, const GeneralizedTemperature& p,
                          const GasParameters& gp) {
    if (chart == Chart::Flat) return flat_tensor;
    ChartJacobian cj = chart_jacobian(chart, p, gp);
    return transport(flat_tensor, cj.flat_by_chart, chart);
}

} // namespace rotgas
