#pragma once

// Closed-form reference geometry of the rotating rigid body: the Massieu
// potential phi(beta, r) = -C ln(beta) + <r, I r>/(2 beta) gives every
// covariant differential exactly, the metric is the 4-dimensional hyperbolic
// half-space of curvature -1/(4C), and the spherical case has a closed-form
// Hessian curvature tensor.

#include <cmath>
#include <stdexcept>

#include "rotgas/curvature.hpp"
#include "rotgas/linalg.hpp"
#include "rotgas/model.hpp"
#include "rotgas/tensor.hpp"
#include "rotgas/thermo.hpp"

namespace rotgas {

struct RigidBodyParams {
    double C = 1.0;    // heat capacity
    Mat3 inertia{};    // SPD inertia tensor on so3
    bool spherical = false;
    double I_scalar = 0.0; // set when spherical

    static RigidBodyParams make_spherical(double C, double I) {
        if (!(C > 0.0)) throw std::domain_error("RigidBodyParams: C must be positive");
        if (!(I > 0.0)) throw std::domain_error("RigidBodyParams: inertia must be positive");
        RigidBodyParams p;
        p.C = C;
        p.inertia = Mat3::diag(I, I, I);
        p.spherical = true;
        p.I_scalar = I;
        return p;
    }

    static RigidBodyParams make_general(double C, const Mat3& I) {
        if (!(C > 0.0)) throw std::domain_error("RigidBodyParams: C must be positive");
        Vec3 eig;
        Mat3 v;
        jacobi_eigen3(I, eig, v);
        for (int i = 0; i < 3; ++i)
            if (!(eig[i] > 0.0))
                throw std::domain_error("RigidBodyParams: inertia must be positive-definite (non-planar body)");
        RigidBodyParams p;
        p.C = C;
        p.inertia = I;
        p.spherical = false;
        return p;
    }
};

// Exact order-n partial tensor of phi = -C ln(beta) + <r, I r>/(2 beta)
// in the flat chart (beta, r).
inline CovTensor rb_z_partials(const RigidBodyParams& rb, const FlatPoint& x, int n) {
    if (n < 1 || n > kMaxOrder) throw std::domain_error("rb_z_partials: order must be in 1..5");
    Vec3 Ir = rb.inertia * x.r;
    double Q = dot(x.r, Ir);
    CovTensor t(n, Chart::Flat);
    std::array<int, kMaxOrder> idx{};
    for (std::size_t f = 0; f < t.size(); ++f) {
        CovTensor::unflatten(f, n, idx.data());
        int a = 0;
        int slots[kMaxOrder];
        int nr = 0;
        for (int s = 0; s < n; ++s) {
            if (idx[static_cast<std::size_t>(s)] == 0)
                ++a;
            else
                slots[nr++] = idx[static_cast<std::size_t>(s)] - 1;
        }
        if (nr > 2) continue;
        double sgn = (a % 2 == 0) ? 1.0 : -1.0;
        double val = 0.0;
        if (nr == 0) {
            // a >= 1 here since n >= 1
            val = rb.C * sgn * static_cast<double>(factorial(a - 1)) / std::pow(x.beta, a) +
                  0.5 * Q * sgn * static_cast<double>(factorial(a)) / std::pow(x.beta, a + 1);
        } else if (nr == 1) {
            val = Ir[slots[0]] * sgn * static_cast<double>(factorial(a)) / std::pow(x.beta, a + 1);
        } else {
            val = rb.inertia(slots[0], slots[1]) * sgn * static_cast<double>(factorial(a)) /
                  std::pow(x.beta, a + 1);
        }
        t[f] = val;
    }
    return t;
}

inline HessianTriple rb_hessian_triple(const RigidBodyParams& rb, const GeneralizedTemperature& p) {
    FlatPoint x = to_flat(p);
    return {rb_z_partials(rb, x, 2), rb_z_partials(rb, x, 3), rb_z_partials(rb, x, 4)};
}

// d(beta, M)/d(beta, r) for the rigid body: M = -I r / beta with constant I.
inline Mat4 rb_beta_m_by_flat(const RigidBodyParams& rb, const FlatPoint& x) {
    Mat4 J;
    J(0, 0) = 1.0;
    Vec3 Ir = rb.inertia * x.r;
    for (int i = 0; i < 3; ++i) {
        J(i + 1, 0) = Ir[i] / (x.beta * x.beta);
        for (int j = 0; j < 3; ++j) J(i + 1, j + 1) = -rb.inertia(i, j) / x.beta;
    }
    return J;
}

inline CovTensor rb_to_chart(const RigidBodyParams& rb, const CovTensor& flat_tensor, Chart chart,
                             const GeneralizedTemperature& p) {
    if (chart == Chart::Flat) return flat_tensor;
    if (chart == Chart::BetaM) {
        Mat4 J = rb_beta_m_by_flat(rb, to_flat(p)).inverse();
        return transport(flat_tensor, J, chart);
    }
    return transport(flat_tensor, coordinate_chart_jacobian(chart, p).flat_by_chart, chart);
}

// Hessian metric of the rigid body; beta (C dbeta^2/beta^2 ... ) in closed form.
inline CovTensor rb_metric(const RigidBodyParams& rb, const GeneralizedTemperature& p,
                           Chart chart = Chart::BetaOmega) {
    p.validate();
    return rb_to_chart(rb, rb_z_partials(rb, to_flat(p), 2), chart, p);
}

struct RbPotentials {
    double S = 0.0;   // entropy, S = C ln(E - <M, I^-1 M>/2)
    double phi = 0.0; // Massieu potential, phi = S - C + beta I(Omega,Omega)/2
};

inline RbPotentials rb_potentials(const RigidBodyParams& rb, const GeneralizedTemperature& p) {
    p.validate();
    RbPotentials out;
    double Uint = rb.C / p.beta;
    out.S = rb.C * std::log(Uint);
    out.phi = out.S - rb.C + 0.5 * p.beta * dot(p.omega, rb.inertia * p.omega);
    return out;
}

struct RbMomenta {
    double E = 0.0;
    Vec3 M{};
};

inline RbMomenta rb_momenta(const RigidBodyParams& rb, const GeneralizedTemperature& p) {
    RbMomenta q;
    q.M = rb.inertia * p.omega;
    q.E = rb.C / p.beta + 0.5 * dot(p.omega, q.M);
    return q;
}

// Entropy as a function of the dual coordinates (E, M).
inline double rb_entropy_em(const RigidBodyParams& rb, double E, const Vec3& M) {
    Mat3 Iinv = rb.inertia.inverse();
    double W = E - 0.5 * dot(M, Iinv * M);
    if (!(W > 0.0)) throw std::domain_error("rb_entropy_em: non-positive internal energy");
    return rb.C * std::log(W);
}

// Exact order-n partial tensor of the dual potential -S = -C ln(W),
// W = E - <M, I^-1 M>/2, in the (E, M) coordinates. This is the potential of
// the dual Hessian structure, whose Hessian sectional curvature is the
// constant 1/C.
inline CovTensor rb_dual_partials(const RigidBodyParams& rb, double E, const Vec3& M, int n) {
    if (n < 1 || n > 4) throw std::domain_error("rb_dual_partials: order must be in 1..4");
    Mat3 Iinv = rb.inertia.inverse();
    Vec3 IinvM = Iinv * M;
    double W = E - 0.5 * dot(M, IinvM);
    if (!(W > 0.0)) throw std::domain_error("rb_dual_partials: non-positive internal energy");

    // W_a and W_ab in (E, M) coordinates; higher derivatives vanish.
    Vec4 W1{1.0, -IinvM.x, -IinvM.y, -IinvM.z};
    Mat4 W2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) W2(i + 1, j + 1) = -Iinv(i, j);

    double C = rb.C;
    CovTensor t(n, Chart::BetaM); // components in (E, M) coordinate order
    auto w1 = [&](int a) { return W1[static_cast<std::size_t>(a)]; };
    if (n == 1) {
        for (int a = 0; a < 4; ++a) t.at({a}) = -C * w1(a) / W;
    } else if (n == 2) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) t.at({a, b}) = -C * (W2(a, b) / W - w1(a) * w1(b) / (W * W));
    } else if (n == 3) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    t.at({a, b, c}) =
                        -C * (-(W2(a, b) * w1(c) + W2(a, c) * w1(b) + W2(b, c) * w1(a)) / (W * W) +
                              2.0 * w1(a) * w1(b) * w1(c) / (W * W * W));
    } else {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        double pair2 = W2(a, b) * W2(c, d) + W2(a, c) * W2(b, d) + W2(a, d) * W2(b, c);
                        double pair1 = W2(a, b) * w1(c) * w1(d) + W2(a, c) * w1(b) * w1(d) +
                                       W2(a, d) * w1(b) * w1(c) + W2(b, c) * w1(a) * w1(d) +
                                       W2(b, d) * w1(a) * w1(c) + W2(c, d) * w1(a) * w1(b);
                        t.at({a, b, c, d}) =
                            -C * (-pair2 / (W * W) + 2.0 * pair1 / (W * W * W) -
                                  6.0 * w1(a) * w1(b) * w1(c) * w1(d) / (W * W * W * W));
                    }
    }
    return t;
}

// Generic-pipeline Hessian curvature of the rigid body (spherical only;
// the closed form below has no general-inertia counterpart).
inline CovTensor rb_hessian_curvature(const RigidBodyParams& rb, const GeneralizedTemperature& p,
                                      Chart chart = Chart::UOmega) {
    if (!rb.spherical)
        throw std::invalid_argument("rb_hessian_curvature: closed form requires spherical inertia");
    CovTensor K = hessian_curvature_tensor(rb_hessian_triple(rb, p));
    return rb_to_chart(rb, K, chart, p);
}

// Closed-form K of the spherical rigid body in the (u, omega) chart:
//   (u^4/16) K = C du^4 - (I^2/2C) dw_i dw_j dw^i dw^j + (I/2)(four du-du-<dw|dw> patterns).
// The du^4 coefficient is C, pinned by the finite-difference oracle and by
// the exact partial derivatives of the potential.
inline CovTensor rb_closed_form_K(const RigidBodyParams& rb, const GeneralizedTemperature& p) {
    if (!rb.spherical) throw std::invalid_argument("rb_closed_form_K: spherical inertia required");
    double u = 2.0 / std::sqrt(p.beta);
    double pref = 16.0 / (u * u * u * u);
    double C = rb.C, I = rb.I_scalar;
    CovTensor K(4, Chart::UOmega);
    K.at({0, 0, 0, 0}) = pref * C;
    for (int i = 1; i < 4; ++i)
        for (int j = 1; j < 4; ++j) {
            // X: <dw_a, dw_c><dw_b, dw_d>
            K.at({i, j, i, j}) += pref * (-0.5 * I * I / C);
            if (i == j) {
                K.at({0, 0, i, i}) += pref * 0.5 * I; // T1
                K.at({i, 0, 0, i}) += pref * 0.5 * I; // T2
                K.at({0, i, i, 0}) += pref * 0.5 * I; // T3
                K.at({i, i, 0, 0}) += pref * 0.5 * I; // T4
            }
        }
    return K;
}

// Poisson leaf conformal factor: M^* Lambda_{so3*} = (1/I) Lambda_{so3}.
inline double rb_poisson_leaf_factor(const RigidBodyParams& rb, const GeneralizedTemperature&) {
    if (!rb.spherical) throw std::invalid_argument("rb_poisson_leaf_factor: spherical inertia required");
    return 1.0 / rb.I_scalar;
}

// Total symplectic area of the leaf through |omega| = rho: 4 pi I rho.
inline double rb_leaf_symplectic_area(const RigidBodyParams& rb, double rho) {
    if (!rb.spherical) throw std::invalid_argument("rb_leaf_symplectic_area: spherical inertia required");
    return 4.0 * kPi * rb.I_scalar * rho;
}

// Pullback of the hyperbolic half-space metric (4C/u~^2)(du~^2 + <dW~|dW~>)
// through (beta, Omega) -> (u~ = 2 sqrt(C/beta), W~ = sqrt(I) Omega),
// expressed in the (beta, omega) chart. Equals rb_metric there: the map is
// the isometry onto the half space.
inline CovTensor rb_halfspace_pullback_metric(const RigidBodyParams& rb, const GeneralizedTemperature& p) {
    double beta = p.beta;
    double ut = 2.0 * std::sqrt(rb.C / beta);
    Mat3 sqI = sym_sqrt(rb.inertia);
    // Jacobian of y = (u~, W~) against x = (beta, Omega)
    Mat4 J; // dy/dx
    J(0, 0) = -std::sqrt(rb.C) * std::pow(beta, -1.5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) J(i + 1, j + 1) = sqI(i, j);
    double conf = 4.0 * rb.C / (ut * ut);
    CovTensor g(2, Chart::BetaOmega);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += J(k, a) * J(k, b);
            g.at({a, b}) = conf * s;
        }
    return g;
}

} // namespace rotgas
