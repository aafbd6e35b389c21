#pragma once

// Poisson bracket induced on the Gibbs set by the momentum coordinates:
// {f1, f2} = < Q, [grad_g f1, grad_g f2] > with the Lie bracket of
// R x so3 acting on the r-components as the cross product. The orientation
// is fixed so that {M_x, M_y} = +M_z under the hat-map identification.

#include <functional>
#include <optional>

#include "rotgas/covderiv.hpp"
#include "rotgas/curvature.hpp"
#include "rotgas/model.hpp"
#include "rotgas/thermo.hpp"

namespace rotgas {

// Scalar observable on the Gibbs set, given in the flat chart (beta, r).
// If no gradient is supplied it is taken by central differences with the
// covderiv step policy.
struct ObservableFn {
    std::function<double(const FlatPoint&)> value;
    std::optional<std::function<Vec4(const FlatPoint&)>> gradient;

    Vec4 grad(const FlatPoint& x) const {
        if (gradient) return (*gradient)(x);
        CovTensor d = fd_differential(value, x, 1);
        return {d.at({0}), d.at({1}), d.at({2}), d.at({3})};
    }
};

// Everything the bracket needs at one point.
struct PoissonContext {
    Mat4 g_inv; // inverse Hessian metric, flat chart
    Vec3 M;     // expected angular momentum
};

inline PoissonContext gas_poisson_context(const GeneralizedTemperature& p, const GasParameters& gp) {
    PoissonContext ctx;
    ctx.g_inv = metric_inverse(cov_diff_z(2, p, gp));
    ctx.M = momenta(p, gp).M;
    return ctx;
}

inline double bracket_with(const PoissonContext& ctx, const Vec4& df1, const Vec4& df2) {
    Vec4 w1 = ctx.g_inv * df1;
    Vec4 w2 = ctx.g_inv * df2;
    Vec3 a{w1[1], w1[2], w1[3]};
    Vec3 b{w2[1], w2[2], w2[3]};
    return dot(ctx.M, cross(a, b));
}

inline double bracket(const ObservableFn& f1, const ObservableFn& f2, const GeneralizedTemperature& p,
                      const GasParameters& gp) {
    FlatPoint x = to_flat(p);
    PoissonContext ctx = gas_poisson_context(p, gp);
    return bracket_with(ctx, f1.grad(x), f2.grad(x));
}

// Conformal factor of the Poisson structure against the reference structure
// of R_{>0} x so3: Lambda = (1/I(beta omega^2)) Lambda_ref.
inline double leaf_factor(const GeneralizedTemperature& p, const GasParameters& gp) {
    return 1.0 / inertia(p.theta(), gp).I;
}

// Observables for the components of M = I(theta) omega, with exact gradients.
inline ObservableFn angular_momentum_observable(int axis, const GasParameters& gp) {
    ObservableFn f;
    f.value = [axis, gp](const FlatPoint& x) {
        double I = inertia(x.theta(), gp).I;
        return -I * x.r[axis] / x.beta;
    };
    f.gradient = [axis, gp](const FlatPoint& x) {
        InertiaValue iv = inertia(x.theta(), gp);
        double beta = x.beta;
        double ri = x.r[axis];
        Vec4 g{};
        // M_i = -I(theta) r_i / beta, theta = r^2/beta
        g[0] = iv.Iprime * (x.r.norm2() / (beta * beta)) * ri / beta + iv.I * ri / (beta * beta);
        for (int j = 0; j < 3; ++j) {
            double d = (axis == j) ? 1.0 : 0.0;
            g[static_cast<std::size_t>(j + 1)] = -iv.Iprime * (2.0 * x.r[j] / beta) * ri / beta - iv.I * d / beta;
        }
        return g;
    };
    return f;
}

} // namespace rotgas
