#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rotgas/covderiv.hpp"
#include "rotgas/oracles.hpp"
#include "rotgas/poisson.hpp"
#include "rotgas/rigidbody.hpp"

using namespace rotgas;

namespace {

Mat3 test_inertia() {
    Mat3 I;
    I(0, 0) = 1.3;
    I(1, 1) = 0.7;
    I(2, 2) = 2.1;
    I(0, 1) = I(1, 0) = 0.2;
    I(0, 2) = I(2, 0) = -0.1;
    I(1, 2) = I(2, 1) = 0.15;
    return I;
}

GeneralizedTemperature random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ub(0.4, 2.2), uw(-1.2, 1.2);
    return {ub(rng), {uw(rng), uw(rng), uw(rng)}};
}

} // namespace

TEST(RigidBody, ParameterValidation) {
    EXPECT_THROW(RigidBodyParams::make_spherical(0.0, 1.0), std::domain_error);
    EXPECT_THROW(RigidBodyParams::make_spherical(1.0, -1.0), std::domain_error);
    Mat3 planar = Mat3::diag(1.0, 1.0, 0.0);
    EXPECT_THROW(RigidBodyParams::make_general(1.0, planar), std::domain_error);
}

TEST(RigidBody, MetricAtRest) {
    auto rb = RigidBodyParams::make_spherical(1.5, 1.0);
    CovTensor g = rb_metric(rb, {1.0, {0, 0, 0}}, Chart::BetaOmega);
    EXPECT_NEAR(g.at({0, 0}), 1.5, 1e-14);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(g.at({i, i}), 1.0, 1e-14);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) { EXPECT_NEAR(g.at({i, j}), 0.0, 1e-14); }
}

TEST(RigidBody, OmegaBlockIsBetaTimesInertia) {
    auto rb = RigidBodyParams::make_general(2.0, test_inertia());
    std::mt19937_64 rng(51);
    for (int t = 0; t < 5; ++t) {
        GeneralizedTemperature p = random_point(rng);
        CovTensor g = rb_metric(rb, p, Chart::BetaOmega);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                EXPECT_NEAR(g.at({i + 1, j + 1}), p.beta * rb.inertia(i, j), 1e-12);
    }
}

TEST(RigidBody, HalfSpaceIsometry) {
    std::mt19937_64 rng(52);
    for (int body = 0; body < 2; ++body) {
        RigidBodyParams rb = body == 0 ? RigidBodyParams::make_spherical(1.5, 1.0)
                                       : RigidBodyParams::make_general(0.8, test_inertia());
        for (int t = 0; t < 5; ++t) {
            GeneralizedTemperature p = random_point(rng);
            CovTensor g = rb_metric(rb, p, Chart::BetaOmega);
            CovTensor h = rb_halfspace_pullback_metric(rb, p);
            EXPECT_LT((g - h).frobenius_norm() / g.frobenius_norm(), 1e-12);
        }
    }
}

TEST(RigidBody, Potentials) {
    auto rb = RigidBodyParams::make_spherical(1.5, 2.0);
    GeneralizedTemperature p{0.8, {0.3, -0.2, 0.5}};
    RbPotentials pot = rb_potentials(rb, p);
    double expect_phi = pot.S - rb.C + 0.5 * p.beta * rb.I_scalar * p.omega.norm2();
    EXPECT_DOUBLE_EQ(pot.phi, expect_phi);
    // phi is the potential whose exact partials drive the geometry
    FlatPoint x = to_flat(p);
    ScalarField phi_field = [&rb](const FlatPoint& q) {
        auto pt = from_flat(q);
        return rb_potentials(rb, pt).phi;
    };
    CovTensor fd = fd_differential(phi_field, x, 2);
    CovTensor exact = rb_z_partials(rb, x, 2);
    EXPECT_LT((fd - exact).frobenius_norm() / exact.frobenius_norm(), 1e-7);
    EXPECT_THROW(rb_entropy_em(rb, 0.0, {0, 0, 0}), std::domain_error);
}

TEST(RigidBody, EntropyDifferentialInDualCoordinates) {
    // dS = beta dE - beta <omega, dM>: gradient of S(E, M) is (beta, -beta omega) = (beta, r).
    auto rb = RigidBodyParams::make_general(1.2, test_inertia());
    std::mt19937_64 rng(53);
    for (int t = 0; t < 5; ++t) {
        GeneralizedTemperature p = random_point(rng);
        auto q = rb_momenta(rb, p);
        CovTensor dS = rb_dual_partials(rb, q.E, q.M, 1) * -1.0; // partials of -S
        EXPECT_NEAR(dS.at({0}), p.beta, 1e-10 * p.beta);
        FlatPoint x = to_flat(p);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(dS.at({i + 1}), x.r[i], 1e-10 * (1.0 + std::abs(x.r[i])));
    }
}

TEST(RigidBody, LegendreDualityOfTheMetric) {
    // Hessian of -S in (E, M) coordinates = metric components in the (E, M)
    // chart = inverse of the flat-chart metric matrix.
    auto rb = RigidBodyParams::make_spherical(1.0, 1.0);
    GeneralizedTemperature p{1.0, {0, 0, 0}};
    auto q = rb_momenta(rb, p);
    CovTensor hess = rb_dual_partials(rb, q.E, q.M, 2);
    Mat4 expect = tensor_to_mat(rb_z_partials(rb, to_flat(p), 2)).inverse();
    // at C = I = 1, beta = 1, omega = 0 this is the identity
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            EXPECT_NEAR(hess.at({i, j}), expect(i, j), 1e-12);
            EXPECT_NEAR(hess.at({i, j}), i == j ? 1.0 : 0.0, 1e-12);
        }

    std::mt19937_64 rng(54);
    auto rbg = RigidBodyParams::make_general(1.7, test_inertia());
    for (int t = 0; t < 5; ++t) {
        GeneralizedTemperature pt = random_point(rng);
        auto qq = rb_momenta(rbg, pt);
        CovTensor dual_exact = rb_dual_partials(rbg, qq.E, qq.M, 2);
        Mat4 inv = tensor_to_mat(rb_z_partials(rbg, to_flat(pt), 2)).inverse();
        double dev = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) dev = std::max(dev, std::abs(dual_exact.at({i, j}) - inv(i, j)));
        EXPECT_LT(dev, 1e-8 * (1.0 + tensor_to_mat(dual_exact)(0, 0)));
        // and against a finite-difference Hessian of -S(E, M)
        ScalarField negS = [&rbg](const FlatPoint& em) {
            return -rb_entropy_em(rbg, em.beta, em.r);
        };
        FlatPoint em{qq.E, qq.M};
        CovTensor fd = fd_differential(negS, em, 2, 1e-3);
        fd.set_chart(Chart::BetaM);
        EXPECT_LT((fd - dual_exact).frobenius_norm() / dual_exact.frobenius_norm(), 1e-8);
    }
}

TEST(RigidBody, HessianCurvatureClosedForm) {
    std::mt19937_64 rng(55);
    auto rb = RigidBodyParams::make_spherical(1.5, 1.0);
    for (int t = 0; t < 10; ++t) {
        GeneralizedTemperature p = random_point(rng);
        CovTensor K = rb_hessian_curvature(rb, p, Chart::UOmega);
        CovTensor Kc = rb_closed_form_K(rb, p);
        EXPECT_LT((K - Kc).frobenius_norm() / Kc.frobenius_norm(), 1e-9);
    }
    auto rbg = RigidBodyParams::make_general(1.5, test_inertia());
    EXPECT_THROW(rb_hessian_curvature(rbg, {1.0, {0, 0, 0}}), std::invalid_argument);
    EXPECT_THROW(rb_closed_form_K(rbg, {1.0, {0, 0, 0}}), std::invalid_argument);
}

TEST(RigidBody, ConstantSectionalCurvature) {
    auto rb = RigidBodyParams::make_spherical(1.5, 1.0);
    std::mt19937_64 rng(56);
    for (int t = 0; t < 5; ++t) {
        GeneralizedTemperature p = random_point(rng);
        HessianTriple ht = rb_hessian_triple(rb, p);
        CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
        auto se = sectional_extrema(R, ht.g, 20, 9 + t);
        EXPECT_NEAR(se.min, -1.0 / 6.0, 1e-9);
        EXPECT_NEAR(se.max, -1.0 / 6.0, 1e-9);
    }
}

TEST(RigidBody, FdSectionalCurvatureHyperbolic) {
    // the acceptance-criterion pattern: FD Riemann from the metric field alone
    std::mt19937_64 rng(57);
    for (double C : {0.5, 1.5, 3.0}) {
        for (int body = 0; body < 2; ++body) {
            RigidBodyParams rb = body == 0 ? RigidBodyParams::make_spherical(C, 1.2)
                                           : RigidBodyParams::make_general(C, test_inertia());
            MetricField mf = [&rb](const Vec4& x) {
                return tensor_to_mat(rb_z_partials(rb, FlatPoint::from_coords(x), 2));
            };
            for (int t = 0; t < 4; ++t) {
                GeneralizedTemperature p = random_point(rng);
                HessianTriple ht = rb_hessian_triple(rb, p);
                CovTensor R = christoffel_riemann_fd(mf, to_flat(p).coords(), Chart::Flat);
                auto se = sectional_extrema(R, ht.g, 10, 100 + t);
                EXPECT_NEAR(se.min, -1.0 / (4.0 * C), 1e-8);
                EXPECT_NEAR(se.max, -1.0 / (4.0 * C), 1e-8);
            }
        }
    }
}

TEST(RigidBody, DualHessianSectional) {
    std::mt19937_64 rng(58);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (double C : {0.5, 1.5, 3.0}) {
        auto rb = RigidBodyParams::make_spherical(C, 1.0);
        GeneralizedTemperature p = random_point(rng);
        auto q = rb_momenta(rb, p);
        HessianTriple dual{rb_dual_partials(rb, q.E, q.M, 2), rb_dual_partials(rb, q.E, q.M, 3),
                           rb_dual_partials(rb, q.E, q.M, 4)};
        CovTensor K = hessian_curvature_tensor(dual);
        for (int t = 0; t < 5; ++t) {
            CovTensor h(2, Chart::BetaM);
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    double v = ud(rng);
                    h.at({i, j}) = v;
                    h.at({j, i}) = v;
                }
            EXPECT_NEAR(hessian_sectional(K, dual.g, h) * C, 1.0, 1e-8);
        }
    }
}

TEST(RigidBody, PoissonLeafFactorAndArea) {
    auto rb2 = RigidBodyParams::make_spherical(1.0, 2.0);
    EXPECT_DOUBLE_EQ(rb_poisson_leaf_factor(rb2, {1.0, {0, 0, 1}}), 0.5);
    auto rb1 = RigidBodyParams::make_spherical(1.0, 1.0);
    EXPECT_DOUBLE_EQ(rb_poisson_leaf_factor(rb1, {1.0, {0, 0, 1}}), 1.0);

    // {omega_i, omega_j} = (1/I) eps_ijk omega_k under the bracket, hence the
    // leaf through |omega| = rho has symplectic area 4 pi I rho.
    auto rb = RigidBodyParams::make_spherical(1.3, 1.7);
    GeneralizedTemperature p{0.9, {0.5, -0.3, 0.8}};
    FlatPoint x = to_flat(p);
    PoissonContext ctx;
    ctx.g_inv = tensor_to_mat(rb_z_partials(rb, x, 2)).inverse();
    ctx.M = rb_momenta(rb, p).M;
    auto grad_omega = [&](int i) {
        Vec4 g{};
        g[0] = -p.omega[i] / p.beta; // d(-r_i/beta)/dbeta = r_i/beta^2 = -omega_i/beta
        g[static_cast<std::size_t>(i + 1)] = -1.0 / p.beta;
        return g;
    };
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        double br = bracket_with(ctx, grad_omega(i), grad_omega(j));
        EXPECT_NEAR(br, p.omega[k] / rb.I_scalar, 1e-12 * (1.0 + std::abs(p.omega[k])));
    }
    EXPECT_NEAR(rb_leaf_symplectic_area(rb, p.omega.norm()), 4.0 * kPi * 1.7 * p.omega.norm(), 1e-12);
}

TEST(RigidBody, GasLimitIdentifiesInertiaFactor) {
    // The displayed limit tensors force I_inf = m R^2; the closing remark's
    // figure (1/2) m R^2 does not fit them. Surface the discrepancy.
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0, 0, 100.0}};
    CovTensor g = metric(p, gp, Chart::UOmega);
    CovTensor good = rb_metric(RigidBodyParams::make_spherical(3.0, gp.m * gp.R * gp.R), p, Chart::UOmega);
    CovTensor bad = rb_metric(RigidBodyParams::make_spherical(3.0, 0.5 * gp.m * gp.R * gp.R), p, Chart::UOmega);
    double dev_good = (g - good).frobenius_norm() / good.frobenius_norm();
    double dev_bad = (g - bad).frobenius_norm() / bad.frobenius_norm();
    EXPECT_LT(dev_good, 0.05);
    EXPECT_GT(dev_bad, 0.2);
}
