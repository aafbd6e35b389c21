#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rotgas/curvature.hpp"
#include "rotgas/json_io.hpp"
#include "rotgas/oracles.hpp"
#include "rotgas/rigidbody.hpp"

using namespace rotgas;

namespace {

GeneralizedTemperature random_point(std::mt19937_64& rng, double wlo = 0.2, double whi = 2.5) {
    std::uniform_real_distribution<double> ub(0.5, 2.0), uw(wlo, whi), ud(-1.0, 1.0);
    Vec3 dir{ud(rng), ud(rng), ud(rng)};
    double n = dir.norm();
    if (n < 1e-9) dir = {1, 0, 0}, n = 1.0;
    return {ub(rng), (uw(rng) / n) * dir};
}

} // namespace

TEST(Curvature, MetricEqualsClosedForm) {
    GasParameters gp;
    std::mt19937_64 rng(41);
    for (int t = 0; t < 6; ++t) {
        GeneralizedTemperature p = random_point(rng);
        CovTensor a = cov_diff_z(2, p, gp);
        CovTensor b = metric_closed_form(p, gp);
        EXPECT_LT((a - b).frobenius_norm() / a.frobenius_norm(), 1e-9);
    }
}

TEST(Curvature, MetricInBetaOmegaChartAtRest) {
    GasParameters gp;
    CovTensor g = metric({1.0, {0, 0, 0}}, gp, Chart::BetaOmega);
    EXPECT_NEAR(g.at({0, 0}), 1.5, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(g.at({i, i}), 0.4, 1e-12);
}

TEST(Curvature, BetaMChartBlockStructure) {
    GasParameters gp;
    std::mt19937_64 rng(42);
    for (int t = 0; t < 5; ++t) {
        GeneralizedTemperature p = random_point(rng, 0.3, 3.0);
        CovTensor g = metric(p, gp, Chart::BetaM);
        double scale = g.max_abs();
        for (int i = 1; i < 4; ++i) {
            EXPECT_LT(std::abs(g.at({0, i})) / scale, 1e-9);
            EXPECT_LT(std::abs(g.at({i, 0})) / scale, 1e-9);
        }
        double theta = p.theta();
        InertiaValue iv = inertia(theta, gp);
        double den = 2.0 * theta * iv.Iprime + iv.I;
        double gbb = (1.5 + 0.5 * iv.I * theta * theta * iv.Iprime / den) / (p.beta * p.beta);
        EXPECT_NEAR(g.at({0, 0}), gbb, 1e-9 * scale);
        // M block: (beta/I) transverse to M, beta/(2 theta I' + I) along M
        Vec3 M = momenta(p, gp).M;
        double M2 = M.norm2();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double mij = M[i] * M[j] / M2;
                double expect = (p.beta / iv.I) * ((i == j ? 1.0 : 0.0) - mij) + (p.beta / den) * mij;
                EXPECT_NEAR(g.at({i + 1, j + 1}), expect, 1e-9 * scale);
            }
    }
}

TEST(Curvature, ChartIndependentScalars) {
    GasParameters gp;
    GeneralizedTemperature p{1.2, {0.4, -0.3, 0.8}};
    CovTensor gf = metric(p, gp, Chart::Flat);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (Chart c : {Chart::BetaOmega, Chart::UOmega, Chart::BetaM}) {
        ChartJacobian cj = chart_jacobian(c, p, gp);
        CovTensor gc = metric(p, gp, c);
        for (int t = 0; t < 5; ++t) {
            Vec4 u{ud(rng), ud(rng), ud(rng), ud(rng)};
            Vec4 v{ud(rng), ud(rng), ud(rng), ud(rng)};
            // transport vector components into the chart: y = (dy/dx) x
            Vec4 uc = cj.chart_by_flat * u;
            Vec4 vc = cj.chart_by_flat * v;
            double a = 0.0, b = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    a += gf.at({i, j}) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
                    b += gc.at({i, j}) * uc[static_cast<std::size_t>(i)] * vc[static_cast<std::size_t>(j)];
                }
            EXPECT_NEAR(b, a, 1e-10 * std::abs(a)) << chart_name(c);
        }
    }
}

TEST(Curvature, RiemannSymmetriesAndBianchi) {
    GasParameters gp;
    std::mt19937_64 rng(44);
    std::vector<GeneralizedTemperature> pts;
    for (int t = 0; t < 3; ++t) pts.push_back(random_point(rng));
    pts.push_back({1.0, {0, 0, 100.0}});
    for (auto& p : pts) {
        CovTensor R = riemann(p, gp);
        double scale = R.max_abs();
        double worst = 0.0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        worst = std::max(worst, std::abs(R.at({a, b, c, d}) + R.at({b, a, c, d})));
                        worst = std::max(worst, std::abs(R.at({a, b, c, d}) + R.at({a, b, d, c})));
                        worst = std::max(worst, std::abs(R.at({a, b, c, d}) - R.at({c, d, a, b})));
                        worst = std::max(worst,
                                         std::abs(R.at({a, b, c, d}) + R.at({a, c, d, b}) + R.at({a, d, b, c})));
                    }
        EXPECT_LT(worst / scale, 1e-9);
    }
}

TEST(Curvature, AntisymmetrizationMatchesChristoffelOracle) {
    GasParameters gp;
    MetricField mf = [&gp](const Vec4& x) {
        return tensor_to_mat(cov_diff_z(2, from_flat(FlatPoint::from_coords(x)), gp));
    };
    std::mt19937_64 rng(45);
    std::vector<GeneralizedTemperature> pts;
    for (int t = 0; t < 3; ++t) pts.push_back(random_point(rng, 0.5, 2.0));
    pts.push_back({1.0, {0, 0, 100.0}});
    for (auto& p : pts) {
        CovTensor R = riemann(p, gp);
        CovTensor Rfd = christoffel_riemann_fd(mf, to_flat(p).coords(), Chart::Flat);
        EXPECT_LT((R - Rfd).frobenius_norm() / R.frobenius_norm(), 1e-8)
            << "theta = " << p.theta();
    }
}

TEST(Curvature, RigidBodyClosedFormAgainstPipeline) {
    std::mt19937_64 rng(46);
    for (double C : {0.5, 1.5, 3.0}) {
        RigidBodyParams rb = RigidBodyParams::make_spherical(C, 0.9);
        for (int t = 0; t < 10; ++t) {
            GeneralizedTemperature p = random_point(rng, 0.1, 2.0);
            CovTensor K = rb_hessian_curvature(rb, p, Chart::UOmega);
            CovTensor Kc = rb_closed_form_K(rb, p);
            EXPECT_LT((K - Kc).frobenius_norm() / Kc.frobenius_norm(), 1e-9);
        }
    }
}

TEST(Curvature, GasHighVelocityLimitTensor) {
    // beta^{-2} K approaches the rigid-body closed form with C = 3, I = m R^2.
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0, 0, 100.0}};
    CovTensor K = hessian_curvature(p, gp, Chart::UOmega);
    RigidBodyParams rb_limit = RigidBodyParams::make_spherical(3.0, gp.m * gp.R * gp.R);
    CovTensor Klim = rb_closed_form_K(rb_limit, p);
    EXPECT_LT((K - Klim).frobenius_norm() / Klim.frobenius_norm(), 0.05);
}

TEST(Curvature, SectionalLimitAndKnDeviation) {
    GasParameters gp;
    double prev_kn = 1e300;
    for (double theta : {1e2, 1e3, 1e4}) {
        GeneralizedTemperature p{1.0, {0, 0, std::sqrt(theta)}};
        HessianTriple ht = gas_hessian_triple(p, gp);
        CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
        double kn = kn_deviation(R, ht.g);
        EXPECT_LT(kn, prev_kn);
        prev_kn = kn;
        if (theta == 1e4) {
            auto se = sectional_extrema(R, ht.g, 50, 20240913ull);
            EXPECT_LT(std::abs(se.min * 12.0 + 1.0), 0.05);
            EXPECT_LT(std::abs(se.max * 12.0 + 1.0), 0.05);
            EXPECT_LE(kn, 0.05);
        }
    }
}

TEST(Curvature, NormAsymptotics) {
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0, 0, 100.0}};
    Mat4 gi = metric_inverse(cov_diff_z(2, p, gp));
    double du2 = gi(0, 0) * std::pow(p.beta, -3.0); // du = -beta^{-3/2} dbeta
    EXPECT_NEAR(p.beta * du2, 1.0 / 3.0, 0.05 / 3.0);
    FlatPoint x = to_flat(p);
    double dw2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        Vec4 dw{x.r[i] / (p.beta * p.beta), 0, 0, 0};
        dw[static_cast<std::size_t>(i + 1)] = -1.0 / p.beta;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                dw2 += gi(a, b) * dw[static_cast<std::size_t>(a)] * dw[static_cast<std::size_t>(b)];
    }
    // beta |domega|^2 -> 3/I_inf with the plain bundle norm; the symmetrised
    // contraction (alpha . alpha = 2 alpha (x) alpha) doubles it to 6/I_inf.
    EXPECT_NEAR(p.beta * dw2, 3.0, 0.05 * 3.0);
    EXPECT_NEAR(2.0 * p.beta * dw2, 6.0, 0.05 * 6.0);
    CovTensor gu = metric(p, gp, Chart::UOmega);
    EXPECT_NEAR(gu.at({0, 0}) / p.beta, 3.0, 0.05 * 3.0);
}

TEST(Curvature, HessianSectionalScaleInvariance) {
    GasParameters gp;
    GeneralizedTemperature p{1.1, {0.3, 0.2, -0.5}};
    HessianTriple ht = gas_hessian_triple(p, gp);
    CovTensor K = hessian_curvature_tensor(ht);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    CovTensor h(2, Chart::Flat);
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            double v = ud(rng);
            h.at({i, j}) = v;
            h.at({j, i}) = v;
        }
    double k1 = hessian_sectional(K, ht.g, h);
    double k2 = hessian_sectional(K, ht.g, h * 2.0);
    EXPECT_DOUBLE_EQ(k1, k2);
    CovTensor zero(2, Chart::Flat);
    EXPECT_THROW(hessian_sectional(K, ht.g, zero), std::invalid_argument);
}

TEST(Curvature, DegeneratePlaneRejected) {
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0, 0, 1.0}};
    HessianTriple ht = gas_hessian_triple(p, gp);
    CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
    Vec4 u{1, 0, 0, 0};
    EXPECT_THROW(sectional(R, ht.g, u, u), std::invalid_argument);
}

TEST(Curvature, DualSpaceFormConsistency) {
    // When the Hessian sectional curvature is the constant c, the Riemannian
    // sectional curvature is -c/4: dual rigid-body structure has c = 1/C.
    double C = 1.5;
    RigidBodyParams rb = RigidBodyParams::make_spherical(C, 1.0);
    GeneralizedTemperature p{0.9, {0.4, -0.1, 0.6}};
    auto q = rb_momenta(rb, p);
    HessianTriple dual{rb_dual_partials(rb, q.E, q.M, 2), rb_dual_partials(rb, q.E, q.M, 3),
                       rb_dual_partials(rb, q.E, q.M, 4)};
    CovTensor K = hessian_curvature_tensor(dual);
    std::mt19937_64 rng(48);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int t = 0; t < 10; ++t) {
        CovTensor h(2, Chart::BetaM);
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                double v = ud(rng);
                h.at({i, j}) = v;
                h.at({j, i}) = v;
            }
        EXPECT_NEAR(hessian_sectional(K, dual.g, h), 1.0 / C, 1e-8);
    }
    CovTensor R = riemann_from_curvature(K);
    auto se = sectional_extrema(R, dual.g, 30, 7);
    EXPECT_NEAR(se.min, -1.0 / (4.0 * C), 1e-9);
    EXPECT_NEAR(se.max, -1.0 / (4.0 * C), 1e-9);
}

TEST(Curvature, ReportFields) {
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0.2, 0.1, 0.5}};
    CurvatureReport rep = curvature_report(p, gp, Chart::BetaOmega, 20, 1);
    EXPECT_EQ(rep.g.order(), 2);
    EXPECT_EQ(rep.K.order(), 4);
    EXPECT_EQ(rep.Riem.order(), 4);
    EXPECT_EQ(rep.chart, Chart::BetaOmega);
    EXPECT_GT(rep.sect.planes, 20);
    EXPECT_LT(rep.sect.min, rep.sect.max);
    // g_inv really is the inverse of g in the chart
    Mat4 prod = tensor_to_mat(rep.g) * tensor_to_mat(rep.g_inv);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(prod(i, j), i == j ? 1.0 : 0.0, 1e-11);
}

TEST(Curvature, NonUnitParameters) {
    // sectional -> -1/12 regardless of m and R; the u-block heat capacity and
    // the inertia limit scale as they must
    GasParameters gp{2.0, 1.3};
    double I_inf = gp.m * gp.R * gp.R;
    double theta = 1e4 / (gp.m * gp.R * gp.R); // keep lambda comparable
    GeneralizedTemperature p{1.0, {0, 0, std::sqrt(theta)}};
    HessianTriple ht = gas_hessian_triple(p, gp);
    CovTensor R = riemann_from_curvature(hessian_curvature_tensor(ht));
    auto se = sectional_extrema(R, ht.g, 30, 5);
    EXPECT_NEAR(se.min * 12.0, -1.0, 0.05);
    EXPECT_NEAR(se.max * 12.0, -1.0, 0.05);
    CovTensor gu = metric(p, gp, Chart::UOmega);
    EXPECT_NEAR(gu.at({0, 0}) / p.beta, 3.0, 0.15);
    EXPECT_NEAR(inertia(theta, gp).I / I_inf, 1.0, 2e-3);
}

TEST(Curvature, ScalarContractionsAreChartInvariant) {
    // |Dg|^2 and |D2g|^2 built with the per-chart inverse metric agree across
    // charts: transport of order-3/4 tensors and of g_inv is consistent.
    GasParameters gp;
    GeneralizedTemperature p{1.3, {0.5, -0.2, 0.7}};
    auto full_norm2 = [](const CovTensor& t, const Mat4& gi) {
        int n = t.order();
        double acc = 0.0;
        std::array<int, kMaxOrder> ia{}, ib{};
        for (std::size_t fa = 0; fa < t.size(); ++fa) {
            if (t[fa] == 0.0) continue;
            CovTensor::unflatten(fa, n, ia.data());
            for (std::size_t fb = 0; fb < t.size(); ++fb) {
                CovTensor::unflatten(fb, n, ib.data());
                double w = t[fa] * t[fb];
                if (w == 0.0) continue;
                for (int s = 0; s < n; ++s) w *= gi(ia[static_cast<std::size_t>(s)], ib[static_cast<std::size_t>(s)]);
                acc += w;
            }
        }
        return acc;
    };
    CurvatureReport flat = curvature_report(p, gp, Chart::Flat, 10, 1);
    double n3 = full_norm2(flat.Dg, tensor_to_mat(flat.g_inv));
    double n4 = full_norm2(flat.D2g, tensor_to_mat(flat.g_inv));
    double nK = full_norm2(flat.K, tensor_to_mat(flat.g_inv));
    for (Chart c : {Chart::BetaOmega, Chart::UOmega, Chart::BetaM}) {
        CurvatureReport rep = curvature_report(p, gp, c, 10, 1);
        Mat4 gi = tensor_to_mat(rep.g_inv);
        EXPECT_NEAR(full_norm2(rep.Dg, gi), n3, 1e-9 * std::abs(n3)) << chart_name(c);
        EXPECT_NEAR(full_norm2(rep.D2g, gi), n4, 1e-9 * std::abs(n4)) << chart_name(c);
        EXPECT_NEAR(full_norm2(rep.K, gi), nK, 1e-9 * std::abs(nK)) << chart_name(c);
    }
}

TEST(Curvature, JsonRoundTrip) {
    GasParameters gp;
    GeneralizedTemperature p{1.1, {0.3, -0.1, 0.6}};
    CurvatureReport rep = curvature_report(p, gp, Chart::UOmega, 10, 3);
    nlohmann::json j = report_to_json(rep, gp);
    CovTensor K2 = tensor_from_json(j["hessian_curvature"]);
    EXPECT_EQ(K2.order(), 4);
    EXPECT_EQ(K2.chart(), Chart::UOmega);
    EXPECT_EQ((rep.K - K2).max_abs(), 0.0); // shortest-round-trip doubles
    // re-serialization is byte-stable
    EXPECT_EQ(nlohmann::json::parse(j.dump(2)).dump(2), j.dump(2));
}
