#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rotgas/covderiv.hpp"

using namespace rotgas;

namespace {

GeneralizedTemperature random_point(std::mt19937_64& rng, double wlo, double whi) {
    std::uniform_real_distribution<double> ub(0.5, 2.0), uw(wlo, whi), ud(-1.0, 1.0);
    Vec3 dir{ud(rng), ud(rng), ud(rng)};
    double n = dir.norm();
    if (n < 1e-9) dir = {1, 0, 0}, n = 1.0;
    return {ub(rng), (uw(rng) / n) * dir};
}

// D^{n+2} theta per the closed form: ((-1)^n / beta^{n-1}) Sym(dbeta^(x)n (x) dd)/2
// with dd = 2 <domega|domega>; built purely from tensor-module primitives.
CovTensor dnbo_closed_form(int n_plus_2, const FlatPoint& x) {
    int n = n_plus_2 - 2;
    VectorValuedForm domega(ValueSpace::So3, 1, Chart::Flat);
    for (int i = 0; i < 3; ++i) {
        Vec4 comp{};
        comp[0] = x.r[i] / (x.beta * x.beta);
        comp[static_cast<std::size_t>(i + 1)] = -1.0 / x.beta;
        domega.component(i) = covector(comp);
    }
    CovTensor dd = contract(domega, domega) * 2.0;
    CovTensor dbeta = covector({1.0, 0.0, 0.0, 0.0});
    std::vector<CovTensor> factors(static_cast<std::size_t>(n), dbeta);
    // dbeta^{.n} = n! dbeta^(x)n, and the product divides by n! 2!: net Sym(...)/2
    CovTensor prod = dd;
    for (int i = 0; i < n; ++i) prod = tensor_product(dbeta, prod);
    CovTensor sym = sym_unnormalized(prod) * 0.5;
    double coeff = ((n % 2 == 0) ? 1.0 : -1.0) * std::pow(x.beta, -(n - 1));
    return sym * coeff;
}

} // namespace

TEST(CovDeriv, ThetaHessianAtRest) {
    CovTensor t = cov_deriv_theta(2, {1.0, {0, 0, 0}});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double expect = (i == j && i > 0) ? 2.0 : 0.0;
            EXPECT_NEAR(t.at({i, j}), expect, 1e-14);
        }
}

TEST(CovDeriv, ThetaDerivativesMatchFd) {
    std::mt19937_64 rng(31);
    ScalarField theta_field = [](const FlatPoint& x) { return x.theta(); };
    for (int t = 0; t < 4; ++t) {
        GeneralizedTemperature p = random_point(rng, 0.2, 2.0);
        FlatPoint x = to_flat(p);
        for (int l = 1; l <= 4; ++l) {
            CovTensor a = cov_deriv_theta(l, p);
            CovTensor b = fd_differential(theta_field, x, l);
            EXPECT_LT((a - b).frobenius_norm() / (a.frobenius_norm() + 1e-30), 1e-6)
                << "order " << l;
        }
        CovTensor a5 = cov_deriv_theta(5, p);
        CovTensor b5 = fd_differential(theta_field, x, 5);
        EXPECT_LT((a5 - b5).frobenius_norm() / (a5.frobenius_norm() + 1e-30), 1e-4);
    }
}

TEST(CovDeriv, ClosedFormForIteratedThetaDerivatives) {
    // Lemma-style closed form D^{n+2}(beta omega^2) against exact partials.
    std::mt19937_64 rng(32);
    for (int t = 0; t < 4; ++t) {
        FlatPoint x = to_flat(random_point(rng, 0.3, 2.0));
        for (int order = 2; order <= 5; ++order) {
            CovTensor a = theta_partials(order, x);
            CovTensor b = dnbo_closed_form(order, x);
            EXPECT_LT((a - b).frobenius_norm() / a.frobenius_norm(), 1e-13) << "order " << order;
        }
    }
}

TEST(CovDeriv, FirstDifferentialIsMinusMomenta) {
    GasParameters gp;
    CovTensor d1 = cov_diff_z(1, {1.0, {0, 0, 0}}, gp);
    EXPECT_NEAR(d1.at({0}), -1.5, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(d1.at({i}), 0.0, 1e-13);
}

TEST(CovDeriv, MetricAtRest) {
    GasParameters gp;
    CovTensor g = cov_diff_z(2, {1.0, {0, 0, 0}}, gp);
    EXPECT_NEAR(g.at({0, 0}), 1.5, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(g.at({i, i}), 0.4, 1e-12);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) { EXPECT_NEAR(g.at({i, j}), 0.0, 1e-13); }
}

TEST(CovDeriv, HandCodedOrderForms) {
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0, 0, 1.0}};
    for (int n = 1; n <= 4; ++n) {
        CovTensor a = cov_diff_zrot(n, p, gp);
        CovTensor b = cov_diff_zrot_closed(n, p, gp);
        EXPECT_LT((a - b).frobenius_norm() / a.frobenius_norm(), 1e-10) << "n = " << n;
    }
    for (int n : {3, 4}) {
        CovTensor full = cov_diff_z(n, p, gp);
        CovTensor fd = fd_oracle(n, p, gp);
        double tol = n == 4 ? 1e-3 : 1e-5;
        EXPECT_LT((full - fd).frobenius_norm() / full.frobenius_norm(), tol);
    }
}

TEST(CovDeriv, TotalSymmetry) {
    GasParameters gp;
    std::mt19937_64 rng(33);
    for (int t = 0; t < 3; ++t) {
        GeneralizedTemperature p = random_point(rng, 0.0, 3.0);
        for (int n = 2; n <= 4; ++n) {
            EXPECT_LE(cov_diff_z(n, p, gp).symmetry_defect(), 1e-12);
        }
    }
}

TEST(CovDeriv, FaaDiBrunoVsFdOracle) {
    GasParameters gp;
    std::mt19937_64 rng(34);
    for (int t = 0; t < 10; ++t) {
        GeneralizedTemperature p = random_point(rng, 0.0, 3.0);
        for (int n = 2; n <= 4; ++n) {
            CovTensor a = cov_diff_z(n, p, gp);
            CovTensor b = fd_oracle(n, p, gp);
            double tol = (n == 4) ? 1e-3 : 1e-5;
            EXPECT_LT((a - b).frobenius_norm() / a.frobenius_norm(), tol)
                << "n = " << n << " beta = " << p.beta << " |w| = " << p.omega.norm();
        }
    }
}

TEST(CovDeriv, FdOracleMetricIsPositiveDefinite) {
    GasParameters gp;
    std::mt19937_64 rng(35);
    for (int t = 0; t < 20; ++t) {
        GeneralizedTemperature p = random_point(rng, 0.0, 2.5);
        CovTensor g = fd_oracle(2, p, gp);
        Mat4 m = tensor_to_mat(g);
        // Sylvester: all leading principal minors positive
        double m1 = m(0, 0);
        double m2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        Mat3 top;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) top(i, j) = m(i, j);
        double m3 = top.det();
        Mat4 inv = m.inverse(); // throws if singular
        (void)inv;
        EXPECT_GT(m1, 0.0);
        EXPECT_GT(m2, 0.0);
        EXPECT_GT(m3, 0.0);
    }
}

TEST(CovDeriv, ZintThirdDifferential) {
    // D^3 zint = 3 beta^{3/2} du^(x)3, i.e. -3/beta^3 on the all-beta slot.
    GasParameters gp;
    for (double beta : {0.7, 1.0, 1.9}) {
        FlatPoint x{beta, {0.2, -0.1, 0.4}};
        CovTensor t = cov_diff_zint(3, x);
        EXPECT_NEAR(t.at({0, 0, 0}), -3.0 / std::pow(beta, 3), 1e-13);
        ScalarField zint_field = [&gp](const FlatPoint& q) { return z_int(q.beta, gp); };
        CovTensor fd = fd_differential(zint_field, x, 3);
        EXPECT_LT((t - fd).frobenius_norm() / t.frobenius_norm(), 1e-6);
    }
}

TEST(CovDeriv, PartitionSumWeights) {
    // n = 4, j = 2: compositions (0,2), (1,1), (2,0) with weights 4, 6, 4.
    PartitionSum ps = partition_sum(4, 2);
    ASSERT_EQ(ps.entries.size(), 3u);
    long long w02 = 0, w11 = 0, w20 = 0;
    for (auto& e : ps.entries) {
        if (e.k == std::vector<int>{0, 2}) w02 = e.weight;
        if (e.k == std::vector<int>{1, 1}) w11 = e.weight;
        if (e.k == std::vector<int>{2, 0}) w20 = e.weight;
    }
    EXPECT_EQ(w02, 4);
    EXPECT_EQ(w11, 6);
    EXPECT_EQ(w20, 4);

    // They reproduce Sym(D^3theta (x) dtheta)/6 + Sym(D^2theta (x) D^2theta)/8.
    FlatPoint x{1.3, {0.5, -0.2, 0.7}};
    CovTensor d1 = theta_partials(1, x), d2 = theta_partials(2, x), d3 = theta_partials(3, x);
    CovTensor sum(4, Chart::Flat);
    for (auto& e : ps.entries) {
        CovTensor prod = tensor_product(theta_partials(e.k[0] + 1, x), theta_partials(e.k[1] + 1, x));
        sum += prod * static_cast<double>(e.weight);
    }
    CovTensor lhs = sym_unnormalized(sum) * (1.0 / (factorial(2) * factorial(4)));
    CovTensor rhs = sym_unnormalized(tensor_product(d3, d1)) * (1.0 / 6.0) +
                    sym_unnormalized(tensor_product(d2, d2)) * (1.0 / 8.0);
    EXPECT_LT((lhs - rhs).frobenius_norm() / rhs.frobenius_norm(), 1e-13);

    // n = 4, j = 3: the generic weights give Sym(D^2theta (x) dtheta (x) dtheta)/4.
    PartitionSum ps3 = partition_sum(4, 3);
    CovTensor sum3(4, Chart::Flat);
    for (auto& e : ps3.entries) {
        CovTensor prod = theta_partials(e.k[0] + 1, x);
        prod = tensor_product(prod, theta_partials(e.k[1] + 1, x));
        prod = tensor_product(prod, theta_partials(e.k[2] + 1, x));
        sum3 += prod * static_cast<double>(e.weight);
    }
    CovTensor lhs3 = sym_unnormalized(sum3) * (1.0 / (factorial(3) * factorial(4)));
    CovTensor rhs3 = sym_unnormalized(tensor_product(tensor_product(d2, d1), d1)) * 0.25;
    EXPECT_LT((lhs3 - rhs3).frobenius_norm() / rhs3.frobenius_norm(), 1e-13);
}

TEST(CovDeriv, SortedCompositionEquivalence) {
    // Summing over all compositions with 1/prod(k_i+1)! equals summing over
    // sorted partitions with their permutation multiplicity (the tensors are
    // symmetrised afterwards, so permuted factor orders coincide).
    FlatPoint x{0.9, {0.3, 0.1, -0.6}};
    int n = 4, j = 2;
    CovTensor full(n, Chart::Flat);
    std::map<std::vector<int>, int> sorted_mult;
    for (auto& comp : compositions(n - j, j)) {
        CovTensor prod = theta_partials(comp[0] + 1, x);
        for (std::size_t i = 1; i < comp.size(); ++i)
            prod = tensor_product(prod, theta_partials(comp[i] + 1, x));
        double w = 1.0;
        for (int k : comp) w /= factorial(k + 1);
        full += prod * w;
        auto key = comp;
        std::sort(key.begin(), key.end());
        sorted_mult[key] += 1;
    }
    CovTensor grouped(n, Chart::Flat);
    for (auto& [key, mult] : sorted_mult) {
        CovTensor prod = theta_partials(key[0] + 1, x);
        for (std::size_t i = 1; i < key.size(); ++i)
            prod = tensor_product(prod, theta_partials(key[i] + 1, x));
        double w = static_cast<double>(mult);
        for (int k : key) w /= factorial(k + 1);
        grouped += prod * w;
    }
    CovTensor a = sym_unnormalized(full), b = sym_unnormalized(grouped);
    EXPECT_LT((a - b).frobenius_norm() / (a.frobenius_norm() + 1e-30), 1e-13);
}

TEST(CovDeriv, OrderValidation) {
    GasParameters gp;
    GeneralizedTemperature p{1.0, {0, 0, 1}};
    EXPECT_THROW(cov_diff_z(5, p, gp), std::domain_error);
    EXPECT_THROW(cov_diff_z(0, p, gp), std::domain_error);
    EXPECT_THROW(theta_partials(6, to_flat(p)), std::domain_error);
}
