#pragma once

// Dense multilinear algebra on the 4-dimensional (co)tangent space of the
// Gibbs set. Implements the unnormalised symmetrising operator Sym,
// the unnormalised symmetric product (alpha . alpha = 2 alpha (x) alpha),
// and contraction of so3-valued forms against the invariant inner product.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotgas/linalg.hpp"

namespace rotgas {

inline constexpr int kDim = 4;
inline constexpr int kMaxOrder = 5;

enum class Chart { Flat, BetaOmega, UOmega, BetaM };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::Flat: return "flat";
        case Chart::BetaOmega: return "beta-omega";
        case Chart::UOmega: return "u-omega";
        case Chart::BetaM: return "beta-M";
    }
    return "?";
}

inline Chart chart_from_name(const std::string& s) {
    if (s == "flat") return Chart::Flat;
    if (s == "beta-omega") return Chart::BetaOmega;
    if (s == "u-omega") return Chart::UOmega;
    if (s == "beta-M") return Chart::BetaM;
    throw std::invalid_argument("unknown chart: " + s);
}

enum class ValueSpace { Scalar, So3, So3Dual };

inline std::size_t pow_dim(int order) {
    std::size_t n = 1;
    for (int i = 0; i < order; ++i) n *= kDim;
    return n;
}

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Totally covariant dense tensor of order 0..5 on the tangent space of the
// Gibbs set, components stored row-major over the chart's coordinate order.
class CovTensor {
public:
    CovTensor() : order_(0), chart_(Chart::Flat), c_(1, 0.0) {}

    CovTensor(int order, Chart chart) : order_(order), chart_(chart) {
        if (order < 0 || order > kMaxOrder)
            throw std::invalid_argument("CovTensor: order must be in 0..5, got " + std::to_string(order));
        c_.assign(pow_dim(order), 0.0);
    }

    static CovTensor scalar(double v, Chart chart = Chart::Flat) {
        CovTensor t(0, chart);
        t.c_[0] = v;
        return t;
    }

    int order() const { return order_; }
    Chart chart() const { return chart_; }
    void set_chart(Chart c) { chart_ = c; }
    std::size_t size() const { return c_.size(); }

    double& operator[](std::size_t flat) { return c_[flat]; }
    double operator[](std::size_t flat) const { return c_[flat]; }

    double& at(std::initializer_list<int> idx) { return c_[flatten(idx)]; }
    double at(std::initializer_list<int> idx) const { return c_[flatten(idx)]; }

    std::size_t flatten(std::initializer_list<int> idx) const {
        if (static_cast<int>(idx.size()) != order_)
            throw std::out_of_range("CovTensor: index arity mismatch");
        std::size_t f = 0;
        for (int i : idx) {
            if (i < 0 || i >= kDim) throw std::out_of_range("CovTensor: index out of range");
            f = f * kDim + static_cast<std::size_t>(i);
        }
        return f;
    }

    static void unflatten(std::size_t flat, int order, int* idx) {
        for (int s = order - 1; s >= 0; --s) {
            idx[s] = static_cast<int>(flat % kDim);
            flat /= kDim;
        }
    }

    CovTensor& operator+=(const CovTensor& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CovTensor& operator-=(const CovTensor& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CovTensor& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }

    friend CovTensor operator+(CovTensor a, const CovTensor& b) { return a += b; }
    friend CovTensor operator-(CovTensor a, const CovTensor& b) { return a -= b; }
    friend CovTensor operator*(CovTensor a, double s) { return a *= s; }
    friend CovTensor operator*(double s, CovTensor a) { return a *= s; }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : c_) s += v * v;
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (double v : c_) s = std::max(s, std::abs(v));
        return s;
    }

    // Largest deviation from permutation invariance, relative to max_abs.
    double symmetry_defect() const {
        if (order_ <= 1) return 0.0;
        double scale = max_abs();
        if (scale == 0.0) return 0.0;
        std::array<int, kMaxOrder> idx{};
        std::array<int, kMaxOrder> perm{};
        double worst = 0.0;
        for (std::size_t f = 0; f < c_.size(); ++f) {
            unflatten(f, order_, idx.data());
            std::iota(perm.begin(), perm.begin() + order_, 0);
            while (std::next_permutation(perm.begin(), perm.begin() + order_)) {
                std::size_t g = 0;
                for (int s = 0; s < order_; ++s) g = g * kDim + static_cast<std::size_t>(idx[perm[static_cast<std::size_t>(s)]]);
                worst = std::max(worst, std::abs(c_[f] - c_[g]));
            }
        }
        return worst / scale;
    }

    bool is_symmetric(double rel_tol = 1e-13) const { return symmetry_defect() <= rel_tol; }

    const std::vector<double>& components() const { return c_; }

private:
    void check_same(const CovTensor& o) const {
        if (order_ != o.order_) throw std::invalid_argument("CovTensor: order mismatch");
        if (chart_ != o.chart_) throw std::invalid_argument("CovTensor: chart mismatch");
    }

    int order_;
    Chart chart_;
    std::vector<double> c_;
};

inline CovTensor covector(const Vec4& comps, Chart chart = Chart::Flat) {
    CovTensor t(1, chart);
    for (int i = 0; i < kDim; ++i) t[static_cast<std::size_t>(i)] = comps[static_cast<std::size_t>(i)];
    return t;
}

inline CovTensor tensor_product(const CovTensor& a, const CovTensor& b) {
    if (a.chart() != b.chart()) throw std::invalid_argument("tensor_product: chart mismatch");
    int order = a.order() + b.order();
    if (order > kMaxOrder) throw std::invalid_argument("tensor_product: resulting order exceeds 5");
    CovTensor out(order, a.chart());
    std::size_t nb = b.size();
    for (std::size_t ia = 0; ia < a.size(); ++ia) {
        if (a[ia] == 0.0) continue;
        for (std::size_t ib = 0; ib < nb; ++ib) out[ia * nb + ib] = a[ia] * b[ib];
    }
    return out;
}

// Unnormalised symmetrising operator: Sym(t) = sum over all slot permutations.
inline CovTensor sym_unnormalized(const CovTensor& t) {
    int k = t.order();
    if (k > kMaxOrder) throw std::invalid_argument("sym_unnormalized: order > 5 unsupported");
    if (k <= 1) return t;
    CovTensor out(k, t.chart());
    std::array<int, kMaxOrder> idx{};
    std::array<int, kMaxOrder> perm{};
    for (std::size_t f = 0; f < out.size(); ++f) {
        CovTensor::unflatten(f, k, idx.data());
        std::iota(perm.begin(), perm.begin() + k, 0);
        double s = 0.0;
        do {
            std::size_t g = 0;
            for (int p = 0; p < k; ++p) g = g * kDim + static_cast<std::size_t>(idx[perm[static_cast<std::size_t>(p)]]);
            s += t[g];
        } while (std::next_permutation(perm.begin(), perm.begin() + k));
        out[f] = s;
    }
    return out;
}

// Unnormalised symmetric product of symmetric tensors:
//   a . b = Sym(a (x) b) / (j! k!)
// so that for a covector alpha, alpha . alpha = 2 alpha (x) alpha.
inline CovTensor sym_product(const CovTensor& a, const CovTensor& b) {
    if (!a.is_symmetric() || !b.is_symmetric())
        throw std::invalid_argument("sym_product: inputs must be symmetric");
    CovTensor s = sym_unnormalized(tensor_product(a, b));
    double denom = static_cast<double>(factorial(a.order()) * factorial(b.order()));
    return s * (1.0 / denom);
}

// Product of several symmetric factors: Sym(t1 (x) ... (x) tn) / prod(order_i!).
// Associativity of the pairwise product makes this well defined.
inline CovTensor sym_product_many(const std::vector<CovTensor>& factors) {
    if (factors.empty()) throw std::invalid_argument("sym_product_many: no factors");
    CovTensor prod = factors[0];
    double denom = static_cast<double>(factorial(factors[0].order()));
    for (std::size_t i = 1; i < factors.size(); ++i) {
        prod = tensor_product(prod, factors[i]);
        denom *= static_cast<double>(factorial(factors[i].order()));
    }
    return sym_unnormalized(prod) * (1.0 / denom);
}

// so3-valued (or so3*-valued) covariant form: three scalar component forms
// over the hat-map basis. The invariant inner product is the Euclidean dot
// in these components (minus one half of the Killing form).
class VectorValuedForm {
public:
    VectorValuedForm(ValueSpace space, int base_order, Chart chart)
        : space_(space), comp_{CovTensor(base_order, chart), CovTensor(base_order, chart), CovTensor(base_order, chart)} {
        if (space == ValueSpace::Scalar)
            throw std::invalid_argument("VectorValuedForm: scalar value space has no components");
    }

    ValueSpace space() const { return space_; }
    int order() const { return comp_[0].order(); }
    Chart chart() const { return comp_[0].chart(); }

    CovTensor& component(int i) { return comp_[static_cast<std::size_t>(i)]; }
    const CovTensor& component(int i) const { return comp_[static_cast<std::size_t>(i)]; }

    VectorValuedForm& operator+=(const VectorValuedForm& o) {
        for (int i = 0; i < 3; ++i) comp_[static_cast<std::size_t>(i)] += o.comp_[static_cast<std::size_t>(i)];
        return *this;
    }
    VectorValuedForm& operator*=(double s) {
        for (auto& c : comp_) c *= s;
        return *this;
    }

private:
    ValueSpace space_;
    std::array<CovTensor, 3> comp_;
};

// <a|b>: tensor product of the base slots composed with contraction of the
// value components. so3 pairs with so3 (inner product) or with so3* (natural
// pairing); either way the components contract with the Euclidean dot.
inline CovTensor contract(const VectorValuedForm& a, const VectorValuedForm& b) {
    const bool ok = (a.space() == ValueSpace::So3 || a.space() == ValueSpace::So3Dual) &&
                    (b.space() == ValueSpace::So3 || b.space() == ValueSpace::So3Dual);
    if (!ok) throw std::invalid_argument("contract: value-space mismatch");
    CovTensor out(a.order() + b.order(), a.chart());
    for (int i = 0; i < 3; ++i) out += tensor_product(a.component(i), b.component(i));
    return out;
}

// Contract two slots of t against a contravariant symmetric 2-tensor
// (typically the inverse metric). Output order = order(t) - 2.
inline CovTensor contract_metric(const CovTensor& t, const Mat4& g_inv, int slot_i, int slot_j) {
    int k = t.order();
    if (slot_i < 0 || slot_j < 0 || slot_i >= k || slot_j >= k || slot_i == slot_j)
        throw std::out_of_range("contract_metric: slot out of range");
    int lo = std::min(slot_i, slot_j), hi = std::max(slot_i, slot_j);
    CovTensor out(k - 2, t.chart());
    std::array<int, kMaxOrder> src{};
    std::array<int, kMaxOrder> rem{};
    for (std::size_t f = 0; f < out.size(); ++f) {
        CovTensor::unflatten(f, k - 2, rem.data());
        int pos = 0;
        for (int s = 0; s < k; ++s)
            if (s != lo && s != hi) src[static_cast<std::size_t>(s)] = rem[static_cast<std::size_t>(pos++)];
        double sum = 0.0;
        for (int e = 0; e < kDim; ++e) {
            src[static_cast<std::size_t>(lo)] = e;
            for (int w = 0; w < kDim; ++w) {
                src[static_cast<std::size_t>(hi)] = w;
                std::size_t g = 0;
                for (int s = 0; s < k; ++s) g = g * kDim + static_cast<std::size_t>(src[static_cast<std::size_t>(s)]);
                sum += g_inv(e, w) * t[g];
            }
        }
        out[f] = sum;
    }
    return out;
}

// Two-tensor overload: contract slot_a of a with slot_b of b through g_inv.
// Output order = order(a) + order(b) - 2.
inline CovTensor contract_metric(const CovTensor& a, const CovTensor& b, const Mat4& g_inv,
                                 int slot_a, int slot_b) {
    if (slot_a < 0 || slot_a >= a.order() || slot_b < 0 || slot_b >= b.order())
        throw std::out_of_range("contract_metric: slot out of range");
    CovTensor prod = tensor_product(a, b);
    return contract_metric(prod, g_inv, slot_a, a.order() + slot_b);
}

inline CovTensor contract_metric(const CovTensor& t, const CovTensor& g_inv, int slot_i, int slot_j) {
    if (g_inv.order() != 2) throw std::invalid_argument("contract_metric: g_inv must have order 2");
    Mat4 m;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) m(i, j) = g_inv.at({i, j});
    return contract_metric(t, m, slot_i, slot_j);
}

// Transport covariant components to another chart: out_{i'...} =
// t_{i...} J^i_{i'} ... with jac = d(current coords)/d(target coords).
inline CovTensor transport(const CovTensor& t, const Mat4& jac, Chart target_chart) {
    int k = t.order();
    CovTensor out(k, target_chart);
    if (k == 0) {
        out[0] = t[0];
        return out;
    }
    std::array<int, kMaxOrder> dst{};
    std::array<int, kMaxOrder> src{};
    for (std::size_t f = 0; f < out.size(); ++f) {
        CovTensor::unflatten(f, k, dst.data());
        double sum = 0.0;
        std::size_t n = t.size();
        for (std::size_t g = 0; g < n; ++g) {
            double v = t[g];
            if (v == 0.0) continue;
            CovTensor::unflatten(g, k, src.data());
            double w = v;
            for (int s = 0; s < k; ++s) w *= jac(src[static_cast<std::size_t>(s)], dst[static_cast<std::size_t>(s)]);
            sum += w;
        }
        out[f] = sum;
    }
    return out;
}

inline double tensor_dot(const CovTensor& a, const CovTensor& b) {
    if (a.order() != b.order()) throw std::invalid_argument("tensor_dot: order mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Mat4 tensor_to_mat(const CovTensor& t) {
    if (t.order() != 2) throw std::invalid_argument("tensor_to_mat: order-2 required");
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = t.at({i, j});
    return m;
}

inline CovTensor mat_to_tensor(const Mat4& m, Chart chart) {
    CovTensor t(2, chart);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t.at({i, j}) = m(i, j);
    return t;
}

} // namespace rotgas
