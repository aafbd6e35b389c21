#pragma once

// Iterated covariant differentials of z in the flat chart via the covariant
// Faa di Bruno formula over theta = beta omega^2 = r^2/beta, plus the
// finite-difference oracle that arbitrates every symmetrisation convention.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "rotgas/cumulants.hpp"
#include "rotgas/model.hpp"
#include "rotgas/partition.hpp"
#include "rotgas/tensor.hpp"
#include "rotgas/thermo.hpp"

namespace rotgas {

// Exact l-th partial-derivative tensor of theta = r^2/beta in the flat chart.
// Mixed partials factor: d^a_beta (1/beta) = (-1)^a a! beta^{-1-a} times the
// r-derivatives of r^2 (which vanish beyond second order).
inline CovTensor theta_partials(int l, const FlatPoint& x) {
    if (l < 1 || l > kMaxOrder) throw std::domain_error("theta_partials: order must be in 1..5");
    CovTensor t(l, Chart::Flat);
    std::array<int, kMaxOrder> idx{};
    for (std::size_t f = 0; f < t.size(); ++f) {
        CovTensor::unflatten(f, l, idx.data());
        int nbeta = 0;
        int r_slots[kMaxOrder];
        int nr = 0;
        for (int s = 0; s < l; ++s) {
            if (idx[static_cast<std::size_t>(s)] == 0)
                ++nbeta;
            else
                r_slots[nr++] = idx[static_cast<std::size_t>(s)] - 1;
        }
        if (nr > 2) continue;
        double beta_part = ((nbeta % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(factorial(nbeta)) /
                           std::pow(x.beta, nbeta + 1);
        double r_part;
        if (nr == 0)
            r_part = x.r.norm2();
        else if (nr == 1)
            r_part = 2.0 * x.r[r_slots[0]];
        else
            r_part = (r_slots[0] == r_slots[1]) ? 2.0 : 0.0;
        t[f] = beta_part * r_part;
    }
    return t;
}

// D^l theta as a tensor in the flat chart (connection coefficients vanish
// there, so this is theta_partials).
inline CovTensor cov_deriv_theta(int l, const GeneralizedTemperature& p) {
    return theta_partials(l, to_flat(p));
}

// Weak compositions of `total` into `parts` non-negative entries,
// enumerated in lexicographic order.
inline std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == parts - 1) {
            cur[static_cast<std::size_t>(pos)] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, rem - v);
        }
    };
    if (parts > 0) rec(0, total);
    return out;
}

// The composition sum of the covariant Faa di Bruno formula at fixed (n, j):
// compositions k of n-j into j parts with multinomial weight n!/prod (k_i+1)!.
struct PartitionSum {
    int n = 0;
    int j = 0;
    struct Entry {
        std::vector<int> k;
        long long weight; // n! / prod (k_i + 1)!
    };
    std::vector<Entry> entries;
};

inline PartitionSum partition_sum(int n, int j) {
    PartitionSum ps;
    ps.n = n;
    ps.j = j;
    for (auto& comp : compositions(n - j, j)) {
        long long w = factorial(n);
        for (int k : comp) w /= factorial(k + 1);
        ps.entries.push_back({comp, w});
    }
    return ps;
}

// D^n zint: only beta components, (3/2) (-1)^n (n-1)! / beta^n.
inline CovTensor cov_diff_zint(int n, const FlatPoint& x) {
    if (n < 1 || n > kMaxOrder) throw std::domain_error("cov_diff_zint: order must be in 1..5");
    CovTensor t(n, Chart::Flat);
    double v = 1.5 * ((n % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(factorial(n - 1)) /
               std::pow(x.beta, n);
    t[0] = v; // the all-beta component is flat index 0
    return t;
}

// D^n zrot by the Faa di Bruno formula:
//   D^n zrot = sum_j (c_j / j!) Sym( sum_k prod_i 1/(k_i+1)!  (x)_i D^{k_i+1} theta )
// with c_j the cumulants of iota at theta.
inline CovTensor cov_diff_zrot(int n, const GeneralizedTemperature& p, const GasParameters& gp) {
    if (n < 1 || n > 4) throw std::domain_error("cov_diff_zrot: order must be in 1..4");
    FlatPoint x = to_flat(p);
    double theta = x.theta();
    CumulantTable cum = cumulants_of_iota(theta, gp, std::max(2, n));

    std::array<CovTensor, kMaxOrder + 1> dtheta_cache;
    for (int l = 1; l <= n; ++l) dtheta_cache[static_cast<std::size_t>(l)] = theta_partials(l, x);

    CovTensor out(n, Chart::Flat);
    for (int j = 1; j <= n; ++j) {
        CovTensor inner(n, Chart::Flat);
        for (auto& comp : compositions(n - j, j)) {
            CovTensor prod = dtheta_cache[static_cast<std::size_t>(comp[0] + 1)];
            double w = 1.0 / static_cast<double>(factorial(comp[0] + 1));
            for (std::size_t i = 1; i < comp.size(); ++i) {
                prod = tensor_product(prod, dtheta_cache[static_cast<std::size_t>(comp[i] + 1)]);
                w /= static_cast<double>(factorial(comp[static_cast<std::size_t>(i)] + 1));
            }
            inner += prod * w;
        }
        out += sym_unnormalized(inner) * (cum[j] / static_cast<double>(factorial(j)));
    }
    return out;
}

inline CovTensor cov_diff_z(int n, const GeneralizedTemperature& p, const GasParameters& gp) {
    if (n < 1 || n > 4) throw std::domain_error("cov_diff_z: order must be in 1..4");
    FlatPoint x = to_flat(p);
    CovTensor t = cov_diff_zrot(n, p, gp);
    t += cov_diff_zint(n, x);
    return t;
}

// Hand-coded order 1..4 forms of D^n zrot, assembled from the symmetric
// product and the so3 contraction. With c_k the cumulants of iota,
// ss = <domega|domega> (tensor contraction) and dd = 2 ss its symmetric-
// product counterpart:
//   D1 = c1 dtheta
//   D2 = c2 dtheta(x)dtheta + c1 beta dd
//   D3 = c3 dtheta^(x)3 + c2 beta dd.dtheta - c1 dbeta.dd
//   D4 = c4 dtheta^(x)4 + c3 beta dd.(dtheta(x)dtheta)
//        + c2 ( -dbeta.dd.dtheta + (beta^2/2) dd.dd ) + (c1/beta) dbeta.dbeta.dd
// The c3 term of D4 carries the symmetric-product contraction dd; the
// generic composition formula and the finite-difference oracle both pin
// that factor.
inline CovTensor cov_diff_zrot_closed(int n, const GeneralizedTemperature& p, const GasParameters& gp) {
    if (n < 1 || n > 4) throw std::domain_error("cov_diff_zrot_closed: order must be in 1..4");
    FlatPoint x = to_flat(p);
    double beta = x.beta;
    CumulantTable cum = cumulants_of_iota(x.theta(), gp, std::max(2, n));

    VectorValuedForm domega(ValueSpace::So3, 1, Chart::Flat);
    for (int i = 0; i < 3; ++i) {
        Vec4 comp{};
        comp[0] = x.r[i] / (beta * beta);
        comp[static_cast<std::size_t>(i + 1)] = -1.0 / beta;
        domega.component(i) = covector(comp);
    }
    CovTensor dd = contract(domega, domega) * 2.0;
    CovTensor dbeta = covector({1.0, 0.0, 0.0, 0.0});
    CovTensor dtheta = theta_partials(1, x);

    switch (n) {
        case 1:
            return dtheta * cum[1];
        case 2:
            return tensor_product(dtheta, dtheta) * cum[2] + dd * (cum[1] * beta);
        case 3: {
            CovTensor t = tensor_product(tensor_product(dtheta, dtheta), dtheta) * cum[3];
            t += sym_product_many({dd, dtheta}) * (cum[2] * beta);
            t += sym_product_many({dbeta, dd}) * (-cum[1]);
            return t;
        }
        default: {
            CovTensor dth2 = tensor_product(dtheta, dtheta);
            CovTensor t = tensor_product(dth2, dth2) * cum[4];
            t += sym_product(dd, dth2) * (cum[3] * beta);
            t += sym_product_many({dbeta, dd, dtheta}) * (-cum[2]);
            t += sym_product(dd, dd) * (0.5 * beta * beta * cum[2]);
            t += sym_product_many({dbeta, dbeta, dd}) * (cum[1] / beta);
            return t;
        }
    }
}

// ---------------------------------------------------------------------------
// Finite-difference machinery.
// ---------------------------------------------------------------------------

using ScalarField = std::function<double(const FlatPoint&)>;

namespace fd {

using LatticeCache = std::map<std::array<int, 4>, double>;

// n-th mixed partial by nested first-order central differences over the slots
// of `axes`, expanded into a signed sum over the 2^n stencil corners; corner
// evaluations are memoized on the shared integer offset lattice.
inline double nested_central(const ScalarField& f, const Vec4& x0, const std::vector<int>& axes,
                             const Vec4& h, LatticeCache& cache) {
    int n = static_cast<int>(axes.size());
    double denom = 1.0;
    for (int a : axes) denom *= 2.0 * h[static_cast<std::size_t>(a)];
    double acc = 0.0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::array<int, 4> off{0, 0, 0, 0};
        int sign = 1;
        for (int b = 0; b < n; ++b) {
            if (mask & (1 << b)) {
                off[static_cast<std::size_t>(axes[static_cast<std::size_t>(b)])] += 1;
            } else {
                off[static_cast<std::size_t>(axes[static_cast<std::size_t>(b)])] -= 1;
                sign = -sign;
            }
        }
        auto it = cache.find(off);
        double val;
        if (it != cache.end()) {
            val = it->second;
        } else {
            Vec4 x = x0;
            for (int a = 0; a < 4; ++a) x[static_cast<std::size_t>(a)] += off[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(a)];
            val = f(FlatPoint::from_coords(x));
            cache.emplace(off, val);
        }
        acc += sign * val;
    }
    return acc / denom;
}

} // namespace fd

// n-th differential of a scalar field on the flat chart by nested central
// differences with one Richardson extrapolation level. Steps follow the
// point: h_i = max(step_rel * scale_i, eps^{1/(n+2)}) with scale_beta = beta
// and scale_r = max(1, |r|); the beta step is clamped away from the beta = 0
// boundary.
inline CovTensor fd_differential(const ScalarField& f, const FlatPoint& x, int n,
                                 double step_rel = 1e-2) {
    if (n < 1 || n > kMaxOrder) throw std::domain_error("fd_differential: order must be in 1..5");
    double floor_h = std::pow(2.220446049250313e-16, 1.0 / (n + 2));
    Vec4 h;
    h[0] = std::max(step_rel * x.beta, floor_h);
    double rs = std::max(1.0, x.r.norm());
    for (int i = 1; i < 4; ++i) h[static_cast<std::size_t>(i)] = std::max(step_rel * rs, floor_h);
    // keep beta - n h strictly positive
    if (x.beta - n * h[0] <= 0.0) h[0] = x.beta / (2.0 * (n + 1));

    Vec4 x0 = x.coords();
    Vec4 h2 = h;
    for (auto& v : h2) v *= 0.5;
    CovTensor coarse(n, Chart::Flat), fine(n, Chart::Flat);
    fd::LatticeCache cache_coarse, cache_fine;
    std::array<int, kMaxOrder> idx{};
    for (std::size_t fidx = 0; fidx < coarse.size(); ++fidx) {
        CovTensor::unflatten(fidx, n, idx.data());
        // symmetric: compute canonical sorted representative once
        std::array<int, kMaxOrder> sorted = idx;
        std::sort(sorted.begin(), sorted.begin() + n);
        std::size_t canon = 0;
        for (int s = 0; s < n; ++s) canon = canon * kDim + static_cast<std::size_t>(sorted[static_cast<std::size_t>(s)]);
        if (canon != fidx) {
            coarse[fidx] = coarse[canon];
            fine[fidx] = fine[canon];
            continue;
        }
        std::vector<int> axes(sorted.begin(), sorted.begin() + n);
        coarse[fidx] = fd::nested_central(f, x0, axes, h, cache_coarse);
        fine[fidx] = fd::nested_central(f, x0, axes, h2, cache_fine);
    }
    // Richardson: leading error O(h^2)
    return fine * (4.0 / 3.0) - coarse * (1.0 / 3.0);
}

// FD oracle for D^n z; independent of the Faa di Bruno path.
inline CovTensor fd_oracle(int n, const GeneralizedTemperature& p, const GasParameters& gp) {
    FlatPoint x = to_flat(p);
    ScalarField zf = [&gp](const FlatPoint& q) { return massieu(q, gp); };
    return fd_differential(zf, x, n);
}

} // namespace rotgas
