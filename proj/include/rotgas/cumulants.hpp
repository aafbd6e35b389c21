#pragma once

// Cumulant machinery of the rank-1 curved exponential family: the
// moment -> cumulant log-series (primary path), the f_n recursion as
// symbolic polynomial algebra (cross-check path), and the exact
// high-velocity limit constants.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "rotgas/partition.hpp"
#include "rotgas/series.hpp"

namespace rotgas {

struct CumulantTable {
    double theta = 0.0;
    std::vector<double> c;   // c[k] = k-th cumulant, k >= 1; c[0] unused
    std::vector<double> err; // per-entry error estimates (same indexing)

    double operator[](int k) const { return c.at(static_cast<std::size_t>(k)); }
};

// Cumulants from central moments (m[0] = 1, m[1] = 0) via the log of the
// exponential generating series; c1 supplied separately.
inline CumulantTable cumulants_from_central(double c1, const std::vector<double>& m, double theta = 0.0) {
    int n = static_cast<int>(m.size()) - 1;
    if (n < 2) throw std::invalid_argument("cumulants_from_central: need moments through order >= 2");
    PowerSeries egf(n);
    egf.a[0] = 1.0;
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        egf.a[static_cast<std::size_t>(k)] = m[static_cast<std::size_t>(k)] / fact;
    }
    PowerSeries lg = series_log(egf);
    CumulantTable t;
    t.theta = theta;
    t.c.assign(static_cast<std::size_t>(n) + 1, 0.0);
    t.err.assign(static_cast<std::size_t>(n) + 1, 0.0);
    t.c[1] = c1;
    fact = 1.0;
    for (int k = 2; k <= n; ++k) {
        fact *= k;
        t.c[static_cast<std::size_t>(k)] = lg.a[static_cast<std::size_t>(k)] * fact; // k! a_k
    }
    // error model: relative quadrature tolerance on each moment
    for (int k = 1; k <= n; ++k)
        t.err[static_cast<std::size_t>(k)] = 1e-11 * (std::abs(t.c[static_cast<std::size_t>(k)]) + 1e-300);
    if (t.c[2] < -1e-13 * (1.0 + c1 * c1))
        throw std::domain_error("cumulants_from_central: negative variance");
    if (t.c[2] < 0.0) t.c[2] = 0.0;
    return t;
}

// Cumulants from raw moments E[f^k]; raw[0] must equal 1.
inline CumulantTable cumulants_from_moments(const std::vector<double>& raw, double theta = 0.0) {
    if (raw.size() < 3) throw std::invalid_argument("cumulants_from_moments: need raw moments through order >= 2");
    if (raw[0] != 1.0) throw std::invalid_argument("cumulants_from_moments: raw[0] must be 1");
    int n = static_cast<int>(raw.size()) - 1;
    double mu1 = raw[1];
    // central moments by the binomial shift
    std::vector<double> m(static_cast<std::size_t>(n) + 1, 0.0);
    m[0] = 1.0;
    for (int k = 2; k <= n; ++k) {
        double acc = 0.0;
        double binom = 1.0;
        double mu_pow = 1.0;
        for (int j = k; j >= 0; --j) {
            acc += binom * raw[static_cast<std::size_t>(j)] * mu_pow * ((k - j) % 2 == 0 ? 1.0 : -1.0);
            binom = binom * j / (k - j + 1);
            mu_pow *= mu1;
        }
        m[static_cast<std::size_t>(k)] = acc;
    }
    return cumulants_from_central(mu1, m, theta);
}

// Cumulants of iota at a given theta, from two-pass quadrature central moments.
inline CumulantTable cumulants_of_iota(double theta, const GasParameters& gp, int max_k) {
    auto m = central_moments(theta, gp, max_k);
    double c1 = mean_iota(theta, gp);
    return cumulants_from_central(c1, m, theta);
}

// ---------------------------------------------------------------------------
// f_n recursion as polynomial algebra.
//
// f_1 = f, f_2 = fhat^2, f_{n+1} = fhat f_n + d f_n / d theta. Represented
// over the variables (fhat; mu1, m_2, m_3, ...) where m_k are central
// moments, closed under d/dtheta by
//   d fhat/dtheta = -m_2,  d mu1/dtheta = m_2,  d m_k/dtheta = m_{k+1} - k m_{k-1} m_2.
// Working over central moments keeps every term of E[f_n] at the O(theta^-n)
// scale of the result, so the evaluation is cancellation-safe at large theta.
// ---------------------------------------------------------------------------

struct MomentPolynomial {
    // monomial: fhat^d * mu1^p * prod m_k^{e_k};  key = (d, p, sorted exponent map)
    struct Key {
        int fhat = 0;
        int mu1 = 0;
        std::map<int, int> m; // central moment index -> exponent

        bool operator<(const Key& o) const {
            if (fhat != o.fhat) return fhat < o.fhat;
            if (mu1 != o.mu1) return mu1 < o.mu1;
            return m < o.m;
        }
    };

    std::map<Key, double> terms;

    static MomentPolynomial constant(double v) {
        MomentPolynomial p;
        if (v != 0.0) p.terms[Key{}] = v;
        return p;
    }
    static MomentPolynomial fhat() {
        MomentPolynomial p;
        Key k;
        k.fhat = 1;
        p.terms[k] = 1.0;
        return p;
    }
    static MomentPolynomial mu1() {
        MomentPolynomial p;
        Key k;
        k.mu1 = 1;
        p.terms[k] = 1.0;
        return p;
    }
    static MomentPolynomial central(int idx) {
        MomentPolynomial p;
        Key k;
        k.m[idx] = 1;
        p.terms[k] = 1.0;
        return p;
    }

    void add_term(const Key& k, double coeff) {
        double& v = terms[k];
        v += coeff;
        if (v == 0.0) terms.erase(k);
    }

    MomentPolynomial operator+(const MomentPolynomial& o) const {
        MomentPolynomial r = *this;
        for (const auto& [k, v] : o.terms) r.add_term(k, v);
        return r;
    }

    MomentPolynomial operator*(const MomentPolynomial& o) const {
        MomentPolynomial r;
        for (const auto& [ka, va] : terms)
            for (const auto& [kb, vb] : o.terms) {
                Key k = ka;
                k.fhat += kb.fhat;
                k.mu1 += kb.mu1;
                for (const auto& [idx, e] : kb.m) k.m[idx] += e;
                r.add_term(k, va * vb);
            }
        return r;
    }

    MomentPolynomial scaled(double s) const {
        MomentPolynomial r;
        if (s == 0.0) return r;
        for (const auto& [k, v] : terms) r.terms[k] = v * s;
        return r;
    }

    // d/dtheta with the closure rules above.
    MomentPolynomial dtheta() const {
        MomentPolynomial r;
        for (const auto& [k, v] : terms) {
            // fhat factor
            if (k.fhat > 0) {
                Key nk = k;
                nk.fhat -= 1;
                nk.m[2] += 1;
                r.add_term(nk, -v * k.fhat);
            }
            if (k.mu1 > 0) {
                Key nk = k;
                nk.mu1 -= 1;
                nk.m[2] += 1;
                r.add_term(nk, v * k.mu1);
            }
            for (const auto& [idx, e] : k.m) {
                // d m_idx = m_{idx+1} - idx m_{idx-1} m_2; m_1 = 0 and m_0 = 1
                Key base = k;
                if (--base.m[idx] == 0) base.m.erase(idx);
                Key up = base;
                up.m[idx + 1] += 1;
                r.add_term(up, v * e);
                if (idx - 1 == 1) continue;
                Key down = base;
                if (idx - 1 >= 2) down.m[idx - 1] += 1;
                down.m[2] += 1;
                r.add_term(down, -v * e * idx);
            }
        }
        return r;
    }

    // E[.]: fhat^d -> m_d (m_0 = 1, m_1 = 0).
    MomentPolynomial expectation() const {
        MomentPolynomial r;
        for (const auto& [k, v] : terms) {
            Key nk = k;
            nk.fhat = 0;
            if (k.fhat == 1) continue; // E[fhat] = 0
            if (k.fhat >= 2) nk.m[k.fhat] += 1;
            r.add_term(nk, v);
        }
        return r;
    }

    int max_central_index() const {
        int mx = 0;
        for (const auto& [k, v] : terms) {
            (void)v;
            if (!k.m.empty()) mx = std::max(mx, k.m.rbegin()->first);
            mx = std::max(mx, k.fhat);
        }
        return mx;
    }

    // evaluate a moment-only polynomial (fhat degree 0 everywhere)
    double evaluate(double mu1_val, const std::vector<double>& m) const {
        double acc = 0.0;
        for (const auto& [k, v] : terms) {
            if (k.fhat != 0) throw std::logic_error("MomentPolynomial::evaluate: fhat remains");
            double t = v;
            for (int i = 0; i < k.mu1; ++i) t *= mu1_val;
            for (const auto& [idx, e] : k.m)
                for (int i = 0; i < e; ++i) t *= m.at(static_cast<std::size_t>(idx));
            acc += t;
        }
        return acc;
    }

    // degree in the integrand variable (f = fhat + mu1)
    int fhat_degree() const {
        int d = 0;
        for (const auto& [k, v] : terms) {
            (void)v;
            d = std::max(d, k.fhat);
        }
        return d;
    }
};

// f_n as a MomentPolynomial; f_1 = fhat + mu1 so that E[f_1] = mu1.
inline MomentPolynomial fn_polynomial(int n) {
    if (n < 1) throw std::domain_error("fn_polynomial: n >= 1 required");
    if (n == 1) return MomentPolynomial::fhat() + MomentPolynomial::mu1();
    MomentPolynomial f = MomentPolynomial::fhat() * MomentPolynomial::fhat();
    for (int k = 2; k < n; ++k) f = MomentPolynomial::fhat() * f + f.dtheta();
    return f;
}

// E[f_n] at theta via quadrature central moments. Equals the n-th cumulant;
// the comparison against cumulants_of_iota is the test of the recursion.
inline double fn_expected(double theta, const GasParameters& gp, int n) {
    if (n < 1 || n > 8) throw std::domain_error("fn_expected: n must be in 1..8");
    MomentPolynomial ef = fn_polynomial(n).expectation();
    int need = std::max(2, ef.max_central_index());
    auto m = central_moments(theta, gp, need);
    return ef.evaluate(mean_iota(theta, gp), m);
}

// Exact limit of theta^n c_n as theta -> infinity: (-1)^n (3/2) (n-1)!.
inline double cumulant_limit(int n) {
    if (n < 2) throw std::domain_error("cumulant_limit: n >= 2 required");
    double f = 1.0;
    for (int i = 2; i < n; ++i) f *= i;
    return ((n % 2 == 0) ? 1.0 : -1.0) * 1.5 * f;
}

// Exact limit of theta^k E[(iota - E iota)^k]:
// sum_{p+q=k} C(k,p) Gamma(p+3/2)/Gamma(3/2) (-1)^p (3/2)^q.
inline double moment_limit_constant(int k) {
    if (k < 1) throw std::domain_error("moment_limit_constant: k >= 1 required");
    double sum = 0.0;
    for (int p = 0; p <= k; ++p) {
        int q = k - p;
        double binom = 1.0;
        for (int i = 1; i <= p; ++i) binom = binom * (k - i + 1) / i;
        double gratio = 1.0; // Gamma(p+3/2)/Gamma(3/2)
        for (int j = 0; j < p; ++j) gratio *= (j + 1.5);
        double sign = (p % 2 == 0) ? 1.0 : -1.0;
        sum += binom * gratio * sign * std::pow(1.5, q);
    }
    return sum;
}

} // namespace rotgas
