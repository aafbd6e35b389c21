#pragma once

// Formal power series through a bounded order: the log/exp pair used for the
// moment <-> cumulant conversion.

#include <stdexcept>
#include <vector>

namespace rotgas {

struct PowerSeries {
    // coefficients a[0..N], N <= 12
    std::vector<double> a;

    explicit PowerSeries(int max_order) : a(static_cast<std::size_t>(max_order) + 1, 0.0) {
        if (max_order < 0 || max_order > 12)
            throw std::invalid_argument("PowerSeries: order must be in 0..12");
    }

    int max_order() const { return static_cast<int>(a.size()) - 1; }
};

// exp of a series with vanishing constant term: b_n = (1/n) sum_k k a_k b_{n-k}.
inline PowerSeries series_exp(const PowerSeries& s) {
    if (s.a[0] != 0.0) throw std::invalid_argument("series_exp: constant term must vanish");
    PowerSeries b(s.max_order());
    b.a[0] = 1.0;
    for (int n = 1; n <= s.max_order(); ++n) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) acc += k * s.a[static_cast<std::size_t>(k)] * b.a[static_cast<std::size_t>(n - k)];
        b.a[static_cast<std::size_t>(n)] = acc / n;
    }
    return b;
}

// log of a series with constant term 1: a_n = b_n - (1/n) sum_{k<n} k a_k b_{n-k}.
inline PowerSeries series_log(const PowerSeries& s) {
    if (s.a[0] != 1.0) throw std::invalid_argument("series_log: constant term must be 1");
    PowerSeries a(s.max_order());
    for (int n = 1; n <= s.max_order(); ++n) {
        double acc = 0.0;
        for (int k = 1; k < n; ++k) acc += k * a.a[static_cast<std::size_t>(k)] * s.a[static_cast<std::size_t>(n - k)];
        a.a[static_cast<std::size_t>(n)] = s.a[static_cast<std::size_t>(n)] - acc / n;
    }
    return a;
}

} // namespace rotgas
