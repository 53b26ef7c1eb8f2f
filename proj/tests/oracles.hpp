#pragma once

// Independent brute-force references. Deliberately naive: plain loops over
// all tuples, std::map / std::set containers, and no shared code with the
// library kernels beyond the PointSet container.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include "ringgeom/point_set.hpp"
#include "ringgeom/random.hpp"

namespace oracle {

using ringgeom::Coord;
using ringgeom::Metric;
using ringgeom::PointSet;
using Point = std::vector<std::uint64_t>;

inline std::vector<Point> points(const PointSet& E) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < E.size(); ++i) {
        const auto p = E.point(i);
        out.emplace_back(p.begin(), p.end());
    }
    return out;
}

inline std::uint64_t value(Metric metric, const Point& x, const Point& y, std::uint64_t n) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (metric == Metric::dot) {
            acc = (acc + x[i] * y[i]) % n;
        } else {
            const std::uint64_t diff = (x[i] + n - y[i]) % n;
            acc = (acc + diff * diff) % n;
        }
    }
    return acc;
}

inline std::vector<std::uint64_t> pair_histogram(const PointSet& E, Metric metric) {
    const auto P = points(E);
    std::vector<std::uint64_t> h(E.n(), 0);
    for (const auto& x : P)
        for (const auto& y : P) ++h[value(metric, x, y, E.n())];
    return h;
}

inline std::map<std::vector<std::uint64_t>, std::uint64_t> star_histogram(const PointSet& E, Metric metric,
                                                                          const std::vector<Point>& bases) {
    std::map<std::vector<std::uint64_t>, std::uint64_t> h;
    for (const auto& x : points(E)) {
        std::vector<std::uint64_t> t;
        for (const auto& y : bases) t.push_back(value(metric, x, y, E.n()));
        ++h[t];
    }
    return h;
}

/// Sum over all base tuples in E^k of the sum of squared star counts.
inline std::uint64_t second_moment(const PointSet& E, Metric metric, unsigned k) {
    const auto P = points(E);
    std::uint64_t total = 0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        std::vector<Point> bases;
        for (auto i : idx) bases.push_back(P[i]);
        for (const auto& [t, c] : star_histogram(E, metric, bases)) total += c * c;
        unsigned pos = 0;
        while (pos < k && ++idx[pos] == P.size()) idx[pos++] = 0;
        if (pos == k) break;
    }
    return total;
}

/// All (k+1)-tuples of E, labels in lexicographic pair order.
inline std::set<std::vector<std::uint64_t>> census(const PointSet& E, Metric metric, unsigned k) {
    const auto P = points(E);
    std::set<std::vector<std::uint64_t>> types;
    std::vector<std::size_t> idx(k + 1, 0);
    while (true) {
        std::vector<std::uint64_t> labels;
        for (unsigned i = 0; i <= k; ++i)
            for (unsigned j = i + 1; j <= k; ++j) labels.push_back(value(metric, P[idx[i]], P[idx[j]], E.n()));
        types.insert(labels);
        unsigned pos = 0;
        while (pos <= k && ++idx[pos] == P.size()) idx[pos++] = 0;
        if (pos == k + 1) break;
    }
    return types;
}

/// Textbook double-sum DFT: F(m) = n^-d sum_x f(x) exp(-2 pi i x.m / n).
/// Cells indexed with coordinate 0 least significant.
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& f, std::uint64_t n,
                                             unsigned d, bool inverse) {
    const std::size_t cells = f.size();
    auto coord = [&](std::size_t idx, unsigned i) {
        for (unsigned j = 0; j < i; ++j) idx /= n;
        return idx % n;
    };
    std::vector<std::complex<double>> out(cells);
    for (std::size_t m = 0; m < cells; ++m) {
        std::complex<double> acc{0, 0};
        for (std::size_t x = 0; x < cells; ++x) {
            std::uint64_t dot = 0;
            for (unsigned i = 0; i < d; ++i) dot += coord(x, i) * coord(m, i);
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(dot % n) / static_cast<double>(n);
            acc += f[x] * std::polar(1.0, inverse ? angle : -angle);
        }
        out[m] = inverse ? acc : acc / std::pow(static_cast<double>(n), d);
    }
    return out;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t q = 1; q <= n; ++q) c += n % q == 0;
    return c;
}

inline std::uint64_t smallest_prime(std::uint64_t n) {
    for (std::uint64_t p = 2; p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

/// #{y in Z_n^d : mult * y = 0}.
inline std::uint64_t kernel_count(std::uint64_t n, std::uint64_t mult, unsigned d) {
    std::uint64_t cells = 1;
    for (unsigned i = 0; i < d; ++i) cells *= n;
    std::uint64_t count = 0;
    for (std::uint64_t idx = 0; idx < cells; ++idx) {
        std::uint64_t rest = idx;
        bool zero = true;
        for (unsigned i = 0; i < d; ++i, rest /= n) zero = zero && (mult * (rest % n)) % n == 0;
        count += zero;
    }
    return count;
}

/// A random subset of Z_n^d built with std::set, independent of the library sampler.
inline PointSet random_set(std::uint64_t n, unsigned d, std::size_t size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::vector<Coord>> chosen;
    while (chosen.size() < size) {
        std::vector<Coord> p(d);
        for (auto& c : p) c = static_cast<Coord>(rng() % n);
        chosen.insert(p);
    }
    std::vector<Coord> flat;
    for (const auto& p : chosen) flat.insert(flat.end(), p.begin(), p.end());
    return PointSet(ringgeom::Modulus(n), d, std::move(flat));
}

}  // namespace oracle
