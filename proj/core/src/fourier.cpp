#include "ringgeom/fourier.hpp"

#include <cmath>
#include <numbers>

#include "ringgeom/dot_geometry.hpp"
#include "ringgeom/parallel.hpp"

namespace ringgeom {

namespace {

std::vector<Complex> root_table(std::uint64_t n) {
    std::vector<Complex> roots(n);
    for (std::uint64_t j = 0; j < n; ++j)
        roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    return roots;
}

// One 1-D DFT per line along every axis: out[m] = sum_x in[x] root[(sign x m) mod n].
// Each output cell is written by exactly one task with a fixed summation
// order, so results do not depend on the thread count.
std::vector<Complex> transform_axes(std::span<const Complex> input, std::uint64_t n, unsigned d, bool negate) {
    const auto roots = root_table(n);
    std::vector<Complex> cur(input.begin(), input.end()), next(cur.size());
    const std::size_t cells = cur.size();
    std::size_t stride = 1;
    for (unsigned axis = 0; axis < d; ++axis) {
        const std::size_t lines = cells / n;
        parallel::for_chunks(lines, 64, [&](std::size_t, std::size_t lo, std::size_t hi) {
            std::vector<Complex> line(n);
            for (std::size_t l = lo; l < hi; ++l) {
                const std::size_t base = (l / stride) * stride * n + l % stride;
                for (std::uint64_t x = 0; x < n; ++x) line[x] = cur[base + x * stride];
                for (std::uint64_t m = 0; m < n; ++m) {
                    Complex acc{0.0, 0.0};
                    std::uint64_t phase = 0;  // x * m mod n
                    for (std::uint64_t x = 0; x < n; ++x) {
                        acc += line[x] * roots[negate && phase != 0 ? n - phase : phase];
                        phase += m;
                        if (phase >= n) phase -= n;
                    }
                    next[base + m * stride] = acc;
                }
            }
        });
        std::swap(cur, next);
        stride *= n;
    }
    return cur;
}

}  // namespace

Complex chi(const Modulus& m, std::int64_t x) {
    const Residue r = m.reduce(x);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m.n()));
}

GridFunction indicator(const PointSet& E) {
    GridFunction f(E.modulus(), E.dim());
    for (std::size_t i = 0; i < E.size(); ++i) f[E.index_of(E.point(i))] = 1.0;
    return f;
}

FourierTable forward_transform(const GridFunction& f) {
    auto values = transform_axes(f.values(), f.n(), f.dim(), true);
    const double scale = std::pow(static_cast<double>(f.n()), -static_cast<double>(f.dim()));
    for (auto& v : values) v *= scale;
    return FourierTable(f.modulus(), f.dim(), std::move(values));
}

GridFunction inverse_transform(const FourierTable& t) {
    return GridFunction(t.modulus(), t.dim(), transform_axes(t.values(), t.n(), t.dim(), false));
}

PlancherelResult plancherel_check(const GridFunction& f, const GridFunction& g) {
    if (f.n() != g.n() || f.dim() != g.dim()) throw Error("plancherel_check: shape mismatch");
    PlancherelResult r;
    for (std::size_t i = 0; i < f.size(); ++i) r.lhs += f[i] * std::conj(g[i]);
    r.lhs *= std::pow(static_cast<double>(f.n()), -static_cast<double>(f.dim()));
    const auto fh = forward_transform(f);
    const auto gh = forward_transform(g);
    for (std::size_t i = 0; i < fh.size(); ++i) r.rhs += fh[i] * std::conj(gh[i]);
    r.abs_gap = std::abs(r.lhs - r.rhs);
    return r;
}

double star_transform_identity_gap(const PointSet& E, const std::vector<std::vector<Coord>>& bases,
                                   std::span<const Residue> s) {
    return star_transform_identity_gap(E, forward_transform(indicator(E)), bases, s);
}

double star_transform_identity_gap(const PointSet& E, const FourierTable& e_hat,
                                   const std::vector<std::vector<Coord>>& bases,
                                   std::span<const Residue> s) {
    const auto k = static_cast<unsigned>(bases.size());
    if (k == 0 || k > 3) throw Error("star transform identity supports 1 <= k <= 3");
    if (s.size() != k) throw Error("frequency tuple must have one entry per base point");
    const auto& m = E.modulus();
    const std::uint64_t n = m.n();

    // mu^(s) = n^-k sum_t chi(-t.s) mu(t), over the dense k-star table.
    const auto mu = dot_star_histogram(E, bases);
    const auto roots = root_table(n);
    Complex lhs{0.0, 0.0};
    for (std::uint64_t code = 0; code < mu.counts.size(); ++code) {
        if (mu.counts[code] == 0) continue;
        std::uint64_t rest = code, phase = 0;
        for (unsigned i = 0; i < k; ++i, rest /= n) phase = (phase + (rest % n) * (s[i] % n)) % n;
        lhs += static_cast<double>(mu.counts[code]) * roots[phase == 0 ? 0 : n - phase];
    }
    lhs *= std::pow(static_cast<double>(n), -static_cast<double>(k));

    std::vector<Residue> freq(E.dim(), 0);
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < E.dim(); ++j) freq[j] = (freq[j] + (s[i] % n) * bases[i][j]) % n;
    const Complex rhs = std::pow(static_cast<double>(n), static_cast<double>(E.dim()) - k) * e_hat[e_hat.index_of(freq)];
    return std::abs(lhs - rhs);
}

}  // namespace ringgeom
