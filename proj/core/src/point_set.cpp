#include "ringgeom/point_set.hpp"

#include <algorithm>
#include <unordered_set>

#include "pair_kernel.hpp"

namespace ringgeom {

std::string to_string(Metric metric) { return metric == Metric::dot ? "dot" : "distance"; }

Metric parse_metric(const std::string& text) {
    if (text == "dot" || text == "dotproduct") return Metric::dot;
    if (text == "distance" || text == "dist") return Metric::distance;
    throw Error("unknown metric '" + text + "' (expected distance or dot)");
}

std::uint64_t space_size(const Modulus& m, unsigned d) { return checked_pow(m.n(), d); }

PointSet::PointSet(Modulus m, unsigned d, std::vector<Coord> coords)
    : m_(std::move(m)), d_(d), coords_(std::move(coords)) {
    if (d_ == 0) throw Error("dimension must be positive");
    if (m_.n() > max_modulus)
        throw Error("point sets support n <= " + std::to_string(max_modulus));
    if (coords_.size() % d_ != 0) throw Error("coordinate count is not a multiple of d");
    for (Coord c : coords_)
        if (c >= m_.n()) throw Error("coordinate " + std::to_string(c) + " out of range");

    space_size(m_, d_);  // linear indices must fit in 64 bits
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(size() * 2);
    for (std::size_t i = 0; i < size(); ++i)
        if (!seen.insert(index_of(point(i))).second) throw Error("duplicate point in set");
}

PointSet PointSet::from_indices(Modulus m, unsigned d, std::span<const std::uint64_t> indices) {
    const std::uint64_t n = m.n();
    const std::uint64_t total = space_size(m, d);
    std::vector<Coord> coords;
    coords.reserve(indices.size() * d);
    for (std::uint64_t idx : indices) {
        if (idx >= total) throw Error("point index out of range");
        for (unsigned i = 0; i < d; ++i) {
            coords.push_back(static_cast<Coord>(idx % n));
            idx /= n;
        }
    }
    return PointSet(std::move(m), d, std::move(coords));
}

PointSet PointSet::full_space(Modulus m, unsigned d) {
    const std::uint64_t total = space_size(m, d);
    std::vector<std::uint64_t> idx(total);
    for (std::uint64_t i = 0; i < total; ++i) idx[i] = i;
    return from_indices(std::move(m), d, idx);
}

std::uint64_t PointSet::index_of(std::span<const Coord> x) const {
    if (x.size() != d_) throw Error("dimension mismatch");
    std::uint64_t idx = 0;
    for (unsigned i = d_; i-- > 0;) idx = idx * m_.n() + x[i];
    return idx;
}

std::vector<std::uint64_t> PointSet::indices() const {
    std::vector<std::uint64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = index_of(point(i));
    return out;
}

PointSet PointSet::translated(std::span<const Coord> v) const {
    if (v.size() != d_) throw Error("dimension mismatch");
    std::vector<Coord> out(coords_);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<Coord>((out[i] + v[i % d_]) % m_.n());
    return PointSet(m_, d_, std::move(out));
}

bool PointSet::contains(std::span<const Coord> x) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (std::equal(x.begin(), x.end(), point(i).begin(), point(i).end())) return true;
    return false;
}

Residue dot(std::span<const Coord> x, std::span<const Coord> y, const Modulus& m) {
    if (x.size() != y.size()) throw Error("dot: dimension mismatch");
    Residue acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = m.add(acc, m.mul(x[i] % m.n(), y[i] % m.n()));
    return acc;
}

Residue dist(std::span<const Coord> x, std::span<const Coord> y, const Modulus& m) {
    if (x.size() != y.size()) throw Error("dist: dimension mismatch");
    Residue acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Residue diff = m.sub(x[i] % m.n(), y[i] % m.n());
        acc = m.add(acc, m.mul(diff, diff));
    }
    return acc;
}

Residue pair_value(Metric metric, std::span<const Coord> x, std::span<const Coord> y,
                   const Modulus& m) {
    return metric == Metric::dot ? dot(x, y, m) : dist(x, y, m);
}

std::uint64_t encode_tuple(std::span<const Residue> t, std::uint64_t n) {
    std::uint64_t code = 0;
    for (std::size_t i = t.size(); i-- > 0;) code = code * n + t[i];
    return code;
}

ResidueTuple decode_tuple(std::uint64_t code, std::uint64_t n, unsigned k) {
    ResidueTuple t(k);
    for (unsigned i = 0; i < k; ++i) {
        t[i] = code % n;
        code /= n;
    }
    return t;
}

std::uint64_t StarHistogram::count(std::span<const Residue> t) const {
    if (t.size() != k) throw Error("star tuple has wrong length");
    for (Residue r : t)
        if (r >= n) return 0;
    return counts[encode_tuple(t, n)];
}

std::uint64_t StarHistogram::total() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
}

std::vector<ResidueTuple> StarHistogram::support() const {
    std::vector<ResidueTuple> out;
    for (std::uint64_t code = 0; code < counts.size(); ++code)
        if (counts[code] != 0) out.push_back(decode_tuple(code, n, k));
    return out;
}

StarHistogram star_histogram(const PointSet& E, Metric metric,
                             const std::vector<std::vector<Coord>>& bases) {
    const auto k = static_cast<unsigned>(bases.size());
    if (k == 0) throw Error("star histogram needs at least one base point");
    const std::uint64_t cells = checked_pow(E.n(), k);
    if (cells > (std::uint64_t{1} << 24)) throw BudgetExceeded("star histogram table n^k exceeds 2^24");
    for (const auto& b : bases) {
        if (b.size() != E.dim()) throw Error("base point has wrong dimension");
        for (Coord c : b)
            if (c >= E.n()) throw Error("base coordinate out of range");
    }

    StarHistogram h{metric, E.n(), k, bases, std::vector<std::uint64_t>(cells, 0)};
    const detail::PairKernel kernel(E, metric);
    std::vector<std::uint64_t> codes(E.size(), 0);
    std::vector<std::uint32_t> row(E.size());
    std::uint64_t weight = 1;
    for (const auto& b : bases) {
        kernel.row(b, 0, E.size(), row.data());
        for (std::size_t x = 0; x < E.size(); ++x) codes[x] += row[x] * weight;
        weight *= E.n();
    }
    for (auto c : codes) ++h.counts[c];
    return h;
}

}  // namespace ringgeom
