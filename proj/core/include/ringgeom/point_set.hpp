#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ringgeom/ring_core.hpp"

namespace ringgeom {

using Coord = std::uint32_t;
using ResidueTuple = std::vector<Residue>;

/// Which pairwise form labels a pair of points.
enum class Metric { distance, dot };

std::string to_string(Metric metric);
Metric parse_metric(const std::string& text);

/// A deduplicated set E of d-dimensional residue vectors. Immutable after
/// construction; points keep the order they were supplied in.
class PointSet {
public:
    /// Geometry tables are dense in n, so the modulus is capped well below the
    /// factorization range.
    static constexpr std::uint64_t max_modulus = 65535;

    /// `coords` holds size*d coordinates, point-major. Throws Error on
    /// out-of-range coordinates or duplicate points.
    PointSet(Modulus m, unsigned d, std::vector<Coord> coords);

    /// Points given by their linear index in Z_n^d (see index_of).
    static PointSet from_indices(Modulus m, unsigned d, std::span<const std::uint64_t> indices);
    static PointSet full_space(Modulus m, unsigned d);

    const Modulus& modulus() const noexcept { return m_; }
    std::uint64_t n() const noexcept { return m_.n(); }
    unsigned dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return coords_.size() / d_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const Coord> point(std::size_t i) const noexcept {
        return {coords_.data() + i * d_, d_};
    }
    std::span<const Coord> coords() const noexcept { return coords_; }

    /// Linear index sum x_i n^i, coordinate 0 least significant.
    std::uint64_t index_of(std::span<const Coord> x) const;
    std::vector<std::uint64_t> indices() const;

    /// E + v.
    PointSet translated(std::span<const Coord> v) const;
    bool contains(std::span<const Coord> x) const;

private:
    Modulus m_;
    unsigned d_;
    std::vector<Coord> coords_;
};

/// n^d, throwing when it does not fit in 64 bits.
std::uint64_t space_size(const Modulus& m, unsigned d);

/// x . y mod n.
Residue dot(std::span<const Coord> x, std::span<const Coord> y, const Modulus& m);
/// sum (x_i - y_i)^2 mod n.
Residue dist(std::span<const Coord> x, std::span<const Coord> y, const Modulus& m);
Residue pair_value(Metric metric, std::span<const Coord> x, std::span<const Coord> y,
                   const Modulus& m);

/// Counting function over k-tuples of values against fixed base points:
/// counts[code] = |{x in E : value(x, base_i) = t_i for all i}|, where
/// code = sum t_i n^i.
struct StarHistogram {
    Metric metric = Metric::distance;
    std::uint64_t n = 0;
    unsigned k = 0;
    std::vector<std::vector<Coord>> bases;
    std::vector<std::uint64_t> counts;

    std::uint64_t count(std::span<const Residue> t) const;
    std::uint64_t total() const;
    /// Tuples with a nonzero count, ascending by code.
    std::vector<ResidueTuple> support() const;
};

std::uint64_t encode_tuple(std::span<const Residue> t, std::uint64_t n);
ResidueTuple decode_tuple(std::uint64_t code, std::uint64_t n, unsigned k);

/// One pass over E; requires 1 <= k and n^k <= 2^24.
StarHistogram star_histogram(const PointSet& E, Metric metric,
                             const std::vector<std::vector<Coord>>& bases);

}  // namespace ringgeom
