#pragma once

// Congruence types of (k+1)-point configurations, labelled by their pairwise
// distances or dot products t_{i,j}, 0 <= i < j <= k, in lexicographic (i, j)
// order. Types are ordered labels over ordered tuples; no canonicalization
// across vertex permutations. Tuples with repeated points are included.

#include <cstdint>
#include <span>
#include <vector>

#include "ringgeom/point_set.hpp"

namespace ringgeom {

struct SimplexType {
    unsigned k = 0;
    Metric metric = Metric::distance;
    std::vector<Residue> labels;  // k(k+1)/2 entries

    friend bool operator==(const SimplexType&, const SimplexType&) = default;
    friend auto operator<=>(const SimplexType& a, const SimplexType& b) { return a.labels <=> b.labels; }
};

/// Number of labels of a k-simplex, k(k+1)/2.
constexpr unsigned label_count(unsigned k) { return k * (k + 1) / 2; }

SimplexType type_of(std::span<const std::vector<Coord>> points, Metric metric, const Modulus& m);

enum class CensusMode { exact, sampled };

struct Checkpoint {
    std::uint64_t tuples_examined = 0;
    std::uint64_t distinct = 0;
};

struct TypeCensus {
    Metric metric = Metric::distance;
    unsigned k = 0;
    std::uint64_t n = 0;
    std::vector<std::uint64_t> codes;  // distinct label codes, ascending
    std::uint64_t tuples_examined = 0;
    bool exact = false;
    std::vector<Checkpoint> saturation_curve;

    std::size_t distinct_count() const noexcept { return codes.size(); }
    std::vector<SimplexType> types() const;
    bool contains(const SimplexType& t) const;
};

/// Label code sum_p labels[p] n^p.
std::uint64_t encode_type(const SimplexType& t, std::uint64_t n);
SimplexType decode_type(std::uint64_t code, std::uint64_t n, unsigned k, Metric metric);

/// Hard ceiling on exact-mode tuple iteration.
inline constexpr std::uint64_t kExactCensusCap = 1'000'000'000ULL;

/// Exact mode walks all |E|^(k+1) ordered tuples and needs |E|^(k+1) <=
/// min(budget, 10^9). Sampled mode draws `budget` tuples uniformly with
/// replacement, checkpointing every budget/50 draws.
TypeCensus census(const PointSet& E, unsigned k, Metric metric, CensusMode mode, std::uint64_t budget,
                  std::uint64_t seed);

/// |distinct| / n^(k(k+1)/2).
double density(const TypeCensus& c);

struct SaturationReport {
    bool plateaued = false;
    double last_gain = 0.0;  // share of distinct types first seen in the final 20% of draws
};

/// Plateaued when the final 20% of the sampled curve added under 1% of the
/// distinct types. Exact censuses are plateaued by definition.
SaturationReport saturation_estimate(const TypeCensus& c);

}  // namespace ringgeom
