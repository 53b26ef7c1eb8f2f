#pragma once

// Internal: vectorizable evaluation of x.y or ||x-y|| against every point of
// a set, with the final reduction mod n done by table lookup when the raw
// range is small.

#include <cstdint>
#include <span>
#include <vector>

#include "ringgeom/point_set.hpp"

namespace ringgeom::detail {

class Reducer {
public:
    Reducer(std::uint64_t n, std::uint64_t raw_max);

    std::uint32_t operator()(std::uint64_t raw) const noexcept {
        return use_table_ ? table_[raw] : static_cast<std::uint32_t>(raw % n_);
    }

private:
    std::uint64_t n_;
    bool use_table_;
    std::vector<std::uint32_t> table_;
};

class PairKernel {
public:
    PairKernel(const PointSet& E, Metric metric);

    std::size_t size() const noexcept { return size_; }
    Metric metric() const noexcept { return metric_; }

    /// out[j - begin] = value(x, E[j]) for j in [begin, end).
    void row(std::span<const Coord> x, std::size_t begin, std::size_t end,
             std::uint32_t* out) const;

    std::uint32_t value(std::span<const Coord> x, std::size_t j) const;

private:
    Metric metric_;
    unsigned d_;
    std::size_t size_;
    std::vector<std::uint32_t> cols_;  // d rows of size_ entries
    bool narrow_;  // raw sums fit in 32 bits
    Reducer reduce_;
};

/// Histogram (n entries) of the pair form over all ordered pairs of E.
std::vector<std::uint64_t> pair_histogram(const PointSet& E, Metric metric);

/// Which residues occur as the pair form over ordered pairs of E. With
/// stop_when_full, returns as soon as every residue has been seen.
std::vector<bool> pair_support(const PointSet& E, Metric metric, bool stop_when_full);

/// Row-major |E| x |E| table of pair values.
std::vector<std::uint16_t> value_matrix(const PointSet& E, Metric metric);

}  // namespace ringgeom::detail
