#pragma once

// Internal engines shared by the dot-product and distance modules. Both sides
// only differ in the pair form, so everything is parameterized by Metric.

#include <cstdint>

#include "ringgeom/estimate.hpp"
#include "ringgeom/point_set.hpp"

namespace ringgeom::detail {

/// sum_{x,x' in E} c(x,x')^k with c(x,x') = #{y in E : v(x,y) = v(x',y)}.
std::uint64_t pair_moment(const PointSet& E, Metric metric, unsigned k, std::uint64_t budget);

/// sum over base tuples y in E^k of sum_t count_y(t)^2, straight from the
/// definition.
std::uint64_t star_moment_definitional(const PointSet& E, Metric metric, unsigned k,
                                       std::uint64_t budget);

/// pair_moment estimated from uniformly drawn (x, x') pairs.
Estimate pair_moment_sampled(const PointSet& E, Metric metric, unsigned k, std::uint64_t pairs,
                             std::uint64_t seed);

/// Mean over base tuples in E^k of the number of distinct k-stars; exhaustive
/// when samples >= |E|^k.
Estimate star_size_average(const PointSet& E, Metric metric, unsigned k, std::uint64_t samples,
                           std::uint64_t seed);

/// |{value-tuples realized by x in E}| for one base tuple.
std::uint64_t star_size(const PointSet& E, Metric metric, const std::vector<std::vector<Coord>>& bases);

}  // namespace ringgeom::detail
