#pragma once

// Distance-side counting: distance sets, k-star sets and the second moment
// M_k of the k-star counting function.

#include <cstdint>
#include <set>
#include <vector>

#include "ringgeom/estimate.hpp"
#include "ringgeom/point_set.hpp"

namespace ringgeom {

/// Delta(E) over ordered pairs, ascending. Always contains 0.
std::vector<Residue> distance_set(const PointSet& E);

/// nu_{y^1..y^k}(t) = |{x in E : ||x - y^i|| = t_i}|.
StarHistogram dist_star_histogram(const PointSet& E, const std::vector<std::vector<Coord>>& bases);

/// Delta_{y^1..y^k}(E), the support of dist_star_histogram.
std::set<ResidueTuple> star_set(const PointSet& E, const std::vector<std::vector<Coord>>& bases);

/// (1/|E|^k) sum over base tuples in E^k of |Delta_{y^1..y^k}(E)|.
Estimate star_average(const PointSet& E, unsigned k, std::uint64_t sample_bases, std::uint64_t seed);

/// M_k = sum_{y in E^k} sum_t nu_y(t)^2, exact. Throws BudgetExceeded when the
/// cheaper of the two exact routes exceeds `budget` scalar operations.
std::uint64_t m_k_statistic(const PointSet& E, unsigned k, std::uint64_t budget = kExactWorkBudget);

/// M_k as sum_{x,x'} c(x,x')^k, c(x,x') = #{y in E : ||x-y|| = ||x'-y||}.
std::uint64_t m_k_statistic_pairwise(const PointSet& E, unsigned k,
                                     std::uint64_t budget = kExactWorkBudget);
/// M_k straight from the definition.
std::uint64_t m_k_statistic_definitional(const PointSet& E, unsigned k,
                                         std::uint64_t budget = kExactWorkBudget);
/// M_k estimated from `pairs` uniformly drawn (x, x').
Estimate m_k_statistic_sampled(const PointSet& E, unsigned k, std::uint64_t pairs, std::uint64_t seed);

struct MkBoundReport {
    BoundCheck check;  // against |E|^(k+2)/n^k + tau n^(2d-1) |E|^k / gamma^(d-1)
    bool asserted = false;  // only k = 1 carries a known constant (1)
};

MkBoundReport m_k_bound_check(const PointSet& E, unsigned k);

}  // namespace ringgeom
