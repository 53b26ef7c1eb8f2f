#pragma once

// Dot-product incidence counting over Z_n^d.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringgeom/estimate.hpp"
#include "ringgeom/point_set.hpp"

namespace ringgeom {

/// Counts of a pair form over all ordered pairs (x, y) in E x E, diagonal
/// included. counts has n entries.
struct ValueHistogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::vector<Residue> support() const;
};

/// mu(t) = |{(x, y) in E x E : x.y = t}|.
ValueHistogram mu_histogram(const PointSet& E);

/// Pi(E), ascending.
std::vector<Residue> product_set(const PointSet& E);

/// Pi(E) == Z_n. Stops counting as soon as every residue has appeared.
bool covers_ring(const PointSet& E);

struct DeviationReport {
    double max_dev = 0.0;  // max_t |mu(t) - |E|^2/n|
    double bound = 0.0;    // tau n^(d-1) |E| / gamma^((d-2)/2)
    bool holds = false;
};

DeviationReport mu_deviation(const PointSet& E);
DeviationReport mu_deviation(const PointSet& E, const ValueHistogram& mu);

/// A closed-form size threshold evaluated for one set size.
struct ThresholdReport {
    std::string name;
    double bound = 0.0;
    std::uint64_t set_size = 0;
    bool applies = false;        // set_size > bound
    bool vacuous = false;        // bound >= n^d
    bool hypotheses_met = true;  // dimension / prime-power side conditions
};

/// Coverage thresholds:
///   units          sqrt(2) tau n^d / gamma^((d-1)/2)        Z_n^x in Pi(E)
///   ring_weak      2 sqrt(tau) n^(d+1) / gamma^(d/2)        Pi(E) = Z_n
///   ring           tau n^d / gamma^((d-2)/2), d > 2         Pi(E) = Z_n
/// and, when ell is given (n = p^ell):
///   units_prime_power  ell q^((2ell-1)d/(2ell) + 1/(2ell))
///   ring_prime_power   (ell+1) q^((2ell-1)d/(2ell) + 1/ell), d >= 3
std::vector<ThresholdReport> coverage_thresholds(const Modulus& m, unsigned d,
                                                 std::uint64_t set_size,
                                                 std::optional<unsigned> ell = std::nullopt);

/// sqrt(tau) n^(d + (k-1)/2) / gamma^((d-1)/2), the size above which k-star and
/// k-simplex counts are of full order.
ThresholdReport simplex_threshold(const Modulus& m, unsigned d, unsigned k, std::uint64_t set_size);

/// {x : gamma(n) | x_i for all i}; (n/gamma)^d points.
PointSet divisible_construction(const Modulus& m, unsigned d);

/// mu_{y^1..y^k}(t) = |{x in E : x.y^i = t_i}|.
StarHistogram dot_star_histogram(const PointSet& E, const std::vector<std::vector<Coord>>& bases);

/// Pi_{y^1..y^k}(E).
std::set<ResidueTuple> dot_star_set(const PointSet& E, const std::vector<std::vector<Coord>>& bases);

/// (1/|E|^k) sum over base tuples in E^k of |Pi_{y^1..y^k}(E)|. Exhaustive when
/// sample_bases >= |E|^k, otherwise a Monte-Carlo mean with its standard error.
Estimate dot_star_average(const PointSet& E, unsigned k, std::uint64_t sample_bases,
                          std::uint64_t seed);

/// K_k = sum over base tuples and value tuples of mu_{y^1..y^k}(t)^2, exact,
/// for k in {1, 2}.
std::uint64_t dot_k2_statistic(const PointSet& E, unsigned k,
                               std::uint64_t budget = kExactWorkBudget);

/// The two routes behind dot_k2_statistic, exposed so they can be compared.
std::uint64_t dot_k_statistic_pairwise(const PointSet& E, unsigned k,
                                       std::uint64_t budget = kExactWorkBudget);
std::uint64_t dot_k_statistic_definitional(const PointSet& E, unsigned k,
                                           std::uint64_t budget = kExactWorkBudget);

struct KBoundReport {
    BoundCheck with_tau;  // |E|^3/n + tau n^(2d-1) |E| / gamma^(d-1)
    BoundCheck tau_free;  // same without the tau factor
};

KBoundReport k1_bound_check(const PointSet& E);

}  // namespace ringgeom
