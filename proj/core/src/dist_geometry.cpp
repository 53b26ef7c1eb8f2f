#include "ringgeom/dist_geometry.hpp"

#include <cmath>

#include "moments.hpp"
#include "pair_kernel.hpp"

namespace ringgeom {

std::vector<Residue> distance_set(const PointSet& E) {
    const auto seen = detail::pair_support(E, Metric::distance, false);
    std::vector<Residue> out;
    for (Residue t = 0; t < seen.size(); ++t)
        if (seen[t]) out.push_back(t);
    return out;
}

StarHistogram dist_star_histogram(const PointSet& E, const std::vector<std::vector<Coord>>& bases) {
    return star_histogram(E, Metric::distance, bases);
}

std::set<ResidueTuple> star_set(const PointSet& E, const std::vector<std::vector<Coord>>& bases) {
    const auto support = dist_star_histogram(E, bases).support();
    return {support.begin(), support.end()};
}

Estimate star_average(const PointSet& E, unsigned k, std::uint64_t sample_bases, std::uint64_t seed) {
    return detail::star_size_average(E, Metric::distance, k, sample_bases, seed);
}

std::uint64_t m_k_statistic_pairwise(const PointSet& E, unsigned k, std::uint64_t budget) {
    return detail::pair_moment(E, Metric::distance, k, budget);
}

std::uint64_t m_k_statistic_definitional(const PointSet& E, unsigned k, std::uint64_t budget) {
    return detail::star_moment_definitional(E, Metric::distance, k, budget);
}

std::uint64_t m_k_statistic(const PointSet& E, unsigned k, std::uint64_t budget) {
    if (k == 1) return m_k_statistic_definitional(E, 1, budget);
    return m_k_statistic_pairwise(E, k, budget);
}

Estimate m_k_statistic_sampled(const PointSet& E, unsigned k, std::uint64_t pairs, std::uint64_t seed) {
    return detail::pair_moment_sampled(E, Metric::distance, k, pairs, seed);
}

MkBoundReport m_k_bound_check(const PointSet& E, unsigned k) {
    const auto& m = E.modulus();
    const double n = static_cast<double>(m.n());
    const double size = static_cast<double>(E.size());
    const double bound = std::pow(size, k + 2.0) / std::pow(n, k) +
                         static_cast<double>(m.tau()) * std::pow(n, 2.0 * E.dim() - 1) /
                             std::pow(static_cast<double>(m.gamma()), E.dim() - 1.0) * std::pow(size, k);
    const std::uint64_t value = m_k_statistic(E, k);
    MkBoundReport r;
    r.check = {value, bound, static_cast<double>(value) <= bound, static_cast<double>(value) / bound};
    r.asserted = k == 1;
    return r;
}

}  // namespace ringgeom
