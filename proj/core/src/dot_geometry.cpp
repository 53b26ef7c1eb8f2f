#include "ringgeom/dot_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "moments.hpp"
#include "pair_kernel.hpp"

namespace ringgeom {

namespace {

double dpow(double base, double exp) { return std::pow(base, exp); }

ThresholdReport make_report(std::string name, double bound, std::uint64_t set_size, double space,
                            bool hypotheses_met) {
    ThresholdReport r;
    r.name = std::move(name);
    r.bound = bound;
    r.set_size = set_size;
    r.applies = static_cast<double>(set_size) > bound;
    r.vacuous = bound >= space;
    r.hypotheses_met = hypotheses_met;
    return r;
}

BoundCheck make_check(std::uint64_t value, double bound) {
    return {value, bound, static_cast<double>(value) <= bound, static_cast<double>(value) / bound};
}

}  // namespace

std::vector<Residue> ValueHistogram::support() const {
    std::vector<Residue> out;
    for (Residue t = 0; t < counts.size(); ++t)
        if (counts[t] != 0) out.push_back(t);
    return out;
}

ValueHistogram mu_histogram(const PointSet& E) {
    ValueHistogram h;
    h.counts = detail::pair_histogram(E, Metric::dot);
    for (auto c : h.counts) h.total += c;
    return h;
}

std::vector<Residue> product_set(const PointSet& E) {
    const auto seen = detail::pair_support(E, Metric::dot, false);
    std::vector<Residue> out;
    for (Residue t = 0; t < seen.size(); ++t)
        if (seen[t]) out.push_back(t);
    return out;
}

bool covers_ring(const PointSet& E) {
    const auto seen = detail::pair_support(E, Metric::dot, true);
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

DeviationReport mu_deviation(const PointSet& E) { return mu_deviation(E, mu_histogram(E)); }

DeviationReport mu_deviation(const PointSet& E, const ValueHistogram& mu) {
    const double n = static_cast<double>(E.n());
    const double size = static_cast<double>(E.size());
    const double mean = size * size / n;
    const auto& m = E.modulus();
    DeviationReport r;
    for (auto c : mu.counts) r.max_dev = std::max(r.max_dev, std::abs(static_cast<double>(c) - mean));
    r.bound = static_cast<double>(m.tau()) * dpow(n, E.dim() - 1.0) * size /
              dpow(static_cast<double>(m.gamma()), (E.dim() - 2.0) / 2.0);
    r.holds = r.max_dev <= r.bound;
    return r;
}

std::vector<ThresholdReport> coverage_thresholds(const Modulus& m, unsigned d,
                                                 std::uint64_t set_size,
                                                 std::optional<unsigned> ell) {
    if (d == 0) throw Error("dimension must be positive");
    const double n = static_cast<double>(m.n());
    const double tau = static_cast<double>(m.tau());
    const double gamma = static_cast<double>(m.gamma());
    const double dd = d;
    const double space = dpow(n, dd);

    std::vector<ThresholdReport> out;
    out.push_back(make_report("units", std::sqrt(2.0) * tau * space / dpow(gamma, (dd - 1) / 2),
                              set_size, space, true));
    out.push_back(make_report("ring_weak", 2.0 * std::sqrt(tau) * dpow(n, dd + 1) / dpow(gamma, dd / 2),
                              set_size, space, true));
    out.push_back(make_report("ring", tau * space / dpow(gamma, (dd - 2) / 2), set_size, space, d > 2));

    if (ell) {
        const unsigned l = *ell;
        if (l == 0 || !m.is_prime_power() || m.factors().front().exponent != l)
            throw Error("n = " + std::to_string(m.n()) + " is not p^" + std::to_string(l));
        const double q = n, L = l;
        const double base_exp = (2 * L - 1) * dd / (2 * L);
        out.push_back(make_report("units_prime_power", L * dpow(q, base_exp + 1 / (2 * L)), set_size,
                                  space, l >= 2));
        out.push_back(make_report("ring_prime_power", (L + 1) * dpow(q, base_exp + 1 / L), set_size,
                                  space, d >= 3));
    }
    return out;
}

ThresholdReport simplex_threshold(const Modulus& m, unsigned d, unsigned k, std::uint64_t set_size) {
    if (k == 0 || k > d) throw Error("simplex threshold needs 1 <= k <= d");
    const double n = static_cast<double>(m.n());
    const double bound = std::sqrt(static_cast<double>(m.tau())) * dpow(n, d + (k - 1.0) / 2) /
                         dpow(static_cast<double>(m.gamma()), (d - 1.0) / 2);
    return make_report("simplices", bound, set_size, dpow(n, d), true);
}

PointSet divisible_construction(const Modulus& m, unsigned d) {
    const std::uint64_t g = m.gamma();
    const std::uint64_t side = m.n() / g;
    const std::uint64_t count = checked_pow(side, d);
    if (count > (std::uint64_t{1} << 26)) throw BudgetExceeded("divisible construction too large");
    std::vector<Coord> coords;
    coords.reserve(count * d);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t rest = i;
        for (unsigned j = 0; j < d; ++j, rest /= side) coords.push_back(static_cast<Coord>((rest % side) * g));
    }
    return PointSet(m, d, std::move(coords));
}

StarHistogram dot_star_histogram(const PointSet& E, const std::vector<std::vector<Coord>>& bases) {
    return star_histogram(E, Metric::dot, bases);
}

std::set<ResidueTuple> dot_star_set(const PointSet& E, const std::vector<std::vector<Coord>>& bases) {
    const auto support = dot_star_histogram(E, bases).support();
    return {support.begin(), support.end()};
}

Estimate dot_star_average(const PointSet& E, unsigned k, std::uint64_t sample_bases,
                          std::uint64_t seed) {
    return detail::star_size_average(E, Metric::dot, k, sample_bases, seed);
}

std::uint64_t dot_k_statistic_pairwise(const PointSet& E, unsigned k, std::uint64_t budget) {
    return detail::pair_moment(E, Metric::dot, k, budget);
}

std::uint64_t dot_k_statistic_definitional(const PointSet& E, unsigned k, std::uint64_t budget) {
    return detail::star_moment_definitional(E, Metric::dot, k, budget);
}

std::uint64_t dot_k2_statistic(const PointSet& E, unsigned k, std::uint64_t budget) {
    if (k != 1 && k != 2) throw Error("K_k is supported for k in {1, 2}");
    // For k = 1 the definitional sum is |E|^2 work, cheaper than the |E|^3
    // pair form; for k = 2 both are cubic and the pair form has no n^2 table.
    return k == 1 ? dot_k_statistic_definitional(E, 1, budget) : dot_k_statistic_pairwise(E, 2, budget);
}

KBoundReport k1_bound_check(const PointSet& E) {
    const auto& m = E.modulus();
    const double n = static_cast<double>(m.n());
    const double size = static_cast<double>(E.size());
    const double main = size * size * size / n;
    const double tail = dpow(n, 2.0 * E.dim() - 1) * size / dpow(static_cast<double>(m.gamma()), E.dim() - 1.0);
    const std::uint64_t value = dot_k2_statistic(E, 1);
    return {make_check(value, main + static_cast<double>(m.tau()) * tail), make_check(value, main + tail)};
}

}  // namespace ringgeom
