#include "moments.hpp"

#include <cmath>
#include <vector>

#include "pair_kernel.hpp"
#include "ringgeom/parallel.hpp"
#include "ringgeom/random.hpp"

namespace ringgeom::detail {

namespace {

constexpr std::uint64_t kMatrixLimit = std::uint64_t{1} << 26;
constexpr std::uint64_t kShard = 256;

std::uint64_t small_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

/// base^exp as a double, for budget and overflow checks only.
double fpow(std::uint64_t base, unsigned exp) { return std::pow(static_cast<double>(base), exp); }

std::uint64_t count_equal(const std::uint16_t* a, const std::uint16_t* b, std::size_t len) {
    std::uint64_t c = 0;
    for (std::size_t j = 0; j < len; ++j) c += a[j] == b[j];
    return c;
}

void check_k(unsigned k) {
    if (k == 0) throw Error("k must be at least 1");
}

/// Distinct-code counter over a dense table of n^k cells, reset by epoch.
class DistinctCounter {
public:
    explicit DistinctCounter(std::uint64_t cells) : stamp_(cells, 0) {}

    std::uint64_t count(const std::vector<std::uint64_t>& codes) {
        ++epoch_;
        std::uint64_t distinct = 0;
        for (auto c : codes) {
            if (stamp_[c] != epoch_) {
                stamp_[c] = epoch_;
                ++distinct;
            }
        }
        return distinct;
    }

private:
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
};

std::uint64_t star_cells(const PointSet& E, unsigned k) {
    const std::uint64_t cells = checked_pow(E.n(), k);
    if (cells > (std::uint64_t{1} << 24)) throw BudgetExceeded("k-star table n^k exceeds 2^24");
    return cells;
}

}  // namespace

std::uint64_t pair_moment(const PointSet& E, Metric metric, unsigned k, std::uint64_t budget) {
    check_k(k);
    const std::uint64_t s = E.size();
    if (fpow(s, 3) > static_cast<double>(budget))
        throw BudgetExceeded("pair moment needs |E|^3 = " + std::to_string(fpow(s, 3)) +
                             " operations, over budget");
    if (fpow(s, k + 2) >= 1.8e19) throw Error("pair moment would overflow 64 bits");
    if (s * s > kMatrixLimit) throw BudgetExceeded("pair moment value matrix too large");

    const auto V = value_matrix(E, metric);
    const std::size_t chunks = parallel::chunk_count(s, 1);
    std::vector<std::uint64_t> partial(chunks, 0);
    const std::uint64_t diagonal = small_pow(s, k);
    parallel::for_chunks(s, 1, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        std::uint64_t acc = 0;
        for (std::size_t x = lo; x < hi; ++x) {
            const std::uint16_t* rx = V.data() + x * s;
            acc += diagonal;
            for (std::size_t x2 = x + 1; x2 < s; ++x2)
                acc += 2 * small_pow(count_equal(rx, V.data() + x2 * s, s), k);
        }
        partial[c] = acc;
    });
    std::uint64_t total = 0;
    for (auto p : partial) total += p;
    return total;
}

std::uint64_t star_moment_definitional(const PointSet& E, Metric metric, unsigned k,
                                       std::uint64_t budget) {
    check_k(k);
    const std::uint64_t s = E.size();
    if (fpow(s, k + 1) > static_cast<double>(budget))
        throw BudgetExceeded("definitional star moment needs |E|^(k+1) operations, over budget");
    if (s * s > kMatrixLimit) throw BudgetExceeded("star moment value matrix too large");
    const std::uint64_t cells = star_cells(E, k);
    const std::uint64_t n = E.n();
    const std::uint64_t tuples = small_pow(s, k);

    const auto V = value_matrix(E, metric);
    const std::size_t chunks = parallel::chunk_count(tuples, 1);
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel::for_chunks(tuples, 1, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        std::vector<std::uint64_t> hist(cells, 0);
        std::vector<std::uint64_t> codes(s);
        std::uint64_t acc = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
            std::fill(codes.begin(), codes.end(), 0);
            std::uint64_t rest = t, weight = 1;
            for (unsigned i = 0; i < k; ++i) {
                const std::uint16_t* row = V.data() + (rest % s) * s;
                rest /= s;
                for (std::size_t x = 0; x < s; ++x) codes[x] += row[x] * weight;
                weight *= n;
            }
            // sum of squares accumulated incrementally: (h+1)^2 - h^2 = 2h + 1
            for (auto code : codes) acc += 2 * hist[code]++ + 1;
            for (auto code : codes) hist[code] = 0;
        }
        partial[c] = acc;
    });
    std::uint64_t total = 0;
    for (auto p : partial) total += p;
    return total;
}

Estimate pair_moment_sampled(const PointSet& E, Metric metric, unsigned k, std::uint64_t pairs,
                             std::uint64_t seed) {
    check_k(k);
    if (pairs == 0) throw Error("sampled pair moment needs at least one pair");
    const std::uint64_t s = E.size();
    const PairKernel kernel(E, metric);
    const std::uint64_t shards = (pairs + kShard - 1) / kShard;
    std::vector<double> sum(shards, 0.0), sumsq(shards, 0.0);
    parallel::for_chunks(shards, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> a(s), b(s);
        for (std::uint64_t sh = lo; sh < hi; ++sh) {
            Rng rng = make_stream(seed, sh);
            const std::uint64_t draws = std::min(kShard, pairs - sh * kShard);
            for (std::uint64_t i = 0; i < draws; ++i) {
                const auto x = uniform_below(rng, s), x2 = uniform_below(rng, s);
                kernel.row(E.point(x), 0, s, a.data());
                kernel.row(E.point(x2), 0, s, b.data());
                std::uint64_t c = 0;
                for (std::size_t j = 0; j < s; ++j) c += a[j] == b[j];
                const double v = std::pow(static_cast<double>(c), k);
                sum[sh] += v;
                sumsq[sh] += v * v;
            }
        }
    });
    double total = 0.0, total_sq = 0.0;
    for (std::uint64_t sh = 0; sh < shards; ++sh) {
        total += sum[sh];
        total_sq += sumsq[sh];
    }
    const double N = static_cast<double>(pairs);
    const double mean = total / N;
    const double var = pairs > 1 ? std::max(0.0, (total_sq - N * mean * mean) / (N - 1)) : 0.0;
    const double scale = static_cast<double>(s) * static_cast<double>(s);
    return {scale * mean, scale * std::sqrt(var / N), pairs, false};
}

std::uint64_t star_size(const PointSet& E, Metric metric, const std::vector<std::vector<Coord>>& bases) {
    const auto k = static_cast<unsigned>(bases.size());
    check_k(k);
    DistinctCounter counter(star_cells(E, k));
    const PairKernel kernel(E, metric);
    std::vector<std::uint64_t> codes(E.size(), 0);
    std::vector<std::uint32_t> row(E.size());
    std::uint64_t weight = 1;
    for (const auto& b : bases) {
        if (b.size() != E.dim()) throw Error("base point has wrong dimension");
        kernel.row(b, 0, E.size(), row.data());
        for (std::size_t x = 0; x < E.size(); ++x) codes[x] += row[x] * weight;
        weight *= E.n();
    }
    return counter.count(codes);
}

Estimate star_size_average(const PointSet& E, Metric metric, unsigned k, std::uint64_t samples,
                           std::uint64_t seed) {
    check_k(k);
    if (k > E.dim()) throw Error("k must not exceed the dimension");
    if (samples == 0) throw Error("star average needs at least one sample");
    const std::uint64_t s = E.size();
    const std::uint64_t n = E.n();
    const std::uint64_t cells = star_cells(E, k);
    const bool exhaustive = fpow(s, k) <= static_cast<double>(samples);
    const std::uint64_t draws = exhaustive ? small_pow(s, k) : samples;
    if (exhaustive && fpow(s, k + 1) > static_cast<double>(kExactWorkBudget))
        throw BudgetExceeded("exhaustive star average over budget");

    const PairKernel kernel(E, metric);
    const bool use_matrix = s * s <= kMatrixLimit;
    const std::vector<std::uint16_t> V = use_matrix ? value_matrix(E, metric) : std::vector<std::uint16_t>{};

    const std::uint64_t shards = (draws + kShard - 1) / kShard;
    std::vector<std::uint64_t> sum(shards, 0), sumsq(shards, 0);
    parallel::for_chunks(shards, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        DistinctCounter counter(cells);
        std::vector<std::uint64_t> codes(s);
        std::vector<std::uint32_t> row(s);
        std::vector<std::uint64_t> base(k);
        for (std::uint64_t sh = lo; sh < hi; ++sh) {
            Rng rng = make_stream(seed, sh);
            const std::uint64_t count = std::min(kShard, draws - sh * kShard);
            for (std::uint64_t i = 0; i < count; ++i) {
                if (exhaustive) {
                    std::uint64_t rest = sh * kShard + i;
                    for (unsigned j = 0; j < k; ++j, rest /= s) base[j] = rest % s;
                } else {
                    for (unsigned j = 0; j < k; ++j) base[j] = uniform_below(rng, s);
                }
                std::fill(codes.begin(), codes.end(), 0);
                std::uint64_t weight = 1;
                for (unsigned j = 0; j < k; ++j, weight *= n) {
                    if (use_matrix) {
                        const std::uint16_t* r = V.data() + base[j] * s;
                        for (std::size_t x = 0; x < s; ++x) codes[x] += r[x] * weight;
                    } else {
                        kernel.row(E.point(base[j]), 0, s, row.data());
                        for (std::size_t x = 0; x < s; ++x) codes[x] += row[x] * weight;
                    }
                }
                const std::uint64_t size = counter.count(codes);
                sum[sh] += size;
                sumsq[sh] += size * size;
            }
        }
    });
    std::uint64_t total = 0, total_sq = 0;
    for (std::uint64_t sh = 0; sh < shards; ++sh) {
        total += sum[sh];
        total_sq += sumsq[sh];
    }
    const double N = static_cast<double>(draws);
    const double mean = static_cast<double>(total) / N;
    if (exhaustive) return {mean, 0.0, draws, true};
    const double var =
        draws > 1 ? std::max(0.0, (static_cast<double>(total_sq) - N * mean * mean) / (N - 1)) : 0.0;
    return {mean, std::sqrt(var / N), draws, false};
}

}  // namespace ringgeom::detail
