#include "ringgeom/simplices.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <unordered_set>

#include "pair_kernel.hpp"
#include "ringgeom/parallel.hpp"
#include "ringgeom/random.hpp"

namespace ringgeom {

namespace {

constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;
constexpr std::uint64_t kMatrixLimit = std::uint64_t{1} << 26;
constexpr std::uint64_t kSampleShard = 4096;
constexpr unsigned kCheckpoints = 50;

/// Label position of pair (i, j), i < j, in lexicographic order.
unsigned pair_position(unsigned i, unsigned j, unsigned k) { return i * k - i * (i - 1) / 2 + (j - i - 1); }

/// weight[i][j] = n^pair_position(i, j).
std::vector<std::vector<std::uint64_t>> pair_weights(std::uint64_t n, unsigned k) {
    std::vector<std::vector<std::uint64_t>> w(k + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = i + 1; j <= k; ++j) w[i][j] = checked_pow(n, pair_position(i, j, k));
    return w;
}

/// Union of label codes, safe for concurrent inserts. Dense bitmap for small
/// label spaces, hash set otherwise.
class TypeSet {
public:
    explicit TypeSet(std::uint64_t space) : dense_(space <= kBitmapLimit) {
        if (dense_) bits_ = std::vector<std::uint64_t>((space + 63) / 64, 0);
    }

    bool dense() const noexcept { return dense_; }

    void insert_dense(std::uint64_t code) {
        const std::uint64_t mask = std::uint64_t{1} << (code & 63);
        std::atomic_ref<std::uint64_t> word(bits_[code >> 6]);
        if ((word.load(std::memory_order_relaxed) & mask) != 0) return;
        if ((word.fetch_or(mask, std::memory_order_relaxed) & mask) == 0)
            count_.fetch_add(1, std::memory_order_relaxed);
    }

    void merge(const std::unordered_set<std::uint64_t>& local) {
        std::lock_guard lock(mutex_);
        set_.insert(local.begin(), local.end());
        count_.store(set_.size());
    }

    std::uint64_t count() const { return count_.load(); }

    std::vector<std::uint64_t> sorted_codes() const {
        std::vector<std::uint64_t> out;
        if (dense_) {
            for (std::uint64_t w = 0; w < bits_.size(); ++w)
                for (std::uint64_t b = bits_[w]; b != 0; b &= b - 1)
                    out.push_back(w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(b)));
        } else {
            out.assign(set_.begin(), set_.end());
            std::sort(out.begin(), out.end());
        }
        return out;
    }

private:
    bool dense_;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> set_;
    std::mutex mutex_;
    std::atomic<std::uint64_t> count_{0};
};

/// Collects codes for one task and flushes them into the shared TypeSet.
class LocalTypes {
public:
    explicit LocalTypes(TypeSet& shared) : shared_(shared) {}
    ~LocalTypes() { flush(); }

    void insert(std::uint64_t code) {
        if (shared_.dense())
            shared_.insert_dense(code);
        else
            local_.insert(code);
    }

    void flush() {
        if (!local_.empty()) shared_.merge(local_);
        local_.clear();
    }

private:
    TypeSet& shared_;
    std::unordered_set<std::uint64_t> local_;
};

std::uint64_t label_space(std::uint64_t n, unsigned k) {
    const unsigned labels = label_count(k);
    if (std::pow(static_cast<double>(n), labels) >= 1.8e19)
        throw Error("label space n^(k(k+1)/2) does not fit in 64 bits");
    return checked_pow(n, labels);
}

void census_exact(const PointSet& E, unsigned k, Metric metric, TypeSet& types) {
    const std::size_t s = E.size();
    const auto weights = pair_weights(E.n(), k);
    const bool use_matrix = s * s <= kMatrixLimit;
    const std::vector<std::uint16_t> V = use_matrix ? detail::value_matrix(E, metric) : std::vector<std::uint16_t>{};
    const detail::PairKernel kernel(E, metric);

    parallel::for_chunks(s, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        LocalTypes local(types);
        // rows[i][y] = value(x_i, y) for the current prefix x_0..x_i
        std::vector<std::vector<std::uint32_t>> rows(k, std::vector<std::uint32_t>(use_matrix ? 0 : s));
        std::vector<const std::uint16_t*> mrows(k, nullptr);
        std::vector<std::size_t> prefix(k + 1, 0);
        std::vector<std::uint64_t> partial(k + 2, 0);

        auto value = [&](unsigned i, std::size_t y) -> std::uint64_t {
            return use_matrix ? mrows[i][y] : rows[i][y];
        };
        auto set_row = [&](unsigned i, std::size_t x) {
            if (use_matrix)
                mrows[i] = V.data() + x * s;
            else
                kernel.row(E.point(x), 0, s, rows[i].data());
        };

        // Depth-first over positions 1..k; partial[j] is the code of labels
        // among x_0..x_{j-1}.
        auto recurse = [&](auto&& self, unsigned j) -> void {
            for (std::size_t y = 0; y < s; ++y) {
                std::uint64_t code = partial[j];
                for (unsigned i = 0; i < j; ++i) code += value(i, y) * weights[i][j];
                if (j == k) {
                    local.insert(code);
                } else {
                    partial[j + 1] = code;
                    set_row(j, y);
                    self(self, j + 1);
                }
            }
        };
        for (std::size_t x0 = lo; x0 < hi; ++x0) {
            partial[1] = 0;
            set_row(0, x0);
            recurse(recurse, 1);
        }
    });
}

void census_sampled(const PointSet& E, unsigned k, Metric metric, std::uint64_t budget, std::uint64_t seed,
                    TypeSet& types, std::vector<Checkpoint>& curve) {
    const std::size_t s = E.size();
    const auto weights = pair_weights(E.n(), k);
    const detail::PairKernel kernel(E, metric);
    const std::uint64_t step = std::max<std::uint64_t>(1, budget / kCheckpoints);
    const std::uint64_t intervals = (budget + step - 1) / step;

    for (std::uint64_t c = 0; c < intervals; ++c) {
        const std::uint64_t begin = c * step;
        const std::uint64_t len = std::min(step, budget - begin);
        const std::uint64_t shards = (len + kSampleShard - 1) / kSampleShard;
        parallel::for_chunks(shards, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
            LocalTypes local(types);
            std::vector<std::size_t> idx(k + 1);
            for (std::uint64_t sh = lo; sh < hi; ++sh) {
                Rng rng = make_stream(seed, c, sh);
                const std::uint64_t draws = std::min(kSampleShard, len - sh * kSampleShard);
                for (std::uint64_t i = 0; i < draws; ++i) {
                    for (auto& v : idx) v = uniform_below(rng, s);
                    std::uint64_t code = 0;
                    for (unsigned a = 0; a < k; ++a)
                        for (unsigned b = a + 1; b <= k; ++b)
                            code += kernel.value(E.point(idx[a]), idx[b]) * weights[a][b];
                    local.insert(code);
                }
            }
        });
        curve.push_back({begin + len, types.count()});
    }
}

}  // namespace

SimplexType type_of(std::span<const std::vector<Coord>> points, Metric metric, const Modulus& m) {
    if (points.size() < 2) throw Error("a simplex type needs at least two points");
    const auto k = static_cast<unsigned>(points.size() - 1);
    SimplexType t{k, metric, {}};
    t.labels.reserve(label_count(k));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = i + 1; j <= k; ++j) t.labels.push_back(pair_value(metric, points[i], points[j], m));
    return t;
}

std::uint64_t encode_type(const SimplexType& t, std::uint64_t n) {
    if (t.labels.size() != label_count(t.k)) throw Error("simplex type has wrong number of labels");
    return encode_tuple(t.labels, n);
}

SimplexType decode_type(std::uint64_t code, std::uint64_t n, unsigned k, Metric metric) {
    return {k, metric, decode_tuple(code, n, label_count(k))};
}

std::vector<SimplexType> TypeCensus::types() const {
    std::vector<SimplexType> out;
    out.reserve(codes.size());
    for (auto c : codes) out.push_back(decode_type(c, n, k, metric));
    return out;
}

bool TypeCensus::contains(const SimplexType& t) const {
    if (t.k != k || t.metric != metric) return false;
    return std::binary_search(codes.begin(), codes.end(), encode_type(t, n));
}

TypeCensus census(const PointSet& E, unsigned k, Metric metric, CensusMode mode, std::uint64_t budget,
                  std::uint64_t seed) {
    if (k == 0) throw Error("census needs k >= 1");
    if (E.empty()) throw Error("census needs a nonempty set");
    TypeCensus c;
    c.metric = metric;
    c.k = k;
    c.n = E.n();
    TypeSet types(label_space(E.n(), k));

    if (mode == CensusMode::exact) {
        const double tuples = std::pow(static_cast<double>(E.size()), k + 1.0);
        const double limit = static_cast<double>(std::min(budget, kExactCensusCap));
        if (tuples > limit)
            throw BudgetExceeded("exact census needs |E|^(k+1) = " + std::to_string(tuples) +
                                 " tuples; use sampled mode");
        census_exact(E, k, metric, types);
        c.exact = true;
        c.tuples_examined = checked_pow(E.size(), k + 1);
        c.codes = types.sorted_codes();
        c.saturation_curve = {{0, 0}, {c.tuples_examined, c.codes.size()}};
        return c;
    }

    if (budget == 0) throw Error("sampled census needs a positive budget");
    census_sampled(E, k, metric, budget, seed, types, c.saturation_curve);
    c.tuples_examined = budget;
    c.codes = types.sorted_codes();
    return c;
}

double density(const TypeCensus& c) {
    return static_cast<double>(c.distinct_count()) / std::pow(static_cast<double>(c.n), label_count(c.k));
}

SaturationReport saturation_estimate(const TypeCensus& c) {
    if (c.exact) return {true, 0.0};
    const auto& curve = c.saturation_curve;
    if (curve.size() < 2) throw Error("saturation estimate needs at least two checkpoints");
    const auto& last = curve.back();
    if (last.distinct == 0) return {true, 0.0};
    // Distinct count at the last checkpoint within the first 80% of draws.
    const double cutoff = 0.8 * static_cast<double>(last.tuples_examined);
    std::uint64_t before = 0;
    for (const auto& p : curve)
        if (static_cast<double>(p.tuples_examined) <= cutoff) before = p.distinct;
    const double gain = static_cast<double>(last.distinct - before) / static_cast<double>(last.distinct);
    return {gain < 0.01, gain};
}

}  // namespace ringgeom
