#include "pair_kernel.hpp"

#include <algorithm>
#include <mutex>

#include "ringgeom/parallel.hpp"

namespace ringgeom::detail {

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;
constexpr std::size_t kBlock = 256;

std::uint64_t raw_bound(std::uint64_t n, unsigned d) { return std::uint64_t{d} * (n - 1) * (n - 1); }

template <typename Acc>
void accumulate_block(Metric metric, unsigned d, std::size_t size, const std::uint32_t* cols,
                      std::span<const Coord> x, std::size_t begin, std::size_t len, Acc* acc) {
    std::fill(acc, acc + len, Acc{0});
    for (unsigned i = 0; i < d; ++i) {
        const std::uint32_t* col = cols + std::size_t{i} * size + begin;
        const Acc xi = x[i];
        if (metric == Metric::dot) {
            for (std::size_t j = 0; j < len; ++j) acc[j] += xi * static_cast<Acc>(col[j]);
        } else {
            for (std::size_t j = 0; j < len; ++j) {
                const Acc a = xi, b = col[j];
                const Acc diff = a > b ? a - b : b - a;
                acc[j] += diff * diff;
            }
        }
    }
}

}  // namespace

Reducer::Reducer(std::uint64_t n, std::uint64_t raw_max) : n_(n), use_table_(raw_max < kTableLimit) {
    if (!use_table_) return;
    table_.resize(raw_max + 1);
    for (std::uint64_t r = 0; r <= raw_max; ++r) table_[r] = static_cast<std::uint32_t>(r % n);
}

PairKernel::PairKernel(const PointSet& E, Metric metric)
    : metric_(metric),
      d_(E.dim()),
      size_(E.size()),
      cols_(std::size_t{E.dim()} * E.size()),
      narrow_(raw_bound(E.n(), E.dim()) <= UINT32_MAX),
      reduce_(E.n(), raw_bound(E.n(), E.dim())) {
    for (std::size_t j = 0; j < size_; ++j) {
        const auto p = E.point(j);
        for (unsigned i = 0; i < d_; ++i) cols_[std::size_t{i} * size_ + j] = p[i];
    }
}

void PairKernel::row(std::span<const Coord> x, std::size_t begin, std::size_t end,
                     std::uint32_t* out) const {
    for (std::size_t b = begin; b < end; b += kBlock) {
        const std::size_t len = std::min(kBlock, end - b);
        if (narrow_) {
            std::uint32_t acc[kBlock];
            accumulate_block(metric_, d_, size_, cols_.data(), x, b, len, acc);
            for (std::size_t j = 0; j < len; ++j) out[b - begin + j] = reduce_(acc[j]);
        } else {
            std::uint64_t acc[kBlock];
            accumulate_block(metric_, d_, size_, cols_.data(), x, b, len, acc);
            for (std::size_t j = 0; j < len; ++j) out[b - begin + j] = reduce_(acc[j]);
        }
    }
}

std::uint32_t PairKernel::value(std::span<const Coord> x, std::size_t j) const {
    std::uint32_t v;
    row(x, j, j + 1, &v);
    return v;
}

std::vector<std::uint64_t> pair_histogram(const PointSet& E, Metric metric) {
    const std::size_t s = E.size();
    const std::uint64_t n = E.n();
    const PairKernel kernel(E, metric);
    std::vector<std::uint64_t> hist(n, 0);
    std::mutex merge;
    // Ordered pairs: each unordered pair {x, y}, x != y, counts twice.
    parallel::for_chunks(s, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        std::vector<std::uint64_t> h0(n, 0), h1(n, 0);
        std::vector<std::uint32_t> buf(s);
        for (std::size_t x = lo; x < hi; ++x) {
            const auto px = E.point(x);
            kernel.row(px, x, s, buf.data());
            ++h0[buf[0]];
            const std::size_t len = s - x;
            std::size_t j = 1;
            for (; j + 1 < len; j += 2) {
                h0[buf[j]] += 2;
                h1[buf[j + 1]] += 2;
            }
            if (j < len) h0[buf[j]] += 2;
        }
        std::lock_guard lock(merge);
        for (std::uint64_t t = 0; t < n; ++t) hist[t] += h0[t] + h1[t];
    });
    return hist;
}

std::vector<bool> pair_support(const PointSet& E, Metric metric, bool stop_when_full) {
    const std::size_t s = E.size();
    const std::uint64_t n = E.n();
    const PairKernel kernel(E, metric);
    std::vector<bool> seen(n, false);
    std::uint64_t distinct = 0;
    std::mutex merge;
    std::size_t batch = 64;
    for (std::size_t start = 0; start < s; start += batch, batch = std::min<std::size_t>(batch * 2, 4096)) {
        const std::size_t stop = std::min(s, start + batch);
        parallel::for_chunks(stop - start, 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
            std::vector<std::uint8_t> local(n, 0);
            std::vector<std::uint32_t> buf(s);
            for (std::size_t x = start + lo; x < start + hi; ++x) {
                kernel.row(E.point(x), x, s, buf.data());
                for (std::size_t j = 0; j < s - x; ++j) local[buf[j]] = 1;
            }
            std::lock_guard lock(merge);
            for (std::uint64_t t = 0; t < n; ++t)
                if (local[t] && !seen[t]) {
                    seen[t] = true;
                    ++distinct;
                }
        });
        if (stop_when_full && distinct == n) break;
    }
    return seen;
}

std::vector<std::uint16_t> value_matrix(const PointSet& E, Metric metric) {
    const std::size_t s = E.size();
    std::vector<std::uint16_t> matrix(s * s);
    const PairKernel kernel(E, metric);
    parallel::for_chunks(s, 16, [&](std::size_t, std::size_t lo, std::size_t hi) {
        std::vector<std::uint32_t> buf(s);
        for (std::size_t x = lo; x < hi; ++x) {
            kernel.row(E.point(x), 0, s, buf.data());
            std::copy(buf.begin(), buf.end(), matrix.begin() + static_cast<std::ptrdiff_t>(x * s));
        }
    });
    return matrix;
}

}  // namespace ringgeom::detail
