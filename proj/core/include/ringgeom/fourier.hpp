#pragma once

// Discrete Fourier analysis on Z_n^d with the normalization
//   f^(m) = n^-d sum_x f(x) chi(-x.m),   f(x) = sum_m chi(x.m) f^(m),
// chi(x) = exp(2 pi i x / n). Tables are dense and indexed like
// PointSet::index_of (coordinate 0 least significant).

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ringgeom/point_set.hpp"

namespace ringgeom {

using Complex = std::complex<double>;

/// Dense complex table over Z_n^d. Tag separates functions from transforms.
template <typename Tag>
class DenseGrid {
public:
    static constexpr std::uint64_t max_cells = std::uint64_t{1} << 22;

    DenseGrid(Modulus m, unsigned d) : m_(std::move(m)), d_(d), values_(checked_cells(m_, d)) {}
    DenseGrid(Modulus m, unsigned d, std::vector<Complex> values)
        : m_(std::move(m)), d_(d), values_(std::move(values)) {
        if (values_.size() != checked_cells(m_, d_)) throw Error("grid has wrong number of cells");
    }

    const Modulus& modulus() const noexcept { return m_; }
    std::uint64_t n() const noexcept { return m_.n(); }
    unsigned dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex& operator[](std::size_t i) { return values_[i]; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    std::span<Complex> values() noexcept { return values_; }
    std::span<const Complex> values() const noexcept { return values_; }

    /// Index of a point or frequency, coordinates taken mod n.
    std::size_t index_of(std::span<const Residue> x) const {
        if (x.size() != d_) throw Error("grid index has wrong dimension");
        std::size_t idx = 0;
        for (unsigned i = d_; i-- > 0;) idx = idx * m_.n() + x[i] % m_.n();
        return idx;
    }

private:
    static std::size_t checked_cells(const Modulus& m, unsigned d) {
        if (d == 0) throw Error("dimension must be positive");
        const auto cells = space_size(m, d);
        if (cells > max_cells) throw BudgetExceeded("dense grid n^d exceeds 2^22");
        return static_cast<std::size_t>(cells);
    }

    Modulus m_;
    unsigned d_;
    std::vector<Complex> values_;
};

struct SpatialTag {};
struct FrequencyTag {};
using GridFunction = DenseGrid<SpatialTag>;
using FourierTable = DenseGrid<FrequencyTag>;

/// exp(2 pi i x / n).
Complex chi(const Modulus& m, std::int64_t x);

/// Indicator function of E.
GridFunction indicator(const PointSet& E);

FourierTable forward_transform(const GridFunction& f);
GridFunction inverse_transform(const FourierTable& t);

struct PlancherelResult {
    Complex lhs;  // n^-d sum_x f(x) conj(g(x))
    Complex rhs;  // sum_m f^(m) conj(g^(m))
    double abs_gap = 0.0;
};

PlancherelResult plancherel_check(const GridFunction& f, const GridFunction& g);

/// |mu^_{y}(s) - n^(d-k) E^(s_1 y^1 + ... + s_k y^k)| where mu_y is the
/// dot-product k-star counting function and mu^ its transform on Z_n^k.
double star_transform_identity_gap(const PointSet& E, const std::vector<std::vector<Coord>>& bases,
                                   std::span<const Residue> s);

/// Same, reusing a precomputed transform of the indicator of E.
double star_transform_identity_gap(const PointSet& E, const FourierTable& e_hat,
                                   const std::vector<std::vector<Coord>>& bases,
                                   std::span<const Residue> s);

}  // namespace ringgeom
