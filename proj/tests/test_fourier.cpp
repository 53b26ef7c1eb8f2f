#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ringgeom/fourier.hpp"

using namespace ringgeom;
using V = std::vector<Coord>;

namespace {

GridFunction random_function(std::uint64_t n, unsigned d, std::uint64_t seed) {
    GridFunction f(Modulus(n), d);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : f.values()) v = Complex(u(rng), u(rng));
    return f;
}

double max_gap(std::span<const Complex> a, std::span<const Complex> b) {
    double g = 0;
    for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
    return g;
}

}  // namespace

TEST_CASE("additive characters") {
    CHECK(std::abs(chi(Modulus(7), 0) - Complex(1, 0)) < 1e-15);
    const auto w = chi(Modulus(3), 1);
    CHECK(w.real() == doctest::Approx(-0.5));
    CHECK(w.imag() == doctest::Approx(0.8660254));
    CHECK(std::abs(chi(Modulus(9), 9) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(chi(Modulus(9), -1) - std::conj(chi(Modulus(9), 1))) < 1e-15);
}

TEST_CASE("forward transform hand values") {
    const auto full = forward_transform(indicator(PointSet::full_space(Modulus(3), 2)));
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(full[i] - Complex(i == 0 ? 1.0 : 0.0, 0)) < 1e-12);

    const auto point = forward_transform(indicator(PointSet(Modulus(5), 1, {0})));
    for (std::size_t i = 0; i < point.size(); ++i) CHECK(std::abs(point[i] - Complex(0.2, 0)) < 1e-12);

    const auto E = oracle::random_set(9, 2, 17, 3);
    CHECK(std::abs(forward_transform(indicator(E))[0] - Complex(17.0 / 81, 0)) < 1e-12);
}

TEST_CASE("axis-wise transforms equal the textbook double sum") {
    for (std::uint64_t n : {3, 5, 9})
        for (unsigned d = 1; d <= 3; ++d) {
            if (std::pow(n, d) > 729) continue;
            const auto f = random_function(n, d, n * 10 + d);
            const std::vector<Complex> raw(f.values().begin(), f.values().end());
            const auto fwd = forward_transform(f);
            CHECK(max_gap(fwd.values(), oracle::dft(raw, n, d, false)) < 1e-10);
            const FourierTable t(Modulus(n), d, raw);
            CHECK(max_gap(inverse_transform(t).values(), oracle::dft(raw, n, d, true)) < 1e-9);
        }
}

TEST_CASE("inversion") {
    const auto f = random_function(9, 2, 11);
    CHECK(max_gap(inverse_transform(forward_transform(f)).values(), f.values()) < 1e-9);

    FourierTable delta(Modulus(9), 2);
    delta[0] = 1;
    const auto constant = inverse_transform(delta);
    for (auto v : constant.values()) CHECK(std::abs(v - Complex(1, 0)) < 1e-12);

    const FourierTable zero(Modulus(5), 3);
    const auto nothing = inverse_transform(zero);
    for (auto v : nothing.values()) CHECK(v == Complex(0, 0));
}

TEST_CASE("Plancherel") {
    const auto E = oracle::random_set(9, 2, 10, 7);
    const auto r = plancherel_check(indicator(E), indicator(E));
    CHECK(r.lhs.real() == doctest::Approx(10.0 / 81));
    CHECK(r.abs_gap < 1e-10);

    const auto f = random_function(7, 2, 1);
    const GridFunction g(Modulus(7), 2);
    const auto z = plancherel_check(f, g);
    CHECK(std::abs(z.lhs) < 1e-15);
    CHECK(std::abs(z.rhs) < 1e-15);

    CHECK(plancherel_check(random_function(15, 1, 2), random_function(15, 1, 3)).abs_gap < 1e-10);
    CHECK_THROWS_AS(plancherel_check(random_function(15, 1, 2), random_function(9, 1, 3)), Error);
}

TEST_CASE("star transform identity") {
    const auto E = oracle::random_set(9, 2, 12, 5);
    CHECK(star_transform_identity_gap(E, {V{2, 7}}, std::vector<Residue>{0}) < 1e-9);
    CHECK(star_transform_identity_gap(E, {V{2, 7}}, std::vector<Residue>{4}) < 1e-9);

    const auto L = oracle::random_set(15, 1, 8, 6);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const std::vector<std::vector<Coord>> bases{V{static_cast<Coord>(rng() % 15)}, V{static_cast<Coord>(rng() % 15)}};
        const std::vector<Residue> s{rng() % 15, rng() % 15};
        CHECK(star_transform_identity_gap(L, bases, s) < 1e-9);
    }
    const auto T = oracle::random_set(5, 3, 40, 2);
    CHECK(star_transform_identity_gap(T, {V{1, 2, 3}, V{0, 4, 4}, V{2, 2, 1}}, std::vector<Residue>{1, 3, 2}) < 1e-9);
}

TEST_CASE("dense grid limits") {
    CHECK_THROWS_AS(GridFunction(Modulus(9), 7), BudgetExceeded);
    CHECK_THROWS_AS(GridFunction(Modulus(9), 0), Error);
}
