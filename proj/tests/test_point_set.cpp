#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "ringgeom/point_set.hpp"

using namespace ringgeom;

TEST_CASE("point set construction and validation") {
    const Modulus m(5);
    CHECK_THROWS_AS(PointSet(m, 2, {1, 2, 1, 2}), Error);   // duplicate
    CHECK_THROWS_AS(PointSet(m, 2, {1, 5}), Error);         // out of range
    CHECK_THROWS_AS(PointSet(m, 2, {1, 2, 3}), Error);      // ragged
    CHECK_THROWS_AS(PointSet(m, 0, {}), Error);
    const PointSet E(m, 2, {1, 2, 3, 4});
    CHECK(E.size() == 2);
    CHECK(E.contains(std::vector<Coord>{3, 4}));
    CHECK_FALSE(E.contains(std::vector<Coord>{4, 3}));
}

TEST_CASE("full space and index round trip") {
    const Modulus m(3);
    const auto F = PointSet::full_space(m, 2);
    CHECK(F.size() == 9);
    for (std::size_t i = 0; i < F.size(); ++i) CHECK(F.index_of(F.point(i)) == i);
    const auto G = PointSet::from_indices(m, 2, F.indices());
    CHECK(G.size() == 9);
    CHECK(std::equal(G.coords().begin(), G.coords().end(), F.coords().begin()));
}

TEST_CASE("translation preserves size and shifts points") {
    const Modulus m(7);
    const PointSet E(m, 2, {0, 0, 6, 3});
    const auto T = E.translated(std::vector<Coord>{1, 5});
    CHECK(T.contains(std::vector<Coord>{1, 5}));
    CHECK(T.contains(std::vector<Coord>{0, 1}));
}

TEST_CASE("dot products and distances") {
    const Modulus m5(5), m9(9);
    using V = std::vector<Coord>;
    CHECK(dot(V{1, 2}, V{2, 2}, m5) == 1);
    CHECK(dot(V{0, 0}, V{4, 3}, m5) == 0);
    CHECK(dot(V{3, 3}, V{3, 0}, m9) == 0);
    CHECK(dist(V{0, 0}, V{1, 2}, m5) == 0);
    CHECK(dist(V{2, 4}, V{2, 4}, m5) == 0);
    CHECK(dist(V{2}, V{0}, m9) == 4);
    CHECK(dist(V{0}, V{2}, m9) == 4);
    CHECK_THROWS_AS(dot(V{1}, V{1, 2}, m5), Error);
}

TEST_CASE("tuple encoding round trip") {
    const std::vector<Residue> t{4, 0, 7};
    CHECK(decode_tuple(encode_tuple(t, 9), 9, 3) == t);
    CHECK(encode_tuple(std::vector<Residue>{1, 2}, 9) == 1 + 2 * 9);
}

TEST_CASE("star histogram matches enumeration") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto E = oracle::random_set(9, 2, 20, seed);
        std::mt19937_64 rng(seed * 31);
        for (unsigned k = 1; k <= 3; ++k) {
            std::vector<std::vector<Coord>> bases;
            std::vector<oracle::Point> obases;
            for (unsigned j = 0; j < k; ++j) {
                std::vector<Coord> y{static_cast<Coord>(rng() % 9), static_cast<Coord>(rng() % 9)};
                obases.emplace_back(y.begin(), y.end());
                bases.push_back(std::move(y));
            }
            for (Metric metric : {Metric::distance, Metric::dot}) {
                const auto h = star_histogram(E, metric, bases);
                const auto ref = oracle::star_histogram(E, metric, obases);
                CHECK(h.total() == E.size());
                std::size_t nonzero = 0;
                for (const auto& [t, c] : ref) CHECK(h.count(t) == c);
                for (auto c : h.counts) nonzero += c != 0;
                CHECK(nonzero == ref.size());
            }
        }
    }
}

TEST_CASE("metric names") {
    CHECK(parse_metric("dot") == Metric::dot);
    CHECK(parse_metric("distance") == Metric::distance);
    CHECK(to_string(Metric::dot) == "dot");
    CHECK_THROWS_AS(parse_metric("taxicab"), Error);
}
