#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "ringgeom/harness.hpp"

using namespace ringgeom;

TEST_CASE("generators") {
    ExperimentConfig cfg;
    cfg.n = 3;
    cfg.d = 2;
    cfg.generator = Generator::full_space;
    CHECK(generate_set(cfg, 0).size() == 9);

    cfg.n = 9;
    cfg.generator = Generator::divisible;
    const auto D = generate_set(cfg, 0);
    CHECK(D.size() == 9);
    for (auto c : D.coords()) CHECK(c % 3 == 0);

    cfg.generator = Generator::uniform_random;
    cfg.set_size = 30;
    const auto a = generate_set(cfg, 2);
    const auto b = generate_set(cfg, 2);
    const auto c = generate_set(cfg, 3);
    CHECK(a.size() == 30);
    CHECK(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
    CHECK_FALSE(std::equal(a.coords().begin(), a.coords().end(), c.coords().begin()));

    cfg.set_size = 82;
    CHECK_THROWS_AS(generate_set(cfg, 0), Error);
}

TEST_CASE("sampling without replacement") {
    for (std::uint64_t size : {0, 1, 10, 50, 51, 99, 100}) {
        const auto idx = sample_indices(100, size, 4, 1);
        CHECK(idx.size() == size);
        CHECK(std::is_sorted(idx.begin(), idx.end()));
        CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
        if (!idx.empty()) CHECK(idx.back() < 100);
    }
    const auto big = sample_indices(std::uint64_t{1} << 40, 1000, 4, 1);
    CHECK(big.size() == 1000);
    CHECK_THROWS_AS(sample_indices(10, 11, 1, 1), Error);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.n = 8;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg.n = 9;
    cfg.k = 3;
    cfg.d = 2;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg.k = 1;
    cfg.trials = 0;
    CHECK_THROWS_AS(validate(cfg), Error);
    ExperimentConfig g;
    parse_generator("file:/tmp/x.txt", g);
    CHECK(g.generator == Generator::listed);
    CHECK(g.list_path == "/tmp/x.txt");
    CHECK_THROWS_AS(parse_generator("gaussian", g), Error);
}

TEST_CASE("point list files") {
    std::istringstream ok("n=9 d=2\n0 1\n3 4\n\n8 8\n");
    const auto E = parse_point_list(ok);
    CHECK(E.size() == 3);
    std::ostringstream out;
    write_point_list(E, out);
    std::istringstream again(out.str());
    CHECK(parse_point_list(again).size() == 3);

    std::istringstream dup("n=9 d=2\n0 1\n0 1\n");
    CHECK_THROWS_AS(parse_point_list(dup), Error);
    std::istringstream range("n=9 d=2\n0 9\n");
    CHECK_THROWS_AS(parse_point_list(range), Error);
    std::istringstream arity("n=9 d=2\n0 1 2\n");
    CHECK_THROWS_AS(parse_point_list(arity), Error);
    std::istringstream header("modulus 9\n");
    CHECK_THROWS_AS(parse_point_list(header), Error);
    std::istringstream even("n=8 d=2\n");
    CHECK_THROWS_AS(parse_point_list(even), Error);
}

TEST_CASE("CSV and JSON carry identical values") {
    std::vector<Record> rows;
    rows.push_back(Record().set("a", std::uint64_t{3}).set("b", 0.1).set("c", true).set("s", std::string("x,y")));
    rows.push_back(Record().set("a", std::uint64_t{4}).set("b", 1.0 / 3).set("c", false).set("s", std::string("z")));
    std::ostringstream csv, json;
    write_csv(rows, csv);
    write_json(rows, json);
    CHECK(csv.str().rfind("a,b,c,s\n", 0) == 0);
    CHECK(csv.str().find("\"x,y\"") != std::string::npos);
    const auto parsed = nlohmann::json::parse(json.str());
    REQUIRE(parsed.size() == 2);
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    for (std::size_t i = 0; i < 2; ++i) {
        std::getline(lines, line);
        const auto comma = line.find(',');
        const auto comma2 = line.find(',', comma + 1);
        CHECK(std::stod(line.substr(comma + 1, comma2 - comma - 1)) == parsed[i]["b"].get<double>());
        CHECK(std::stoull(line.substr(0, comma)) == parsed[i]["a"].get<std::uint64_t>());
    }
    std::vector<Record> mixed{Record().set("a", 1.0), Record().set("b", 1.0)};
    std::ostringstream bad;
    CHECK_THROWS_AS(write_csv(mixed, bad), Error);
    std::ostringstream empty;
    write_csv({}, empty);
    CHECK(empty.str().empty());
}

TEST_CASE("coverage sweep") {
    ExperimentConfig cfg;
    cfg.n = 3;
    cfg.d = 3;
    const auto full = run_coverage_sweep(cfg, {27});
    REQUIRE(full.records.size() == 1);
    CHECK(std::get<bool>(full.records[0].at("covers_ring")));
    CHECK(full.guarantees_hold);
    CHECK(run_coverage_sweep(cfg, {}).records.empty());

    cfg.n = 9;
    cfg.d = 3;
    cfg.trials = 3;
    const auto r = run_coverage_sweep(cfg, {10, 100});
    CHECK(r.records.size() == 6);
    CHECK(std::get<std::uint64_t>(r.records[4].at("size")) == 100);
    CHECK(std::get<std::uint64_t>(r.records[4].at("trial")) == 1);
}

TEST_CASE("simplex experiment") {
    ExperimentConfig cfg;
    cfg.n = 9;
    cfg.d = 2;
    cfg.generator = Generator::divisible;
    cfg.metric = Metric::dot;
    const auto r = run_simplex_experiment(cfg);
    REQUIRE(r.records.size() == 1);
    CHECK(std::get<double>(r.records[0].at("density")) == doctest::Approx(1.0 / 9));

    cfg.generator = Generator::uniform_random;
    cfg.set_size = 1;
    cfg.k = 2;
    cfg.metric = Metric::distance;
    CHECK(std::get<double>(run_simplex_experiment(cfg).records[0].at("density")) == doctest::Approx(std::pow(9.0, -3)));
}

TEST_CASE("identity suite") {
    IdentitySuiteOptions opt;
    opt.n_list = {3};
    opt.d_list = {1};
    const auto r = run_identity_suite(opt);
    CHECK(r.guarantees_hold);
    CHECK_FALSE(r.records.empty());
    opt.n_list = {4};
    CHECK_THROWS_AS(run_identity_suite(opt), Error);
}
