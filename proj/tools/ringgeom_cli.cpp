#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringgeom/dist_geometry.hpp"
#include "ringgeom/dot_geometry.hpp"
#include "ringgeom/harness.hpp"
#include "ringgeom/parallel.hpp"

using namespace ringgeom;

namespace {

struct Options {
    ExperimentConfig cfg;
    std::string generator = "uniform";
    std::string metric = "distance";
    std::string mode = "exact";
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;
    bool timing = false;
    std::vector<std::uint64_t> sizes;
    // verify
    std::vector<std::uint64_t> n_list{3, 9, 15};
    std::vector<unsigned> d_list{1, 2, 3};
    unsigned instances = 100;
    // factor / thresholds
    std::uint64_t pos_n = 0;
    unsigned pos_d = 0;
    unsigned pos_k = 0;
    std::optional<unsigned> ell;
};

void add_common(CLI::App* app, Options& o) {
    app->add_option("--n", o.cfg.n, "modulus (odd, >= 3)");
    app->add_option("--d", o.cfg.d, "dimension");
    app->add_option("--k", o.cfg.k, "star / simplex order");
    app->add_option("--size", o.cfg.set_size, "set size for the uniform generator");
    app->add_option("--trials", o.cfg.trials, "number of seeded trials");
    app->add_option("--seed", o.cfg.seed, "64-bit seed");
    app->add_option("--generator", o.generator, "uniform | divisible | full | file:<path>");
    app->add_option("--metric", o.metric, "distance | dot")->check(CLI::IsMember({"distance", "dot"}));
    app->add_option("--mode", o.mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
    app->add_option("--budget", o.cfg.budget, "tuple / sample budget");
    app->add_option("--out", o.out, "output path (default stdout)");
    app->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--threads", o.threads, "worker threads (0 = hardware)");
    app->add_flag("--timing", o.timing, "add runtime and timestamp columns (breaks byte-identical output)");
}

void finish_config(Options& o) {
    parse_generator(o.generator, o.cfg);
    o.cfg.metric = parse_metric(o.metric);
    o.cfg.mode = o.mode == "sampled" ? CensusMode::sampled : CensusMode::exact;
    parallel::set_thread_count(o.threads);
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void emit(const Options& o, std::vector<Record> records, double seconds) {
    for (auto& r : records) {
        r.set("toolkit_version", std::string(kToolkitVersion));
        if (o.timing) r.set("runtime_seconds", seconds).set("timestamp", iso_timestamp());
    }
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw Error("cannot open output file " + o.out);
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    if (o.format == "json")
        write_json(records, os);
    else
        write_csv(records, os);
}

std::string join(const std::vector<Residue>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

Record config_echo(const ExperimentConfig& cfg, unsigned trial, std::size_t set_size) {
    Record r;
    r.set("n", cfg.n)
        .set("d", std::uint64_t{cfg.d})
        .set("generator", generator_name(cfg))
        .set("seed", cfg.seed)
        .set("trial", std::uint64_t{trial})
        .set("set_size", std::uint64_t{set_size});
    return r;
}

/// Returns false when a guaranteed check failed.
bool run(const std::string& command, Options& o) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Record> records;
    bool ok = true;
    auto& cfg = o.cfg;

    if (command == "factor") {
        const Modulus m(o.pos_n);
        Record r;
        std::string factors;
        for (const auto& pp : m.factors())
            factors += (factors.empty() ? "" : " ") + std::to_string(pp.prime) + "^" + std::to_string(pp.exponent);
        r.set("n", m.n())
            .set("factors", factors)
            .set("tau", m.tau())
            .set("gamma", m.gamma())
            .set("units", euler_phi(m))
            .set("prime_power", m.is_prime_power());
        records.push_back(std::move(r));
    } else if (command == "thresholds") {
        const Modulus m(o.pos_n);
        auto reports = coverage_thresholds(m, o.pos_d, 0, o.ell);
        if (o.pos_k != 0) reports.push_back(simplex_threshold(m, o.pos_d, o.pos_k, 0));
        for (const auto& t : reports) {
            Record r;
            r.set("n", m.n())
                .set("d", std::uint64_t{o.pos_d})
                .set("name", t.name)
                .set("bound", t.bound)
                .set("vacuous", t.vacuous)
                .set("hypotheses_met", t.hypotheses_met);
            records.push_back(std::move(r));
        }
    } else if (command == "product-set" || command == "distance-set") {
        validate(cfg);
        for (unsigned trial = 0; trial < cfg.trials; ++trial) {
            const PointSet E = generate_set(cfg, trial);
            const auto values = command == "product-set" ? product_set(E) : distance_set(E);
            Record r = config_echo(cfg, trial, E.size());
            r.set("distinct", std::uint64_t{values.size()})
                .set("covers_ring", values.size() == E.n())
                .set("values", join(values));
            records.push_back(std::move(r));
        }
    } else if (command == "mu") {
        validate(cfg);
        for (unsigned trial = 0; trial < cfg.trials; ++trial) {
            const PointSet E = generate_set(cfg, trial);
            const auto mu = mu_histogram(E);
            const auto dev = mu_deviation(E, mu);
            if (cfg.d >= 2 && !dev.holds) ok = false;
            for (Residue t = 0; t < E.n(); ++t) {
                Record r = config_echo(cfg, trial, E.size());
                r.set("t", t)
                    .set("count", mu.counts[t])
                    .set("mu_max_dev", dev.max_dev)
                    .set("mu_bound", dev.bound)
                    .set("mu_holds", dev.holds);
                records.push_back(std::move(r));
            }
        }
    } else if (command == "stars") {
        validate(cfg);
        for (unsigned trial = 0; trial < cfg.trials; ++trial) {
            const PointSet E = generate_set(cfg, trial);
            const auto est = cfg.metric == Metric::dot ? dot_star_average(E, cfg.k, cfg.budget, cfg.seed + trial)
                                                       : star_average(E, cfg.k, cfg.budget, cfg.seed + trial);
            Record r = config_echo(cfg, trial, E.size());
            r.set("metric", to_string(cfg.metric))
                .set("k", std::uint64_t{cfg.k})
                .set("star_average", est.estimate)
                .set("stderr", est.stderr_)
                .set("samples", est.samples)
                .set("exact", est.exact);
            records.push_back(std::move(r));
        }
    } else if (command == "mk") {
        validate(cfg);
        for (unsigned trial = 0; trial < cfg.trials; ++trial) {
            const PointSet E = generate_set(cfg, trial);
            Record r = config_echo(cfg, trial, E.size());
            r.set("metric", to_string(cfg.metric)).set("k", std::uint64_t{cfg.k});
            if (cfg.metric == Metric::distance) {
                const auto rep = m_k_bound_check(E, cfg.k);
                if (rep.asserted && !rep.check.holds) ok = false;
                r.set("statistic", rep.check.value)
                    .set("bound", rep.check.bound)
                    .set("ratio", rep.check.ratio)
                    .set("holds", rep.check.holds)
                    .set("asserted", rep.asserted);
            } else {
                if (cfg.k > 2) throw Error("the dot-product statistic supports k in {1, 2}");
                const auto value = dot_k2_statistic(E, cfg.k);
                r.set("statistic", value);
                if (cfg.k == 1) {
                    const auto rep = k1_bound_check(E);
                    if (!rep.with_tau.holds) ok = false;
                    r.set("bound", rep.with_tau.bound)
                        .set("ratio", rep.with_tau.ratio)
                        .set("holds", rep.with_tau.holds)
                        .set("tau_free_bound", rep.tau_free.bound)
                        .set("tau_free_holds", rep.tau_free.holds);
                }
            }
            records.push_back(std::move(r));
        }
    } else if (command == "simplices") {
        records = run_simplex_experiment(cfg).records;
    } else if (command == "sweep") {
        auto result = run_coverage_sweep(cfg, o.sizes);
        ok = result.guarantees_hold;
        records = std::move(result.records);
    } else if (command == "verify") {
        IdentitySuiteOptions opt;
        opt.n_list = o.n_list;
        opt.d_list = o.d_list;
        opt.seed = cfg.seed;
        opt.instances = o.instances;
        auto result = run_identity_suite(opt);
        ok = result.guarantees_hold;
        records = std::move(result.records);
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(o, std::move(records), seconds);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ringgeom: dot products, distances and simplices over Z_n^d"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolkitVersion);
    Options o;

    std::vector<std::pair<std::string, CLI::App*>> commands;
    auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, o);
        commands.emplace_back(name, sub);
        return sub;
    };

    add("factor", "factor n; print tau, gamma and the unit count")
        ->add_option("value", o.pos_n, "modulus")
        ->required();
    auto* thr = add("thresholds", "evaluate the coverage and simplex size thresholds");
    thr->add_option("value_n", o.pos_n, "modulus")->required();
    thr->add_option("value_d", o.pos_d, "dimension")->required();
    thr->add_option("value_k", o.pos_k, "simplex order (optional)");
    thr->add_option("--ell", o.ell, "exponent when n is a prime power q = p^ell");
    add("product-set", "dot-product set of a generated set");
    add("distance-set", "distance set of a generated set");
    add("mu", "dot-product incidence histogram and its deviation bound");
    add("stars", "average k-star set size (exact or sampled)");
    add("mk", "second-moment statistic and its explicit bound");
    add("simplices", "simplex type census, density and saturation");
    add("sweep", "coverage sweep over a grid of set sizes")
        ->add_option("--sizes", o.sizes, "set sizes")
        ->delimiter(',');
    auto* verify = add("verify", "identity suite: Fourier identities and explicit-constant bounds");
    verify->add_option("--n-list", o.n_list, "moduli")->delimiter(',');
    verify->add_option("--d-list", o.d_list, "dimensions")->delimiter(',');
    verify->add_option("--instances", o.instances, "random instances per check");

    CLI11_PARSE(app, argc, argv);

    try {
        for (const auto& [name, sub] : commands) {
            if (!sub->parsed()) continue;
            finish_config(o);
            if (!run(name, o)) {
                std::cerr << "ringgeom: a guaranteed check failed\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "ringgeom: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
