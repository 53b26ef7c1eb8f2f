#pragma once

// Seeded experiment orchestration: set generators, sweeps, the identity
// suite, and flat-file serialization of their records.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ringgeom/point_set.hpp"
#include "ringgeom/simplices.hpp"

namespace ringgeom {

inline constexpr const char* kToolkitVersion = "1.0.0";

enum class Generator { uniform_random, divisible, full_space, listed };

struct ExperimentConfig {
    std::uint64_t n = 9;
    unsigned d = 2;
    unsigned k = 1;
    Generator generator = Generator::uniform_random;
    std::string list_path;  // for Generator::listed
    std::uint64_t set_size = 1;
    unsigned trials = 1;
    std::uint64_t seed = 1;
    Metric metric = Metric::distance;
    CensusMode mode = CensusMode::exact;
    std::uint64_t budget = 1'000'000;
};

/// Parses uniform | divisible | full | file:<path>.
void parse_generator(const std::string& text, ExperimentConfig& cfg);
std::string generator_name(const ExperimentConfig& cfg);

/// Throws Error describing the first violated constraint.
void validate(const ExperimentConfig& cfg);

/// Deterministic in (seed, trial) for uniform_random.
PointSet generate_set(const ExperimentConfig& cfg, unsigned trial);

/// `set_size` distinct indices of [0, space), uniformly without replacement,
/// ascending. Rejection sampling; the complement is drawn instead when
/// set_size > space / 2.
std::vector<std::uint64_t> sample_indices(std::uint64_t space, std::uint64_t set_size, std::uint64_t seed,
                                          std::uint64_t stream);

/// Header `n=<int> d=<int>`, then one point per line.
PointSet read_point_file(const std::string& path);
PointSet parse_point_list(std::istream& in);
void write_point_list(const PointSet& E, std::ostream& out);

using FieldValue = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

/// One flat output row; fields keep insertion order.
class Record {
public:
    Record& set(std::string name, FieldValue value);
    const std::vector<std::pair<std::string, FieldValue>>& fields() const noexcept { return fields_; }
    const FieldValue& at(const std::string& name) const;
    bool has(const std::string& name) const;

private:
    std::vector<std::pair<std::string, FieldValue>> fields_;
};

/// Reals use 17 significant digits. All records must share one column list.
void write_csv(const std::vector<Record>& records, std::ostream& out);
void write_json(const std::vector<Record>& records, std::ostream& out);
std::string format_field(const FieldValue& v);

struct RunResult {
    std::vector<Record> records;
    bool guarantees_hold = true;  // false when a theorem-guaranteed check failed
};

/// One row per (size, trial): coverage, mu deviation and thresholds.
RunResult run_coverage_sweep(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& sizes);

/// One row per trial: census, density, saturation and the simplex size bound.
RunResult run_simplex_experiment(const ExperimentConfig& cfg);

struct IdentitySuiteOptions {
    std::vector<std::uint64_t> n_list{3, 9, 15};
    std::vector<unsigned> d_list{1, 2, 3};
    std::uint64_t seed = 1;
    unsigned instances = 100;
    /// Cap on |E| for the cubic explicit-constant checks.
    std::uint64_t max_moment_set = 200;
};

/// One row per (check, n, d); skips (n, d) whose grid exceeds the dense cap.
RunResult run_identity_suite(const IdentitySuiteOptions& options);

}  // namespace ringgeom
