#ifndef TWINS_EXPERIMENT_HPP
#define TWINS_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twins/exact.hpp"
#include "twins/permutation.hpp"

namespace twins {

enum class GeneratorKind { uniform, identity, reverse, block_adversarial, poisson };

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform;
    std::uint64_t n = 0;        // size; for poisson the intensity is `lambda`
    double lambda = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t block = 0;    // block-adversarial run length, 0 = ceil(sqrt n)
};

/// Deterministic in the spec. Uniform is a Fisher-Yates shuffle driven by
/// uniform_below; block-adversarial lists ascending runs of length `block`
/// from the top value range down, e.g. n = 6, block = 2 -> 5 6 3 4 1 2.
Permutation generate(const GeneratorSpec& spec);

// Algorithms runnable by name: es, thm1, thm1-notrim, thm2, thm2-greedy, exact.
const std::vector<std::string>& algorithm_names();

struct AlgoOutcome {
    TwinPair twins;
    std::size_t guarantee = 0;
    std::string extra;  // `key=value;...`, no commas
};

/// Throws Error for unknown names. The guarantee is the bound the algorithm
/// must meet on this input (for thm2: the statistical threshold).
AlgoOutcome run_algorithm(const std::string& algo, const Permutation& p, const OracleBudget& budget = {});

struct ExperimentRecord {
    std::string algo;
    std::string generator;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t seed = 0;
    std::size_t twin_length = 0;
    std::size_t guarantee = 0;
    bool valid = false;
    double wall_seconds = 0.0;
    std::string extra;
};

struct SweepConfig {
    std::vector<std::string> algos{"thm1"};
    GeneratorKind generator = GeneratorKind::uniform;
    std::vector<std::uint64_t> n_grid;
    std::uint64_t seeds_per_n = 1;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
    bool record_timing = false;  // wall times make the CSV non-reproducible
    OracleBudget budget;
};

/// Flat `key = value` text; `#` starts a comment. Keys: algos, generator,
/// n, seeds, master_seed, workers, timing. Lists are comma separated.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig read_sweep_config(const std::string& path);

/// Runs every (algo, n, index) cell, in parallel when workers > 1, and
/// returns the records sorted by (algo, n, seed). A failing run becomes a
/// record with valid = false.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config);

/// Header comment, one row per record, then a `# summary` block with
/// per-(algo, n) quantiles and the fraction meeting the guarantee.
void write_sweep_csv(std::ostream& out, const std::vector<ExperimentRecord>& records, bool with_timing);

/// run_sweep + write_sweep_csv.
void run_experiment(const SweepConfig& config, std::ostream& out);

// Empirical growth of longest twins: exact lengths up to the oracle cap,
// `algo` above it, and a least-squares fit of log(mean) on log(n).

struct ProbeRow {
    std::uint64_t n = 0;
    std::string method;
    std::uint64_t samples = 0;
    double mean = 0.0;
    std::size_t min = 0;
    std::size_t max = 0;
};

struct ProbeFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double stderr_exponent = 0.0;
    double ci_low = 0.0;   // 95%, Student t
    double ci_high = 0.0;
};

struct ProbeTable {
    std::vector<ProbeRow> rows;
    std::optional<ProbeFit> fit;  // needs >= 3 sizes with positive means
};

ProbeTable gawron_scaling_probe(const std::vector<std::uint64_t>& n_list, std::uint64_t seeds,
                                const OracleBudget& budget = {}, const std::string& algo = "thm2",
                                std::uint64_t master_seed = 1);

void write_probe_csv(std::ostream& out, const ProbeTable& table);

}  // namespace twins

#endif
