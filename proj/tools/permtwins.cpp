// permtwins: command-line front end for the twins toolkit.
//
//   permtwins gen --kind uniform --n 100000 --seed 7 -o p.txt
//   permtwins twins --algo thm1 --perm p.txt --trace -
//   permtwins verify --twins t.txt [--perm p.txt]
//   permtwins oracle exact --perm p.txt | oracle tn --n 7 | oracle probe --n 6,8,10
//   permtwins experiment --config sweep.cfg
//   permtwins lemma-check --m 3-3000 --trials 100000
//   permtwins sample --model poisson --lambda 500 --seed 1
//
// Exit status: 0 success / valid, 1 invalid twins or failed check,
// 2 malformed input, 3 other runtime errors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "twins/close_twins.hpp"
#include "twins/exact.hpp"
#include "twins/experiment.hpp"
#include "twins/grid_matching.hpp"
#include "twins/monotone.hpp"
#include "twins/random.hpp"
#include "twins/text_io.hpp"

namespace {

using namespace twins;

constexpr int exit_invalid = 1;
constexpr int exit_malformed = 2;
constexpr int exit_failure = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PERMTWINS_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

// "-" or empty means stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) {
                throw Error("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<std::uint64_t> parse_size_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(static_cast<std::uint64_t>(std::stod(item) + 0.5));
        }
    }
    return out;
}

struct GenArgs {
    std::string kind = "uniform";
    std::uint64_t n = 0;
    double lambda = 0.0;
    std::uint64_t seed = default_seed();
    std::uint64_t block = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    GeneratorSpec spec{parse_generator_kind(a.kind), a.n, a.lambda, a.seed, a.block};
    Output out(a.out);
    write_permutation(out.stream(), generate(spec));
    return 0;
}

struct TwinsArgs {
    std::string algo = "thm1";
    std::string perm;
    std::string matcher = "max";
    bool no_trim = false;
    std::string trace;
    std::string dump_grid;
    std::string out;
    bool host_ref = false;
};

int cmd_twins(const TwinsArgs& a) {
    const auto p = read_permutation_file(a.perm);
    const auto n = static_cast<std::uint64_t>(p.ground_bound());
    const auto m = static_cast<std::uint64_t>(p.size());

    TwinPair result;
    std::size_t guarantee_n = 0;
    std::size_t guarantee_m = 0;
    const auto start = std::chrono::steady_clock::now();

    if (a.algo == "thm1") {
        auto res = thm1_twins(p, {.trim = !a.no_trim});
        result = std::move(res.twins);
        guarantee_n = thm1_guarantee(n);
        guarantee_m = a.no_trim ? 0 : thm1_worst_case_bound(m, n);
        if (!a.trace.empty()) {
            Output trace(a.trace);
            std::size_t k = 0;
            for (const auto& r : res.rounds) {
                nlohmann::json line = {{"round", ++k},
                                       {"triples_kept", r.triples_kept},
                                       {"pair", {r.pair_first, r.pair_second}},
                                       {"common_length", r.common_length},
                                       {"kept", r.kept_length},
                                       {"deleted_count", r.deleted_count},
                                       {"remaining", r.remaining}};
                trace.stream() << line.dump() << '\n';
            }
        }
    } else if (a.algo == "thm2") {
        const auto g = build_grid(p);
        if (!a.dump_grid.empty()) {
            Output dump(a.dump_grid);
            write_grid_csv(dump.stream(), g);
        }
        Matching matching;
        if (a.matcher == "greedy") {
            matching = greedy_matching(g);
        } else if (a.matcher == "max" || a.matcher == "maximum") {
            matching = max_matching(g);
        } else {
            throw Error("unknown matcher '" + a.matcher + "'");
        }
        result = matching_to_twins(g, matching);
        guarantee_n = thm2_threshold(n);
        guarantee_m = guarantee_n;
    } else if (a.algo == "es" || a.algo == "exact") {
        auto outcome = run_algorithm(a.algo, p);
        result = std::move(outcome.twins);
        guarantee_n = a.algo == "es" ? es_guarantee(n) : thm1_guarantee(n);
        guarantee_m = outcome.guarantee;
    } else {
        throw Error("unknown algorithm '" + a.algo + "'");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto verdict = verify_twins(result);
    Output out(a.out);
    write_twins(out.stream(), result,
                a.host_ref ? std::optional<std::string>(std::filesystem::absolute(a.perm).string()) : std::nullopt);
    std::cerr << "algo=" << a.algo << " n=" << n << " m=" << m << " L=" << result.length()
              << " guarantee_n=" << guarantee_n << " guarantee_m=" << guarantee_m
              << " valid=" << (verdict.valid ? 1 : 0) << " time_s=" << secs << '\n';
    if (!verdict) {
        std::cerr << "invalid: " << verdict.diagnostic << '\n';
        return exit_invalid;
    }
    return 0;
}

int cmd_verify(const std::string& twins_path, const std::string& perm_path) {
    TwinPair t;
    try {
        const auto file = read_twin_file(twins_path);
        std::optional<Permutation> host;
        if (!perm_path.empty()) {
            host = read_permutation_file(perm_path);
        }
        const auto base = std::filesystem::path(twins_path).parent_path().string();
        t = resolve_twins(file, host, base.empty() ? "." : base);
        auto verdict = verify_twins(t);
        if (!verdict) {
            std::cout << "INVALID: " << verdict.diagnostic << '\n';
            return exit_invalid;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_malformed;
    } catch (const std::out_of_range& e) {
        std::cerr << "malformed twins: " << e.what() << '\n';
        return exit_malformed;
    }
    std::cout << "VALID: L=" << t.length();
    if (t.closeness_bound) {
        std::cout << " tau=" << *t.closeness_bound;
    }
    std::cout << '\n';
    return 0;
}

int cmd_oracle_exact(const std::string& perm_path, const OracleBudget& budget, const std::string& out_path) {
    const auto p = read_permutation_file(perm_path);
    auto res = exact_twins(p, budget);
    Output out(out_path);
    write_twins(out.stream(), res.twins);
    std::cerr << "L=" << res.twins.length() << " exact=" << (res.exact ? 1 : 0) << " nodes=" << res.nodes << '\n';
    return res.exact ? 0 : exit_invalid;
}

int cmd_oracle_tn(std::size_t n, const OracleBudget& budget) {
    auto res = exact_t_of_n(n, budget);
    std::cout << "n=" << n << " t=" << res.t << " examined=" << res.permutations_examined << " witness=";
    const char* sep = "";
    for (auto v : res.witness.values()) {
        std::cout << std::exchange(sep, " ") << v;
    }
    std::cout << '\n';
    return 0;
}

int cmd_oracle_probe(const std::string& n_list, std::uint64_t seeds, const std::string& algo, std::uint64_t seed,
                     const std::string& out_path) {
    auto table = gawron_scaling_probe(parse_size_list(n_list), seeds, {}, algo, seed);
    Output out(out_path);
    write_probe_csv(out.stream(), table);
    return 0;
}

int cmd_lemma_check(const std::string& m_spec, std::uint64_t trials, std::uint64_t seed) {
    std::uint64_t lo = 0, hi = 0;
    if (auto dash = m_spec.find('-'); dash != std::string::npos) {
        lo = std::stoull(m_spec.substr(0, dash));
        hi = std::stoull(m_spec.substr(dash + 1));
    } else {
        lo = hi = std::stoull(m_spec);
    }
    if (lo == 0 || hi < lo) {
        throw Error("lemma-check: bad --m range '" + m_spec + "'");
    }
    std::uint64_t violations = 0;
    double worst_ratio = INFINITY;  // length^3 / m
    std::uint64_t worst_m = 0;
    std::size_t worst_len = 0;
    Rng rng(seed);
    for (std::uint64_t t = 0; t < trials; ++t) {
        // log-uniform size in [lo, hi]
        const double u = uniform_unit(rng);
        auto m = static_cast<std::uint64_t>(std::exp(std::log(double(lo)) + u * (std::log(double(hi + 1)) - std::log(double(lo)))));
        m = std::clamp(m, lo, hi);
        std::array<Permutation, 3> c;
        for (auto& perm : c) {
            perm = generate({GeneratorKind::uniform, m, 0.0, rng(), 0});
        }
        try {
            auto sel = bhn_select(c[0].values(), c[1].values(), c[2].values());
            const double ratio = std::pow(double(sel.symbols.size()), 3) / double(m);
            if (ratio < worst_ratio) {
                worst_ratio = ratio;
                worst_m = m;
                worst_len = sel.symbols.size();
            }
        } catch (const GuaranteeViolation& e) {
            ++violations;
            std::cerr << e.what() << '\n';
        }
    }
    std::cout << "trials=" << trials << " m=[" << lo << "," << hi << "] violations=" << violations
              << " tightest: m=" << worst_m << " length=" << worst_len << " length^3/m=" << worst_ratio << '\n';
    return violations == 0 ? 0 : exit_invalid;
}

int cmd_sample(const std::string& model, double lambda, std::uint64_t seed, const std::string& out_path) {
    if (model != "poisson") {
        throw Error("unknown sampling model '" + model + "'");
    }
    Output out(out_path);
    write_permutation(out.stream(), sample_poisson_permutation(lambda, seed));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Find, verify and measure twins in permutations"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a permutation");
    gen_cmd->add_option("--kind", gen.kind, "uniform | identity | reverse | block-adversarial | poisson");
    gen_cmd->add_option("--n", gen.n, "Size (poisson: default intensity)");
    gen_cmd->add_option("--lambda", gen.lambda, "Poisson intensity");
    gen_cmd->add_option("--seed", gen.seed, "Seed (default $PERMTWINS_SEED or 1)");
    gen_cmd->add_option("--block", gen.block, "Run length for block-adversarial (default ceil(sqrt n))");
    gen_cmd->add_option("-o,--out", gen.out, "Output file (default stdout)");

    TwinsArgs tw;
    auto* twins_cmd = app.add_subcommand("twins", "Find twins in a permutation");
    twins_cmd->add_option("--algo", tw.algo, "es | thm1 | thm2 | exact")->check(CLI::IsMember({"es", "thm1", "thm2", "exact"}));
    twins_cmd->add_option("--perm", tw.perm, "Permutation file")->required();
    twins_cmd->add_option("--matcher", tw.matcher, "thm2 matcher: greedy | max")->check(CLI::IsMember({"greedy", "max", "maximum"}));
    twins_cmd->add_flag("--no-trim", tw.no_trim, "thm1: keep every common index each round");
    twins_cmd->add_option("--trace", tw.trace, "thm1: JSON-lines round trace (file or -)");
    twins_cmd->add_option("--dump-grid", tw.dump_grid, "thm2: grid occupancy CSV (file or -)");
    twins_cmd->add_option("-o,--out", tw.out, "Twin file output (default stdout)");
    twins_cmd->add_flag("--host-ref", tw.host_ref, "Reference the permutation file instead of inlining it");

    std::string verify_twins_path, verify_perm_path;
    auto* verify_cmd = app.add_subcommand("verify", "Check a twin file");
    verify_cmd->add_option("--twins", verify_twins_path, "Twin file")->required();
    verify_cmd->add_option("--perm", verify_perm_path, "Host permutation (overrides the twin file's host)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Exact solvers");
    oracle_cmd->require_subcommand(1);
    std::string oracle_perm, oracle_out;
    OracleBudget oracle_budget;
    auto* exact_cmd = oracle_cmd->add_subcommand("exact", "Longest twins of one permutation");
    exact_cmd->add_option("--perm", oracle_perm, "Permutation file")->required();
    exact_cmd->add_option("--node-limit", oracle_budget.node_limit, "Search node budget");
    exact_cmd->add_option("--max-length", oracle_budget.max_length_single, "Largest permutation accepted");
    exact_cmd->add_option("-o,--out", oracle_out, "Twin file output");
    std::size_t tn_n = 0;
    auto* tn_cmd = oracle_cmd->add_subcommand("tn", "Exact t(n) over all permutations of [n]");
    tn_cmd->add_option("--n", tn_n, "n")->required();
    tn_cmd->add_option("--max-n", oracle_budget.max_n_universal, "Largest n accepted");
    tn_cmd->add_option("--node-limit", oracle_budget.node_limit, "Search node budget per permutation");
    std::string probe_n = "6,8,10,12";
    std::uint64_t probe_seeds = 100;
    std::string probe_algo = "thm2";
    std::uint64_t probe_seed = default_seed();
    std::string probe_out;
    auto* probe_cmd = oracle_cmd->add_subcommand("probe", "Growth of twin length with n (CSV)");
    probe_cmd->add_option("--n", probe_n, "Comma-separated sizes");
    probe_cmd->add_option("--seeds", probe_seeds, "Samples per size");
    probe_cmd->add_option("--algo", probe_algo, "Algorithm above the exact cap");
    probe_cmd->add_option("--seed", probe_seed, "Master seed");
    probe_cmd->add_option("-o,--out", probe_out, "CSV output");

    std::string config_path, experiment_out;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a sweep from a config file (CSV)");
    exp_cmd->add_option("--config", config_path, "Flat key = value config")->required();
    exp_cmd->add_option("-o,--out", experiment_out, "CSV output");

    std::string lemma_m = "3-3000";
    std::uint64_t lemma_trials = 1000;
    std::uint64_t lemma_seed = default_seed();
    auto* lemma_cmd = app.add_subcommand("lemma-check", "Common subpermutation of three random permutations");
    lemma_cmd->add_option("--m", lemma_m, "Size or range lo-hi (log-uniform)");
    lemma_cmd->add_option("--trials", lemma_trials, "Number of triples");
    lemma_cmd->add_option("--seed", lemma_seed, "Seed");

    std::string sample_model = "poisson";
    double sample_lambda = 0.0;
    std::uint64_t sample_seed = default_seed();
    std::string sample_out;
    auto* sample_cmd = app.add_subcommand("sample", "Sample a permutation from a point process");
    sample_cmd->add_option("--model", sample_model, "poisson");
    sample_cmd->add_option("--lambda", sample_lambda, "Intensity")->required();
    sample_cmd->add_option("--seed", sample_seed, "Seed");
    sample_cmd->add_option("-o,--out", sample_out, "Output file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*twins_cmd) return cmd_twins(tw);
        if (*verify_cmd) return cmd_verify(verify_twins_path, verify_perm_path);
        if (*exact_cmd) return cmd_oracle_exact(oracle_perm, oracle_budget, oracle_out);
        if (*tn_cmd) return cmd_oracle_tn(tn_n, oracle_budget);
        if (*probe_cmd) return cmd_oracle_probe(probe_n, probe_seeds, probe_algo, probe_seed, probe_out);
        if (*exp_cmd) {
            const auto config = read_sweep_config(config_path);
            const auto records = run_sweep(config);
            Output out(experiment_out);
            write_sweep_csv(out.stream(), records, config.record_timing);
            const bool all_valid =
                std::all_of(records.begin(), records.end(), [](const ExperimentRecord& r) { return r.valid; });
            return all_valid ? 0 : exit_invalid;
        }
        if (*lemma_cmd) return cmd_lemma_check(lemma_m, lemma_trials, lemma_seed);
        if (*sample_cmd) return cmd_sample(sample_model, sample_lambda, sample_seed, sample_out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_malformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return 0;
}
