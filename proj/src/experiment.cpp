#include "twins/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "twins/close_twins.hpp"
#include "twins/grid_matching.hpp"
#include "twins/introot.hpp"
#include "twins/monotone.hpp"
#include "twins/random.hpp"

namespace twins {

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "uniform") return GeneratorKind::uniform;
    if (name == "identity") return GeneratorKind::identity;
    if (name == "reverse") return GeneratorKind::reverse;
    if (name == "block-adversarial" || name == "block") return GeneratorKind::block_adversarial;
    if (name == "poisson") return GeneratorKind::poisson;
    throw Error("unknown generator '" + name + "'");
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::uniform: return "uniform";
        case GeneratorKind::identity: return "identity";
        case GeneratorKind::reverse: return "reverse";
        case GeneratorKind::block_adversarial: return "block-adversarial";
        case GeneratorKind::poisson: return "poisson";
    }
    return "?";
}

Permutation generate(const GeneratorSpec& spec) {
    const auto n = static_cast<Value>(spec.n);
    switch (spec.kind) {
        case GeneratorKind::identity:
            return Permutation::identity(n);
        case GeneratorKind::reverse:
            return reversed(Permutation::identity(n));
        case GeneratorKind::uniform: {
            std::vector<Value> v(spec.n);
            std::iota(v.begin(), v.end(), Value{1});
            Rng rng(spec.seed);
            for (std::size_t i = v.size(); i > 1; --i) {
                std::swap(v[i - 1], v[uniform_below(rng, i)]);
            }
            return Permutation(std::move(v), n);
        }
        case GeneratorKind::block_adversarial: {
            const std::uint64_t b = spec.block ? spec.block : introot::ceil_root(spec.n, 2);
            if (b == 0 && spec.n > 0) {
                throw Error("block-adversarial: zero block length");
            }
            std::vector<Value> v;
            v.reserve(spec.n);
            for (std::uint64_t top = spec.n; top > 0;) {
                const std::uint64_t lo = top > b ? top - b + 1 : 1;
                for (std::uint64_t x = lo; x <= top; ++x) {
                    v.push_back(static_cast<Value>(x));
                }
                top = lo - 1;
            }
            return Permutation(std::move(v), n);
        }
        case GeneratorKind::poisson: {
            const double lambda = spec.lambda > 0 ? spec.lambda : static_cast<double>(spec.n);
            return sample_poisson_permutation(lambda, spec.seed);
        }
    }
    throw Error("invalid generator kind");
}

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names{"es", "thm1", "thm1-notrim", "thm2", "thm2-greedy", "exact"};
    return names;
}

AlgoOutcome run_algorithm(const std::string& algo, const Permutation& p, const OracleBudget& budget) {
    const auto n = static_cast<std::uint64_t>(p.ground_bound());
    const auto m = static_cast<std::uint64_t>(p.size());
    AlgoOutcome out;
    if (algo == "es") {
        out.twins = es_baseline_twins(p);
        out.guarantee = es_guarantee(m);
    } else if (algo == "thm1" || algo == "thm1-notrim") {
        const bool trim = algo == "thm1";
        auto res = thm1_twins(p, {.trim = trim});
        out.twins = std::move(res.twins);
        if (trim) {
            out.guarantee = m == n ? thm1_guarantee(n) : thm1_worst_case_bound(m, n);
        } else {
            // Untrimmed rounds delete more, so only count what actually ran.
            const auto params = CloseTwinsParams::for_n(n);
            out.guarantee = std::max<std::size_t>(es_guarantee(m), params.trim_target * res.rounds.size());
        }
        out.extra = "rounds=" + std::to_string(res.rounds.size()) + ";fallback=" + (res.used_fallback ? "1" : "0");
    } else if (algo == "thm2" || algo == "thm2-greedy") {
        const auto g = build_grid(p);
        const auto matching = algo == "thm2" ? max_matching(g) : greedy_matching(g);
        out.twins = matching_to_twins(g, matching);
        out.guarantee = thm2_threshold(n);
        out.extra = "r=" + std::to_string(g.blocks()) + ";edges=" + std::to_string(g.edges().size());
    } else if (algo == "exact") {
        auto res = exact_twins(p, budget);
        out.twins = std::move(res.twins);
        out.guarantee = m == n ? thm1_guarantee(n) : es_guarantee(m);
        out.extra = std::string("exact=") + (res.exact ? "1" : "0") + ";nodes=" + std::to_string(res.nodes);
    } else {
        throw Error("unknown algorithm '" + algo + "'");
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    std::uint64_t v = 0;
    // accept 1e5-style sizes too
    if (s.find_first_of("eE") != std::string::npos) {
        double d = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
        if (ec != std::errc{} || ptr != s.data() + s.size() || d < 0) {
            throw Error("config: bad value '" + s + "' for " + key);
        }
        return static_cast<std::uint64_t>(d + 0.5);
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw Error("config: bad value '" + s + "' for " + key);
    }
    return v;
}

std::string format_fixed(double x, int precision) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, precision);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

// Nearest-rank quantile of sorted data.
std::size_t quantile(const std::vector<std::size_t>& sorted, double q) {
    if (sorted.empty()) {
        return 0;
    }
    auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1) + 0.5);
    return sorted[std::min(idx, sorted.size() - 1)];
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    if (const char* env = std::getenv("PERMTWINS_SEED")) {
        cfg.master_seed = parse_u64(env, "PERMTWINS_SEED");
    }
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error("config: expected key = value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "algos" || key == "algo") {
            cfg.algos = split_list(value);
            for (const auto& a : cfg.algos) {
                if (std::find(algorithm_names().begin(), algorithm_names().end(), a) == algorithm_names().end()) {
                    throw Error("config: unknown algorithm '" + a + "'");
                }
            }
        } else if (key == "generator") {
            cfg.generator = parse_generator_kind(value);
        } else if (key == "n") {
            cfg.n_grid.clear();
            for (const auto& item : split_list(value)) {
                cfg.n_grid.push_back(parse_u64(item, key));
            }
        } else if (key == "seeds") {
            cfg.seeds_per_n = parse_u64(value, key);
        } else if (key == "master_seed") {
            cfg.master_seed = parse_u64(value, key);
        } else if (key == "workers") {
            cfg.workers = static_cast<unsigned>(parse_u64(value, key));
        } else if (key == "timing") {
            cfg.record_timing = value == "1" || value == "true" || value == "yes";
        } else if (key == "oracle_node_limit") {
            cfg.budget.node_limit = parse_u64(value, key);
        } else {
            throw Error("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

SweepConfig read_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config " + path);
    }
    return parse_sweep_config(in);
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config) {
    struct Cell {
        std::string algo;
        std::uint64_t n;
        std::uint64_t index;
    };
    std::vector<Cell> cells;
    for (const auto& algo : config.algos) {
        for (auto n : config.n_grid) {
            for (std::uint64_t i = 0; i < config.seeds_per_n; ++i) {
                cells.push_back({algo, n, i});
            }
        }
    }

    std::vector<ExperimentRecord> records(cells.size());
    auto run_cell = [&](std::size_t c) {
        const auto& cell = cells[c];
        ExperimentRecord& rec = records[c];
        rec.algo = cell.algo;
        rec.generator = to_string(config.generator);
        rec.n = cell.n;
        rec.seed = mix_seed(config.master_seed, fnv1a64(cell.algo), cell.n, cell.index);
        try {
            GeneratorSpec spec{config.generator, cell.n, 0.0, rec.seed, 0};
            const auto p = generate(spec);
            rec.m = p.size();
            const auto start = std::chrono::steady_clock::now();
            auto outcome = run_algorithm(cell.algo, p, config.budget);
            rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            rec.twin_length = outcome.twins.length();
            rec.guarantee = outcome.guarantee;
            auto verdict = verify_twins(outcome.twins);
            rec.valid = verdict.valid;
            rec.extra = verdict.valid ? outcome.extra : "invalid=" + verdict.diagnostic;
        } catch (const std::exception& e) {
            rec.valid = false;
            rec.extra = std::string("error=") + e.what();
        }
        std::replace(rec.extra.begin(), rec.extra.end(), ',', ';');
        std::replace(rec.extra.begin(), rec.extra.end(), '\n', ' ');
    };

    const unsigned workers = std::max(1u, config.workers);
    if (workers == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            run_cell(c);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < cells.size(); c = next++) {
                    run_cell(c);
                }
            });
        }
    }

    std::sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
        return std::tie(a.algo, a.n, a.seed) < std::tie(b.algo, b.n, b.seed);
    });
    return records;
}

void write_sweep_csv(std::ostream& out, const std::vector<ExperimentRecord>& records, bool with_timing) {
    out << "# permtwins-experiment v1\n";
    out << "algo,generator,n,m,seed,twin_length,guarantee,valid" << (with_timing ? ",wall_time_s" : "") << ",extra\n";
    for (const auto& r : records) {
        out << r.algo << ',' << r.generator << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << r.twin_length
            << ',' << r.guarantee << ',' << (r.valid ? 1 : 0);
        if (with_timing) {
            out << ',' << format_fixed(r.wall_seconds, 6);
        }
        out << ',' << r.extra << '\n';
    }

    out << "# summary\n";
    out << "algo,n,runs,valid,min,q25,median,q75,max,met_guarantee_fraction\n";
    for (std::size_t i = 0; i < records.size();) {
        std::size_t j = i;
        std::vector<std::size_t> lengths;
        std::size_t valid = 0, met = 0;
        while (j < records.size() && records[j].algo == records[i].algo && records[j].n == records[i].n) {
            lengths.push_back(records[j].twin_length);
            valid += records[j].valid ? 1 : 0;
            met += records[j].valid && records[j].twin_length >= records[j].guarantee ? 1 : 0;
            ++j;
        }
        std::sort(lengths.begin(), lengths.end());
        out << records[i].algo << ',' << records[i].n << ',' << lengths.size() << ',' << valid << ','
            << lengths.front() << ',' << quantile(lengths, 0.25) << ',' << quantile(lengths, 0.5) << ','
            << quantile(lengths, 0.75) << ',' << lengths.back() << ','
            << format_fixed(static_cast<double>(met) / static_cast<double>(lengths.size()), 4) << '\n';
        i = j;
    }
}

void run_experiment(const SweepConfig& config, std::ostream& out) {
    write_sweep_csv(out, run_sweep(config), config.record_timing);
}

}  // namespace twins
