#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "twins/experiment.hpp"
#include "twins/random.hpp"

using namespace twins;

namespace {

std::vector<Value> as_vector(const Permutation& p) {
    return {p.values().begin(), p.values().end()};
}

std::string sweep_csv(const SweepConfig& cfg) {
    std::ostringstream out;
    run_experiment(cfg, out);
    return out.str();
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

}  // namespace

TEST_CASE("generators") {
    CHECK(as_vector(generate({GeneratorKind::identity, 5, 0.0, 0, 0})) == std::vector<Value>{1, 2, 3, 4, 5});
    CHECK(as_vector(generate({GeneratorKind::reverse, 4, 0.0, 0, 0})) == std::vector<Value>{4, 3, 2, 1});
    CHECK(as_vector(generate({GeneratorKind::block_adversarial, 6, 0.0, 0, 2})) ==
          std::vector<Value>{5, 6, 3, 4, 1, 2});
    CHECK(as_vector(generate({GeneratorKind::block_adversarial, 5, 0.0, 0, 0})) ==
          std::vector<Value>{3, 4, 5, 1, 2});
    CHECK(generate({GeneratorKind::uniform, 0, 0.0, 1, 0}).empty());

    const GeneratorSpec spec{GeneratorKind::uniform, 1000, 0.0, 42, 0};
    CHECK(generate(spec) == generate(spec));
    CHECK_FALSE(generate(spec) == generate({GeneratorKind::uniform, 1000, 0.0, 43, 0}));
    const GeneratorSpec pois{GeneratorKind::poisson, 0, 25.0, 9, 0};
    CHECK(generate(pois) == generate(pois));

    CHECK(parse_generator_kind("block") == GeneratorKind::block_adversarial);
    CHECK(to_string(parse_generator_kind("block-adversarial")) == "block-adversarial");
    CHECK_THROWS_AS(parse_generator_kind("gaussian"), Error);
}

TEST_CASE("uniform shuffle is unbiased on small n") {
    // Each of the 6 permutations of [3] should appear ~ 1/6 of the time.
    const int draws = 60000;
    std::map<std::vector<Value>, int> counts;
    for (int s = 0; s < draws; ++s) {
        ++counts[as_vector(generate({GeneratorKind::uniform, 3, 0.0, static_cast<std::uint64_t>(s), 0}))];
    }
    CHECK(counts.size() == 6);
    const double expected = draws / 6.0;
    double chi2 = 0.0;
    for (const auto& [perm, c] : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    CHECK(chi2 < 20.5);  // chi-square, 5 degrees of freedom, p = 0.001
}

TEST_CASE("uniform_below stays in range and covers it") {
    Rng rng(5);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        auto x = uniform_below(rng, 7);
        REQUIRE(x < 7);
        ++hits[x];
    }
    for (int h : hits) {
        CHECK(h > 800);
    }
    CHECK(uniform_below(rng, 1) == 0);
}

TEST_CASE("seed mixing") {
    static_assert(mix_seed(1, 2, 3, 4) == mix_seed(1, 2, 3, 4));
    CHECK(mix_seed(1, fnv1a64("thm1"), 100, 0) != mix_seed(1, fnv1a64("thm2"), 100, 0));
    CHECK(mix_seed(1, fnv1a64("thm1"), 100, 0) != mix_seed(1, fnv1a64("thm1"), 100, 1));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("run_algorithm covers every name") {
    const auto p = generate({GeneratorKind::uniform, 12, 0.0, 3, 0});
    for (const auto& name : algorithm_names()) {
        auto out = run_algorithm(name, p);
        CHECK(verify_twins(out.twins).valid);
    }
    CHECK_THROWS_AS(run_algorithm("nope", p), Error);
}

TEST_CASE("config parsing") {
    std::istringstream in(
        "# sweep\n"
        "algos = thm1, thm2  \n"
        "generator = block\n"
        "n = 1e4, 300\n"
        "seeds = 3\n"
        "master_seed = 77 # trailing comment\n"
        "workers = 4\n"
        "timing = true\n"
        "oracle_node_limit = 1000\n");
    auto cfg = parse_sweep_config(in);
    CHECK(cfg.algos == std::vector<std::string>{"thm1", "thm2"});
    CHECK(cfg.generator == GeneratorKind::block_adversarial);
    CHECK(cfg.n_grid == std::vector<std::uint64_t>{10000, 300});
    CHECK(cfg.seeds_per_n == 3);
    CHECK(cfg.master_seed == 77);
    CHECK(cfg.workers == 4);
    CHECK(cfg.record_timing);
    CHECK(cfg.budget.node_limit == 1000);

    std::istringstream bad_key("colour = red\n");
    CHECK_THROWS_AS(parse_sweep_config(bad_key), Error);
    std::istringstream bad_algo("algos = thm3\n");
    CHECK_THROWS_AS(parse_sweep_config(bad_algo), Error);
    std::istringstream bad_line("n 100\n");
    CHECK_THROWS_AS(parse_sweep_config(bad_line), Error);
    std::istringstream bad_num("seeds = ten\n");
    CHECK_THROWS_AS(parse_sweep_config(bad_num), Error);
}

TEST_CASE("single-cell sweep") {
    SweepConfig cfg;
    cfg.algos = {"es"};
    cfg.n_grid = {50};
    cfg.seeds_per_n = 1;
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].valid);
    CHECK(recs[0].n == 50);
    CHECK(recs[0].m == 50);
    CHECK(recs[0].seed == mix_seed(1, fnv1a64("es"), 50, 0));
    CHECK(recs[0].twin_length >= recs[0].guarantee);

    auto lines = lines_of(sweep_csv(cfg));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "# permtwins-experiment v1");
    CHECK(lines[1] == "algo,generator,n,m,seed,twin_length,guarantee,valid,extra");
    CHECK(lines[2].rfind("es,uniform,50,50,", 0) == 0);
    CHECK(lines[3] == "# summary");
    CHECK(lines[4] == "algo,n,runs,valid,min,q25,median,q75,max,met_guarantee_fraction");
}

TEST_CASE("sweeps are byte-identical across runs and worker counts") {
    SweepConfig cfg;
    cfg.algos = {"thm1", "thm2", "es", "exact"};
    cfg.n_grid = {12, 2000, 500};
    cfg.seeds_per_n = 6;
    cfg.master_seed = 2024;
    cfg.workers = 1;
    const auto serial = sweep_csv(cfg);
    CHECK(sweep_csv(cfg) == serial);
    cfg.workers = 7;
    CHECK(sweep_csv(cfg) == serial);

    // Adding an algorithm leaves the other cells untouched.
    auto base = run_sweep(cfg);
    cfg.algos.push_back("thm2-greedy");
    auto more = run_sweep(cfg);
    for (const auto& r : base) {
        auto it = std::find_if(more.begin(), more.end(), [&](const ExperimentRecord& q) {
            return q.algo == r.algo && q.n == r.n && q.seed == r.seed;
        });
        REQUIRE(it != more.end());
        CHECK(it->twin_length == r.twin_length);
    }

    // Rows are sorted by (algo, n, seed).
    CHECK(std::is_sorted(more.begin(), more.end(), [](const auto& a, const auto& b) {
        return std::tie(a.algo, a.n, a.seed) < std::tie(b.algo, b.n, b.seed);
    }));
}

TEST_CASE("failing cells become invalid rows") {
    SweepConfig cfg;
    cfg.algos = {"exact", "es"};
    cfg.n_grid = {40};  // above the exact oracle's length cap
    cfg.seeds_per_n = 2;
    auto recs = run_sweep(cfg);
    REQUIRE(recs.size() == 4);
    for (const auto& r : recs) {
        if (r.algo == "exact") {
            CHECK_FALSE(r.valid);
            CHECK(r.extra.find("error=") == 0);
            CHECK(r.extra.find(',') == std::string::npos);
        } else {
            CHECK(r.valid);
        }
    }
}

TEST_CASE("timing column only on request") {
    SweepConfig cfg;
    cfg.algos = {"es"};
    cfg.n_grid = {30};
    cfg.record_timing = true;
    auto lines = lines_of(sweep_csv(cfg));
    CHECK(lines[1] == "algo,generator,n,m,seed,twin_length,guarantee,valid,wall_time_s,extra");
}

TEST_CASE("scaling probe") {
    auto single = gawron_scaling_probe({6}, 1);
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].method == "exact");
    CHECK_FALSE(single.fit.has_value());
    CHECK(gawron_scaling_probe({}, 5).rows.empty());

    auto table = gawron_scaling_probe({6, 8, 10, 12}, 30);
    REQUIRE(table.rows.size() == 4);
    for (const auto& row : table.rows) {
        CHECK(row.samples == 30);
        CHECK(row.min <= row.mean);
        CHECK(row.mean <= row.max);
        CHECK(2 * row.max <= row.n);
    }
    REQUIRE(table.fit.has_value());
    CHECK(table.fit->ci_low <= table.fit->exponent);
    CHECK(table.fit->exponent <= table.fit->ci_high);
    CHECK(std::isfinite(table.fit->exponent));

    auto big = gawron_scaling_probe({20000, 80000}, 2);
    CHECK(big.rows[0].method == "thm2");

    std::ostringstream out;
    write_probe_csv(out, table);
    auto lines = lines_of(out.str());
    CHECK(lines[0] == "# permtwins-probe v1");
    CHECK(lines[1] == "n,method,samples,mean,min,max");
    CHECK(lines.back().rfind("# fit:", 0) == 0);
}
