#include <charconv>
#include <cmath>
#include <ostream>

#include "twins/experiment.hpp"
#include "twins/random.hpp"

namespace twins {

namespace {

// Two-sided 95% Student t quantiles, df = 1..30.
double t_quantile_975(std::size_t df) {
    static constexpr double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                                       2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                                       2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
    if (df == 0) {
        return NAN;
    }
    return df <= 30 ? table[df - 1] : 1.96;
}

}  // namespace

ProbeTable gawron_scaling_probe(const std::vector<std::uint64_t>& n_list, std::uint64_t seeds,
                                const OracleBudget& budget, const std::string& algo, std::uint64_t master_seed) {
    ProbeTable table;
    for (auto n : n_list) {
        const bool exact = n <= budget.max_length_single;
        const std::string method = exact ? "exact" : algo;
        ProbeRow row{n, method, 0, 0.0, 0, 0};
        double sum = 0;
        for (std::uint64_t s = 0; s < seeds; ++s) {
            const auto seed = mix_seed(master_seed, fnv1a64("probe"), n, s);
            const auto p = generate({GeneratorKind::uniform, n, 0.0, seed, 0});
            const auto len = run_algorithm(method, p, budget).twins.length();
            row.min = row.samples == 0 ? len : std::min(row.min, len);
            row.max = std::max(row.max, len);
            sum += static_cast<double>(len);
            ++row.samples;
        }
        row.mean = row.samples ? sum / static_cast<double>(row.samples) : 0.0;
        table.rows.push_back(row);
    }

    std::vector<double> xs, ys;
    for (const auto& row : table.rows) {
        if (row.mean > 0 && row.n > 0) {
            xs.push_back(std::log(static_cast<double>(row.n)));
            ys.push_back(std::log(row.mean));
        }
    }
    if (xs.size() >= 3) {
        const auto k = static_cast<double>(xs.size());
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= k;
        my /= k;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        if (sxx > 0) {
            ProbeFit fit;
            fit.exponent = sxy / sxx;
            fit.intercept = my - fit.exponent * mx;
            double sse = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const double e = ys[i] - (fit.intercept + fit.exponent * xs[i]);
                sse += e * e;
            }
            fit.stderr_exponent = std::sqrt(sse / (k - 2) / sxx);
            const double t = t_quantile_975(xs.size() - 2);
            fit.ci_low = fit.exponent - t * fit.stderr_exponent;
            fit.ci_high = fit.exponent + t * fit.stderr_exponent;
            table.fit = fit;
        }
    }
    return table;
}

void write_probe_csv(std::ostream& out, const ProbeTable& table) {
    out << "# permtwins-probe v1\n";
    out << "n,method,samples,mean,min,max\n";
    char buf[64];
    for (const auto& r : table.rows) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r.mean, std::chars_format::fixed, 4);
        out << r.n << ',' << r.method << ',' << r.samples << ',' << std::string(buf, end) << ',' << r.min << ','
            << r.max << '\n';
    }
    if (table.fit) {
        auto fmt = [&](double x) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 4);
            return std::string(buf, end);
        };
        out << "# fit: exponent=" << fmt(table.fit->exponent) << " stderr=" << fmt(table.fit->stderr_exponent)
            << " ci95=[" << fmt(table.fit->ci_low) << "," << fmt(table.fit->ci_high) << "]"
            << " intercept=" << fmt(table.fit->intercept) << '\n';
    }
}

}  // namespace twins
