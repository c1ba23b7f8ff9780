#include "qelect/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qelect/analysis.hpp"
#include "qelect/core.hpp"
#include "qelect/errors.hpp"
#include "qelect/protocol_random.hpp"
#include "qelect/trials.hpp"

namespace qelect {
namespace {

constexpr const char* kColumns = "command,n,k,L,trials,seed,item,value,stderr,exact,estimate,verdict";

struct Row {
    std::string command;
    long long n = 0;
    long long k = 0;
    int address_len = 0;
    long long trials = 0;
    std::uint64_t seed = 0;
    std::string item;
    std::optional<double> value;
    std::optional<double> std_error;
    std::optional<double> exact;
    std::optional<double> estimate;
    std::string verdict;
};

struct Report {
    std::vector<Row> rows;
    bool rejected = false;
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string format_cell(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

void emit_csv(const std::vector<Row>& rows, std::ostream& out) {
    out << kColumns << '\n';
    for (const Row& r : rows) {
        out << r.command << ',' << r.n << ',' << r.k << ',' << r.address_len << ',' << r.trials
            << ',' << r.seed << ',' << r.item << ',' << format_cell(r.value) << ','
            << format_cell(r.std_error) << ',' << format_cell(r.exact) << ','
            << format_cell(r.estimate) << ',' << r.verdict << '\n';
    }
}

nlohmann::ordered_json cell_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

void emit_json(const std::vector<Row>& rows, std::ostream& out) {
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
        nlohmann::ordered_json obj;
        obj["command"] = r.command;
        obj["n"] = r.n;
        obj["k"] = r.k;
        obj["L"] = r.address_len;
        obj["trials"] = r.trials;
        obj["seed"] = r.seed;
        obj["item"] = r.item;
        obj["value"] = cell_json(r.value);
        obj["stderr"] = cell_json(r.std_error);
        obj["exact"] = cell_json(r.exact);
        obj["estimate"] = cell_json(r.estimate);
        obj["verdict"] = r.verdict;
        report.push_back(obj);
    }
    out << report.dump(2) << '\n';
}

long long parse_integer(const std::string& text) {
    std::size_t consumed = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (consumed != text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
    return v;
}

// Counts accept both plain integers and the power form 2^j.
long long parse_count(const std::string& text) {
    const std::size_t caret = text.find('^');
    if (caret == std::string::npos) return parse_integer(text);
    const long long base = parse_integer(text.substr(0, caret));
    const long long exponent = parse_integer(text.substr(caret + 1));
    if (base < 2 || exponent < 0 || exponent > 62)
        throw std::invalid_argument("cannot evaluate '" + text + "'");
    long long v = 1;
    for (long long i = 0; i < exponent; ++i) {
        if (v > (1LL << 62) / base) throw std::invalid_argument("'" + text + "' overflows");
        v *= base;
    }
    return v;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("QELECT_SEED");
    if (env == nullptr || *env == '\0') return 42;
    const std::string text(env);
    std::size_t consumed = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("QELECT_SEED is not an integer: '" + text + "'");
    }
    if (consumed != text.size())
        throw std::invalid_argument("QELECT_SEED is not an integer: '" + text + "'");
    return v;
}

double binomial_std_error(double frequency, long long trials) {
    return std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(trials));
}

ElectionConfig build_config(long long n, int referee, int biased, double bias,
                            std::uint64_t seed) {
    if (n < 2 || n > (1LL << 26)) throw OutOfRange("n out of range: " + std::to_string(n));
    if (biased < 0 || biased > n)
        throw OutOfRange("biased count out of range: " + std::to_string(biased));
    std::vector<AgentBehavior> behaviors(static_cast<std::size_t>(n), AgentBehavior::honest());
    for (int i = 0; i < biased; ++i)
        behaviors[static_cast<std::size_t>(i)] = AgentBehavior::biased(bias);
    return make_config(static_cast<int>(n), AgentId{referee}, std::move(behaviors), seed);
}

Report run_elect(const std::string& command, Protocol protocol, long long n, int referee,
                 int biased, double bias, long long trials, std::uint64_t seed, double alpha) {
    const ElectionConfig cfg = build_config(n, referee, biased, bias, seed);
    const trials::ElectionTally tally = trials::run_election_trials(protocol, cfg, trials);

    Report report;
    Row base;
    base.command = command;
    base.n = n;
    base.k = biased;
    base.address_len = cfg.address_len;
    base.trials = trials;
    base.seed = seed;

    for (int i = 1; i <= cfg.n; ++i) {
        const long long count = tally.leader_counts[static_cast<std::size_t>(i - 1)];
        const double frequency = static_cast<double>(count) / static_cast<double>(trials);
        Row r = base;
        r.item = "A" + std::to_string(i);
        r.value = frequency;
        r.std_error = binomial_std_error(frequency, trials);
        r.exact = 1.0 / static_cast<double>(cfg.n);
        r.estimate = static_cast<double>(count);
        report.rows.push_back(r);
    }

    const UniformityReport uni = chi_square_uniform(tally.leader_counts, alpha);
    Row summary = base;
    summary.item = "chi-square";
    summary.value = uni.statistic;
    summary.exact = uni.critical_value;
    summary.estimate = uni.tv_distance;
    summary.verdict = uni.reject_uniform ? "biased" : "uniform";
    report.rows.push_back(summary);
    if (uni.reject_uniform) report.rejected = true;

    if (protocol == Protocol::Randomized) {
        const AvoidanceProbability p = exact_avoidance_probability(n, biased);
        const double frequency = static_cast<double>(tally.avoided) / static_cast<double>(trials);
        const double se = binomial_std_error(frequency, trials);
        Row avoided = base;
        avoided.item = "avoided-bias";
        avoided.value = frequency;
        avoided.std_error = se;
        avoided.exact = p.value;
        avoided.estimate = static_cast<double>(tally.avoided);
        avoided.verdict = std::fabs(frequency - p.value) <= 4.0 * se ? "ok" : "deviates";
        if (avoided.verdict == "deviates") report.rejected = true;
        report.rows.push_back(avoided);
    }
    return report;
}

Report run_pnk(long long n, long long k, std::uint64_t seed) {
    const AvoidanceProbability p = exact_avoidance_probability(n, k);

    Report report;
    Row r;
    r.command = "pnk";
    r.n = n;
    r.k = k;
    r.address_len = p.address_len;
    r.seed = seed;
    std::ostringstream rational;
    rational << p.exact;
    r.item = rational.str();
    r.value = p.value;
    r.exact = p.value;
    if (p.defined) r.estimate = stirling_estimate(n, k).value;
    r.verdict = p.defined ? "defined" : "out-of-range";
    report.rows.push_back(r);
    return report;
}

Report run_sweep(const std::string& mode, double c_const, long long n_min, long long n_max,
                 std::uint64_t seed) {
    if (n_min < 2 || !is_power_of_two(n_min))
        throw NotPowerOfTwo("--n-min must be a power of two >= 2");
    if (n_max < n_min || !is_power_of_two(n_max))
        throw NotPowerOfTwo("--n-max must be a power of two >= --n-min");

    std::vector<long long> n_values;
    for (long long n = n_min; n <= n_max; n *= 2) n_values.push_back(n);

    std::vector<AvoidanceProbability> points;
    double target = 0.0;
    if (mode == "logn") {
        points = limit_logn_liars(n_values);
        target = 1.0;
    } else if (mode == "overloaded") {
        points = limit_overloaded_liars(c_const, n_values);
        target = std::exp(-c_const);
    } else {
        throw std::invalid_argument("--mode must be logn or overloaded");
    }

    Report report;
    for (const AvoidanceProbability& p : points) {
        Row r;
        r.command = "sweep";
        r.n = p.n;
        r.k = p.k;
        r.address_len = p.address_len;
        r.seed = seed;
        r.item = mode;
        r.value = p.value;
        r.exact = target;
        if (p.defined) r.estimate = stirling_estimate(p.n, p.k).value;
        r.verdict = p.defined ? "defined" : "out-of-range";
        report.rows.push_back(r);
    }
    return report;
}

Report run_montecarlo(long long n, long long k, long long trials, std::uint64_t seed) {
    const MonteCarloEstimate mc = monte_carlo_avoidance(n, k, trials, seed);
    const AvoidanceProbability p = exact_avoidance_probability(n, k);

    Report report;
    Row r;
    r.command = "montecarlo";
    r.n = n;
    r.k = k;
    r.address_len = p.address_len;
    r.trials = trials;
    r.seed = seed;
    r.item = "avoided";
    r.value = mc.estimate;
    r.std_error = mc.std_error;
    r.exact = p.value;
    r.estimate = std::round(mc.estimate * static_cast<double>(trials));
    r.verdict = std::fabs(mc.estimate - p.value) <= 4.0 * mc.std_error ? "ok" : "deviates";
    if (r.verdict == "deviates") report.rejected = true;
    report.rows.push_back(r);
    return report;
}

Report run_bias_test(long long n, int referee, int biased, double bias, long long trials,
                     std::uint64_t seed, double alpha) {
    const ElectionConfig cfg = build_config(n, referee, biased, bias, seed);
    const trials::ElectionTally tally =
        trials::run_election_trials(Protocol::Randomized, cfg, trials);
    const UniformityReport uni = chi_square_uniform(tally.leader_counts, alpha);

    Report report;
    Row r;
    r.command = "bias-test";
    r.n = n;
    r.k = biased;
    r.address_len = cfg.address_len;
    r.trials = trials;
    r.seed = seed;
    r.item = "chi-square";
    r.value = uni.statistic;
    r.exact = uni.critical_value;
    r.estimate = uni.tv_distance;
    r.verdict = uni.reject_uniform ? "biased" : "uniform";
    if (uni.reject_uniform) report.rejected = true;
    report.rows.push_back(r);
    return report;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{std::string("Leader-election experiment runner.\n") +
                 "Reports are tables with columns " + kColumns +
                 " (CSV) or the same keys per row (JSON).\n" +
                 "The default seed is read from QELECT_SEED when set, else 42."};
    app.name("qelect");
    app.require_subcommand(1);

    struct Common {
        std::string format = "csv";
        std::uint64_t seed = 42;
        double alpha = 0.001;
        bool assert_flag = false;
    };

    try {
        Common common;
        common.seed = default_seed();

        std::string n_text;
        std::string n_min_text;
        std::string n_max_text;
        long long k = 0;
        long long trials = 100000;
        int referee = 1;
        int biased = 0;
        double bias = 1.0;
        std::string mode;
        double c_const = 1.0;

        auto add_common = [&common](CLI::App* sub) {
            sub->add_option("--format", common.format, "Output format")
                ->check(CLI::IsMember({"csv", "json"}));
            sub->add_option("--seed", common.seed, "Master seed (default: QELECT_SEED or 42)");
            sub->add_option("--alpha", common.alpha, "Significance level for statistical verdicts")
                ->check(CLI::Range(1e-12, 0.5));
            sub->add_flag("--assert", common.assert_flag,
                          "Exit 2 when a statistical test rejects");
        };

        CLI::App* elect_q = app.add_subcommand(
            "elect-quantum", "Run entanglement-based elections and report the leader histogram");
        elect_q->add_option("--n", n_text, "Number of agents (power of two, accepts 2^j)")
            ->required();
        elect_q->add_option("--trials", trials, "Number of elections");
        elect_q->add_option("--referee", referee, "Referee agent index (1-based)");
        add_common(elect_q);

        CLI::App* elect_r = app.add_subcommand(
            "elect-random", "Run randomized elections, optionally with biased agents");
        elect_r->add_option("--n", n_text, "Number of agents (power of two, accepts 2^j)")
            ->required();
        elect_r->add_option("--trials", trials, "Number of elections");
        elect_r->add_option("--referee", referee, "Referee agent index (1-based)");
        elect_r->add_option("--biased", biased, "Agents 1..k vote with a fixed bias");
        elect_r->add_option("--bias", bias, "Probability a biased agent votes 1")
            ->check(CLI::Range(0.0, 1.0));
        add_common(elect_r);

        CLI::App* pnk = app.add_subcommand(
            "pnk", "Exact avoidance probability p(n,k) with its asymptotic estimate");
        pnk->add_option("--n", n_text, "Number of vote positions (power of two, accepts 2^j)")
            ->required();
        pnk->add_option("--k", k, "Number of biased positions")->required();
        add_common(pnk);

        CLI::App* sweep = app.add_subcommand(
            "sweep", "Exact p(n,k) along a growth regime of k over a range of n");
        sweep->add_option("--mode", mode, "logn (k = log2 n) or overloaded (k = C*n/log2 n)")
            ->required();
        sweep->add_option("--C", c_const, "Constant C for the overloaded regime");
        sweep->add_option("--n-min", n_min_text, "Smallest n (power of two, accepts 2^j)")
            ->required();
        sweep->add_option("--n-max", n_max_text, "Largest n (power of two, accepts 2^j)")
            ->required();
        add_common(sweep);

        CLI::App* mc = app.add_subcommand(
            "montecarlo", "Empirical avoidance frequency vs the exact p(n,k)");
        mc->add_option("--n", n_text, "Number of vote positions (power of two, accepts 2^j)")
            ->required();
        mc->add_option("--k", k, "Number of biased positions")->required();
        mc->add_option("--trials", trials, "Number of sample draws");
        add_common(mc);

        CLI::App* bias_test = app.add_subcommand(
            "bias-test", "Chi-square verdict on the randomized leader histogram");
        bias_test->add_option("--n", n_text, "Number of agents (power of two, accepts 2^j)")
            ->required();
        bias_test->add_option("--trials", trials, "Number of elections");
        bias_test->add_option("--referee", referee, "Referee agent index (1-based)");
        bias_test->add_option("--biased", biased, "Agents 1..k vote with a fixed bias");
        bias_test->add_option("--bias", bias, "Probability a biased agent votes 1")
            ->check(CLI::Range(0.0, 1.0));
        add_common(bias_test);

        std::vector<std::string> argv(args.rbegin(), args.rend());
        try {
            app.parse(argv);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n' << app.help();
            return 1;
        }

        Report report;
        if (app.got_subcommand(elect_q)) {
            report = run_elect("elect-quantum", Protocol::Quantum, parse_count(n_text), referee,
                               0, 1.0, trials, common.seed, common.alpha);
        } else if (app.got_subcommand(elect_r)) {
            report = run_elect("elect-random", Protocol::Randomized, parse_count(n_text), referee,
                               biased, bias, trials, common.seed, common.alpha);
        } else if (app.got_subcommand(pnk)) {
            report = run_pnk(parse_count(n_text), k, common.seed);
        } else if (app.got_subcommand(sweep)) {
            report = run_sweep(mode, c_const, parse_count(n_min_text), parse_count(n_max_text),
                               common.seed);
        } else if (app.got_subcommand(mc)) {
            report = run_montecarlo(parse_count(n_text), k, trials, common.seed);
        } else {
            report = run_bias_test(parse_count(n_text), referee, biased, bias, trials,
                                   common.seed, common.alpha);
        }

        if (common.format == "json")
            emit_json(report.rows, out);
        else
            emit_csv(report.rows, out);

        return report.rejected && common.assert_flag ? 2 : 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qelect
