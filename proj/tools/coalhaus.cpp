#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coalhaus/coalescent.hpp"
#include "coalhaus/config.hpp"
#include "coalhaus/genealogy.hpp"
#include "coalhaus/io.hpp"
#include "coalhaus/lambda_measure.hpp"
#include "coalhaus/limit_lookdown.hpp"
#include "coalhaus/lookdown.hpp"
#include "coalhaus/parallel.hpp"
#include "coalhaus/population.hpp"
#include "coalhaus/rates.hpp"
#include "coalhaus/rng.hpp"
#include "coalhaus/scenarios.hpp"

namespace {

using namespace coalhaus;

int exit_code_for(const ConfigError& e) {
    switch (e.kind()) {
        case ConfigError::Kind::Parse: return 2;
        case ConfigError::Kind::UnknownKey: return 2;
        case ConfigError::Kind::RegimeMismatch: return 3;
        case ConfigError::Kind::Io: return 4;
    }
    return 2;
}

struct LoadedConfig {
    ExperimentConfig cfg;
    OutputStamp stamp;
};

LoadedConfig load_config(const std::string& path) {
    const std::string text = read_file_or_throw(path);
    LoadedConfig lc{parse_config_text(text), {config_hash(text), 0}};
    lc.stamp.seed = lc.cfg.seed;
    return lc;
}

LookdownMode parse_mode(const std::string& text) {
    if (text == "oracle") return LookdownMode::Oracle;
    if (text == "scalable") return LookdownMode::Scalable;
    throw ConfigError(ConfigError::Kind::Parse, "mode must be oracle or scalable: " + text);
}

std::string prefix_or_default(const std::string& out) {
    return out.empty() ? std::string("out") : out;
}

std::vector<std::uint32_t> starting_types(const ExperimentConfig& cfg, Rng& rng) {
    const std::int64_t n0 = cfg.model.initial_size();
    return cfg.initial_alphabet > 0 ? initial_iid(n0, cfg.initial_alphabet, rng)
                                    : initial_distinct(n0);
}

void emit(const std::string& path, const std::string& content) {
    write_text_file(path, content);
    std::printf("wrote %s\n", path.c_str());
}

int cmd_simulate_population(ExperimentConfig cfg, OutputStamp stamp) {
    const std::string prefix = prefix_or_default(cfg.out);
    const std::vector<double> grid =
        cfg.grid.empty() ? std::vector<double>{cfg.horizon} : cfg.grid;
    const bool with_freq = cfg.initial_alphabet > 0;

    std::vector<TrajectorySummary> trajs(static_cast<std::size_t>(cfg.reps));
    parallel_for(cfg.reps, cfg.threads, [&](std::int64_t r) {
        Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        auto initial = starting_types(cfg, rng);
        PopulationOptions po;
        po.grid = grid;
        po.record_frequencies = with_freq;
        po.record_size_path = false;
        trajs[static_cast<std::size_t>(r)] =
            simulate_population(cfg.model, std::move(initial), cfg.horizon, po, rng);
    });
    emit(prefix + "_trajectories.csv", trajectories_csv(stamp, trajs));
    if (with_freq) emit(prefix + "_frequencies.csv", frequencies_csv(stamp, trajs));
    return 0;
}

int cmd_simulate_lookdown(ExperimentConfig cfg, OutputStamp stamp) {
    const std::string prefix = prefix_or_default(cfg.out);
    LookdownOptions lo;
    lo.k = cfg.k;
    lo.mode = cfg.mode;
    lo.log_events = true;

    std::vector<LookdownRun> runs(static_cast<std::size_t>(cfg.reps));
    parallel_for(cfg.reps, cfg.threads, [&](std::int64_t r) {
        Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        const auto initial = starting_types(cfg, rng);
        runs[static_cast<std::size_t>(r)] =
            simulate_lookdown(cfg.model, initial, cfg.horizon, lo, rng);
    });
    emit(prefix + "_events.csv", lookdown_events_csv(stamp, runs));
    return 0;
}

int cmd_simulate_limit(const std::string& lambda_text, int k, double horizon, int reps,
                       std::uint64_t seed, const std::string& out, int threads) {
    const LambdaMeasure lam = parse_lambda(lambda_text);
    const OutputStamp stamp{
        config_hash("simulate-limit lambda=" + lambda_text + " k=" + std::to_string(k) +
                    " horizon=" + format_double(horizon)),
        seed};
    std::vector<std::uint32_t> initial;
    for (int i = 1; i <= k; ++i) initial.push_back(static_cast<std::uint32_t>(i));

    std::vector<LimitRun> runs(static_cast<std::size_t>(reps));
    parallel_for(reps, threads, [&](std::int64_t r) {
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
        runs[static_cast<std::size_t>(r)] =
            simulate_limit_lookdown(lam, k, initial, horizon, rng);
    });
    emit(prefix_or_default(out) + "_limit_events.csv", limit_events_csv(stamp, runs));
    return 0;
}

int cmd_simulate_coalescent(const std::string& lambda_text, int k, double horizon,
                            int reps, std::uint64_t seed, const std::string& out,
                            int threads) {
    const LambdaMeasure lam = parse_lambda(lambda_text);
    const OutputStamp stamp{
        config_hash("simulate-coalescent lambda=" + lambda_text + " k=" +
                    std::to_string(k) + " horizon=" + format_double(horizon)),
        seed};

    std::vector<PartitionPath> paths(static_cast<std::size_t>(reps));
    parallel_for(reps, threads, [&](std::int64_t r) {
        Rng rng(stream_seed(seed, static_cast<std::uint64_t>(r)));
        paths[static_cast<std::size_t>(r)] =
            simulate_coalescent(lam, Partition::all_singletons(k), horizon, rng);
    });
    emit(prefix_or_default(out) + "_partitions.csv", partitions_csv(stamp, paths));
    return 0;
}

int cmd_rates(const std::string& lambda_text, int n_max, const std::string& out) {
    const LambdaMeasure lam = parse_lambda(lambda_text);
    const OutputStamp stamp{config_hash("rates lambda=" + lambda_text), 0};
    const std::string csv = rate_table_csv(stamp, rate_table(lam, n_max));
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
        return 0;
    }
    emit(out, csv);
    return 0;
}

int cmd_verify_rates(const std::string& regime, std::optional<double> alpha, double q,
                     int k, const std::string& K_text, const std::string& grid_text,
                     double b, double d, double c, const std::string& out) {
    RegimeConfig base;
    base.b = b;
    base.d = d;
    base.c = c;
    if (regime == "stable") {
        if (!alpha)
            throw ConfigError(ConfigError::Kind::RegimeMismatch,
                              "--alpha is required for the stable regime");
        base.law = OffspringLaw::stable_tail(*alpha);
    } else if (regime == "fv" || regime == "finite-variance") {
        if (alpha)
            throw ConfigError(ConfigError::Kind::RegimeMismatch,
                              "--alpha only applies to the stable regime");
        base.law = OffspringLaw::geometric(q);
    } else if (regime == "neveu") {
        if (alpha)
            throw ConfigError(ConfigError::Kind::RegimeMismatch,
                              "--alpha only applies to the stable regime");
        base.law = OffspringLaw::neveu_tail();
    } else {
        throw ConfigError(ConfigError::Kind::Parse,
                          "regime must be fv, stable, or neveu: " + regime);
    }
    const std::vector<double> K_list = parse_list(K_text);
    if (K_list.empty())
        throw ConfigError(ConfigError::Kind::Parse, "--K needs at least one value");
    base.K = K_list.front();
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(ConfigError::Kind::RegimeMismatch, e.what());
    }

    const auto report = convergence_report(base, k, K_list, parse_grid(grid_text));
    const OutputStamp stamp{config_hash("verify-rates regime=" + regime + " k=" +
                                        std::to_string(k) + " K=" + K_text + " n-grid=" +
                                        grid_text),
                            0};
    const std::string csv = convergence_csv(stamp, report);
    if (out.empty()) {
        std::fputs(csv.c_str(), stdout);
        return 0;
    }
    emit(out, csv);
    return 0;
}

int cmd_genealogy(const std::string& events_path, std::optional<int> k_opt,
                  const std::string& out) {
    const EventsFile ef = read_lookdown_events_csv(events_path);
    const int k = k_opt.value_or(ef.k);
    if (k < 2 || k > ef.k)
        throw ConfigError(ConfigError::Kind::RegimeMismatch,
                          "k must be between 2 and " + std::to_string(ef.k) +
                              " for this event log");

    std::vector<PartitionPath> paths;
    paths.reserve(ef.runs.size());
    for (LookdownRun run : ef.runs) {
        run.k = k;
        paths.push_back(psi(counting_path_from_lookdown(run)));
    }
    emit(out, partitions_csv({ef.config_hash, ef.seed}, paths));
    return 0;
}

int cmd_compare(const std::string& name, bool list, std::optional<std::uint64_t> seed_opt,
                int threads, const std::string& out) {
    if (list) {
        for (const auto& n : scenarios::names()) std::printf("%s\n", n.c_str());
        return 0;
    }
    if (name.empty())
        throw ConfigError(ConfigError::Kind::Parse, "--scenario is required (or --list)");
    const int crit = scenarios::criterion_of(name);
    if (crit == 0)
        throw ConfigError(ConfigError::Kind::Parse,
                          "unknown scenario " + name + "; run compare --list");
    const std::uint64_t seed = seed_opt.value_or(scenarios::default_seed(crit));
    const auto oc = scenarios::run_criterion(crit, seed, threads);

    std::printf("[%s] criterion %d (%s)\n", oc.pass ? "PASS" : "FAIL", oc.criterion,
                oc.name.c_str());
    for (const auto& r : oc.reports)
        std::printf("  [%s] %-45s statistic=%-13.6g threshold=%-13.6g n=%lld\n",
                    r.pass ? "ok" : "FAIL", r.test.c_str(), r.statistic, r.threshold,
                    static_cast<long long>(r.n));
    for (const auto& line : oc.detail) std::printf("  # %s\n", line.c_str());

    if (!out.empty())
        emit(out, reports_json({config_hash("compare scenario=" + oc.name), seed},
                               oc.reports));
    return oc.pass ? 0 : 1;
}

int cmd_report(const std::string& in_path) {
    const std::string text = read_file_or_throw(in_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(ConfigError::Kind::Parse,
                          std::string("not a reports JSON file: ") + e.what());
    }
    std::printf("config %s, seed %llu\n", j.value("config_hash", std::string("?")).c_str(),
                static_cast<unsigned long long>(j.value("seed", 0ull)));
    int total = 0, passed = 0;
    for (const auto& r : j.value("reports", nlohmann::json::array())) {
        const bool ok = r.value("pass", false);
        ++total;
        passed += ok ? 1 : 0;
        std::printf("  [%s] %-45s statistic=%-13.6g threshold=%-13.6g n=%lld\n",
                    ok ? "ok" : "FAIL", r.value("test", std::string("?")).c_str(),
                    r.value("statistic", 0.0), r.value("threshold", 0.0),
                    static_cast<long long>(r.value("n", std::int64_t{0})));
        const std::string meta = r.value("metadata", std::string());
        if (!meta.empty()) std::printf("        %s\n", meta.c_str());
    }
    std::printf("%d/%d passed\n", passed, total);
    return (total > 0 && passed == total) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"logistic branching populations, lookdown genealogies, and "
                 "Lambda-coalescent verification"};
    app.require_subcommand(1);
    int rc = 0;

    // Shared override holders; each subcommand binds the ones it supports.
    std::string config_path, out, lambda_text, mode_text;
    std::uint64_t seed = 1;
    int reps = 0, k = 0, threads = 0;
    double horizon = 0.0;

    auto* sp = app.add_subcommand("simulate-population",
                                  "forward Gillespie runs of the logistic branching process");
    sp->add_option("--config", config_path, "experiment config file")->required();
    sp->add_option("--reps", reps, "replicate count override");
    sp->add_option("--seed", seed, "master seed override");
    sp->add_option("--out", out, "output prefix override");
    sp->add_option("--threads", threads, "worker threads override");
    sp->callback([&] {
        auto lc = load_config(config_path);
        if (sp->count("--reps")) lc.cfg.reps = reps;
        if (sp->count("--seed")) lc.cfg.seed = seed;
        if (sp->count("--out")) lc.cfg.out = out;
        if (sp->count("--threads")) lc.cfg.threads = threads;
        lc.stamp.seed = lc.cfg.seed;
        rc = cmd_simulate_population(lc.cfg, lc.stamp);
    });

    auto* sl = app.add_subcommand("simulate-lookdown",
                                  "prelimit lookdown runs with restricted or full event logs");
    sl->add_option("--config", config_path, "experiment config file")->required();
    sl->add_option("--k", k, "lowest-k window size override");
    sl->add_option("--mode", mode_text, "oracle or scalable");
    sl->add_option("--reps", reps, "replicate count override");
    sl->add_option("--seed", seed, "master seed override");
    sl->add_option("--out", out, "output prefix override");
    sl->add_option("--threads", threads, "worker threads override");
    sl->callback([&] {
        auto lc = load_config(config_path);
        if (sl->count("--k")) lc.cfg.k = k;
        if (sl->count("--mode")) lc.cfg.mode = parse_mode(mode_text);
        if (sl->count("--reps")) lc.cfg.reps = reps;
        if (sl->count("--seed")) lc.cfg.seed = seed;
        if (sl->count("--out")) lc.cfg.out = out;
        if (sl->count("--threads")) lc.cfg.threads = threads;
        lc.stamp.seed = lc.cfg.seed;
        rc = cmd_simulate_lookdown(lc.cfg, lc.stamp);
    });

    auto* sm = app.add_subcommand("simulate-limit",
                                  "limiting lookdown on the lowest k levels");
    sm->add_option("--lambda", lambda_text, "coalescent measure, e.g. beta(alpha=1.5,scale=1.0)")
        ->required();
    sm->add_option("--k", k, "window size")->default_val(4);
    sm->add_option("--horizon", horizon, "run length")->default_val(10.0);
    sm->add_option("--reps", reps, "replicate count")->default_val(100);
    sm->add_option("--seed", seed, "master seed")->default_val(1);
    sm->add_option("--out", out, "output prefix");
    sm->add_option("--threads", threads, "worker threads")->default_val(1);
    sm->callback([&] { rc = cmd_simulate_limit(lambda_text, k, horizon, reps, seed, out, threads); });

    auto* sc = app.add_subcommand("simulate-coalescent",
                                  "Lambda-coalescent partition paths");
    sc->add_option("--lambda", lambda_text, "coalescent measure")->required();
    sc->add_option("--k", k, "number of starting singletons")->default_val(6);
    sc->add_option("--horizon", horizon, "run length")->default_val(1e9);
    sc->add_option("--reps", reps, "replicate count")->default_val(100);
    sc->add_option("--seed", seed, "master seed")->default_val(1);
    sc->add_option("--out", out, "output prefix");
    sc->add_option("--threads", threads, "worker threads")->default_val(1);
    sc->callback([&] {
        rc = cmd_simulate_coalescent(lambda_text, k, horizon, reps, seed, out, threads);
    });

    auto* rt = app.add_subcommand("rates", "closed-form merger rate table lambda(n,j)");
    rt->add_option("--lambda", lambda_text, "coalescent measure")->required();
    rt->add_option("--n", k, "largest block count")->default_val(8);
    rt->add_option("--out", out, "CSV path (stdout when omitted)");
    rt->callback([&] { rc = cmd_rates(lambda_text, k, out); });

    auto* vr = app.add_subcommand("verify-rates",
                                  "prelimit merger rates against their large-K limits");
    std::string regime, K_text, grid_text;
    double alpha = 0.0, qgeo = 0.5, b = 1.0, d = 0.0, c = 1.0;
    vr->add_option("--regime", regime, "fv, stable, or neveu")->required();
    vr->add_option("--alpha", alpha, "stable tail index in (1,2)");
    vr->add_option("--q", qgeo, "geometric offspring parameter (fv regime)");
    vr->add_option("--k", k, "sample size")->default_val(4);
    vr->add_option("--K", K_text, "comma list of carrying capacities")->required();
    vr->add_option("--n-grid", grid_text, "start:stop:step or comma list")->required();
    vr->add_option("--b", b, "birth rate")->default_val(1.0);
    vr->add_option("--d", d, "death rate")->default_val(0.0);
    vr->add_option("--c", c, "competition rate")->default_val(1.0);
    vr->add_option("--out", out, "CSV path (stdout when omitted)");
    vr->callback([&] {
        std::optional<double> a;
        if (vr->count("--alpha")) a = alpha;
        rc = cmd_verify_rates(regime, a, qgeo, k, K_text, grid_text, b, d, c, out);
    });

    auto* ge = app.add_subcommand("genealogy",
                                  "ancestral partition paths from a lookdown event log");
    std::string events_path;
    ge->add_option("--events", events_path, "events CSV from simulate-lookdown")->required();
    ge->add_option("--k", k, "sample size (defaults to the log's k)");
    ge->add_option("--out", out, "partitions CSV path")->required();
    ge->callback([&] {
        std::optional<int> kk;
        if (ge->count("--k")) kk = k;
        rc = cmd_genealogy(events_path, kk, out);
    });

    auto* cp = app.add_subcommand("compare", "run a named verification scenario");
    std::string scenario;
    bool list = false;
    cp->add_option("--scenario", scenario, "scenario name (see --list)");
    cp->add_flag("--list", list, "print scenario names and exit");
    cp->add_option("--seed", seed, "master seed override");
    cp->add_option("--threads", threads, "worker threads")->default_val(1);
    cp->add_option("--out", out, "write the TestReport batch as JSON");
    cp->callback([&] {
        std::optional<std::uint64_t> s;
        if (cp->count("--seed")) s = seed;
        rc = cmd_compare(scenario, list, s, threads, out);
    });

    auto* rp = app.add_subcommand("report", "pretty-print a stored TestReport JSON");
    std::string in_path;
    rp->add_option("--in", in_path, "reports JSON file")->required();
    rp->callback([&] { rc = cmd_report(in_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
