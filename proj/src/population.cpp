#include "coalhaus/population.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace coalhaus {

std::vector<std::uint32_t> initial_distinct(std::int64_t n0) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(n0));
    for (std::int64_t i = 0; i < n0; ++i) v[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i + 1);
    return v;
}

std::vector<std::uint32_t> initial_iid(std::int64_t n0, std::uint32_t alphabet, Rng& rng) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(n0));
    for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(alphabet)) + 1;
    return v;
}

namespace {

std::vector<std::pair<std::uint32_t, double>> frequency_vector(
    const std::vector<std::uint32_t>& individuals) {
    if (individuals.empty()) return {{kExtinctType, 1.0}};
    std::map<std::uint32_t, std::int64_t> counts;
    for (auto t : individuals) ++counts[t];
    std::vector<std::pair<std::uint32_t, double>> out;
    out.reserve(counts.size());
    const double n = static_cast<double>(individuals.size());
    for (const auto& [type, cnt] : counts)
        out.emplace_back(type, static_cast<double>(cnt) / n);
    return out;
}

std::vector<std::pair<std::uint32_t, std::int64_t>> count_vector(
    const std::vector<std::uint32_t>& individuals) {
    std::map<std::uint32_t, std::int64_t> counts;
    for (auto t : individuals) ++counts[t];
    return {counts.begin(), counts.end()};
}

} // namespace

TrajectorySummary simulate_population(const RegimeConfig& cfg,
                                      std::vector<std::uint32_t> initial,
                                      double horizon,
                                      const PopulationOptions& opt, Rng& rng) {
    cfg.validate();
    if (!(horizon >= 0.0))
        throw std::invalid_argument("simulate_population: horizon must be nonnegative");
    for (double g : opt.grid)
        if (!(g >= 0.0 && g <= horizon))
            throw std::invalid_argument("simulate_population: grid time outside [0, horizon]");

    TrajectorySummary out;
    out.horizon = horizon;
    out.r_K = cfg.r_K();
    out.s_K = cfg.s_K();
    out.grid = opt.grid;

    const double horizon_model = horizon * out.r_K;
    std::vector<std::uint32_t> pop = std::move(initial);

    std::size_t next_grid = 0;
    auto emit_grid_up_to = [&](double t_model_limit) {
        while (next_grid < out.grid.size() &&
               out.grid[next_grid] * out.r_K <= t_model_limit) {
            out.n_values.push_back(static_cast<double>(pop.size()) / out.s_K);
            if (opt.record_frequencies) out.frequencies.push_back(frequency_vector(pop));
            ++next_grid;
        }
    };

    double t = 0.0;
    if (opt.record_size_path) {
        out.size_path.times_model.push_back(0.0);
        out.size_path.sizes.push_back(static_cast<std::int64_t>(pop.size()));
    }

    while (true) {
        const double N = static_cast<double>(pop.size());
        if (pop.empty()) {
            out.extinct = true;
            out.extinction_time = t / out.r_K;
            emit_grid_up_to(horizon_model);
            break;
        }
        const double birth_rate = cfg.b * N;
        const double total = birth_rate + N * (cfg.d + cfg.c * N / cfg.K);
        const double t_next = t + rng.exponential(total);
        if (t_next > horizon_model) {
            emit_grid_up_to(horizon_model);
            break;
        }
        // Grid points at or before the jump read the pre-event state, which
        // makes values at grid times lying exactly on a jump left limits.
        emit_grid_up_to(t_next);
        t = t_next;
        if (rng.u01() * total < birth_rate) {
            const std::size_t parent = static_cast<std::size_t>(rng.below(pop.size()));
            const std::int64_t ell = cfg.law.sample(rng);
            pop.insert(pop.end(), static_cast<std::size_t>(ell), pop[parent]);
            ++out.births;
            out.offspring_total += static_cast<std::uint64_t>(ell);
        } else {
            const std::size_t victim = static_cast<std::size_t>(rng.below(pop.size()));
            pop[victim] = pop.back();
            pop.pop_back();
            ++out.deaths;
        }
        if (opt.record_size_path) {
            out.size_path.times_model.push_back(t);
            out.size_path.sizes.push_back(static_cast<std::int64_t>(pop.size()));
        }
    }
    out.size_path.end_time_model = horizon_model;
    out.final_size = static_cast<std::int64_t>(pop.size());
    out.final_counts = count_vector(pop);
    return out;
}

ThresholdSpec ThresholdSpec::band(double center, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("threshold: band width must be positive");
    ThresholdSpec s;
    s.kind = Kind::Band;
    s.center = center;
    s.eps = eps;
    return s;
}

ThresholdSpec ThresholdSpec::lower_barrier(double level) {
    ThresholdSpec s;
    s.kind = Kind::LowerBarrier;
    s.barrier = level;
    return s;
}

bool ThresholdSpec::violated(double n) const {
    if (kind == Kind::Band) return std::abs(n - center) > eps;
    return n < barrier;
}

std::optional<double> tau_K(const TrajectorySummary& traj, const ThresholdSpec& spec) {
    const auto& path = traj.size_path;
    if (path.times_model.empty())
        throw std::invalid_argument("tau_K: trajectory lacks an event-exact size path");
    for (std::size_t i = 0; i < path.sizes.size(); ++i) {
        const double n = static_cast<double>(path.sizes[i]) / traj.s_K;
        if (spec.violated(n)) return path.times_model[i] / traj.r_K;
    }
    return std::nullopt;
}

OccupationMeasure occupation_measure(const TrajectorySummary& traj,
                                     const std::vector<double>& edges,
                                     const std::optional<ThresholdSpec>& stop) {
    if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()))
        throw std::invalid_argument("occupation_measure: need ascending bin edges");
    const auto& path = traj.size_path;
    if (path.times_model.empty())
        throw std::invalid_argument("occupation_measure: trajectory lacks a size path");

    OccupationMeasure out;
    out.edges = edges;
    out.masses.assign(edges.size() - 1, 0.0);

    double t_stop_model = path.end_time_model;
    if (stop) {
        // Occupation is accumulated strictly before tau.
        for (std::size_t i = 0; i < path.sizes.size(); ++i) {
            const double n = static_cast<double>(path.sizes[i]) / traj.s_K;
            if (stop->violated(n)) { t_stop_model = path.times_model[i]; break; }
        }
    }

    for (std::size_t i = 0; i < path.sizes.size(); ++i) {
        const double seg_start = path.times_model[i];
        const double seg_end = (i + 1 < path.times_model.size())
                                   ? path.times_model[i + 1]
                                   : path.end_time_model;
        const double a = std::min(seg_start, t_stop_model);
        const double b = std::min(seg_end, t_stop_model);
        if (!(b > a)) continue;
        const double mass = (b - a) / traj.r_K;
        const double n = static_cast<double>(path.sizes[i]) / traj.s_K;
        if (n < edges.front()) {
            out.below += mass;
        } else if (n >= edges.back()) {
            out.above += mass;
        } else {
            const auto it = std::upper_bound(edges.begin(), edges.end(), n);
            out.masses[static_cast<std::size_t>(it - edges.begin()) - 1] += mass;
        }
    }
    out.total = t_stop_model / traj.r_K;
    return out;
}

double OccupationMeasure::fraction_in(double lo, double hi) const {
    if (!(total > 0.0)) return 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (edges[i] >= lo && edges[i + 1] <= hi) m += masses[i];
    return m / total;
}

double lyapunov_V(double n, double n_star, double eps) {
    if (!(n > 0.0))
        throw std::invalid_argument("lyapunov_V: n must be positive");
    if (!(eps > 0.0 && eps < n_star))
        throw std::invalid_argument("lyapunov_V: needs 0 < eps < n_star");
    return n / (n_star + eps) - 1.0 - std::log(n / (n_star - eps));
}

} // namespace coalhaus
