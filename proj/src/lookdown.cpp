#include "coalhaus/lookdown.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace coalhaus {

LookdownState::LookdownState(std::vector<std::uint32_t> initial,
                             std::function<std::uint32_t(std::int64_t)> extend_rule)
    : buffer_(std::move(initial)),
      alive_(static_cast<std::int64_t>(buffer_.size())),
      extend_rule_(std::move(extend_rule)) {
    if (!extend_rule_)
        extend_rule_ = [](std::int64_t level) { return static_cast<std::uint32_t>(level); };
}

std::uint32_t LookdownState::type_at(std::int64_t level) const {
    if (level < 1 || level > alive_)
        throw std::invalid_argument("lookdown: level not alive");
    return buffer_[static_cast<std::size_t>(level - 1)];
}

std::uint32_t LookdownState::extended_type(std::int64_t level) const {
    if (level < 1) throw std::invalid_argument("lookdown: level must be >= 1");
    if (level <= static_cast<std::int64_t>(buffer_.size()))
        return buffer_[static_cast<std::size_t>(level - 1)];
    return extend_rule_(level);
}

void LookdownState::ensure_buffer(std::int64_t upto) {
    while (static_cast<std::int64_t>(buffer_.size()) < upto)
        buffer_.push_back(extend_rule_(static_cast<std::int64_t>(buffer_.size()) + 1));
}

void LookdownState::step_birth(const std::vector<std::int64_t>& J) {
    const std::int64_t ell = static_cast<std::int64_t>(J.size()) - 1;
    if (ell < 1) throw std::invalid_argument("lookdown: J needs at least two levels");
    for (std::size_t i = 0; i + 1 < J.size(); ++i)
        if (!(J[i] < J[i + 1]))
            throw std::invalid_argument("lookdown: J must be sorted and duplicate-free");
    if (J.front() < 1 || J.back() > alive_ + ell)
        throw std::invalid_argument("lookdown: J outside [1, N + ell]");

    const std::int64_t new_alive = alive_ + ell;
    ensure_buffer(new_alive);
    const std::uint32_t parent_type = buffer_[static_cast<std::size_t>(J[0] - 1)];

    // Descending in-place re-index. m counts insertions at or below pos, so a
    // non-insertion position pos is filled by the old level pos - m; reads are
    // always below the write cursor.
    std::int64_t m = ell;
    for (std::int64_t pos = new_alive; pos >= J[1]; --pos) {
        if (m >= 1 && J[static_cast<std::size_t>(m)] == pos) {
            buffer_[static_cast<std::size_t>(pos - 1)] = parent_type;
            --m;
        } else {
            assert(pos - m >= 1 && pos - m <= alive_);
            buffer_[static_cast<std::size_t>(pos - 1)] =
                buffer_[static_cast<std::size_t>(pos - m - 1)];
        }
    }
    alive_ = new_alive;
}

void LookdownState::step_death() {
    if (alive_ < 1) throw std::invalid_argument("lookdown: nothing alive");
    --alive_; // frozen value stays in the buffer, which is the embedding
}

std::vector<std::pair<std::uint32_t, std::int64_t>> LookdownState::empirical_measure() const {
    std::map<std::uint32_t, std::int64_t> counts;
    for (std::int64_t i = 0; i < alive_; ++i) ++counts[buffer_[static_cast<std::size_t>(i)]];
    return {counts.begin(), counts.end()};
}

void apply_restricted_birth(std::vector<std::uint32_t>& window,
                            std::int64_t living_before, std::int64_t ell,
                            int parent_level, const std::vector<int>& insertions) {
    if (insertions.empty()) return;
    const std::int64_t k = static_cast<std::int64_t>(window.size());
    if (parent_level < 1 || parent_level > k ||
        static_cast<std::int64_t>(parent_level) > living_before)
        throw std::invalid_argument("restricted birth: parent level out of range");
    if (insertions.front() <= parent_level)
        throw std::invalid_argument("restricted birth: insertions must exceed the parent level");
    const std::int64_t alive_after = std::min(k, living_before + ell);
    if (insertions.back() > alive_after)
        throw std::invalid_argument("restricted birth: insertion outside the window");

    const std::uint32_t parent_type = window[static_cast<std::size_t>(parent_level - 1)];
    std::int64_t m = static_cast<std::int64_t>(insertions.size());
    for (std::int64_t pos = alive_after; pos >= insertions.front(); --pos) {
        if (m >= 1 && insertions[static_cast<std::size_t>(m - 1)] == pos) {
            window[static_cast<std::size_t>(pos - 1)] = parent_type;
            --m;
        } else {
            assert(pos - m >= 1 && pos - m <= living_before);
            window[static_cast<std::size_t>(pos - 1)] =
                window[static_cast<std::size_t>(pos - m - 1)];
        }
    }
}

LookdownRun simulate_lookdown(const RegimeConfig& cfg,
                              const std::vector<std::uint32_t>& initial,
                              double horizon, const LookdownOptions& opt, Rng& rng) {
    cfg.validate();
    if (opt.k < 1) throw std::invalid_argument("lookdown: k must be >= 1");
    if (!(horizon >= 0.0)) throw std::invalid_argument("lookdown: horizon must be nonnegative");
    if (initial.empty()) throw std::invalid_argument("lookdown: empty initial population");

    LookdownRun run;
    run.initial_size = static_cast<std::int64_t>(initial.size());
    run.k = opt.k;
    run.mode = opt.mode;
    run.horizon = horizon;
    run.r_K = cfg.r_K();
    const double horizon_model = horizon * run.r_K;

    const bool oracle = opt.mode == LookdownMode::Oracle;
    LookdownState state(oracle ? initial : std::vector<std::uint32_t>{}, nullptr);

    std::vector<std::uint32_t> window;
    std::int64_t N = run.initial_size;
    if (!oracle) {
        window.assign(initial.begin(),
                      initial.begin() + std::min<std::int64_t>(N, opt.k));
        while (static_cast<int>(window.size()) < opt.k)
            window.push_back(static_cast<std::uint32_t>(window.size() + 1));
    }
    run.min_alive = N;

    auto current_snapshot = [&](double t_resc) {
        LookdownSnapshot snap;
        snap.t = t_resc;
        snap.alive = N;
        if (oracle)
            snap.types.assign(state.buffer().begin(), state.buffer().begin() + N);
        else
            snap.types = window;
        return snap;
    };
    std::vector<double> snaps = opt.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    auto emit_snaps_up_to = [&](double t_model_limit) {
        while (next_snap < snaps.size() && snaps[next_snap] * run.r_K <= t_model_limit) {
            run.snapshots.push_back(current_snapshot(snaps[next_snap]));
            ++next_snap;
        }
    };

    double t = 0.0;
    std::vector<std::int64_t> S;
    while (true) {
        if (N == 0) {
            emit_snaps_up_to(horizon_model);
            break;
        }
        const double dN = static_cast<double>(N);
        const double birth_rate = cfg.b * dN;
        const double total = birth_rate + dN * (cfg.d + cfg.c * dN / cfg.K);
        const double t_next = t + rng.exponential(total);
        if (t_next > horizon_model) {
            emit_snaps_up_to(horizon_model);
            break;
        }
        emit_snaps_up_to(t_next); // left limits at snapshot times on a jump
        t = t_next;

        if (rng.u01() * total < birth_rate) {
            const std::int64_t ell = cfg.law.sample(rng);
            ++run.births;
            run.offspring_total += static_cast<std::uint64_t>(ell);
            if (oracle) {
                auto J = sample_subset(N + ell, ell + 1, rng);
                state.step_birth(J);
                if (opt.log_events) run.events.push_back({t, true, std::move(J)});
            } else {
                S.clear();
                std::int64_t picks = ell + 1;
                std::int64_t navail = N + ell;
                const std::int64_t upto = std::min<std::int64_t>(opt.k, N + ell);
                for (std::int64_t i = 1; i <= upto && picks > 0; --navail, ++i) {
                    if (rng.u01() * static_cast<double>(navail) <
                        static_cast<double>(picks)) {
                        S.push_back(i);
                        --picks;
                    }
                }
                if (S.size() >= 2) {
                    std::vector<int> ins;
                    ins.reserve(S.size() - 1);
                    for (std::size_t i = 1; i < S.size(); ++i)
                        ins.push_back(static_cast<int>(S[i]));
                    apply_restricted_birth(window, N, ell, static_cast<int>(S[0]), ins);
                    if (opt.log_events) run.events.push_back({t, true, S});
                }
            }
            N += ell;
        } else {
            if (oracle) {
                if (opt.log_events) run.events.push_back({t, false, {N}});
                state.step_death();
            }
            --N;
            run.deaths += 1;
            run.min_alive = std::min(run.min_alive, N);
        }
        if (oracle) assert(state.alive() == N);
    }

    run.final_alive = N;
    if (oracle) {
        const std::int64_t w = std::min<std::int64_t>(N, opt.k);
        run.final_window.assign(state.buffer().begin(), state.buffer().begin() + w);
    } else {
        run.final_window = window;
    }
    run.degenerate = run.min_alive < opt.k;
    return run;
}

} // namespace coalhaus
