#include "coalhaus/genealogy.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace coalhaus {

void CountingPath::validate() const {
    if (k < 1) throw std::invalid_argument("counting path: k must be >= 1");
    double prev = -1.0;
    for (const auto& ev : events) {
        if (!(ev.t > prev))
            throw std::invalid_argument("counting path: event times must strictly increase");
        if (ev.t > horizon)
            throw std::invalid_argument("counting path: event beyond the horizon");
        prev = ev.t;
        if (ev.levels.size() < 2)
            throw std::invalid_argument("counting path: level set needs two levels");
        for (std::size_t i = 0; i < ev.levels.size(); ++i) {
            if (ev.levels[i] < 1 || ev.levels[i] > k)
                throw std::invalid_argument("counting path: level outside [1, k]");
            if (i > 0 && ev.levels[i] <= ev.levels[i - 1])
                throw std::invalid_argument("counting path: levels must be ascending");
        }
    }
}

CountingPath counting_path_from_lookdown(const LookdownRun& run) {
    CountingPath path;
    path.k = run.k;
    path.horizon = run.horizon;
    for (const auto& ev : run.events) {
        if (!ev.is_birth) continue;
        std::vector<int> levels;
        for (std::int64_t lv : ev.levels) {
            if (lv > run.k) break; // event level sets are ascending
            levels.push_back(static_cast<int>(lv));
        }
        if (levels.size() < 2) continue;
        path.events.push_back({ev.t_model / run.r_K, std::move(levels)});
    }
    path.validate();
    return path;
}

CountingPath counting_path_from_limit(const LimitRun& run) {
    CountingPath path;
    path.k = run.k;
    path.horizon = run.horizon;
    for (const auto& ev : run.events) path.events.push_back({ev.t, ev.levels});
    path.validate();
    return path;
}

std::vector<int> backward_levels(const std::vector<int>& levels,
                                 const std::vector<int>& J) {
    if (J.size() < 2) throw std::invalid_argument("backward_levels: |J| must be >= 2");
    const int min_j = J.front();
    std::vector<int> out;
    out.reserve(levels.size());
    for (int v : levels) {
        if (std::binary_search(J.begin(), J.end(), v)) {
            out.push_back(min_j);
        } else {
            int shift = 0;
            for (std::size_t i = 1; i < J.size() && J[i] < v; ++i) ++shift;
            out.push_back(v - shift);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PartitionPath psi(const CountingPath& path) {
    path.validate();
    PartitionPath out;
    out.horizon = path.horizon;
    out.initial = Partition::all_singletons(path.k);

    // levels[v-1] holds the block at lineage level v; occupied levels are
    // exactly 1..#blocks, and block least elements increase with the level,
    // so this vector doubles as the canonical partition.
    std::vector<std::vector<int>> levels;
    for (int i = 1; i <= path.k; ++i) levels.push_back({i});

    for (auto it = path.events.rbegin(); it != path.events.rend(); ++it) {
        const int nblocks = static_cast<int>(levels.size());
        if (nblocks == 1) break;
        std::vector<int> S;
        for (int v : it->levels)
            if (v <= nblocks) S.push_back(v);
        if (S.size() < 2) continue; // a lone hit is the parent level; no move

        PartitionPath::Step step;
        step.time = path.horizon - it->t;
        std::vector<std::vector<int>> next;
        next.reserve(levels.size() - S.size() + 1);
        std::vector<int> merged;
        for (int s : S) {
            step.merged_blocks.push_back(s - 1);
            merged.insert(merged.end(), levels[static_cast<std::size_t>(s - 1)].begin(),
                          levels[static_cast<std::size_t>(s - 1)].end());
        }
        std::sort(merged.begin(), merged.end());
        // Rebuild in level order: merged block lands on min S, the surviving
        // blocks close the gaps, which is exactly the backward shift map.
        for (int v = 1; v <= nblocks; ++v) {
            if (v == S.front())
                next.push_back(merged);
            else if (!std::binary_search(S.begin(), S.end(), v))
                next.push_back(std::move(levels[static_cast<std::size_t>(v - 1)]));
        }
        levels = std::move(next);
        step.after = Partition(levels);
        out.steps.push_back(std::move(step));
    }
    out.validate();
    return out;
}

namespace {

struct TracedBlock {
    std::int64_t level;
    std::vector<int> members;
};

} // namespace

PartitionPath trace_ancestry_oracle(const LookdownRun& run, int k, double T) {
    if (run.mode != LookdownMode::Oracle)
        throw std::invalid_argument("trace_ancestry_oracle: needs an oracle-mode run");
    if (!(T <= run.horizon))
        throw std::invalid_argument("trace_ancestry_oracle: T beyond the simulated horizon");
    if (run.min_alive < k)
        throw std::invalid_argument("trace_ancestry_oracle: population dipped below k");

    PartitionPath out;
    out.horizon = T;
    out.initial = Partition::all_singletons(k);

    std::vector<TracedBlock> blocks;
    for (int i = 1; i <= k; ++i) blocks.push_back({i, {i}});

    const double horizon_model = T * run.r_K;
    for (auto it = run.events.rbegin(); it != run.events.rend(); ++it) {
        if (it->t_model > horizon_model) continue;
        if (blocks.size() == 1) break;
        if (!it->is_birth) continue; // deaths drop the top level, above every lineage
        const auto& J = it->levels;
        const std::int64_t min_j = J.front();

        std::vector<TracedBlock> next;
        next.reserve(blocks.size());
        std::vector<int> merged_members, merged_indices;
        for (std::size_t idx = 0; idx < blocks.size(); ++idx) {
            const std::int64_t v = blocks[idx].level;
            if (std::binary_search(J.begin(), J.end(), v)) {
                merged_indices.push_back(static_cast<int>(idx));
                merged_members.insert(merged_members.end(), blocks[idx].members.begin(),
                                      blocks[idx].members.end());
                if (merged_indices.size() == 1) next.push_back({min_j, {}});
            } else {
                std::int64_t shift = 0;
                for (std::size_t i = 1; i < J.size() && J[i] < v; ++i) ++shift;
                next.push_back({v - shift, std::move(blocks[idx].members)});
            }
        }
        if (!merged_indices.empty()) {
            std::sort(merged_members.begin(), merged_members.end());
            for (auto& blk : next)
                if (blk.members.empty()) blk.members = std::move(merged_members);
        }
        for (std::size_t i = 1; i < next.size(); ++i) assert(next[i - 1].level < next[i].level);
        blocks = std::move(next);

        if (merged_indices.size() >= 2) {
            PartitionPath::Step step;
            step.time = T - it->t_model / run.r_K;
            step.merged_blocks = std::move(merged_indices);
            std::vector<std::vector<int>> parts;
            for (const auto& blk : blocks) parts.push_back(blk.members);
            step.after = Partition(std::move(parts));
            out.steps.push_back(std::move(step));
        }
    }
    out.validate();
    return out;
}

std::vector<CensoredTime> pair_coalescence_times(const std::vector<PartitionPath>& paths) {
    std::vector<CensoredTime> out;
    out.reserve(paths.size());
    for (const auto& p : paths) {
        if (p.initial.num_elements() != 2)
            throw std::invalid_argument("pair_coalescence_times: paths must start from two lineages");
        if (p.steps.empty())
            out.push_back({p.horizon, true});
        else
            out.push_back({p.steps.front().time, false});
    }
    return out;
}

} // namespace coalhaus
