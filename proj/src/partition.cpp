#include "coalhaus/partition.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coalhaus {

Partition::Partition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
    canonicalize();
    std::set<int> seen;
    int max_e = 0;
    for (const auto& b : blocks_) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        for (int e : b) {
            if (e < 1) throw std::invalid_argument("partition: elements start at 1");
            if (!seen.insert(e).second)
                throw std::invalid_argument("partition: duplicate element");
            max_e = std::max(max_e, e);
        }
    }
    if (static_cast<int>(seen.size()) != max_e)
        throw std::invalid_argument("partition: elements must cover 1..k");
    n_elements_ = max_e;
}

Partition Partition::all_singletons(int k) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(k));
    for (int e = 1; e <= k; ++e) blocks.push_back({e});
    return Partition(std::move(blocks));
}

Partition Partition::parse(const std::string& text) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> cur;
    int value = -1;
    auto flush_value = [&] {
        if (value >= 0) { cur.push_back(value); value = -1; }
    };
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            value = (value < 0 ? 0 : value * 10) + (ch - '0');
        } else if (ch == ',') {
            flush_value();
        } else if (ch == '|') {
            flush_value();
            blocks.push_back(std::move(cur));
            cur.clear();
        } else if (ch != ' ') {
            throw std::invalid_argument("partition: bad character in text form");
        }
    }
    flush_value();
    blocks.push_back(std::move(cur));
    return Partition(std::move(blocks));
}

void Partition::canonicalize() {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

void Partition::merge_blocks(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    if (indices.size() < 2)
        throw std::invalid_argument("partition: merge needs at least two blocks");
    if (indices.front() < 0 || indices.back() >= num_blocks())
        throw std::invalid_argument("partition: merge index out of range");
    auto& target = blocks_[static_cast<std::size_t>(indices.front())];
    for (std::size_t i = indices.size(); i-- > 1;) {
        auto& src = blocks_[static_cast<std::size_t>(indices[i])];
        target.insert(target.end(), src.begin(), src.end());
        blocks_.erase(blocks_.begin() + indices[i]);
    }
    canonicalize();
}

int Partition::block_of(int e) const {
    for (int i = 0; i < num_blocks(); ++i)
        for (int x : blocks_[static_cast<std::size_t>(i)])
            if (x == e) return i;
    throw std::invalid_argument("partition: element not present");
}

Partition Partition::restrict_to(int m) const {
    std::vector<std::vector<int>> out;
    for (const auto& b : blocks_) {
        std::vector<int> kept;
        for (int e : b)
            if (e <= m) kept.push_back(e);
        if (!kept.empty()) out.push_back(std::move(kept));
    }
    return Partition(std::move(out));
}

std::string Partition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += '|';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j) s += ',';
            s += std::to_string(blocks_[i][j]);
        }
    }
    return s;
}

const Partition& PartitionPath::at(double t) const {
    const Partition* cur = &initial;
    for (const auto& st : steps) {
        if (st.time <= t) cur = &st.after;
        else break;
    }
    return *cur;
}

std::vector<int> PartitionPath::merger_sizes() const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const auto& st : steps)
        out.push_back(static_cast<int>(st.merged_blocks.size()));
    return out;
}

void PartitionPath::validate() const {
    double prev = 0.0;
    int blocks = initial.num_blocks();
    for (const auto& st : steps) {
        if (!(st.time > prev))
            throw std::invalid_argument("partition path: times must strictly increase");
        if (st.time > horizon)
            throw std::invalid_argument("partition path: step beyond horizon");
        const int m = static_cast<int>(st.merged_blocks.size());
        if (m < 2) throw std::invalid_argument("partition path: step must merge blocks");
        if (st.after.num_blocks() != blocks - (m - 1))
            throw std::invalid_argument("partition path: block count mismatch");
        blocks = st.after.num_blocks();
        prev = st.time;
    }
}

bool PartitionPath::operator==(const PartitionPath& other) const {
    if (horizon != other.horizon || !(initial == other.initial) ||
        steps.size() != other.steps.size())
        return false;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].time != other.steps[i].time) return false;
        if (steps[i].merged_blocks != other.steps[i].merged_blocks) return false;
        if (!(steps[i].after == other.steps[i].after)) return false;
    }
    return true;
}

} // namespace coalhaus
