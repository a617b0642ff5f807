#pragma once

#include <string>
#include <vector>

namespace coalhaus {

/** Partition of {1,...,k} in canonical form: every block sorted ascending,
 *  blocks ordered by their least element. */
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<std::vector<int>> blocks);

    static Partition all_singletons(int k);

    /** Parse "1,2|3|4". */
    static Partition parse(const std::string& text);

    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int num_elements() const { return n_elements_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    /** Merge the blocks at the given (0-based) indices into one block.
     *  Requires at least two distinct indices. */
    void merge_blocks(std::vector<int> indices);

    /** Index of the block containing element e. */
    int block_of(int e) const;

    /** Induced partition on {1,...,m}: elements above m dropped, empty
     *  blocks removed. */
    Partition restrict_to(int m) const;

    std::string to_string() const;

    bool operator==(const Partition& other) const { return blocks_ == other.blocks_; }

  private:
    void canonicalize();
    std::vector<std::vector<int>> blocks_;
    int n_elements_ = 0;
};

/** Time-ordered sequence of strict coarsenings. Used both forward in time
 *  (coalescent runs) and backward in time (genealogies extracted from event
 *  logs, where time 0 is the sampling instant). The path is right-continuous:
 *  the partition at a step time includes that step's merger. */
struct PartitionPath {
    struct Step {
        double time;
        std::vector<int> merged_blocks; // indices into the previous partition
        Partition after;
    };

    double horizon = 0.0;
    Partition initial;
    std::vector<Step> steps;

    const Partition& at(double t) const;
    int num_blocks_at(double t) const { return at(t).num_blocks(); }

    /** Sizes of the successive mergers, e.g. {2,3} for a pair merger followed
     *  by a triple merger. */
    std::vector<int> merger_sizes() const;

    /** Throws when step times are not strictly increasing within the horizon
     *  or a step fails to strictly coarsen. */
    void validate() const;

    bool operator==(const PartitionPath& other) const;
};

} // namespace coalhaus
