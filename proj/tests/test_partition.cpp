#include "doctest.h"

#include "coalhaus/partition.hpp"

#include <stdexcept>
#include <vector>

using namespace coalhaus;

TEST_CASE("parse and to_string round trip in canonical form") {
    const auto p = Partition::parse("1,2|3|4");
    CHECK(p.num_blocks() == 3);
    CHECK(p.num_elements() == 4);
    CHECK(p.to_string() == "1,2|3|4");

    // Non-canonical input is normalized: blocks sorted by least element,
    // elements sorted within blocks.
    const auto q = Partition::parse("4|3,1|2");
    CHECK(q.to_string() == "1,3|2|4");
    CHECK(Partition::parse("1,3|2|4") == q);
}

TEST_CASE("all_singletons") {
    const auto p = Partition::all_singletons(4);
    CHECK(p.num_blocks() == 4);
    CHECK(p.to_string() == "1|2|3|4");
    for (int e = 1; e <= 4; ++e) CHECK(p.block_of(e) == e - 1);
}

TEST_CASE("merge_blocks coarsens and re-canonicalizes") {
    auto p = Partition::all_singletons(5);
    p.merge_blocks({1, 3});
    CHECK(p.to_string() == "1|2,4|3|5");
    CHECK(p.block_of(4) == 1);
    CHECK(p.block_of(3) == 2);

    p.merge_blocks({0, 1, 3});
    CHECK(p.to_string() == "1,2,4,5|3");
    CHECK(p.num_blocks() == 2);
}

TEST_CASE("restrict_to drops high elements and empty blocks") {
    const auto p = Partition::parse("1,4|2|3,5");
    CHECK(p.restrict_to(3).to_string() == "1|2|3");
    CHECK(p.restrict_to(4).to_string() == "1,4|2|3");
    CHECK(p.restrict_to(5) == p);
}

TEST_CASE("partition path queries") {
    PartitionPath path;
    path.horizon = 2.0;
    path.initial = Partition::all_singletons(3);

    PartitionPath::Step s1;
    s1.time = 0.5;
    s1.merged_blocks = {0, 1};
    s1.after = Partition::parse("1,2|3");
    path.steps.push_back(s1);

    PartitionPath::Step s2;
    s2.time = 1.25;
    s2.merged_blocks = {0, 1};
    s2.after = Partition::parse("1,2,3");
    path.steps.push_back(s2);

    path.validate();

    CHECK(path.at(0.0) == path.initial);
    CHECK(path.at(0.49) == path.initial);
    // Right-continuity: the partition at a step time includes the merger.
    CHECK(path.at(0.5).to_string() == "1,2|3");
    CHECK(path.at(1.25).num_blocks() == 1);
    CHECK(path.num_blocks_at(2.0) == 1);
    CHECK(path.merger_sizes() == std::vector<int>{2, 2});
}

TEST_CASE("partition path validation rejects bad step sequences") {
    PartitionPath path;
    path.horizon = 1.0;
    path.initial = Partition::all_singletons(2);

    PartitionPath::Step s;
    s.time = 0.3;
    s.merged_blocks = {0, 1};
    s.after = Partition::parse("1,2");
    path.steps.push_back(s);
    path.validate();

    // Duplicate step time.
    auto bad = path;
    PartitionPath::Step dup = s;
    dup.after = Partition::parse("1,2");
    bad.steps.push_back(dup);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // Step beyond the horizon.
    auto late = path;
    late.steps[0].time = 1.5;
    CHECK_THROWS_AS(late.validate(), std::invalid_argument);

    // Non-coarsening step: same number of blocks before and after.
    auto flat = path;
    flat.steps[0].after = Partition::parse("1|2");
    CHECK_THROWS_AS(flat.validate(), std::invalid_argument);
}

TEST_CASE("partition path equality compares times and partitions") {
    PartitionPath a;
    a.horizon = 1.0;
    a.initial = Partition::all_singletons(2);
    auto b = a;
    CHECK(a == b);

    PartitionPath::Step s;
    s.time = 0.2;
    s.merged_blocks = {0, 1};
    s.after = Partition::parse("1,2");
    a.steps.push_back(s);
    CHECK_FALSE(a == b);
    b.steps.push_back(s);
    CHECK(a == b);
}
