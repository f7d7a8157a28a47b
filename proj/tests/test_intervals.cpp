#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "vmbt/intervals.hpp"

using namespace vmbt;
using namespace vmbt::testing;

TEST_CASE("union length of nothing is zero") {
    CHECK(interval_union_length({}) == 0);
    CHECK(total_length({}) == 0);
}

TEST_CASE("single interval: span equals length") {
    CHECK(interval_union_length({Interval{0, 10}}) == 10);
}

TEST_CASE("union merges overlap and keeps gaps") {
    const std::vector<Interval> intervals = {{0, 10}, {5, 20}, {30, 40}};
    // merged: [0,20) + [30,40) = 30, cross-checked tick by tick
    CHECK(bitmap_union_length(intervals) == 30);
    CHECK(interval_union_length(intervals) == 30);
}

TEST_CASE("total length sums individual lengths") {
    const std::vector<Interval> intervals = {{0, 10}, {5, 20}};
    CHECK(total_length(intervals) == 25);
}

TEST_CASE("total length is permutation invariant") {
    TestRng rng(11);
    std::vector<Interval> intervals;
    for (int i = 0; i < 8; ++i) {
        const TimePoint s = rng.range(0, 50);
        intervals.push_back({s, s + rng.range(1, 20)});
    }
    const Duration reference = total_length(intervals);
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        for (std::size_t i = intervals.size(); i > 1; --i) {
            std::swap(intervals[i - 1], intervals[rng.range(0, static_cast<std::int64_t>(i) - 1)]);
        }
        CHECK(total_length(intervals) == reference);
    }
}

TEST_CASE("merge output is sorted, disjoint and adjacent-free") {
    TestRng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Interval> intervals;
        const int count = static_cast<int>(rng.range(0, 12));
        for (int i = 0; i < count; ++i) {
            const TimePoint s = rng.range(0, 100);
            intervals.push_back({s, s + rng.range(1, 30)});
        }
        const std::vector<Interval> merged = merge_intervals(intervals);
        for (std::size_t i = 0; i < merged.size(); ++i) {
            CHECK(merged[i].finish > merged[i].start);
            // strict gap: touching intervals must have been merged
            if (i > 0) CHECK(merged[i].start > merged[i - 1].finish);
        }
        CHECK(interval_union_length(intervals) == bitmap_union_length(intervals));
    }
}

TEST_CASE("adjacent half-open intervals merge into one") {
    const std::vector<Interval> merged = merge_intervals({{0, 5}, {5, 9}});
    REQUIRE(merged.size() == 1);
    CHECK(merged[0] == Interval{0, 9});
}

TEST_CASE("union <= total, equal iff pairwise disjoint") {
    TestRng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Interval> intervals;
        const int count = static_cast<int>(rng.range(1, 10));
        for (int i = 0; i < count; ++i) {
            const TimePoint s = rng.range(0, 9000);
            intervals.push_back({s, s + rng.range(1, 900)});
        }
        const Duration span = interval_union_length(intervals);
        const Duration len = total_length(intervals);
        CHECK(span <= len);
        CHECK(span == bitmap_union_length(intervals));

        bool disjoint = true;
        for (std::size_t i = 0; i < intervals.size() && disjoint; ++i) {
            for (std::size_t j = i + 1; j < intervals.size() && disjoint; ++j) {
                if (intervals[i].overlaps(intervals[j])) disjoint = false;
            }
        }
        CHECK((span == len) == disjoint);
    }
}

TEST_CASE("uncovered_length against the per-tick oracle") {
    TestRng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Interval> base;
        const int count = static_cast<int>(rng.range(0, 6));
        for (int i = 0; i < count; ++i) {
            const TimePoint s = rng.range(0, 80);
            base.push_back({s, s + rng.range(1, 25)});
        }
        const std::vector<Interval> merged = merge_intervals(base);
        const TimePoint s = rng.range(0, 80);
        const Interval extra{s, s + rng.range(1, 25)};

        Duration expected = 0;
        for (TimePoint t = extra.start; t < extra.finish; ++t) {
            bool covered = false;
            for (const Interval& iv : merged) {
                if (iv.contains(t)) covered = true;
            }
            if (!covered) ++expected;
        }
        CHECK(uncovered_length(merged, extra) == expected);
    }
}

TEST_CASE("make_interval validates") {
    CHECK_THROWS_AS(make_interval(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(make_interval(7, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_interval(-1, 3), std::invalid_argument);
    CHECK(make_interval(0, 1) == Interval{0, 1});
}
