#pragma once

#include <span>
#include <vector>

#include "vmbt/types.hpp"

namespace vmbt {

/// Sum of individual interval lengths (intervals may overlap).
Duration total_length(std::span<const Interval> intervals);

/// Length of the union of the intervals (their span), via sort-and-merge.
Duration interval_union_length(std::vector<Interval> intervals);

/// Sorted, pairwise-disjoint union of the input intervals.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);

/// Length of the part of `extra` not already covered by `merged`,
/// where `merged` is sorted and pairwise disjoint.
Duration uncovered_length(std::span<const Interval> merged, const Interval& extra);

}  // namespace vmbt
