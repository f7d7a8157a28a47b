#include "vmbt/intervals.hpp"

#include <algorithm>

namespace vmbt {

Interval make_interval(TimePoint start, TimePoint finish) {
    if (start < 0 || finish <= start) {
        throw std::invalid_argument("interval requires 0 <= start < finish, got [" +
                                    std::to_string(start) + ", " + std::to_string(finish) + ")");
    }
    return Interval{start, finish};
}

Duration total_length(std::span<const Interval> intervals) {
    Duration sum = 0;
    for (const Interval& iv : intervals) sum += iv.length();
    return sum;
}

std::vector<Interval> merge_intervals(std::vector<Interval> intervals) {
    if (intervals.empty()) return intervals;
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        return a.start < b.start || (a.start == b.start && a.finish < b.finish);
    });
    std::vector<Interval> merged;
    merged.reserve(intervals.size());
    merged.push_back(intervals.front());
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        // half-open: an interval starting exactly at the last finish extends it
        if (intervals[i].start <= merged.back().finish) {
            merged.back().finish = std::max(merged.back().finish, intervals[i].finish);
        } else {
            merged.push_back(intervals[i]);
        }
    }
    return merged;
}

Duration interval_union_length(std::vector<Interval> intervals) {
    Duration len = 0;
    for (const Interval& iv : merge_intervals(std::move(intervals))) len += iv.length();
    return len;
}

Duration uncovered_length(std::span<const Interval> merged, const Interval& extra) {
    // merged is sorted and disjoint; subtract the covered part of extra.
    Duration covered = 0;
    auto it = std::lower_bound(merged.begin(), merged.end(), extra.start,
                               [](const Interval& iv, TimePoint t) { return iv.finish <= t; });
    for (; it != merged.end() && it->start < extra.finish; ++it) {
        const TimePoint lo = std::max(it->start, extra.start);
        const TimePoint hi = std::min(it->finish, extra.finish);
        if (hi > lo) covered += hi - lo;
    }
    return extra.length() - covered;
}

}  // namespace vmbt
