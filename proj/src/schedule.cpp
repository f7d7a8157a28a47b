#include "vmbt/schedule.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "vmbt/intervals.hpp"

namespace vmbt {

namespace {

std::string issue_text(const ScheduleIssue& issue) {
    std::string text = issue.message;
    if (issue.vm >= 0) text += " (vm " + std::to_string(issue.vm);
    if (issue.host >= 0) text += ", host " + std::to_string(issue.host);
    if (issue.at >= 0) text += ", t=" + std::to_string(issue.at);
    if (issue.vm >= 0) text += ")";
    return text;
}

}  // namespace

ValidationError::ValidationError(ScheduleIssue issue)
    : std::runtime_error(issue_text(issue)), issue_(std::move(issue)) {}

std::optional<ScheduleIssue> find_schedule_issue(const Instance& instance,
                                                 const Schedule& schedule) {
    const std::size_t n = instance.vms.size();
    const std::size_t m = instance.hosts.size();
    if (schedule.host_of_vm.size() != n) {
        return ScheduleIssue{"schedule covers " + std::to_string(schedule.host_of_vm.size()) +
                             " vms, instance has " + std::to_string(n)};
    }

    // Constraint 2: no VM demands more than the most capable host offers.
    ResourceVector max_capacity;
    for (const HostConfig& host : instance.hosts) {
        max_capacity = componentwise_max(max_capacity, host.capacity);
    }
    for (const VmRequest& vm : instance.vms) {
        if (!vm.demand.fits_within(max_capacity)) {
            return ScheduleIssue{"vm demand exceeds every host capacity", vm.id};
        }
    }

    // Constraint 1: each VM maps to exactly one existing host, and the
    // unplaced list matches the mapping.
    std::vector<bool> listed_unplaced(n, false);
    for (std::size_t idx : schedule.unplaced) {
        if (idx >= n) return ScheduleIssue{"unplaced index out of range"};
        listed_unplaced[idx] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t h = schedule.host_of_vm[i];
        if (h == Schedule::kUnplaced) {
            if (!listed_unplaced[i]) {
                return ScheduleIssue{"vm unplaced but missing from unplaced list",
                                     instance.vms[i].id};
            }
            continue;
        }
        if (listed_unplaced[i]) {
            return ScheduleIssue{"vm listed unplaced but mapped", instance.vms[i].id};
        }
        if (h < 0 || static_cast<std::size_t>(h) >= m) {
            return ScheduleIssue{"vm mapped to nonexistent host", instance.vms[i].id};
        }
    }

    // Constraint 3: per-host event sweep, rebuilt from scratch.
    std::vector<std::map<TimePoint, ResourceVector>> deltas(m);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t h = schedule.host_of_vm[i];
        if (h == Schedule::kUnplaced) continue;
        const VmRequest& vm = instance.vms[i];
        deltas[h][vm.interval.start] += vm.demand;
        deltas[h][vm.interval.finish] -= vm.demand;
    }
    for (std::size_t h = 0; h < m; ++h) {
        ResourceVector load;
        for (const auto& [t, delta] : deltas[h]) {
            load += delta;
            if (!load.fits_within(instance.hosts[h].capacity)) {
                return ScheduleIssue{"capacity exceeded", -1, instance.hosts[h].id, t};
            }
        }
        if (!load.is_zero()) {
            return ScheduleIssue{"unbalanced event sweep", -1, instance.hosts[h].id};
        }
    }
    return std::nullopt;
}

void validate_schedule(const Instance& instance, const Schedule& schedule) {
    if (auto issue = find_schedule_issue(instance, schedule)) {
        throw ValidationError(std::move(*issue));
    }
}

std::vector<Duration> per_host_busy(const Instance& instance, const Schedule& schedule) {
    std::vector<std::vector<Interval>> per_host(instance.hosts.size());
    for (std::size_t i = 0; i < instance.vms.size(); ++i) {
        const std::int32_t h = schedule.host_of_vm[i];
        if (h != Schedule::kUnplaced) per_host[h].push_back(instance.vms[i].interval);
    }
    std::vector<Duration> busy(instance.hosts.size(), 0);
    for (std::size_t h = 0; h < per_host.size(); ++h) {
        busy[h] = interval_union_length(std::move(per_host[h]));
    }
    return busy;
}

Duration schedule_cost(const Instance& instance, const Schedule& schedule) {
    validate_schedule(instance, schedule);

    Duration by_spans = 0;
    for (Duration b : per_host_busy(instance, schedule)) by_spans += b;

    // Independent route: integrate the number of busy hosts over time. A
    // host is busy over the union of its assigned intervals, so its merged
    // busy segments feed a +1/-1 event sweep.
    std::map<TimePoint, std::int64_t> events;
    {
        std::vector<std::vector<Interval>> per_host(instance.hosts.size());
        for (std::size_t i = 0; i < instance.vms.size(); ++i) {
            const std::int32_t h = schedule.host_of_vm[i];
            if (h != Schedule::kUnplaced) per_host[h].push_back(instance.vms[i].interval);
        }
        for (auto& intervals : per_host) {
            for (const Interval& segment : merge_intervals(std::move(intervals))) {
                events[segment.start] += 1;
                events[segment.finish] -= 1;
            }
        }
    }
    Duration by_sweep = 0;
    std::int64_t busy_hosts = 0;
    TimePoint prev = 0;
    for (const auto& [t, delta] : events) {
        by_sweep += busy_hosts * (t - prev);
        busy_hosts += delta;
        prev = t;
    }

    if (by_spans != by_sweep) {
        throw std::logic_error("schedule cost mismatch: spans " + std::to_string(by_spans) +
                               " vs sweep " + std::to_string(by_sweep));
    }
    return by_spans;
}

InstanceBounds bounds_for_instance(const Instance& instance) {
    InstanceBounds bounds;
    if (instance.vms.empty()) return bounds;

    std::vector<Interval> intervals;
    intervals.reserve(instance.vms.size());
    ResourceVector min_demand = instance.vms.front().demand;
    for (const VmRequest& vm : instance.vms) {
        intervals.push_back(vm.interval);
        min_demand = componentwise_min(min_demand, vm.demand);
    }
    bounds.len = total_length(intervals);
    bounds.span = interval_union_length(std::move(intervals));

    ResourceVector max_capacity;
    for (const HostConfig& host : instance.hosts) {
        max_capacity = componentwise_max(max_capacity, host.capacity);
    }

    // Concurrency cap against the componentwise minimum demand: every VM
    // demands at least min_demand of each resource, so the binding resource
    // caps how many fit at once. Resources nobody demands do not bind.
    std::int64_t cap = static_cast<std::int64_t>(instance.vms.size());
    for (std::size_t d = 0; d < ResourceVector::kDimensions; ++d) {
        if (min_demand[d] > 0) {
            cap = std::min(cap, max_capacity[d] / min_demand[d]);
        }
    }
    bounds.g = cap;
    return bounds;
}

}  // namespace vmbt
