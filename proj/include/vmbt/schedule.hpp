#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmbt/types.hpp"

namespace vmbt {

/// Result of a scheduler run: for each VM (by position in Instance::vms)
/// either the index of its host in Instance::hosts or kUnplaced.
struct Schedule {
    static constexpr std::int32_t kUnplaced = -1;

    std::vector<std::int32_t> host_of_vm;
    std::vector<std::size_t> unplaced;  // vm indices, ascending

    bool all_placed() const { return unplaced.empty(); }
    std::size_t placed_count() const { return host_of_vm.size() - unplaced.size(); }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Witness for a constraint violation found by the validator.
struct ScheduleIssue {
    std::string message;
    VmId vm = -1;
    HostId host = -1;
    TimePoint at = -1;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ScheduleIssue issue);
    const ScheduleIssue& issue() const { return issue_; }

private:
    ScheduleIssue issue_;
};

/// Independent re-check of the hard constraints: each placed VM maps to
/// exactly one existing host, no VM demands more than the largest host
/// capacity, and every host's event-point demand sum fits its capacity.
/// Implemented as a from-scratch event sweep, separate from
/// HostState::can_place.
std::optional<ScheduleIssue> find_schedule_issue(const Instance& instance,
                                                 const Schedule& schedule);

/// Throws ValidationError on the first issue found.
void validate_schedule(const Instance& instance, const Schedule& schedule);

/// Busy time of each host under the schedule (indexed like Instance::hosts).
std::vector<Duration> per_host_busy(const Instance& instance, const Schedule& schedule);

/// Total busy time of the schedule. Validates first, then computes the cost
/// both as the sum of per-host spans and as the event-sweep integral of the
/// number of busy hosts; throws std::logic_error if the two disagree.
Duration schedule_cost(const Instance& instance, const Schedule& schedule);

struct InstanceBounds {
    Duration len = 0;   // sum of VM interval lengths
    Duration span = 0;  // length of the union of VM intervals
    std::int64_t g = 0;  // upper bound on VMs concurrently placeable on one host
};

/// len, span, and the per-host concurrency cap g. For uniform demands g is
/// exact (floor over the binding resource); for mixed demands it is computed
/// against the componentwise minimum demand, a valid upper bound.
InstanceBounds bounds_for_instance(const Instance& instance);

}  // namespace vmbt
