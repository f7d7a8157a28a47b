#pragma once

#include <map>
#include <vector>

#include "vmbt/types.hpp"

namespace vmbt {

/// Mutable placement state of one physical machine: the assigned VMs, their
/// merged busy intervals, and the piecewise-constant demand profile.
///
/// The capacity invariant (at every time point the componentwise sum of
/// active demands fits within capacity) is enforced by add(). Single-writer
/// during schedule construction; independent HostStates share nothing.
class HostState {
public:
    HostState() = default;
    explicit HostState(HostConfig config) : config_(std::move(config)) {}

    const HostConfig& config() const { return config_; }
    const std::vector<VmRequest>& assigned() const { return assigned_; }
    bool empty() const { return assigned_.empty(); }
    std::size_t vm_count() const { return assigned_.size(); }

    /// True iff adding `vm` keeps the demand sum within capacity at every
    /// event point of its interval. Demands are piecewise constant between
    /// event points, so checking event points suffices.
    bool can_place(const VmRequest& vm) const;

    /// Adds the VM; throws std::logic_error if the placement is infeasible
    /// or the id is already assigned.
    void add(const VmRequest& vm);

    /// Removes an assigned VM (used by the exhaustive oracle when
    /// backtracking); throws std::logic_error if absent.
    void remove(VmId id);

    /// Total busy time: span of the union of assigned intervals.
    Duration busy_time() const { return busy_; }

    /// Busy time if `extra` were also covered (no mutation).
    Duration busy_time_with(const Interval& extra) const;

    /// Sorted, disjoint union of assigned intervals.
    const std::vector<Interval>& busy_intervals() const { return busy_union_; }

    /// Time-agnostic sum of all assigned demands (can exceed capacity when
    /// assignments do not overlap in time).
    const ResourceVector& aggregate_demand() const { return aggregate_; }

    /// Componentwise demand of VMs active at time t.
    ResourceVector demand_at(TimePoint t) const;

    /// Componentwise peak of the active demand over [window.start,
    /// window.finish).
    ResourceVector peak_demand_over(const Interval& window) const;

    /// Demand change at each event time; prefix sums give the active load.
    const std::map<TimePoint, ResourceVector>& demand_deltas() const { return deltas_; }

private:
    void rebuild_busy_union();

    HostConfig config_;
    std::vector<VmRequest> assigned_;
    std::map<TimePoint, ResourceVector> deltas_;
    std::vector<Interval> busy_union_;
    Duration busy_ = 0;
    ResourceVector aggregate_;
};

/// Span of the union of the host's assigned VM intervals.
inline Duration host_busy_time(const HostState& host) { return host.busy_time(); }

}  // namespace vmbt
