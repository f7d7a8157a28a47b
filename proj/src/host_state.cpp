#include "vmbt/host_state.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vmbt/intervals.hpp"

namespace vmbt {

bool HostState::can_place(const VmRequest& vm) const {
    if (!vm.demand.fits_within(config_.capacity)) return false;
    if (deltas_.empty()) return true;

    // Accumulate the load active at vm.start, then walk the event points
    // strictly inside the vm's interval. The load is constant between
    // events, so these checks cover every instant of [start, finish).
    ResourceVector load;
    auto it = deltas_.begin();
    while (it != deltas_.end() && it->first <= vm.interval.start) {
        load += it->second;
        ++it;
    }
    while (true) {
        if (!(load + vm.demand).fits_within(config_.capacity)) return false;
        if (it == deltas_.end() || it->first >= vm.interval.finish) return true;
        load += it->second;
        ++it;
    }
}

void HostState::add(const VmRequest& vm) {
    for (const VmRequest& existing : assigned_) {
        if (existing.id == vm.id) {
            throw std::logic_error("vm " + std::to_string(vm.id) +
                                   " already assigned to host " + std::to_string(config_.id));
        }
    }
    if (!can_place(vm)) {
        throw std::logic_error("infeasible placement of vm " + std::to_string(vm.id) +
                               " on host " + std::to_string(config_.id));
    }

    auto apply = [this](TimePoint t, const ResourceVector& delta, bool negate) {
        auto [it, inserted] = deltas_.try_emplace(t);
        if (negate)
            it->second -= delta;
        else
            it->second += delta;
        if (it->second.is_zero()) deltas_.erase(it);
    };
    apply(vm.interval.start, vm.demand, false);
    apply(vm.interval.finish, vm.demand, true);

    busy_ += uncovered_length(busy_union_, vm.interval);
    // insert-merge into the sorted disjoint union
    auto pos = std::lower_bound(
        busy_union_.begin(), busy_union_.end(), vm.interval,
        [](const Interval& a, const Interval& b) { return a.start < b.start; });
    pos = busy_union_.insert(pos, vm.interval);
    if (pos != busy_union_.begin() && std::prev(pos)->finish >= pos->start) {
        auto prev = std::prev(pos);
        prev->finish = std::max(prev->finish, pos->finish);
        pos = busy_union_.erase(pos);
        --pos;
    }
    while (std::next(pos) != busy_union_.end() && std::next(pos)->start <= pos->finish) {
        pos->finish = std::max(pos->finish, std::next(pos)->finish);
        busy_union_.erase(std::next(pos));
    }

    aggregate_ += vm.demand;
    assigned_.push_back(vm);
}

void HostState::remove(VmId id) {
    auto it = std::find_if(assigned_.begin(), assigned_.end(),
                           [id](const VmRequest& vm) { return vm.id == id; });
    if (it == assigned_.end()) {
        throw std::logic_error("vm " + std::to_string(id) + " not assigned to host " +
                               std::to_string(config_.id));
    }
    const VmRequest vm = *it;
    assigned_.erase(it);

    auto apply = [this](TimePoint t, const ResourceVector& delta, bool negate) {
        auto pos = deltas_.try_emplace(t).first;
        if (negate)
            pos->second -= delta;
        else
            pos->second += delta;
        if (pos->second.is_zero()) deltas_.erase(pos);
    };
    apply(vm.interval.start, vm.demand, true);
    apply(vm.interval.finish, vm.demand, false);

    aggregate_ -= vm.demand;
    rebuild_busy_union();
}

void HostState::rebuild_busy_union() {
    std::vector<Interval> intervals;
    intervals.reserve(assigned_.size());
    for (const VmRequest& vm : assigned_) intervals.push_back(vm.interval);
    busy_union_ = merge_intervals(std::move(intervals));
    busy_ = 0;
    for (const Interval& iv : busy_union_) busy_ += iv.length();
}

Duration HostState::busy_time_with(const Interval& extra) const {
    return busy_ + uncovered_length(busy_union_, extra);
}

ResourceVector HostState::demand_at(TimePoint t) const {
    ResourceVector load;
    for (auto it = deltas_.begin(); it != deltas_.end() && it->first <= t; ++it) {
        load += it->second;
    }
    return load;
}

ResourceVector HostState::peak_demand_over(const Interval& window) const {
    ResourceVector load;
    auto it = deltas_.begin();
    while (it != deltas_.end() && it->first <= window.start) {
        load += it->second;
        ++it;
    }
    ResourceVector peak = load;
    while (it != deltas_.end() && it->first < window.finish) {
        load += it->second;
        peak = componentwise_max(peak, load);
        ++it;
    }
    return peak;
}

}  // namespace vmbt
