#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <utility>
#include <vector>

#include "vmbt/host_state.hpp"
#include "vmbt/schedule.hpp"
#include "vmbt/types.hpp"

namespace vmbt {

/// Exact energy amount in watt-ticks (watt-seconds). CPU utilizations are
/// rationals, so energies are kept as exact rationals end to end; kWh is a
/// display conversion only.
using Energy = boost::multiprecision::cpp_rational;

double to_double(const Energy& e);
double to_kwh(const Energy& watt_ticks);

/// Linear power model: P(u) = (alpha + (1 - alpha) * u) * p_max with
/// alpha = p_idle / p_max, i.e. P(0) = p_idle and P(1) = p_max.
struct PowerModel {
    std::int64_t p_idle = 0;
    std::int64_t p_max = 0;

    double alpha() const { return static_cast<double>(p_idle) / static_cast<double>(p_max); }

    /// Instantaneous power in watts at CPU utilization u, exactly:
    /// p_idle + (p_max - p_idle) * u.
    Energy power_at(const Energy& utilization) const {
        return Energy(p_idle) + Energy(p_max - p_idle) * utilization;
    }
};

/// Per-host base (ON) energy plus per-VM increments. total is the exact sum
/// of the two decompositions.
struct EnergyReport {
    std::vector<std::pair<HostId, Energy>> per_host_base;
    std::vector<std::pair<VmId, Energy>> per_vm_increment;
    Energy total = 0;
    bool heterogeneous_hosts = false;

    Energy sum_base() const;
    Energy sum_increments() const;
    double total_kwh() const { return to_kwh(total); }
};

/// CPU utilization of the host at time t: active MIPS demand over total
/// host MIPS. In [0, 1] for feasible states.
double host_utilization(const HostState& host, TimePoint t);
Energy host_utilization_exact(const HostState& host, TimePoint t);

/// Energy attributable to running the VM on a host of this kind:
/// (p_max - p_idle) * (vm MIPS / host MIPS) * duration.
Energy vm_energy(const VmRequest& vm, const HostConfig& host);

/// Closed-form host energy: p_idle * busy_time + sum of vm_energy over the
/// assigned VMs. Equals the integral of the power model over the host's
/// busy intervals.
Energy host_energy(const HostState& host);

/// Energy of the whole schedule, decomposed per host and per VM.
/// Hosts with differing capacity or power parameters are accounted per host
/// and flagged heterogeneous.
EnergyReport schedule_energy(const Instance& instance, const Schedule& schedule);

struct EnergyBounds {
    Energy lower = 0;
    Energy upper = 0;
};

/// Bounds on the energy of an optimal schedule: p_idle * len / g below,
/// p_max * len above. Uses the fleet minimum p_idle / maximum p_max so the
/// bounds stay valid for heterogeneous fleets.
EnergyBounds optimal_energy_bounds(const Instance& instance);

}  // namespace vmbt
