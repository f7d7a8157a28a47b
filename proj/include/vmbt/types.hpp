#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace vmbt {

// Trace time is integer ticks (1 tick = 1 second). All interval and
// busy-time arithmetic is exact.
using TimePoint = std::int64_t;
using Duration = std::int64_t;
using VmId = std::int64_t;
using HostId = std::int64_t;

/// Half-open time interval [start, finish), finish > start.
struct Interval {
    TimePoint start = 0;
    TimePoint finish = 0;

    Duration length() const { return finish - start; }
    bool contains(TimePoint t) const { return t >= start && t < finish; }
    bool overlaps(const Interval& other) const {
        return start < other.finish && other.start < finish;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Validating constructor; throws std::invalid_argument unless
/// 0 <= start < finish.
Interval make_interval(TimePoint start, TimePoint finish);

/// d-dimensional demand/capacity vector. Componentwise addition and <=
/// comparison; all components are non-negative integers.
///
/// Units: mips is the total MIPS across all requested cores, ram is MB,
/// netbw is Mbit/s, storage is tenths of a GB (so catalog entries like
/// 422.5 GB stay integral).
struct ResourceVector {
    std::int64_t cores = 0;
    std::int64_t mips = 0;
    std::int64_t ram = 0;
    std::int64_t netbw = 0;
    std::int64_t storage = 0;

    static constexpr std::size_t kDimensions = 5;

    std::int64_t operator[](std::size_t dim) const {
        switch (dim) {
            case 0: return cores;
            case 1: return mips;
            case 2: return ram;
            case 3: return netbw;
            case 4: return storage;
        }
        throw std::out_of_range("ResourceVector index out of range");
    }

    ResourceVector& operator+=(const ResourceVector& rhs) {
        cores += rhs.cores;
        mips += rhs.mips;
        ram += rhs.ram;
        netbw += rhs.netbw;
        storage += rhs.storage;
        return *this;
    }

    ResourceVector& operator-=(const ResourceVector& rhs) {
        cores -= rhs.cores;
        mips -= rhs.mips;
        ram -= rhs.ram;
        netbw -= rhs.netbw;
        storage -= rhs.storage;
        return *this;
    }

    friend ResourceVector operator+(ResourceVector lhs, const ResourceVector& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend ResourceVector operator-(ResourceVector lhs, const ResourceVector& rhs) {
        lhs -= rhs;
        return lhs;
    }

    /// Componentwise <=.
    bool fits_within(const ResourceVector& capacity) const {
        return cores <= capacity.cores && mips <= capacity.mips && ram <= capacity.ram &&
               netbw <= capacity.netbw && storage <= capacity.storage;
    }

    bool is_zero() const {
        return cores == 0 && mips == 0 && ram == 0 && netbw == 0 && storage == 0;
    }

    bool non_negative() const {
        return cores >= 0 && mips >= 0 && ram >= 0 && netbw >= 0 && storage >= 0;
    }

    friend bool operator==(const ResourceVector&, const ResourceVector&) = default;
};

constexpr std::array<std::string_view, ResourceVector::kDimensions> kResourceNames = {
    "cores", "mips", "ram", "netbw", "storage"};

ResourceVector componentwise_max(const ResourceVector& a, const ResourceVector& b);
ResourceVector componentwise_min(const ResourceVector& a, const ResourceVector& b);

/// A virtual machine request: a fixed, non-preemptible interval plus a
/// multi-resource demand.
struct VmRequest {
    VmId id = 0;
    Interval interval;
    ResourceVector demand;

    Duration duration() const { return interval.length(); }

    friend bool operator==(const VmRequest&, const VmRequest&) = default;
};

/// Static description of a physical machine: capacity plus the two
/// anchor points of the linear power model (watts at 0% and 100% CPU).
struct HostConfig {
    HostId id = 0;
    ResourceVector capacity;
    std::int64_t p_idle = 0;
    std::int64_t p_max = 0;

    /// Idle fraction of peak power, in (0, 1] for a valid config.
    double alpha() const { return static_cast<double>(p_idle) / static_cast<double>(p_max); }

    /// True when capacity and power parameters match (id ignored).
    bool same_kind(const HostConfig& other) const {
        return capacity == other.capacity && p_idle == other.p_idle && p_max == other.p_max;
    }
};

/// A full scheduling problem: the VMs to place and the host fleet.
struct Instance {
    std::vector<VmRequest> vms;
    std::vector<HostConfig> hosts;
};

/// Throws std::invalid_argument if the instance violates structural
/// invariants: non-positive durations, negative demands/capacities,
/// duplicate ids, or power parameters outside 0 < p_idle <= p_max.
void check_instance(const Instance& instance);

}  // namespace vmbt
