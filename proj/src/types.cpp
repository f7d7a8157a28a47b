#include "vmbt/types.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

namespace vmbt {

ResourceVector componentwise_max(const ResourceVector& a, const ResourceVector& b) {
    return ResourceVector{std::max(a.cores, b.cores), std::max(a.mips, b.mips),
                          std::max(a.ram, b.ram), std::max(a.netbw, b.netbw),
                          std::max(a.storage, b.storage)};
}

ResourceVector componentwise_min(const ResourceVector& a, const ResourceVector& b) {
    return ResourceVector{std::min(a.cores, b.cores), std::min(a.mips, b.mips),
                          std::min(a.ram, b.ram), std::min(a.netbw, b.netbw),
                          std::min(a.storage, b.storage)};
}

void check_instance(const Instance& instance) {
    std::unordered_set<VmId> vm_ids;
    for (const VmRequest& vm : instance.vms) {
        if (vm.interval.start < 0 || vm.interval.finish <= vm.interval.start) {
            throw std::invalid_argument("vm " + std::to_string(vm.id) +
                                        " has an invalid interval");
        }
        if (!vm.demand.non_negative()) {
            throw std::invalid_argument("vm " + std::to_string(vm.id) +
                                        " has a negative demand component");
        }
        if (!vm_ids.insert(vm.id).second) {
            throw std::invalid_argument("duplicate vm id " + std::to_string(vm.id));
        }
    }
    std::unordered_set<HostId> host_ids;
    for (const HostConfig& host : instance.hosts) {
        if (!host.capacity.non_negative()) {
            throw std::invalid_argument("host " + std::to_string(host.id) +
                                        " has a negative capacity component");
        }
        if (host.p_idle <= 0 || host.p_max < host.p_idle) {
            throw std::invalid_argument("host " + std::to_string(host.id) +
                                        " requires 0 < p_idle <= p_max");
        }
        if (!host_ids.insert(host.id).second) {
            throw std::invalid_argument("duplicate host id " + std::to_string(host.id));
        }
    }
}

}  // namespace vmbt
