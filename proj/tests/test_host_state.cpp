#include <doctest.h>

#include "support.hpp"
#include "vmbt/host_state.hpp"

using namespace vmbt;
using namespace vmbt::testing;

namespace {

VmRequest vm_of(VmId id, TimePoint start, TimePoint finish, ResourceVector demand) {
    return VmRequest{id, Interval{start, finish}, demand};
}

}  // namespace

TEST_CASE("empty host accepts anything within capacity") {
    HostState host(small_host(0));
    CHECK(host.can_place(vm_of(1, 0, 10, host.config().capacity)));
    CHECK_FALSE(host.can_place(vm_of(1, 0, 10, ResourceVector{7, 0, 0, 0, 0})));
}

TEST_CASE("full-CPU overlap is rejected") {
    HostState host(small_host(0));
    const ResourceVector full_cpu{6, 0, 0, 0, 0};
    host.add(vm_of(1, 0, 10, full_cpu));
    CHECK_FALSE(host.can_place(vm_of(2, 5, 8, ResourceVector{1, 0, 0, 0, 0})));
    // outside the busy window it fits
    CHECK(host.can_place(vm_of(2, 10, 18, full_cpu)));
}

TEST_CASE("staggered placements fit when peak concurrency stays within capacity") {
    // 4-core host, three 2-core VMs on [0,10), [10,20), [5,15): max two concurrent
    HostConfig config{0, ResourceVector{4, 10000, 8192, 600, 500}, 175, 250};
    HostState host(config);
    const ResourceVector two_cores{2, 100, 100, 10, 10};
    host.add(vm_of(1, 0, 10, two_cores));
    host.add(vm_of(2, 10, 20, two_cores));
    const VmRequest third = vm_of(3, 5, 15, two_cores);
    CHECK(bitmap_can_place(config.capacity, host.assigned(), third));
    CHECK(host.can_place(third));
    host.add(third);
    CHECK(host.busy_time() == 20);
}

TEST_CASE("can_place agrees with the per-tick oracle on random states") {
    TestRng rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        HostState host(small_host(0));
        const ResourceVector cap = host.config().capacity;
        const int attempts = static_cast<int>(rng.range(0, 8));
        VmId next_id = 0;
        for (int i = 0; i < attempts; ++i) {
            const TimePoint s = rng.range(0, 60);
            const VmRequest vm = vm_of(next_id++, s, s + rng.range(1, 30),
                                       ResourceVector{rng.range(0, cap.cores),
                                                      rng.range(0, cap.mips),
                                                      rng.range(0, cap.ram),
                                                      rng.range(0, cap.netbw),
                                                      rng.range(0, cap.storage)});
            if (host.can_place(vm)) host.add(vm);
        }
        const TimePoint s = rng.range(0, 60);
        const VmRequest probe = vm_of(next_id, s, s + rng.range(1, 30),
                                      ResourceVector{rng.range(0, cap.cores + 1),
                                                     rng.range(0, cap.mips),
                                                     rng.range(0, cap.ram),
                                                     rng.range(0, cap.netbw),
                                                     rng.range(0, cap.storage)});
        CHECK(host.can_place(probe) == bitmap_can_place(cap, host.assigned(), probe));
    }
}

TEST_CASE("can_place is monotone in demand") {
    TestRng rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        HostState host(small_host(0));
        const ResourceVector cap = host.config().capacity;
        for (int i = 0; i < 4; ++i) {
            const TimePoint s = rng.range(0, 40);
            const VmRequest vm = vm_of(i, s, s + rng.range(1, 20),
                                       ResourceVector{rng.range(0, cap.cores), 0, 0, 0, 0});
            if (host.can_place(vm)) host.add(vm);
        }
        const TimePoint s = rng.range(0, 40);
        const Interval window{s, s + rng.range(1, 20)};
        const ResourceVector demand{rng.range(0, cap.cores), rng.range(0, cap.mips), 0, 0, 0};
        const VmRequest vm{100, window, demand};
        if (!host.can_place(vm)) {
            ResourceVector bigger = demand;
            bigger.cores += rng.range(0, 2);
            bigger.ram += rng.range(0, 100);
            CHECK_FALSE(host.can_place(VmRequest{101, window, bigger}));
        }
    }
}

TEST_CASE("busy time merges overlapping and sums disjoint intervals") {
    HostState host(small_host(0));
    CHECK(host.busy_time() == 0);
    const ResourceVector one{1, 100, 10, 1, 1};
    host.add(vm_of(1, 0, 10, one));
    host.add(vm_of(2, 5, 20, one));
    CHECK(host.busy_time() == 20);

    HostState disjoint(small_host(1));
    disjoint.add(vm_of(1, 0, 10, one));
    disjoint.add(vm_of(2, 20, 30, one));
    CHECK(disjoint.busy_time() == 20);
}

TEST_CASE("busy_time_with previews the union without mutating") {
    HostState host(small_host(0));
    const ResourceVector one{1, 100, 10, 1, 1};
    host.add(vm_of(1, 10, 20, one));
    CHECK(host.busy_time_with(Interval{15, 30}) == 20);
    CHECK(host.busy_time_with(Interval{0, 5}) == 15);
    CHECK(host.busy_time_with(Interval{12, 18}) == 10);
    CHECK(host.busy_time() == 10);
}

TEST_CASE("add enforces the capacity invariant and id uniqueness") {
    HostState host(small_host(0));
    const ResourceVector full{6, 0, 0, 0, 0};
    host.add(vm_of(1, 0, 10, full));
    CHECK_THROWS_AS(host.add(vm_of(2, 5, 8, full)), std::logic_error);
    CHECK_THROWS_AS(host.add(vm_of(1, 50, 60, full)), std::logic_error);
}

TEST_CASE("remove rolls state back exactly") {
    TestRng rng(303);
    for (int trial = 0; trial < 100; ++trial) {
        HostState host(small_host(0));
        const ResourceVector cap = host.config().capacity;
        std::vector<VmRequest> added;
        for (int i = 0; i < 6; ++i) {
            const TimePoint s = rng.range(0, 40);
            const VmRequest vm = vm_of(i, s, s + rng.range(1, 20),
                                       ResourceVector{rng.range(0, 2), rng.range(0, 3000),
                                                      rng.range(0, 2000), 0, 0});
            if (host.can_place(vm)) {
                host.add(vm);
                added.push_back(vm);
            }
        }
        if (added.empty()) continue;
        const std::size_t victim = static_cast<std::size_t>(
            rng.range(0, static_cast<std::int64_t>(added.size()) - 1));
        host.remove(added[victim].id);

        HostState fresh(small_host(0));
        for (std::size_t i = 0; i < added.size(); ++i) {
            if (i != victim) fresh.add(added[i]);
        }
        CHECK(host.busy_time() == fresh.busy_time());
        CHECK(host.busy_intervals() == fresh.busy_intervals());
        CHECK(host.aggregate_demand() == fresh.aggregate_demand());
        CHECK(host.demand_deltas() == fresh.demand_deltas());
    }
    HostState host(small_host(0));
    CHECK_THROWS_AS(host.remove(42), std::logic_error);
}

TEST_CASE("demand_at and peak_demand_over match per-tick recomputation") {
    TestRng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        HostState host(small_host(0));
        const ResourceVector cap = host.config().capacity;
        for (int i = 0; i < 5; ++i) {
            const TimePoint s = rng.range(0, 30);
            const VmRequest vm = vm_of(i, s, s + rng.range(1, 15),
                                       ResourceVector{rng.range(0, 2), rng.range(0, 2000),
                                                      rng.range(0, 1000), rng.range(0, 50),
                                                      rng.range(0, 50)});
            if (host.can_place(vm)) host.add(vm);
        }
        const TimePoint probe = rng.range(0, 50);
        ResourceVector expected;
        for (const VmRequest& vm : host.assigned()) {
            if (vm.interval.contains(probe)) expected += vm.demand;
        }
        CHECK(host.demand_at(probe) == expected);

        const TimePoint ws = rng.range(0, 40);
        const Interval window{ws, ws + rng.range(1, 15)};
        ResourceVector peak;
        for (TimePoint t = window.start; t < window.finish; ++t) {
            ResourceVector load;
            for (const VmRequest& vm : host.assigned()) {
                if (vm.interval.contains(t)) load += vm.demand;
            }
            peak = componentwise_max(peak, load);
        }
        CHECK(host.peak_demand_over(window) == peak);
    }
}

TEST_CASE("zero-demand VMs still occupy busy time") {
    HostState host(small_host(0));
    host.add(vm_of(1, 0, 100, ResourceVector{}));
    CHECK(host.busy_time() == 100);
    CHECK(host.can_place(vm_of(2, 0, 100, host.config().capacity)));
}
