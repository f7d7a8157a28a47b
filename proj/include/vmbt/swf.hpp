#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

#include "vmbt/types.hpp"

namespace vmbt {

/// One job from a Standard Workload Format trace (the fields this library
/// consumes; the remaining SWF fields are parsed and discarded).
struct SwfJob {
    std::int64_t id = 0;
    std::int64_t submit = 0;  // seconds
    std::int64_t wait = 0;    // seconds
    std::int64_t run_time = 0;
    std::int64_t processors = 0;

    TimePoint start() const { return submit + wait; }

    friend bool operator==(const SwfJob&, const SwfJob&) = default;
};

class SwfParseError : public std::runtime_error {
public:
    SwfParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct SwfParseStats {
    std::size_t job_lines = 0;
    std::size_t dropped_nonpositive_runtime = 0;
    std::size_t dropped_nonpositive_processors = 0;
    std::size_t dropped_unknown_start = 0;

    std::size_t dropped_total() const {
        return dropped_nonpositive_runtime + dropped_nonpositive_processors +
               dropped_unknown_start;
    }
};

struct SwfParseResult {
    std::vector<SwfJob> jobs;
    SwfParseStats stats;
};

/// Parses an SWF stream: `;`-prefixed header comments, then one job per
/// line with >= 8 whitespace-separated numeric fields. Uses field 1 (id),
/// 2 (submit), 3 (wait), 4 (run time) and 5 (allocated processors, falling
/// back to field 8 when -1). Jobs with non-positive run time or processor
/// count, or with unknown start (negative submit or wait), are dropped and
/// counted. Malformed lines raise SwfParseError with the line number.
SwfParseResult parse_swf(std::istream& input);
SwfParseResult parse_swf_file(const std::filesystem::path& path);

/// Serializes jobs back to SWF lines (retained fields only; the rest -1).
std::string swf_to_string(std::span<const SwfJob> jobs);

/// The ordered list of VM flavor demand vectors used for job conversion.
struct VmTypeCatalog {
    std::vector<ResourceVector> types;

    /// The eight-flavor catalog used by the benchmark, patterned on common
    /// IaaS instance sizes. MIPS entries are totals (cores x per-core MIPS);
    /// storage is in tenths of a GB.
    static const VmTypeCatalog& standard();
};

/// The benchmark's reference host: 16 cores x 3250 MIPS, 140084 MB RAM,
/// 10 Gbit/s network, 10 TB storage, 175 W idle / 250 W peak.
HostConfig default_host(HostId id = 0);

struct ConversionResult {
    std::vector<VmRequest> vms;
    std::size_t rejected = 0;  // VMs whose demand exceeds `capacity`
    std::vector<std::size_t> type_histogram;

    std::int64_t total_cores() const;
};

/// Expands each job into one VM per processor, all sharing the interval
/// [start, start + run_time). VM k (global counter across the whole job
/// list) takes type k mod catalog-size. VMs that would violate the
/// capacity of the reference host are rejected and counted.
ConversionResult jobs_to_vms(std::span<const SwfJob> jobs,
                             const VmTypeCatalog& catalog = VmTypeCatalog::standard(),
                             const ResourceVector& capacity = default_host().capacity);

}  // namespace vmbt
