#pragma once

#include <cstdint>
#include <vector>

#include "vmbt/swf.hpp"
#include "vmbt/types.hpp"

namespace vmbt {

/// Seeded synthetic workload: stationary arrivals, log-uniform durations,
/// processor counts biased toward powers of two. Same seed and config
/// always produce the identical instance.
struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::size_t job_count = 0;
    Duration mean_interarrival = 60;  // ticks between job arrivals
    Duration min_duration = 600;      // log-uniform duration range
    Duration max_duration = 86400;
    int max_processor_exponent = 5;   // processors drawn from [1, 2^max]
    double power_of_two_bias = 0.75;  // probability of an exact power of two

    friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

/// Throws std::invalid_argument when the distribution parameters are
/// inconsistent (e.g. max_duration < min_duration).
std::vector<SwfJob> generate_jobs(const GeneratorConfig& config);

/// generate_jobs followed by round-robin VM conversion.
std::vector<VmRequest> generate_synthetic(const GeneratorConfig& config,
                                          const VmTypeCatalog& catalog = VmTypeCatalog::standard());

}  // namespace vmbt
