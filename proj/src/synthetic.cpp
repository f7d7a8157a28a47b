#include "vmbt/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace vmbt {

namespace {

// Values are derived from raw engine output with fixed arithmetic rather
// than std::*_distribution, so one seed reproduces the same instance on
// every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double unit() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {  // inclusive
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % range);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

std::vector<SwfJob> generate_jobs(const GeneratorConfig& config) {
    if (config.min_duration < 1) {
        throw std::invalid_argument("min_duration must be at least 1 tick");
    }
    if (config.max_duration < config.min_duration) {
        throw std::invalid_argument("max_duration must be >= min_duration");
    }
    if (config.mean_interarrival < 0) {
        throw std::invalid_argument("mean_interarrival must be non-negative");
    }
    if (config.max_processor_exponent < 0 || config.max_processor_exponent > 20) {
        throw std::invalid_argument("max_processor_exponent must be in [0, 20]");
    }
    if (config.power_of_two_bias < 0.0 || config.power_of_two_bias > 1.0) {
        throw std::invalid_argument("power_of_two_bias must be in [0, 1]");
    }

    Rng rng(config.seed);
    std::vector<SwfJob> jobs;
    jobs.reserve(config.job_count);

    const double log_min = std::log(static_cast<double>(config.min_duration));
    const double log_max = std::log(static_cast<double>(config.max_duration));
    const std::int64_t max_processors = std::int64_t{1} << config.max_processor_exponent;

    TimePoint arrival = 0;
    for (std::size_t i = 0; i < config.job_count; ++i) {
        SwfJob job;
        job.id = static_cast<std::int64_t>(i) + 1;
        job.submit = arrival;
        job.wait = 0;

        const double log_duration = log_min + rng.unit() * (log_max - log_min);
        job.run_time = std::clamp<std::int64_t>(std::llround(std::exp(log_duration)),
                                                config.min_duration, config.max_duration);

        if (rng.unit() < config.power_of_two_bias) {
            job.processors = std::int64_t{1}
                             << rng.uniform(0, config.max_processor_exponent);
        } else {
            job.processors = rng.uniform(1, max_processors);
        }
        jobs.push_back(job);

        if (config.mean_interarrival > 0) {
            const double gap =
                -static_cast<double>(config.mean_interarrival) * std::log1p(-rng.unit());
            arrival += std::max<std::int64_t>(std::llround(gap), 0);
        }
    }
    return jobs;
}

std::vector<VmRequest> generate_synthetic(const GeneratorConfig& config,
                                          const VmTypeCatalog& catalog) {
    const std::vector<SwfJob> jobs = generate_jobs(config);
    return jobs_to_vms(jobs, catalog).vms;
}

}  // namespace vmbt
