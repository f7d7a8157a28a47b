#include "vmbt/swf.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vmbt/instance_json.hpp"

namespace vmbt {

SwfParseError::SwfParseError(std::size_t line, const std::string& what)
    : std::runtime_error("swf line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

// SWF numeric field: integer or real (some archives store seconds with a
// decimal point). Whole seconds are kept exactly.
std::int64_t parse_field(std::string_view token, std::size_t line, std::size_t field) {
    std::int64_t value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc() && ptr == end) return value;

    double real = 0.0;
    auto [rptr, rec] = std::from_chars(begin, end, real);
    if (rec == std::errc() && rptr == end && std::isfinite(real)) {
        return static_cast<std::int64_t>(std::llround(real));
    }
    throw SwfParseError(line, "field " + std::to_string(field) + " is not a number: '" +
                                  std::string(token) + "'");
}

}  // namespace

SwfParseResult parse_swf(std::istream& input) {
    SwfParseResult result;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string_view> tokens;

    while (std::getline(input, line)) {
        ++line_no;
        std::string_view view(line);
        // strip trailing CR from CRLF traces
        if (!view.empty() && view.back() == '\r') view.remove_suffix(1);

        std::size_t pos = view.find_first_not_of(" \t");
        if (pos == std::string_view::npos) continue;
        if (view[pos] == ';') continue;  // header comment

        tokens.clear();
        while (pos != std::string_view::npos) {
            std::size_t end = view.find_first_of(" \t", pos);
            tokens.push_back(view.substr(pos, end == std::string_view::npos ? end : end - pos));
            pos = view.find_first_not_of(" \t", end);
        }
        if (tokens.size() < 8) {
            throw SwfParseError(line_no, "expected at least 8 fields, got " +
                                             std::to_string(tokens.size()));
        }
        result.stats.job_lines++;

        SwfJob job;
        job.id = parse_field(tokens[0], line_no, 1);
        job.submit = parse_field(tokens[1], line_no, 2);
        job.wait = parse_field(tokens[2], line_no, 3);
        job.run_time = parse_field(tokens[3], line_no, 4);
        job.processors = parse_field(tokens[4], line_no, 5);
        if (job.processors == -1) {
            job.processors = parse_field(tokens[7], line_no, 8);  // requested processors
        }

        if (job.run_time <= 0) {
            result.stats.dropped_nonpositive_runtime++;
            continue;
        }
        if (job.processors <= 0) {
            result.stats.dropped_nonpositive_processors++;
            continue;
        }
        if (job.submit < 0 || job.wait < 0) {
            result.stats.dropped_unknown_start++;
            continue;
        }
        result.jobs.push_back(job);
    }
    return result;
}

SwfParseResult parse_swf_file(const std::filesystem::path& path) {
    std::ifstream input(path);
    if (!input) throw IoError("cannot open swf trace: " + path.string());
    return parse_swf(input);
}

std::string swf_to_string(std::span<const SwfJob> jobs) {
    std::ostringstream out;
    out << "; generated trace (" << jobs.size() << " jobs)\n";
    for (const SwfJob& job : jobs) {
        out << job.id << ' ' << job.submit << ' ' << job.wait << ' ' << job.run_time << ' '
            << job.processors << " -1 -1 " << job.processors << " -1 -1 -1 -1 -1 -1 -1 -1 -1 -1\n";
    }
    return out.str();
}

const VmTypeCatalog& VmTypeCatalog::standard() {
    // {cores, total mips, ram MB, netbw Mbit/s, storage in 0.1 GB}
    // The last flavor's 211.25 GB rounds down to 2112 tenths.
    static const VmTypeCatalog catalog{{
        {8, 20000, 6800, 100, 10000},
        {2, 5000, 1700, 100, 4225},
        {8, 26000, 68400, 100, 10000},
        {4, 13000, 34200, 100, 8450},
        {2, 6500, 17100, 100, 4225},
        {4, 8000, 15000, 100, 16900},
        {2, 4000, 7500, 100, 8450},
        {1, 1000, 1875, 100, 2112},
    }};
    return catalog;
}

HostConfig default_host(HostId id) {
    return HostConfig{id, ResourceVector{16, 52000, 140084, 10000, 100000}, 175, 250};
}

std::int64_t ConversionResult::total_cores() const {
    std::int64_t sum = 0;
    for (const VmRequest& vm : vms) sum += vm.demand.cores;
    return sum;
}

ConversionResult jobs_to_vms(std::span<const SwfJob> jobs, const VmTypeCatalog& catalog,
                             const ResourceVector& capacity) {
    if (catalog.types.empty()) throw std::invalid_argument("empty VM type catalog");

    ConversionResult result;
    result.type_histogram.assign(catalog.types.size(), 0);
    std::int64_t counter = 0;  // global round-robin counter, one VM per processor
    for (const SwfJob& job : jobs) {
        const Interval interval{job.start(), job.start() + job.run_time};
        for (std::int64_t p = 0; p < job.processors; ++p, ++counter) {
            const std::size_t type = static_cast<std::size_t>(counter) % catalog.types.size();
            const ResourceVector& demand = catalog.types[type];
            if (!demand.fits_within(capacity)) {
                result.rejected++;
                continue;
            }
            result.type_histogram[type]++;
            result.vms.push_back(VmRequest{counter, interval, demand});
        }
    }
    return result;
}

}  // namespace vmbt
