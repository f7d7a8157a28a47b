#pragma once

#include <filesystem>
#include <string>

#include "vmbt/types.hpp"

namespace vmbt {

/// Malformed or semantically invalid instance/spec JSON.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical interchange schema:
///   {"vms":  [{"id", "start", "duration",
///              "demand": {"cores","mips","ram","netbw","storage"}}],
///    "hosts": [{"id", "capacity": {...}, "p_idle", "p_max"}]}
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& instance);

Instance load_instance_json(const std::filesystem::path& path);
void save_instance_json(const Instance& instance, const std::filesystem::path& path);

}  // namespace vmbt
