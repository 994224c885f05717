#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sievelab/errors.hpp"

namespace sievelab {

/// Flat `key = value` configuration with bracketed section headers. Lines
/// starting with '#' and blank lines are ignored. No nesting; values are
/// free-form strings interpreted by typed getters.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;

    /// Inserts or replaces one entry. `spec` has the form section.key=value;
    /// used for command-line overrides.
    void set(const std::string& spec);

    std::string str(const std::string& section, const std::string& key) const;
    std::string str_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;

    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double fallback) const;

    uint64_t integer(const std::string& section, const std::string& key) const;
    uint64_t integer_or(const std::string& section, const std::string& key,
                        uint64_t fallback) const;

    /// Whitespace-separated list of numbers.
    std::vector<double> number_list(const std::string& section, const std::string& key) const;

    /// Deterministic one-line serialization (sections and keys sorted) used
    /// for the run-metadata comment. Sections in `exclude` are omitted.
    std::string canonical(const std::set<std::string>& exclude = {}) const;

private:
    // section -> key -> value, kept ordered for canonical output.
    std::map<std::string, std::map<std::string, std::string>> data_;
};

} // namespace sievelab
