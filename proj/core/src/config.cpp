#include "sievelab/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sievelab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& section, const std::string& key,
                    const std::string& text) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error("[" + section + "] " + key + ": '" + text + "' is not a number");
    }
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw config_error("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw config_error("line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw config_error("line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw config_error("line " + std::to_string(lineno) + ": key outside any [section]");
        auto& sect = cfg.data_[section];
        if (sect.count(key))
            throw config_error("line " + std::to_string(lineno) + ": duplicate key '" + key +
                               "' in [" + section + "]");
        sect[key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) > 0;
}

void Config::set(const std::string& spec) {
    const size_t dot = spec.find('.');
    const size_t eq = spec.find('=', dot == std::string::npos ? 0 : dot);
    if (dot == std::string::npos || eq == std::string::npos || dot == 0 || eq <= dot + 1)
        throw config_error("override '" + spec + "' must look like section.key=value");
    data_[trim(spec.substr(0, dot))][trim(spec.substr(dot + 1, eq - dot - 1))] =
        trim(spec.substr(eq + 1));
}

std::string Config::str(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    if (it == data_.end() || !it->second.count(key))
        throw config_error("missing required key '" + key + "' in [" + section + "]");
    return it->second.at(key);
}

std::string Config::str_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? str(section, key) : fallback;
}

double Config::number(const std::string& section, const std::string& key) const {
    return parse_number(section, key, str(section, key));
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

uint64_t Config::integer(const std::string& section, const std::string& key) const {
    const double v = number(section, key);
    if (v < 0 || v != std::floor(v) || v > 1.8e19)
        throw config_error("[" + section + "] " + key + ": expected a nonnegative integer");
    return static_cast<uint64_t>(v);
}

uint64_t Config::integer_or(const std::string& section, const std::string& key,
                            uint64_t fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
}

std::vector<double> Config::number_list(const std::string& section, const std::string& key) const {
    std::istringstream in(str(section, key));
    std::vector<double> out;
    std::string token;
    while (in >> token) out.push_back(parse_number(section, key, token));
    if (out.empty())
        throw config_error("[" + section + "] " + key + ": expected at least one number");
    return out;
}

std::string Config::canonical(const std::set<std::string>& exclude) const {
    std::string out;
    for (const auto& [section, entries] : data_) {
        if (exclude.count(section)) continue;
        out += "[" + section + "]";
        for (const auto& [key, value] : entries) out += " " + key + "=" + value;
        out += " ";
    }
    if (!out.empty()) out.pop_back();
    return out;
}

} // namespace sievelab
