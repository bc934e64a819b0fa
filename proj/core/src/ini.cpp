#include "ini.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "coglab/error.hpp"

namespace coglab::detail {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

IniDoc IniDoc::parse(const std::string& text) {
    IniDoc doc;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty section name");
            }
            if (!doc.sections_.count(section)) doc.section_order_.push_back(section);
            doc.sections_[section];  // make present even if empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (section.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": key outside any [section]");
        }
        doc.sections_[section].emplace_back(key, value);
    }
    return doc;
}

bool IniDoc::has(const std::string& section, const std::string& key) const {
    return get(section, key).has_value();
}

std::optional<std::string> IniDoc::get(const std::string& section,
                                       const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return std::nullopt;
    std::optional<std::string> out;
    for (const auto& [k, v] : it->second) {
        if (k == key) out = v;  // last write wins
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> IniDoc::section_items(
    const std::string& section) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return {};
    return it->second;
}

double IniDoc::to_double(const std::string& value, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError(where + ": not a number: '" + value + "'");
    }
    return v;
}

double IniDoc::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    return to_double(*v, "[" + section + "] " + key);
}

bool IniDoc::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
    const auto v = get(section, key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), ::tolower);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError("[" + section + "] " + key + ": not a boolean: '" + *v + "'");
}

std::string IniDoc::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return get(section, key).value_or(fallback);
}

std::vector<std::string> IniDoc::split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> IniDoc::get_doubles(const std::string& section,
                                        const std::string& key) const {
    const auto v = get(section, key);
    if (!v) return {};
    std::vector<double> out;
    for (const auto& item : split_list(*v)) {
        out.push_back(to_double(item, "[" + section + "] " + key));
    }
    return out;
}

std::vector<std::string> IniDoc::get_strings(const std::string& section,
                                             const std::string& key) const {
    const auto v = get(section, key);
    if (!v) return {};
    return split_list(*v);
}

}  // namespace coglab::detail
