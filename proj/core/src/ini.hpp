#pragma once
// Tiny INI-style reader used for the model configuration file: [section]
// headers, key = value lines, '#' comments, last write wins.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coglab::detail {

class IniDoc {
public:
    static IniDoc parse(const std::string& text);  // throws ConfigError

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::vector<std::pair<std::string, std::string>> section_items(
        const std::string& section) const;  // in file order
    const std::vector<std::string>& section_names() const { return section_order_; }

    // Typed accessors throw ConfigError on malformed values.
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
    std::vector<std::string> get_strings(const std::string& section,
                                         const std::string& key) const;

    static std::vector<std::string> split_list(const std::string& value);
    static double to_double(const std::string& value, const std::string& where);

private:
    // section -> ordered (key, value)
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
    std::vector<std::string> section_order_;
};

}  // namespace coglab::detail
