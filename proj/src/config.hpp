#pragma once

#include "symbol.hpp"

#include <map>
#include <string>
#include <vector>

namespace kdvlab {

/// Plain-text key-value config with [section] headers, '#' comments and
/// repeatable keys. Grammar:
///
///   command = inflate        # top-level keys before any section
///   spec = kdvks             # builtin name, or inline [symbol] section
///   [symbol]
///   p = 4
///   term = 1,0,2             # c,i,j — repeatable
///   [inflate]
///   s = -2.5
///   N = 100,200,400,800
class Config {
public:
    static Config parse_text(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    /// Single value; throws std::runtime_error naming the key when missing
    /// or duplicated.
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key, double fallback) const;
    long get_long_or(const std::string& section, const std::string& key, long fallback) const;
    /// Comma-separated list of reals.
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;

    /// The symbol spec: builtin `spec = name` or an inline [symbol] section.
    SymbolSpec symbol_spec() const;

    std::string echo() const { return source_; }

private:
    // section -> ordered (key, value) pairs
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
    std::string source_;
};

} // namespace kdvlab
