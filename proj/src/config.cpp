#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdvlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_text(const std::string& text) {
    Config cfg;
    cfg.source_ = text;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error("config: malformed section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key at line " + std::to_string(lineno));
        cfg.sections_[section].emplace_back(key, value);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_text(ss.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end()) return false;
    for (const auto& kv : it->second)
        if (kv.first == key) return true;
    return false;
}

std::vector<std::string> Config::get_all(const std::string& section, const std::string& key) const {
    std::vector<std::string> out;
    const auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& kv : it->second)
        if (kv.first == key) out.push_back(kv.second);
    return out;
}

std::string Config::get(const std::string& section, const std::string& key) const {
    const auto all = get_all(section, key);
    const std::string where = section.empty() ? key : section + "." + key;
    if (all.empty()) throw std::runtime_error("config: missing key '" + where + "'");
    if (all.size() > 1) throw std::runtime_error("config: duplicated key '" + where + "'");
    return all.front();
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw std::runtime_error("config: key '" + key + "' is not a number: " + v);
    return d;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long_or(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? static_cast<long>(get_double(section, key)) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    const std::string v = get(section, key);
    std::vector<double> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double d = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw std::runtime_error("config: key '" + key + "' has a non-numeric entry: " + item);
        out.push_back(d);
    }
    if (out.empty()) throw std::runtime_error("config: key '" + key + "' has no entries");
    return out;
}

SymbolSpec Config::symbol_spec() const {
    if (has("", "spec")) {
        const std::string name = get("", "spec");
        if (!is_builtin_spec(name))
            throw std::runtime_error("config: key 'spec' must name a builtin (kdvb, ost, kdvks): " + name);
        SymbolSpec s = builtin_spec(name);
        if (has("symbol", "eta")) s.eta = get_double("symbol", "eta");
        s.validate();
        return s;
    }
    if (sections_.count("symbol") == 0)
        throw std::runtime_error("config: need 'spec = <builtin>' or a [symbol] section");
    SymbolSpec s;
    s.p = get_double("symbol", "p");
    s.eta = get_double_or("symbol", "eta", 1.0);
    s.q_bound = get_double_or("symbol", "q_bound", 0.0);
    for (const auto& t : get_all("symbol", "term")) {
        std::istringstream ss(t);
        std::string c, i, j;
        if (!std::getline(ss, c, ',') || !std::getline(ss, i, ',') || !std::getline(ss, j, ','))
            throw std::runtime_error("config: symbol.term must be 'c,i,j': " + t);
        s.phi1_terms.push_back({std::strtod(c.c_str(), nullptr),
                                static_cast<unsigned>(std::strtoul(i.c_str(), nullptr, 10)),
                                static_cast<unsigned>(std::strtoul(j.c_str(), nullptr, 10))});
    }
    s.validate();
    return s;
}

} // namespace kdvlab
