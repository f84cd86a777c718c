#include "qnmlab/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qnmlab/errors.hpp"

namespace qnmlab {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
    for (size_t i = 0; i < line.size(); ++i)
        if (line[i] == '#' || line[i] == ';') return line.substr(0, i);
    return line;
}

double parse_double(const std::string& where, const std::string& raw) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end)
        throw ConfigError(where + ": not a number: '" + raw + "'");
    return v;
}

int parse_int(const std::string& where, const std::string& raw) {
    const std::string s = trim(raw);
    int v = 0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end)
        throw ConfigError(where + ": not an integer: '" + raw + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    if (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        const std::string where =
            origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError(where + ": empty section name");
            cfg.sections_[section]; // a section may legitimately be empty
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        if (section.empty())
            throw ConfigError(where + ": key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(where + ": empty key");
        auto& sec = cfg.sections_[section];
        if (sec.count(key))
            throw ConfigError(where + ": duplicate key '" + key + "' in [" +
                              section + "]");
        sec[key] = Entry{value};
    }
    return cfg;
}

bool Config::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

bool Config::has_key(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

const Config::Entry* Config::find(const std::string& section,
                                  const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
}

const Config::Entry& Config::require(const std::string& section,
                                     const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e)
        throw ConfigError(origin_ + ": missing key '" + key + "' in [" +
                          section + "]");
    e->used = true;
    return *e;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
    return require(section, key).value;
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
    return parse_double("[" + section + "] " + key,
                        require(section, key).value);
}

int Config::get_int(const std::string& section, const std::string& key) const {
    return parse_int("[" + section + "] " + key, require(section, key).value);
}

std::string Config::get_string(const std::string& section,
                               const std::string& key,
                               const std::string& fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->used = true;
    return e->value;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->used = true;
    return parse_double("[" + section + "] " + key, e->value);
}

int Config::get_int(const std::string& section, const std::string& key,
                    int fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    e->used = true;
    return parse_int("[" + section + "] " + key, e->value);
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) const {
    const std::string where = "[" + section + "] " + key;
    std::vector<double> out;
    for (const std::string& item : split_list(require(section, key).value))
        out.push_back(parse_double(where, item));
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

std::vector<int> Config::get_int_list(const std::string& section,
                                      const std::string& key) const {
    const std::string where = "[" + section + "] " + key;
    std::vector<int> out;
    for (const std::string& item : split_list(require(section, key).value))
        out.push_back(parse_int(where, item));
    if (out.empty()) throw ConfigError(where + ": empty list");
    return out;
}

Material Config::material(const std::string& name) const {
    const std::string section = "material." + name;
    if (!has_section(section))
        throw ConfigError(origin_ + ": missing section [" + section + "]");
    const std::string model = get_string(section, "model");
    if (model == "nondispersive") {
        const double re = get_double(section, "eps_re");
        const double im = get_double(section, "eps_im", 0.0);
        return Material::nondispersive(cplx(re, im));
    }
    if (model == "drude") {
        return Material::drude(get_double(section, "eps_inf"),
                               get_double(section, "omega_p_rad_per_s"),
                               get_double(section, "gamma_rad_per_s"));
    }
    if (model == "lorentz") {
        return Material::lorentz(get_double(section, "eps_inf"),
                                 get_double(section, "omega_p_rad_per_s"),
                                 get_double(section, "omega_0_rad_per_s"),
                                 get_double(section, "gamma_rad_per_s"));
    }
    throw ConfigError("[" + section + "] model: unknown model '" + model +
                      "' (expected nondispersive, drude or lorentz)");
}

void Config::reject_unknown() const {
    std::string stray;
    for (const auto& [sname, sec] : sections_)
        for (const auto& [key, entry] : sec)
            if (!entry.used) {
                if (!stray.empty()) stray += ", ";
                stray += "[" + sname + "] " + key;
            }
    if (!stray.empty())
        throw ConfigError(origin_ + ": unknown keys: " + stray);
}

std::map<std::string, std::map<std::string, std::string>> Config::echo() const {
    std::map<std::string, std::map<std::string, std::string>> out;
    for (const auto& [sname, sec] : sections_)
        for (const auto& [key, entry] : sec) out[sname][key] = entry.value;
    return out;
}

} // namespace qnmlab
