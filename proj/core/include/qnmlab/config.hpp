#pragma once

#include <map>
#include <string>
#include <vector>

#include "qnmlab/materials.hpp"

namespace qnmlab {

// Flat INI-style experiment configuration. Sections are [name] headers,
// entries are key = value lines; '#' and ';' start comments; blank lines
// are skipped. Keys carrying a physical quantity spell the unit in the
// key name (radius_nm, omega_rad_per_s, thickness_um, ...); conversion to
// SI happens at the point of use.
//
// Every getter marks the key consumed. After an experiment has read its
// parameters it calls reject_unknown(), which throws ConfigError naming
// any key that was never asked for. Typos therefore fail loudly instead
// of silently falling back to a default.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text,
                             const std::string& origin = "<string>");

    bool has_section(const std::string& section) const;
    bool has_key(const std::string& section, const std::string& key) const;

    // Required lookups; missing section/key or a malformed value throws
    // ConfigError.
    std::string get_string(const std::string& section,
                           const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key) const;

    // Optional lookups with a default.
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    int get_int(const std::string& section, const std::string& key,
                int fallback) const;

    // Comma-separated numeric lists.
    std::vector<double> get_double_list(const std::string& section,
                                        const std::string& key) const;
    std::vector<int> get_int_list(const std::string& section,
                                  const std::string& key) const;

    // Builds a Material from [material.<name>]. Recognized models:
    //   model = nondispersive   eps_re [, eps_im]
    //   model = drude           eps_inf, omega_p_rad_per_s, gamma_rad_per_s
    //   model = lorentz         drude keys plus omega_0_rad_per_s
    Material material(const std::string& name) const;

    // Throws ConfigError listing every key no getter ever consumed.
    void reject_unknown() const;

    // Full parsed content (section -> key -> raw value) for the manifest
    // echo. Sorted, so serialization is deterministic.
    std::map<std::string, std::map<std::string, std::string>> echo() const;

private:
    struct Entry {
        std::string value;
        mutable bool used = false;
    };
    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;

    const Entry* find(const std::string& section, const std::string& key) const;
    const Entry& require(const std::string& section,
                         const std::string& key) const;
};

} // namespace qnmlab
