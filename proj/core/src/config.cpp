#include "seekgen/config.hpp"

#include <fstream>
#include <sstream>

#include "seekgen/errors.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return from_string(buf.str(), dir);
}

ConfigFile ConfigFile::from_string(const std::string& body, const std::filesystem::path& base_dir) {
    ConfigFile cfg;
    cfg.base_dir_ = base_dir;
    std::istringstream in(body);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = text::trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + " has no '='");
        std::string key = text::trim(s.substr(0, eq));
        std::string value = text::trim(s.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
        if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                                  (value.front() == '\'' && value.back() == '\''))) {
            value = value.substr(1, value.size() - 2);
        }
        cfg.values_[key] = value;
    }
    return cfg;
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ConfigFile::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

long ConfigFile::get_int(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an integer: " + it->second);
    }
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: " + it->second);
    }
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = text::to_lower_ascii(it->second);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "' is not a boolean: " + it->second);
}

std::vector<std::string> ConfigFile::get_list(const std::string& key,
                                              const std::vector<std::string>& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<std::string> out;
    for (auto& part : text::split(it->second, ',')) {
        std::string p = text::trim(part);
        if (!p.empty()) out.push_back(p);
    }
    return out;
}

std::filesystem::path ConfigFile::get_path(const std::string& key,
                                           const std::filesystem::path& fallback) const {
    auto it = values_.find(key);
    std::filesystem::path p = it == values_.end() ? fallback : std::filesystem::path(it->second);
    if (p.empty() || p.is_absolute()) return p;
    return base_dir_ / p;
}

void ConfigFile::set(const std::string& key, const std::string& value) { values_[key] = value; }

}  // namespace seekgen
