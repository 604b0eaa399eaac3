#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace seekgen {

/// Line-oriented `key = value` configuration. '#' starts a comment, keys are
/// dotted (e.g. "clean.min_rows"), later assignments win.
class ConfigFile {
public:
    ConfigFile() = default;

    static ConfigFile load(const std::filesystem::path& path);
    static ConfigFile from_string(const std::string& body,
                                  const std::filesystem::path& base_dir = ".");

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::vector<std::string>& fallback) const;

    /// Resolves a value as a path relative to the config file's directory.
    std::filesystem::path get_path(const std::string& key,
                                   const std::filesystem::path& fallback) const;

    void set(const std::string& key, const std::string& value);
    const std::filesystem::path& base_dir() const { return base_dir_; }

private:
    std::map<std::string, std::string> values_;
    std::filesystem::path base_dir_ = ".";
};

}  // namespace seekgen
