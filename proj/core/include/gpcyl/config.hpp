#pragma once

/// key=value configuration files with '#' comments.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gpcyl {

class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    /// Comma-separated list of numbers.
    std::vector<double> get_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace gpcyl
