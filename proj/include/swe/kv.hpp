#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swe {

// Parser for the `key = value` text grammar shared by phantom specs, run
// configs and manifests. One assignment per line, `#` starts a comment,
// blank lines ignored. Keys may contain dotted prefixes (tracker.alpha).
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::filesystem::path& path);
    static KeyValueFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    // Throw ConfigError naming key and line when absent or malformed.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // All keys, in file order.
    const std::vector<std::string>& keys() const { return order_; }
    const std::string& origin() const { return origin_; }

    // Line number a key was defined on (for error messages).
    std::size_t line_of(const std::string& key) const;

private:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };
    std::string origin_;
    std::map<std::string, Entry> entries_;
    std::vector<std::string> order_;

    const Entry& require(const std::string& key) const;
};

// Serialization helper used by manifests and spec echoes.
class KeyValueWriter {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    void set_comment(const std::string& text);
    void write(const std::filesystem::path& path) const;
    std::string str() const;

private:
    std::vector<std::string> lines_;
};

}  // namespace swe
