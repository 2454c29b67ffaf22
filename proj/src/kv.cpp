#include "swe/kv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swe/error.hpp"

namespace swe {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueFile KeyValueFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path.string());
}

KeyValueFile KeyValueFile::parse_string(const std::string& text, const std::string& origin) {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected `key = value`, got `" + line + "`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        if (kv.entries_.count(key))
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key `" + key + "`");
        kv.entries_[key] = Entry{value, line_no};
        kv.order_.push_back(key);
    }
    return kv;
}

bool KeyValueFile::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

const KeyValueFile::Entry& KeyValueFile::require(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError(origin_ + ": missing mandatory key `" + key + "`");
    return it->second;
}

std::string KeyValueFile::get_string(const std::string& key) const {
    return require(key).value;
}

double KeyValueFile::get_double(const std::string& key) const {
    const Entry& e = require(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": key `" + key +
                          "` is not a number: `" + e.value + "`");
    }
}

long long KeyValueFile::get_int(const std::string& key) const {
    const Entry& e = require(key);
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": key `" + key +
                          "` is not an integer: `" + e.value + "`");
    }
}

bool KeyValueFile::get_bool(const std::string& key) const {
    const Entry& e = require(key);
    if (e.value == "true" || e.value == "on" || e.value == "1") return true;
    if (e.value == "false" || e.value == "off" || e.value == "0") return false;
    throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": key `" + key +
                      "` is not a boolean (true/false/on/off/1/0): `" + e.value + "`");
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long long KeyValueFile::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool KeyValueFile::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::size_t KeyValueFile::line_of(const std::string& key) const {
    return require(key).line;
}

void KeyValueWriter::set(const std::string& key, const std::string& value) {
    lines_.push_back(key + " = " + value);
}

void KeyValueWriter::set(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    lines_.push_back(key + " = " + buf);
}

void KeyValueWriter::set(const std::string& key, long long value) {
    lines_.push_back(key + " = " + std::to_string(value));
}

void KeyValueWriter::set_comment(const std::string& text) {
    lines_.push_back("# " + text);
}

std::string KeyValueWriter::str() const {
    std::string out;
    for (const auto& l : lines_) {
        out += l;
        out += '\n';
    }
    return out;
}

void KeyValueWriter::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << str();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace swe
