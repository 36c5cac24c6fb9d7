#ifndef ODB_CONFIG_HPP
#define ODB_CONFIG_HPP

// Flat key=value settings, run manifests and CSV output.
//
// Settings resolve as defaults < config file < command-line flags.  A
// manifest is itself a config file: its bookkeeping keys live under the
// "manifest." prefix and are skipped when it is loaded back.

#include "odb/error.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace odb {

inline constexpr const char* kToolkitVersion = "0.3.0";
inline constexpr std::string_view kManifestPrefix = "manifest.";

inline std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

/// Shortest text that parses back to the same double.
inline std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    if (t == "inf")
        return INFINITY;
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
    return v;
}

inline std::int64_t parse_int(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    std::int64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError("'" + key + "' expects an integer, got '" + text + "'");
    return v;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError("'" + key + "' expects a nonnegative integer, got '" + text + "'");
    return v;
}

inline bool parse_bool(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError("'" + key + "' expects true or false, got '" + text + "'");
}

inline std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline std::vector<double> parse_double_list(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split(text, ','))
        out.push_back(parse_double(key, item));
    return out;
}

/// Ordered key=value settings.  Keys keep their declaration order so the
/// serialized form is stable.
class Settings {
public:
    void declare(const std::string& key, const std::string& default_value)
    {
        if (!index_.contains(key)) {
            index_[key] = entries_.size();
            entries_.emplace_back(key, default_value);
        } else {
            entries_[index_[key]].second = default_value;
        }
    }

    bool has(const std::string& key) const { return index_.contains(key); }

    void set(const std::string& key, const std::string& value)
    {
        const auto it = index_.find(key);
        if (it == index_.end())
            throw ConfigError("unknown setting '" + key + "'");
        entries_[it->second].second = value;
    }

    const std::string& get(const std::string& key) const
    {
        const auto it = index_.find(key);
        if (it == index_.end())
            throw ConfigError("missing setting '" + key + "'");
        return entries_[it->second].second;
    }

    double number(const std::string& key) const { return parse_double(key, get(key)); }
    std::int64_t integer(const std::string& key) const { return parse_int(key, get(key)); }
    std::uint64_t unsigned_integer(const std::string& key) const { return parse_uint(key, get(key)); }
    bool flag(const std::string& key) const { return parse_bool(key, get(key)); }
    std::vector<double> numbers(const std::string& key) const { return parse_double_list(key, get(key)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    /// Applies key=value lines; '#' starts a comment, "manifest." keys are skipped.
    void merge_text(const std::string& text, const std::string& origin = "config")
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            if (key.starts_with(kManifestPrefix))
                continue;
            const auto it = index_.find(key);
            if (it == index_.end())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown setting '" + key + "'");
            entries_[it->second].second = trim(std::string_view(line).substr(eq + 1));
        }
    }

    void merge_file(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot read config file " + path.string());
        std::ostringstream text;
        text << in.rdbuf();
        merge_text(text.str(), path.string());
    }

    std::string to_text() const
    {
        std::string out;
        for (const auto& [k, v] : entries_)
            out += k + "=" + v + "\n";
        return out;
    }

    friend bool operator==(const Settings& a, const Settings& b) { return a.entries_ == b.entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::size_t> index_;
};

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted and quotes doubled.
inline std::string csv_field(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row)
    {
        if (row.size() != header_.size())
            throw DomainError("CSV row has " + std::to_string(row.size()) + " fields, header has " + std::to_string(header_.size()));
        rows_.push_back(std::move(row));
    }

    std::size_t size() const { return rows_.size(); }

    std::string to_text() const
    {
        std::string out;
        auto line = [&out](const std::vector<std::string>& fields) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i)
                    out += ',';
                out += csv_field(fields[i]);
            }
            out += '\n';
        };
        line(header_);
        for (const auto& r : rows_)
            line(r);
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot write " + path.string());
    out << text;
    if (!out)
        throw ConfigError("write failed for " + path.string());
}

/// Manifest of one run: resolved settings plus bookkeeping.  Written with
/// status=running before any output exists and rewritten when the run ends.
class RunManifest {
public:
    RunManifest(std::string subcommand, Settings settings, std::filesystem::path path)
        : subcommand_(std::move(subcommand)), settings_(std::move(settings)), path_(std::move(path))
    {
    }

    const std::filesystem::path& path() const { return path_; }
    const std::vector<std::string>& outputs() const { return outputs_; }

    void begin() { write("running", 0.0); }

    /// Writes a CSV and records it.
    void emit(const std::filesystem::path& file, const CsvTable& table)
    {
        write_text_file(file, table.to_text());
        outputs_.push_back(file.filename().string());
    }

    void finish(const std::string& status, double wall_seconds) { write(status, wall_seconds); }

    std::string to_text(const std::string& status, double wall_seconds) const
    {
        std::string out;
        out += "manifest.subcommand=" + subcommand_ + "\n";
        out += "manifest.version=" + std::string(kToolkitVersion) + "\n";
        out += "manifest.status=" + status + "\n";
        out += "manifest.wall_seconds=" + format_double(wall_seconds) + "\n";
        for (std::size_t i = 0; i < outputs_.size(); ++i)
            out += "manifest.output." + std::to_string(i) + "=" + outputs_[i] + "\n";
        out += settings_.to_text();
        return out;
    }

private:
    void write(const std::string& status, double wall_seconds) { write_text_file(path_, to_text(status, wall_seconds)); }

    std::string subcommand_;
    Settings settings_;
    std::filesystem::path path_;
    std::vector<std::string> outputs_;
};

} // namespace odb

#endif // ODB_CONFIG_HPP
