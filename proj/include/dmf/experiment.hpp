#pragma once
// Output formatting shared by the command line tools: a CSV document with a
// comment-prefixed metadata header, and a wall clock timer.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "util.hpp"

namespace dmf {

// 15 significant digits: enough to round-trip a double for the
// reproducibility contract while keeping files diffable.
inline std::string format_sig(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

struct WallTimer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

namespace detail {

inline std::string cell_to_string(double v) { return format_sig(v); }
inline std::string cell_to_string(int v) { return std::to_string(v); }
inline std::string cell_to_string(long v) { return std::to_string(v); }
inline std::string cell_to_string(long long v) { return std::to_string(v); }
inline std::string cell_to_string(unsigned v) { return std::to_string(v); }
inline std::string cell_to_string(unsigned long v) { return std::to_string(v); }
inline std::string cell_to_string(unsigned long long v) { return std::to_string(v); }
inline std::string cell_to_string(std::string v) { return v; }
inline std::string cell_to_string(const char* v) { return v; }

}  // namespace detail

// Metadata lines use "# key=value" so the rest of the file parses as plain
// CSV.  The wall_seconds line is the only part of a document allowed to
// differ between repeat runs with identical inputs; str() omits it when the
// caller passes a negative duration, so test harnesses can compare bodies
// byte for byte.
class CsvDocument {
public:
    CsvDocument(const std::string& tool, std::vector<std::string> columns)
        : columns_(std::move(columns)) {
        meta("tool", tool);
        meta("version", std::string(kVersion));
    }

    void meta(const std::string& key, const std::string& value) {
        meta_.emplace_back(key, value);
    }
    void meta(const std::string& key, const char* value) {
        meta_.emplace_back(key, std::string(value));
    }
    void meta(const std::string& key, double value) { meta(key, format_sig(value)); }
    void meta(const std::string& key, int value) { meta(key, std::to_string(value)); }
    void meta(const std::string& key, long value) { meta(key, std::to_string(value)); }
    void meta(const std::string& key, long long value) { meta(key, std::to_string(value)); }
    void meta(const std::string& key, unsigned long value) { meta(key, std::to_string(value)); }
    void meta(const std::string& key, unsigned long long value) { meta(key, std::to_string(value)); }

    template <class... Ts>
    void row(Ts&&... cells) {
        std::vector<std::string> r{detail::cell_to_string(std::forward<Ts>(cells))...};
        if (r.size() != columns_.size())
            throw std::logic_error("row width does not match declared column count");
        rows_.push_back(std::move(r));
    }

    std::size_t row_count() const { return rows_.size(); }

    std::string str(double wall_seconds = -1.0) const {
        std::ostringstream os;
        for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
        if (wall_seconds >= 0.0) os << "# wall_seconds=" << format_sig(wall_seconds) << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) os << ",";
            os << columns_[i];
        }
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) os << ",";
                os << r[i];
            }
            os << "\n";
        }
        return os.str();
    }

    void save(const std::string& path, double wall_seconds) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << str(wall_seconds);
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace dmf
