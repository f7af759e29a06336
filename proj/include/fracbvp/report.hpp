#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracbvp/expr.hpp"

namespace fracbvp {

/// Plain `key = value` report, one entry per line, in insertion order.
/// Numbers are written in shortest round-trip form so equal inputs give
/// byte-identical output.
class KeyValueReport {
public:
    void add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, double value) { add(std::move(key), detail::shortest(value)); }
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
    void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }

    /// Appends every line of `other` with `prefix.` prepended to its key.
    void merge(std::string_view prefix, const KeyValueReport& other) {
        for (const auto& [k, v] : other.lines_) add(std::string(prefix) + "." + k, v);
    }

    std::optional<std::string> find(std::string_view key) const {
        for (const auto& [k, v] : lines_)
            if (k == key) return v;
        return std::nullopt;
    }

    const std::vector<std::pair<std::string, std::string>>& lines() const noexcept { return lines_; }

    void write(std::ostream& os) const {
        for (const auto& [k, v] : lines_) os << k << " = " << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

} // namespace fracbvp
