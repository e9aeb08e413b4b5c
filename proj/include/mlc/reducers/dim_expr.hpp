#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "mlc/core/error.hpp"
#include "mlc/dataset.hpp"

namespace mlc {

// Dimension expressions: an integer literal, or {numF, numL, n} and float
// constants combined with '*' and '/'. E.g. "300", "numF*0.5", "numL/2".

namespace detail {

struct DimExprParser {
    std::string_view text;
    std::size_t pos = 0;
    const StatsRecord* stats; // null = parse-only

    void skip_spaces() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    double parse_term() {
        skip_spaces();
        if (pos >= text.size()) throw ConfigError("dimension expression: unexpected end");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos;
            while (end < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.'))
                ++end;
            double value = 0.0;
            auto [p, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
            if (ec != std::errc() || p != text.data() + end)
                throw ConfigError("dimension expression: bad number '" +
                                  std::string(text.substr(pos, end - pos)) + "'");
            pos = end;
            return value;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
            const std::string_view name = text.substr(pos, end - pos);
            pos = end;
            if (name == "numF") return stats ? static_cast<double>(stats->num_features) : 1.0;
            if (name == "numL") return stats ? static_cast<double>(stats->num_labels) : 1.0;
            if (name == "n") return stats ? static_cast<double>(stats->n) : 1.0;
            throw ConfigError("dimension expression: unknown variable '" + std::string(name) + "'");
        }
        throw ConfigError("dimension expression: unexpected character '" + std::string(1, c) + "'");
    }

    double parse() {
        double value = parse_term();
        while (true) {
            skip_spaces();
            if (pos >= text.size()) return value;
            const char op = text[pos];
            if (op != '*' && op != '/')
                throw ConfigError("dimension expression: expected '*' or '/' before '" +
                                  std::string(text.substr(pos)) + "'");
            ++pos;
            const double rhs = parse_term();
            if (op == '*') value *= rhs;
            else value /= rhs;
        }
    }
};

} // namespace detail

inline double eval_dim_expr(const std::string& raw, const StatsRecord& stats) {
    if (raw.empty()) throw ConfigError("dimension expression: empty");
    detail::DimExprParser parser{raw, 0, &stats};
    return parser.parse();
}

/// Grammar check without evaluation (for validate-time diagnostics).
inline void check_dim_expr(const std::string& raw) {
    if (raw.empty()) throw ConfigError("dimension expression: empty");
    detail::DimExprParser parser{raw, 0, nullptr};
    parser.parse();
}

/// Evaluates, floors, and caps an expression to [1, cap]. Values below 1 are
/// config errors rather than being clamped up.
inline int resolve_dim(const std::string& raw, const StatsRecord& stats, int cap) {
    const double value = eval_dim_expr(raw, stats);
    if (!std::isfinite(value) || value < 1.0)
        throw ConfigError("dimension expression '" + raw + "' evaluates to " +
                          std::to_string(value) + " (must be >= 1)");
    const double floored = std::floor(value);
    return static_cast<int>(std::min(floored, static_cast<double>(cap)));
}

} // namespace mlc
