#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <tuple>

#include "synthius/text.hpp"

namespace synthius {

// Date canonicalization used by fact-key normalization and the reference
// extractor. Handles numeric forms (day-first), month-name forms, bare years
// and a small table of relative forms resolved against a reference timestamp
// (normally the session timestamp). Output is an ISO-8601 prefix at the best
// available precision: YYYY, YYYY-MM or YYYY-MM-DD.

namespace detail {

inline int month_from_name(const std::string& lower) {
    static const std::array<const char*, 12> names = {"january", "february", "march",     "april",
                                                      "may",     "june",     "july",      "august",
                                                      "september", "october", "november", "december"};
    for (int i = 0; i < 12; ++i) {
        const std::string full = names[i];
        if (lower == full || (lower.size() >= 3 && full.rfind(lower, 0) == 0 && lower.size() <= full.size()))
            return i + 1;
    }
    return 0;
}

struct DateParts {
    int year = 0;
    int month = 0;  // 0 = unknown
    int day = 0;    // 0 = unknown

    std::string iso() const {
        char buf[16];
        if (month == 0) {
            std::snprintf(buf, sizeof(buf), "%04d", year);
        } else if (day == 0) {
            std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
        } else {
            std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
        }
        return buf;
    }
};

inline std::optional<DateParts> parse_iso_prefix(const std::string& s) {
    DateParts p;
    int n = std::sscanf(s.c_str(), "%4d-%2d-%2d", &p.year, &p.month, &p.day);
    if (n < 1 || p.year < 1000 || p.year > 9999) return std::nullopt;
    if (n < 2) p.month = 0;
    if (n < 3) p.day = 0;
    if (p.month < 0 || p.month > 12 || p.day < 0 || p.day > 31) return std::nullopt;
    // Require the raw text to actually look like an ISO prefix, not "12/2021".
    if (s.size() >= 5 && s[4] != '-' && !(s.size() == 4 || std::isspace((unsigned char)s[4]) || s[4] == 'T'))
        return std::nullopt;
    return p;
}

}  // namespace detail

inline std::optional<std::string> canonicalize_date(const std::string& raw,
                                                    const std::optional<std::string>& reference = {}) {
    const std::string text = trim(raw);
    if (text.empty()) return std::nullopt;
    const std::string lower = to_lower(text);

    if (auto iso = detail::parse_iso_prefix(text)) return iso->iso();

    // Bare year.
    {
        int y = 0;
        char tail = 0;
        if (std::sscanf(text.c_str(), "%4d%c", &y, &tail) == 1 && y >= 1000 && y <= 9999)
            return detail::DateParts{y, 0, 0}.iso();
    }

    // Day-first numeric: 12/03/2024 or 12/03/24.
    {
        int d = 0, m = 0, y = 0;
        if (std::sscanf(text.c_str(), "%d/%d/%d", &d, &m, &y) == 3 && d >= 1 && d <= 31 && m >= 1 &&
            m <= 12) {
            if (y < 100) y += 2000;
            return detail::DateParts{y, m, d}.iso();
        }
    }

    // Month-name forms: "March 2021", "March 5, 2021", "5 March 2021".
    {
        const auto tokens = tokenize(lower);
        std::vector<std::string> words;
        for (const auto& t : tokens)
            if (t != "," && t != "." && t != "of") words.push_back(t);
        auto as_int = [](const std::string& w) {
            for (char c : w)
                if (!std::isdigit(static_cast<unsigned char>(c))) return 0;
            return w.empty() ? 0 : std::stoi(w);
        };
        if (words.size() == 2) {
            if (int m = detail::month_from_name(words[0]); m && as_int(words[1]) >= 1000)
                return detail::DateParts{as_int(words[1]), m, 0}.iso();
        }
        if (words.size() == 3) {
            if (int m = detail::month_from_name(words[0]);
                m && as_int(words[1]) >= 1 && as_int(words[1]) <= 31 && as_int(words[2]) >= 1000)
                return detail::DateParts{as_int(words[2]), m, as_int(words[1])}.iso();
            if (int m = detail::month_from_name(words[1]);
                m && as_int(words[0]) >= 1 && as_int(words[0]) <= 31 && as_int(words[2]) >= 1000)
                return detail::DateParts{as_int(words[2]), m, as_int(words[0])}.iso();
        }
    }

    // Relative forms need a reference date.
    if (reference) {
        auto ref = detail::parse_iso_prefix(*reference);
        if (ref) {
            if (ref->month == 0) ref->month = 1;
            if (ref->day == 0) ref->day = 1;
            if (lower == "today" || lower == "now") return ref->iso();
            if (lower == "yesterday") {
                detail::DateParts p = *ref;
                if (--p.day < 1) {
                    if (--p.month < 1) {
                        p.month = 12;
                        --p.year;
                    }
                    p.day = 28;  // coarse, precision is month-level for memory anchors
                }
                return p.iso();
            }
            if (lower == "last year") return detail::DateParts{ref->year - 1, 0, 0}.iso();
            if (lower == "last month") {
                detail::DateParts p{ref->year, ref->month - 1, 0};
                if (p.month < 1) {
                    p.month = 12;
                    --p.year;
                }
                return p.iso();
            }
            {
                int n = 0;
                char unit[16] = {0};
                if (std::sscanf(lower.c_str(), "%d %15s ago", &n, unit) == 2 ||
                    (std::sscanf(lower.c_str(), "two %15s ago", unit) == 1 && (n = 2))) {
                    const std::string u = unit;
                    if (u.rfind("year", 0) == 0) return detail::DateParts{ref->year - n, 0, 0}.iso();
                    if (u.rfind("month", 0) == 0) {
                        int total = ref->year * 12 + (ref->month - 1) - n;
                        return detail::DateParts{total / 12, total % 12 + 1, 0}.iso();
                    }
                }
            }
            // "last spring" and friends: season start month, previous year if
            // the season has not started yet this year.
            static const std::array<std::pair<const char*, int>, 5> seasons = {
                {{"spring", 4}, {"summer", 7}, {"fall", 10}, {"autumn", 10}, {"winter", 1}}};
            for (const auto& [name, month] : seasons) {
                if (lower == std::string("last ") + name) {
                    const int year = month < ref->month ? ref->year : ref->year - 1;
                    return detail::DateParts{year, month, 0}.iso();
                }
            }
        }
    }
    return std::nullopt;
}

// Numeric comparison of ISO prefixes; missing month/day rank earliest.
inline std::tuple<int, int, int> anchor_tuple(const std::string& iso) {
    auto p = detail::parse_iso_prefix(iso);
    if (!p) return {0, 0, 0};
    return {p->year, p->month, p->day};
}

inline int compare_anchor(const std::string& a, const std::string& b) {
    const auto ta = anchor_tuple(a), tb = anchor_tuple(b);
    if (ta < tb) return -1;
    if (tb < ta) return 1;
    return 0;
}

}  // namespace synthius
