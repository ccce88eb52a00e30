#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace synthius {

// Tokenization rule used everywhere token counts matter: a token is either a
// maximal run of alphanumeric bytes (non-ASCII bytes count as word bytes, so
// UTF-8 words stay whole) or a single non-whitespace punctuation byte.
// "Hi, there!" -> ["Hi", ",", "there", "!"].
namespace detail {

inline bool is_word_byte(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

}  // namespace detail

template <typename Fn>
inline void scan_tokens(std::string_view text, Fn&& on_token) {
    std::size_t i = 0;
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (detail::is_word_byte(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && detail::is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
            on_token(text.substr(i, j - i));
            i = j;
        } else {
            on_token(text.substr(i, 1));
            ++i;
        }
    }
}

inline long count_tokens(std::string_view text) {
    long n = 0;
    scan_tokens(text, [&](std::string_view) { ++n; });
    return n;
}

inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    scan_tokens(text, [&](std::string_view tok) { out.emplace_back(tok); });
    return out;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words = {
        "a",     "an",    "and",   "any",   "are",   "as",    "at",    "be",    "been",
        "but",   "by",    "can",   "could", "did",   "do",    "does",  "for",   "from",
        "had",   "has",   "have",  "he",    "her",   "hers",  "him",   "his",   "how",
        "i",     "if",    "in",    "into",  "is",    "it",    "its",   "just",  "me",
        "my",    "no",    "not",   "of",    "on",    "or",    "our",   "person","she",
        "so",    "some",  "than",  "that",  "the",   "their", "them",  "then",  "there",
        "they",  "this",  "to",    "was",   "we",    "were",  "what",  "when",  "where",
        "which", "while", "who",   "whom",  "whose", "why",   "will",  "with",  "would",
        "you",   "your",  "about", "also",  "am",    "up",    "out",   "now",   "too",
        "very",  "s",     "t",     "m",     "re",    "ve",    "ll",    "d",     "once",
    };
    return words;
}

inline bool is_stopword(const std::string& token) {
    return token.size() <= 1 || stopwords().count(token) > 0;
}

// Crude suffix stemmer. Both query terms and indexed field tokens run through
// the same rules, so only consistency matters, not linguistic accuracy.
// Final trailing-'e' removal makes inflected and base forms meet
// ("moved" -> "mov", "move" -> "mov").
inline std::string stem(std::string token) {
    const auto n = token.size();
    if (n > 4 && ends_with(token, "ing")) {
        token.resize(n - 3);
    } else if (n > 4 && ends_with(token, "ied")) {
        token.resize(n - 3);
        token += 'y';
    } else if (n > 3 && ends_with(token, "ies")) {
        token.resize(n - 3);
        token += 'y';
    } else if (n > 4 && ends_with(token, "ed")) {
        token.resize(n - 2);
    } else if (n > 3 && ends_with(token, "es")) {
        token.resize(n - 2);
    } else if (n > 3 && ends_with(token, "s") && !ends_with(token, "ss")) {
        token.resize(n - 1);
    }
    if (token.size() > 3 && token.back() == 'e') token.pop_back();
    return token;
}

// Lowercased, alnum-only, stemmed form of a raw token; "" for punctuation.
inline std::string normalize_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char ch : raw) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c) || c >= 0x80) out += static_cast<char>(std::tolower(c));
    }
    return stem(std::move(out));
}

// Normalized informative terms of a text: tokenized, normalized, stopwords
// dropped, order preserved, duplicates kept.
inline std::vector<std::string> normalized_terms(std::string_view text) {
    std::vector<std::string> out;
    scan_tokens(text, [&](std::string_view tok) {
        std::string norm = normalize_token(tok);
        if (!norm.empty() && !is_stopword(norm)) out.push_back(std::move(norm));
    });
    return out;
}

inline std::set<std::string> term_set(std::string_view text) {
    std::set<std::string> out;
    for (auto& t : normalized_terms(text)) out.insert(std::move(t));
    return out;
}

// Whitespace/case/punctuation-insensitive canonical form used by the
// reference judge and for statement comparison.
inline std::string normalize_for_compare(std::string_view text) {
    std::string out;
    bool pending_space = false;
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c) || c >= 0x80) {
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(c));
        } else {
            pending_space = true;
        }
    }
    return out;
}

inline double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace synthius
