#include "sentimin/textprep.hpp"

#include <fstream>
#include <mutex>

#include "sentimin/error.hpp"
#include "sentimin/stemmer.hpp"
#include "sentimin/utf8.hpp"

namespace sentimin {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_byte(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Simple case fold for ASCII, Latin-1 Supplement and Latin Extended-A.
// Everything outside those ranges is returned unchanged.
std::uint32_t fold_cp(std::uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp == 0x130) return 'i';        // I with dot above
    if (cp == 0x178) return 0xFF;       // Y with diaeresis
    if (cp == 0x17F) return 's';        // long s
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
        return (cp % 2 == 1) ? cp + 1 : cp;
    }
    return cp;
}

bool is_letter_cp(std::uint32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
    if (cp >= 0x100 && cp <= 0x17F) return true;
    return false;
}

bool is_digit_cp(std::uint32_t cp) {
    return cp >= '0' && cp <= '9';
}

// True when a URL starts at position i: "scheme://" (scheme = letter followed
// by letters/digits/+/-/.) or "www." at a word boundary.
bool url_starts_at(std::string_view s, std::size_t i, std::size_t& url_start) {
    if (i > 0 && is_word_byte(s[i - 1])) return false;
    url_start = i;
    if (s.substr(i).size() >= 4 && (s.compare(i, 4, "www.") == 0 || s.compare(i, 4, "WWW.") == 0)) {
        return true;
    }
    const char c = s[i];
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    std::size_t j = i;
    while (j < s.size() &&
           ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= 'A' && s[j] <= 'Z') ||
            (s[j] >= '0' && s[j] <= '9') || s[j] == '+' || s[j] == '-' || s[j] == '.')) {
        ++j;
    }
    return s.compare(j, 3, "://") == 0;
}

} // namespace

std::string case_fold(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const std::uint32_t cp = utf8::decode(text, i);
        if (cp == utf8::kInvalid) {
            out.append(text.substr(start, i - start)); // pass bad bytes through
        } else {
            utf8::encode(fold_cp(cp), out);
        }
    }
    return out;
}

std::string strip_entities(std::string_view text, bool keep_hashtag_body) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '@' && i + 1 < text.size() && is_word_byte(text[i + 1])) {
            ++i;
            while (i < text.size() && is_word_byte(text[i])) ++i;
            continue;
        }
        if (c == '#' && i + 1 < text.size() && is_word_byte(text[i + 1])) {
            ++i; // drop the '#'
            if (!keep_hashtag_body) {
                while (i < text.size() && is_word_byte(text[i])) ++i;
            }
            continue;
        }
        std::size_t url_start = 0;
        if (url_starts_at(text, i, url_start)) {
            i = url_start;
            while (i < text.size() && !is_ascii_space(text[i])) ++i;
            continue;
        }
        out.push_back(c);
        ++i;
    }
    return collapse_whitespace(out);
}

std::string strip_punctuation(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::uint32_t cp = utf8::decode(text, i);
        if (cp != utf8::kInvalid && (is_letter_cp(cp) || is_digit_cp(cp))) {
            if (pending_space && !out.empty()) out.push_back(' ');
            utf8::encode(cp, out);
            pending_space = false;
        } else {
            pending_space = true; // whitespace and punctuation both separate
        }
    }
    return out;
}

std::vector<Token> tokenize(std::string_view text, std::size_t min_token_len) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
        if (i > start) {
            std::string_view word = text.substr(start, i - start);
            if (utf8::length(word) >= min_token_len) {
                tokens.emplace_back(word);
            }
        }
    }
    return tokens;
}

std::vector<Token> remove_stopwords(std::vector<Token> tokens,
                                    const std::unordered_set<std::string>& stopwords) {
    std::erase_if(tokens, [&](const Token& t) { return stopwords.count(t) > 0; });
    return tokens;
}

PrepTrace preprocess_trace(std::string_view text, const PrepConfig& config) {
    PrepTrace trace;
    trace.raw = std::string(text);
    trace.case_folded = case_fold(text);
    trace.entities_stripped = strip_entities(trace.case_folded, config.keep_hashtag_body);
    trace.punctuation_stripped = strip_punctuation(trace.entities_stripped);
    trace.tokens = tokenize(trace.punctuation_stripped, config.min_token_len);
    trace.stemmed = trace.tokens;
    if (config.stem_enabled) {
        for (Token& t : trace.stemmed) t = stem(t);
    }
    trace.final_tokens = remove_stopwords(trace.stemmed, config.stopwords);
    return trace;
}

std::vector<Token> preprocess(std::string_view text, const PrepConfig& config) {
    return preprocess_trace(text, config).final_tokens;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_ascii_space(c)) {
            pending_space = true;
        } else {
            if (pending_space && !out.empty()) out.push_back(' ');
            out.push_back(c);
            pending_space = false;
        }
    }
    return out;
}

namespace {

bool valid_stopword_entry(std::string_view word) {
    if (word.empty()) return false;
    std::size_t i = 0;
    while (i < word.size()) {
        const std::uint32_t cp = utf8::decode(word, i);
        if (cp == utf8::kInvalid) return false;
        if (!is_digit_cp(cp) && !is_letter_cp(cp)) return false;
        if (cp != fold_cp(cp)) return false; // uppercase not allowed
    }
    return true;
}

std::unordered_set<std::string> parse_stopword_text(std::string_view text,
                                                    const std::string& origin) {
    std::unordered_set<std::string> words;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        ++line_no;
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        std::string trimmed = collapse_whitespace(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        if (!valid_stopword_entry(trimmed)) {
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": stopword entry '" + trimmed +
                              "' is not a lowercase alphanumeric token");
        }
        words.insert(std::move(trimmed));
    }
    return words;
}

} // namespace

std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open stopword file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_stopword_text(text, path.string());
}

const std::unordered_set<std::string>& default_stopwords() {
    static const char kDefaultStopwordText[] =
#include "default_stopwords.inc"
        ;
    static const std::unordered_set<std::string> words =
        parse_stopword_text(kDefaultStopwordText, "<builtin stopword list>");
    return words;
}

} // namespace sentimin
