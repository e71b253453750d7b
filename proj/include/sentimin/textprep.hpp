#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sentimin {

// A token is a lowercase run of letters/digits produced by the pipeline
// below; plain std::string keeps the call sites simple.
using Token = std::string;

struct PrepConfig {
    std::unordered_set<std::string> stopwords;
    bool stem_enabled = true;
    std::size_t min_token_len = 2;
    bool keep_hashtag_body = true;
};

// Lowercases every cased letter (simple fold over ASCII, Latin-1 and Latin
// Extended-A); all other characters, including invalid bytes, pass through.
std::string case_fold(std::string_view text);

// Deletes URLs (scheme://... or www...., up to whitespace) and @-mentions;
// hashtags either lose just the '#' (keep_hashtag_body) or disappear.
// Whitespace runs left behind are collapsed and the ends trimmed.
std::string strip_entities(std::string_view text, bool keep_hashtag_body = true);

// Every character that is not a letter, digit or whitespace becomes a space;
// whitespace runs collapse to one space and the ends are trimmed. "Letter"
// means ASCII or Latin-1/Latin Extended-A letters; anything else (emoji,
// CJK, invalid bytes) is treated as punctuation.
std::string strip_punctuation(std::string_view text);

// Whitespace split, dropping tokens with fewer than min_token_len code points.
std::vector<Token> tokenize(std::string_view text, std::size_t min_token_len = 2);

std::vector<Token> remove_stopwords(std::vector<Token> tokens,
                                    const std::unordered_set<std::string>& stopwords);

// Full chain: case_fold -> strip_entities -> strip_punctuation -> tokenize
// -> stem (when enabled) -> remove_stopwords. Pure function of (text, config).
std::vector<Token> preprocess(std::string_view text, const PrepConfig& config);

// Per-stage snapshots for --trace output.
struct PrepTrace {
    std::string raw;
    std::string case_folded;
    std::string entities_stripped;
    std::string punctuation_stripped;
    std::vector<Token> tokens;
    std::vector<Token> stemmed;
    std::vector<Token> final_tokens;
};

PrepTrace preprocess_trace(std::string_view text, const PrepConfig& config);

// Collapses whitespace runs to single spaces and trims the ends. Also the
// text half of the deduplication key.
std::string collapse_whitespace(std::string_view text);

// One lowercase word per line; '#'-prefixed lines are comments; blank lines
// ignored. Entries must be valid tokens (lowercase letters/digits only).
std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path);

// The curated Indonesian list shipped in data/stopwords_id.txt, compiled in.
const std::unordered_set<std::string>& default_stopwords();

} // namespace sentimin
