#include "sentimin/stemmer.hpp"

#include <array>
#include <string_view>

#include "sentimin/utf8.hpp"

namespace sentimin {

namespace {

constexpr std::size_t kMinStemLen = 3; // code points

constexpr std::array<std::string_view, 4> kParticles = {"lah", "kah", "pun", "tah"};
constexpr std::array<std::string_view, 3> kPossessives = {"nya", "ku", "mu"};
constexpr std::array<std::string_view, 3> kSuffixes = {"kan", "an", "i"};

// Longest first, so meng- wins over men- and me-.
constexpr std::array<std::string_view, 15> kPrefixes = {
    "meny", "meng", "peny", "peng",
    "mem",  "men",  "pem",  "pen",  "ber", "ter",
    "me",   "pe",   "di",   "ke",   "se",
};

bool strip_suffix_once(std::string& word, std::string_view suffix) {
    if (word.size() <= suffix.size()) return false;
    if (word.compare(word.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
    std::string_view rest(word.data(), word.size() - suffix.size());
    if (utf8::length(rest) < kMinStemLen) return false;
    word.resize(word.size() - suffix.size());
    return true;
}

bool strip_prefix_once(std::string& word, std::string_view prefix) {
    if (word.size() <= prefix.size()) return false;
    if (word.compare(0, prefix.size(), prefix) != 0) return false;
    std::string_view rest(word.data() + prefix.size(), word.size() - prefix.size());
    if (utf8::length(rest) < kMinStemLen) return false;
    word.erase(0, prefix.size());
    return true;
}

template <typename Table>
void apply_suffix_category(std::string& word, const Table& table) {
    for (std::string_view suffix : table) {
        if (strip_suffix_once(word, suffix)) return; // at most once per category
    }
}

} // namespace

Token stem(const Token& token) {
    std::string word = token;
    apply_suffix_category(word, kParticles);
    apply_suffix_category(word, kPossessives);
    apply_suffix_category(word, kSuffixes);
    for (int round = 0; round < 2; ++round) {
        bool stripped = false;
        for (std::string_view prefix : kPrefixes) {
            if (strip_prefix_once(word, prefix)) {
                stripped = true;
                break;
            }
        }
        if (!stripped) break;
    }
    return word;
}

} // namespace sentimin
