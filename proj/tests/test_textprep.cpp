#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "sentimin/error.hpp"
#include "sentimin/stemmer.hpp"
#include "sentimin/textprep.hpp"
#include "sentimin/utf8.hpp"

using namespace sentimin;

namespace {

// The documented letter predicate, restated independently of the
// implementation: ASCII + Latin-1 letters + Latin Extended-A.
bool spec_letter(std::uint32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
    return cp >= 0x100 && cp <= 0x17F;
}

std::string random_text(std::mt19937& gen) {
    static const std::vector<std::uint32_t> pool = {
        'a',    'Z',     '0',    '9',   ' ',    '\t',   '\n',   '!',    '@',    '#',
        '.',    ',',     ':',    '/',   0xC9,   0xE9,   0x130,  0x141,  0x17F,  0x4E2D,
        0x1F600, 0x2013, 0x00D7, 'q',   'M',    'u',    ' ',    ' ',    'h',    't',
    };
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 40);
    std::uniform_int_distribution<int> bad(0, 19);
    std::string out;
    const int n = len(gen);
    for (int i = 0; i < n; ++i) {
        if (bad(gen) == 0) {
            out.push_back(static_cast<char>(0xC3)); // lone lead byte
        } else {
            utf8::encode(pool[pick(gen)], out);
        }
    }
    return out;
}

std::string join(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

} // namespace

TEST_CASE("case_fold") {
    CHECK(case_fold("Layanan BAIK") == "layanan baik");
    CHECK(case_fold("promo pulsa mantap") == "promo pulsa mantap");
    CHECK(case_fold("Tokopedia123") == "tokopedia123");
    CHECK(case_fold("\xC3\x89") == "\xC3\xA9");         // E acute
    CHECK(case_fold("\xC5\x81ODZ") == "\xC5\x82odz");   // L with stroke
    CHECK(case_fold("!? :-)") == "!? :-)");             // non-letters untouched
}

TEST_CASE("strip_entities") {
    CHECK(strip_entities("cek https://t.co/abc ya @bukalapak_care") == "cek ya");
    CHECK(strip_entities("tidak ada tanggung jawab") == "tidak ada tanggung jawab");
    CHECK(strip_entities("#promo mantap", true) == "promo mantap");
    CHECK(strip_entities("#promo mantap", false) == "mantap");
    CHECK(strip_entities("lihat www.tokopedia.com sekarang") == "lihat sekarang");
    CHECK(strip_entities("a@b") == "a");
}

TEST_CASE("strip_punctuation") {
    CHECK(strip_punctuation("cara ribet!!!") == "cara ribet");
    CHECK(strip_punctuation("layanan baik") == "layanan baik");
    CHECK(strip_punctuation("a,b.c") == "a b c");
    CHECK(strip_punctuation("  halo  dunia  ") == "halo dunia");
    CHECK(strip_punctuation("\xE4\xB8\xAD promo") == "promo"); // CJK treated as punctuation
}

TEST_CASE("tokenize") {
    CHECK(tokenize("layanan baik") == std::vector<Token>{"layanan", "baik"});
    CHECK(tokenize("") == std::vector<Token>{});
    CHECK(tokenize("a promo di situs", 2) == std::vector<Token>{"promo", "di", "situs"});
    CHECK(tokenize("ab cd", 3) == std::vector<Token>{});
}

TEST_CASE("remove_stopwords") {
    const std::unordered_set<std::string> list = {"ada", "di", "yang"};
    CHECK(remove_stopwords({"tidak", "ada", "tanggung", "jawab"}, list) ==
          std::vector<Token>{"tidak", "tanggung", "jawab"});
    CHECK(remove_stopwords({}, list) == std::vector<Token>{});
    CHECK(remove_stopwords({"promo", "mantap"}, list) == std::vector<Token>{"promo", "mantap"});
}

TEST_CASE("preprocess full chain") {
    PrepConfig config;
    config.stopwords = {"ada"};
    CHECK(preprocess("Tidak ada tanggung jawab!! @bukalapak_care", config) ==
          std::vector<Token>{"tidak", "tanggung", "jawab"});
    CHECK(preprocess("", config) == std::vector<Token>{});

    config.stopwords = {};
    CHECK(preprocess("Promo pulsa MANTAP http://x.co/1", config) ==
          std::vector<Token>{"promo", "pulsa", "mantap"});
}

TEST_CASE("preprocess trace records every stage") {
    PrepConfig config;
    config.stopwords = {"ada"};
    const PrepTrace trace = preprocess_trace("Tidak ada tanggung jawab!! @x", config);
    CHECK(trace.raw == "Tidak ada tanggung jawab!! @x");
    CHECK(trace.case_folded == "tidak ada tanggung jawab!! @x");
    CHECK(trace.entities_stripped == "tidak ada tanggung jawab!!");
    CHECK(trace.punctuation_stripped == "tidak ada tanggung jawab");
    CHECK(trace.tokens == std::vector<Token>{"tidak", "ada", "tanggung", "jawab"});
    CHECK(trace.final_tokens == std::vector<Token>{"tidak", "tanggung", "jawab"});
}

TEST_CASE("pipeline stages are total and keep their character classes") {
    std::mt19937 gen(20240811);
    for (int iter = 0; iter < 2000; ++iter) {
        const std::string text = random_text(gen);
        const std::string folded = case_fold(text);
        const std::string no_entities = strip_entities(folded);
        const std::string clean = strip_punctuation(no_entities);

        // strip_punctuation output: letters, digits and single spaces only.
        std::size_t i = 0;
        bool last_space = true;
        while (i < clean.size()) {
            const std::uint32_t cp = utf8::decode(clean, i);
            REQUIRE(cp != utf8::kInvalid);
            if (cp == ' ') {
                REQUIRE(!last_space); // no runs, no leading space
                last_space = true;
            } else {
                REQUIRE((spec_letter(cp) || (cp >= '0' && cp <= '9')));
                last_space = false;
            }
        }
        if (!clean.empty()) REQUIRE(clean.back() != ' ');

        // case_fold leaves ASCII uppercase nowhere.
        for (char c : folded) {
            REQUIRE(!(c >= 'A' && c <= 'Z'));
        }
    }
}

TEST_CASE("preprocess output tokens satisfy the documented invariants") {
    PrepConfig config;
    config.stopwords = default_stopwords();
    std::mt19937 gen(7);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::string text = random_text(gen);
        for (const Token& t : preprocess(text, config)) {
            CHECK(!t.empty());
            CHECK(case_fold(t) == t);
            CHECK(strip_punctuation(t) == t);
            CHECK(utf8::length(t) >= config.min_token_len);
            CHECK(config.stopwords.count(t) == 0);
        }
    }
}

TEST_CASE("preprocess is idempotent when stems are fixed points") {
    PrepConfig config;
    config.stopwords = default_stopwords();
    const std::vector<std::string> fixtures = {
        "tidak ada tanggung jawab jawab",
        "layanan baik",
        "penjual rugi tombol bantuan tidak ada",
        "promo pulsa mantap",
        "cara ribet",
        "iklan iklan lucu",
        "Pengiriman CEPAT barang bagus!! http://t.co/x",
    };
    int fired = 0;
    for (const std::string& text : fixtures) {
        const std::vector<Token> once = preprocess(text, config);
        bool fixed = true;
        for (const Token& t : once) {
            if (stem(t) != t) fixed = false;
        }
        if (fixed) {
            ++fired;
            CHECK(preprocess(join(once), config) == once);
        }
    }
    CHECK(fired >= 5); // the property must not hold vacuously
}

TEST_CASE("stopword file loading") {
    const auto& defaults = default_stopwords();
    CHECK(defaults.size() >= 700);
    CHECK(defaults.count("yang") == 1);
    CHECK(defaults.count("dan") == 1);
    CHECK(defaults.count("di") == 1);
    // Negations deliberately retained as signal.
    CHECK(defaults.count("tidak") == 0);
    CHECK(defaults.count("bukan") == 0);
    CHECK(defaults.count("jangan") == 0);
    for (const std::string& w : defaults) {
        CAPTURE(w);
        REQUIRE(case_fold(w) == w);
        REQUIRE(strip_punctuation(w) == w);
    }

    const auto loaded =
        load_stopword_file(std::filesystem::path(SENTIMIN_DATA_DIR) / "stopwords_id.txt");
    CHECK(loaded == defaults);

    CHECK_THROWS_AS(load_stopword_file("/nonexistent/stopwords.txt"), IoError);
}
