#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "sentimin/corpus.hpp"
#include "sentimin/error.hpp"
#include "sentimin/io_util.hpp"

using namespace sentimin;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "sentimin_corpus_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path path = temp_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

RawCorpus make_raw(const std::vector<std::string>& texts) {
    RawCorpus corpus;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        corpus.documents.push_back(RawPost{"d" + std::to_string(i), texts[i], "", "", ""});
    }
    return corpus;
}

LabeledCorpus make_labeled(std::size_t n_pos, std::size_t n_neg) {
    LabeledCorpus corpus;
    for (std::size_t i = 0; i < n_pos + n_neg; ++i) {
        corpus.documents.push_back(LabeledDocument{
            "d" + std::to_string(i), "teks " + std::to_string(i),
            i < n_pos ? Label::Positive : Label::Negative, ""});
    }
    return corpus;
}

} // namespace

TEST_CASE("ingest_jsonl") {
    SUBCASE("empty file") {
        const auto result = ingest_jsonl(write_file("empty.jsonl", ""));
        CHECK(result.corpus.size() == 0);
        CHECK(result.report.read == 0);
        CHECK(result.report.malformed_lines.empty());
    }
    SUBCASE("well-formed lines keep file order") {
        const auto result = ingest_jsonl(write_file("three.jsonl",
            R"({"id":"a","text":"satu"})" "\n"
            R"({"id":"b","text":"dua","author":"x","timestamp":"2016-10-10T00:00:00Z"})" "\n"
            R"({"id":"c","text":"tiga"})" "\n"));
        CHECK(result.corpus.size() == 3);
        CHECK(result.report.read == 3);
        CHECK(result.report.kept == 3);
        CHECK(result.corpus.documents[0].id == "a");
        CHECK(result.corpus.documents[1].author == "x");
        CHECK(result.corpus.documents[2].text == "tiga");
    }
    SUBCASE("line lacking text is reported, not dropped silently") {
        const auto result = ingest_jsonl(write_file("missing.jsonl",
            R"({"id":"a","text":"satu"})" "\n"
            R"({"id":"b","text":"dua"})" "\n"
            R"({"id":"c"})" "\n"));
        CHECK(result.corpus.size() == 2);
        CHECK(result.report.malformed_lines == std::vector<std::size_t>{3});
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(ingest_jsonl(temp_dir() / "nope.jsonl"), IoError);
    }
    SUBCASE("duplicate id is an error") {
        CHECK_THROWS_AS(ingest_jsonl(write_file("dup.jsonl",
                            R"({"id":"a","text":"satu"})" "\n"
                            R"({"id":"a","text":"dua"})" "\n")),
                        DataError);
    }
    SUBCASE("write-back then ingest is identity") {
        const auto first = ingest_jsonl(write_file("round.jsonl",
            R"({"id":"a","text":"Halo Dunia","matched_keyword":"tokopedia"})" "\n"
            R"({"id":"b","text":"dua tiga","author":"z"})" "\n"));
        const fs::path back = temp_dir() / "roundtrip_out.jsonl";
        write_jsonl(first.corpus, back);
        const auto second = ingest_jsonl(back);
        REQUIRE(second.corpus.size() == first.corpus.size());
        for (std::size_t i = 0; i < first.corpus.size(); ++i) {
            const RawPost& a = first.corpus.documents[i];
            const RawPost& b = second.corpus.documents[i];
            CHECK(a.id == b.id);
            CHECK(a.text == b.text);
            CHECK(a.author == b.author);
            CHECK(a.timestamp == b.timestamp);
            CHECK(a.matched_keyword == b.matched_keyword);
        }
    }
}

TEST_CASE("filter_by_keywords") {
    SUBCASE("all match") {
        const RawCorpus corpus = make_raw({"beli di tokopedia", "Tokopedia mantap"});
        const RawCorpus out = filter_by_keywords(corpus, {"tokopedia"});
        REQUIRE(out.size() == 2);
        CHECK(out.documents[0].text == corpus.documents[0].text);
        CHECK(out.documents[0].matched_keyword == "tokopedia");
    }
    SUBCASE("case-insensitive substring") {
        const RawCorpus out =
            filter_by_keywords(make_raw({"beli di Bukalapak", "cuaca cerah"}), {"bukalapak"});
        REQUIRE(out.size() == 1);
        CHECK(out.documents[0].text == "beli di Bukalapak");
    }
    SUBCASE("no matches") {
        CHECK(filter_by_keywords(make_raw({"beli di Bukalapak"}), {"elevenia"}).size() == 0);
    }
    SUBCASE("matched_keyword field also matches") {
        RawCorpus corpus = make_raw({"tanpa merek"});
        corpus.documents[0].matched_keyword = "eleveniacare";
        const RawCorpus out = filter_by_keywords(corpus, {"elevenia"});
        REQUIRE(out.size() == 1);
        CHECK(out.documents[0].matched_keyword == "elevenia"); // first matching keyword wins
    }
    SUBCASE("empty keyword list") {
        CHECK_THROWS_AS(filter_by_keywords(make_raw({"x y"}), {}), ConfigError);
        CHECK_THROWS_AS(filter_by_keywords(make_raw({"x y"}), {"  "}), ConfigError);
    }
    SUBCASE("subset and monotone in the keyword list") {
        std::mt19937 gen(5);
        const std::vector<std::string> words = {"bukalapak", "tokopedia", "elevenia",
                                                "promo",     "cuaca",     "kopi"};
        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        for (int iter = 0; iter < 200; ++iter) {
            std::vector<std::string> texts;
            for (int d = 0; d < 8; ++d) {
                texts.push_back(words[pick(gen)] + " " + words[pick(gen)]);
            }
            const RawCorpus corpus = make_raw(texts);
            const RawCorpus small = filter_by_keywords(corpus, {"tokopedia"});
            const RawCorpus large = filter_by_keywords(corpus, {"tokopedia", "promo"});
            CHECK(small.size() <= corpus.size());
            CHECK(small.size() <= large.size());
            for (const RawPost& post : small) {
                (void)post;
            }
            // every retained id also appears in the superset run
            for (const RawPost& post : small.documents) {
                const bool found = std::any_of(
                    large.documents.begin(), large.documents.end(),
                    [&](const RawPost& other) { return other.id == post.id; });
                CHECK(found);
            }
        }
    }
}

TEST_CASE("deduplicate") {
    SUBCASE("distinct texts unchanged") {
        const auto out = deduplicate(make_raw({"satu", "dua", "tiga"}));
        CHECK(out.corpus.size() == 3);
        CHECK(out.removed == 0);
    }
    SUBCASE("fold + collapse key groups retweets") {
        const auto out = deduplicate(make_raw({"Layanan baik", "layanan  baik", "cara ribet"}));
        REQUIRE(out.corpus.size() == 2);
        CHECK(out.removed == 1);
        CHECK(out.corpus.documents[0].text == "Layanan baik"); // first occurrence kept
        CHECK(out.corpus.documents[1].text == "cara ribet");
    }
    SUBCASE("five copies collapse to one") {
        const auto out = deduplicate(make_raw({"promo", "promo", "promo", "promo", "promo"}));
        CHECK(out.corpus.size() == 1);
        CHECK(out.removed == 4);
    }
    SUBCASE("idempotent") {
        std::mt19937 gen(11);
        std::uniform_int_distribution<int> coin(0, 2);
        for (int iter = 0; iter < 100; ++iter) {
            std::vector<std::string> texts;
            for (int d = 0; d < 10; ++d) {
                texts.push_back(coin(gen) == 0 ? "sama saja" : "teks " + std::to_string(coin(gen)));
            }
            const auto once = deduplicate(make_raw(texts));
            const auto twice = deduplicate(once.corpus);
            CHECK(twice.removed == 0);
            CHECK(twice.corpus.size() == once.corpus.size());
        }
    }
}

TEST_CASE("split_train_test") {
    SUBCASE("350 + 350 with n_per_class=350 takes everything") {
        const auto split = split_train_test(make_labeled(350, 350), 350, 1);
        CHECK(split.train.size() == 700);
        CHECK(split.test.size() == 0);
    }
    SUBCASE("counts on a small fixture") {
        const auto split = split_train_test(make_labeled(4, 4), 2, 9);
        CHECK(split.train.size() == 4);
        CHECK(split.test.size() == 4);
        std::size_t pos = 0;
        for (const auto& doc : split.train.documents) {
            if (doc.label == Label::Positive) ++pos;
        }
        CHECK(pos == 2);
    }
    SUBCASE("insufficient class count") {
        CHECK_THROWS_AS(split_train_test(make_labeled(5, 4), 5, 1), DataError);
    }
    SUBCASE("same seed, same split; partitions cover and are disjoint") {
        const LabeledCorpus corpus = make_labeled(9, 7);
        const auto a = split_train_test(corpus, 5, 123);
        const auto b = split_train_test(corpus, 5, 123);
        REQUIRE(a.train.size() == b.train.size());
        for (std::size_t i = 0; i < a.train.size(); ++i) {
            CHECK(a.train.documents[i].id == b.train.documents[i].id);
        }
        CHECK(a.train.size() + a.test.size() == corpus.size());
        std::unordered_set<std::string> seen;
        for (const auto& d : a.train.documents) seen.insert(d.id);
        for (const auto& d : a.test.documents) {
            CHECK(seen.insert(d.id).second); // disjoint
        }
        CHECK(seen.size() == corpus.size());

        const auto c = split_train_test(corpus, 5, 124);
        bool any_diff = a.train.size() != c.train.size();
        for (std::size_t i = 0; !any_diff && i < a.train.size(); ++i) {
            any_diff = a.train.documents[i].id != c.train.documents[i].id;
        }
        CHECK(any_diff); // different seed should (here) move something
    }
}

TEST_CASE("labeled corpus IO") {
    SUBCASE("read_labeled_jsonl") {
        const auto path = write_file("labeled.jsonl",
            R"({"id":"a","text":"layanan baik","label":"positive","brand":"tokopedia"})" "\n"
            R"({"id":"b","text":"cara ribet","label":"NEGATIVE"})" "\n");
        const LabeledCorpus corpus = read_labeled_jsonl(path);
        REQUIRE(corpus.size() == 2);
        CHECK(corpus.documents[0].label == Label::Positive);
        CHECK(corpus.documents[0].brand == "tokopedia");
        CHECK(corpus.documents[1].label == Label::Negative);
        CHECK(corpus.documents[1].brand == "");
    }
    SUBCASE("record without label is an error") {
        CHECK_THROWS_AS(
            read_labeled_jsonl(write_file("nolabel.jsonl", R"({"id":"a","text":"x y"})" "\n")),
            DataError);
    }
    SUBCASE("matched_keyword backfills brand") {
        const auto path = write_file("kwbrand.jsonl",
            R"({"id":"a","text":"apa saja","label":"positive","matched_keyword":"elevenia"})" "\n");
        CHECK(read_labeled_jsonl(path).documents[0].brand == "elevenia");
    }
    SUBCASE("labeled round-trip") {
        LabeledCorpus corpus;
        corpus.documents.push_back(
            LabeledDocument{"a", "layanan baik", Label::Positive, "tokopedia"});
        corpus.documents.push_back(LabeledDocument{"b", "cara ribet", Label::Negative, ""});
        const fs::path path = temp_dir() / "labeled_rt.jsonl";
        write_jsonl(corpus, path);
        const LabeledCorpus back = read_labeled_jsonl(path);
        REQUIRE(back.size() == 2);
        CHECK(back.documents[0].brand == "tokopedia");
        CHECK(back.documents[1].label == Label::Negative);
    }
}

TEST_CASE("CSV label adapter") {
    SUBCASE("parse with header and mixed case") {
        const auto labels = read_labels_csv(write_file("labels.csv",
            "id,label\n"
            "a,positive\n"
            "b,Negative\n"));
        REQUIRE(labels.size() == 2);
        CHECK(labels[0] == std::pair<std::string, Label>{"a", Label::Positive});
        CHECK(labels[1].second == Label::Negative);
    }
    SUBCASE("bad label value") {
        CHECK_THROWS_AS(read_labels_csv(write_file("bad.csv", "a,netral\n")), DataError);
    }
    SUBCASE("apply_labels joins by id and requires full coverage") {
        RawCorpus corpus = make_raw({"satu dua", "tiga empat"});
        corpus.documents[0].matched_keyword = "bukalapak";
        const LabeledCorpus labeled = apply_labels(
            corpus, {{"d0", Label::Positive}, {"d1", Label::Negative}, {"zz", Label::Positive}});
        REQUIRE(labeled.size() == 2);
        CHECK(labeled.documents[0].label == Label::Positive);
        CHECK(labeled.documents[0].brand == "bukalapak");
        CHECK_THROWS_AS(apply_labels(corpus, {{"d0", Label::Positive}}), DataError);
    }
}
