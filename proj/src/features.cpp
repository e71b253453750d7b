#include "sentimin/features.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sentimin/error.hpp"

namespace sentimin {

using nlohmann::json;

void validate(const PruneBounds& bounds) {
    if (!(bounds.min_df_ratio >= 0.0) || !(bounds.max_df_ratio <= 1.0) ||
        !(bounds.min_df_ratio <= bounds.max_df_ratio)) {
        throw ConfigError("prune bounds must satisfy 0 <= min_df_ratio <= max_df_ratio <= 1");
    }
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::int64_t> df,
                       std::int64_t n_docs)
    : terms_(std::move(terms)), df_(std::move(df)), n_docs_(n_docs) {
    if (terms_.size() != df_.size()) {
        throw DataError("vocabulary term/df size mismatch");
    }
    if (!std::is_sorted(terms_.begin(), terms_.end()) ||
        std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end()) {
        throw DataError("vocabulary terms must be sorted and unique");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (df_[i] < 1 || df_[i] > n_docs_) {
            throw DataError("vocabulary df out of range for term '" + terms_[i] + "'");
        }
        index_.emplace(terms_[i], i);
    }
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vocabulary build_vocabulary(std::span<const std::vector<Token>> docs) {
    if (docs.empty()) {
        throw DataError("cannot build a vocabulary from an empty corpus");
    }
    std::map<std::string, std::int64_t> df; // sorted, so terms come out lexicographic
    std::unordered_set<std::string> seen_in_doc;
    for (const std::vector<Token>& doc : docs) {
        seen_in_doc.clear();
        for (const Token& t : doc) {
            if (seen_in_doc.insert(t).second) {
                ++df[t];
            }
        }
    }
    std::vector<std::string> terms;
    std::vector<std::int64_t> counts;
    terms.reserve(df.size());
    counts.reserve(df.size());
    for (auto& [term, count] : df) {
        terms.push_back(term);
        counts.push_back(count);
    }
    return Vocabulary(std::move(terms), std::move(counts),
                      static_cast<std::int64_t>(docs.size()));
}

Vocabulary prune_by_df(const Vocabulary& vocab, const PruneBounds& bounds) {
    validate(bounds);
    std::vector<std::string> terms;
    std::vector<std::int64_t> df;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const double ratio =
            static_cast<double>(vocab.df(i)) / static_cast<double>(vocab.n_docs());
        if (ratio >= bounds.min_df_ratio && ratio <= bounds.max_df_ratio) {
            terms.push_back(vocab.terms()[i]);
            df.push_back(vocab.df(i));
        }
    }
    return Vocabulary(std::move(terms), std::move(df), vocab.n_docs());
}

double idf(const Vocabulary& vocab, const std::string& term) {
    const auto idx = vocab.index_of(term);
    if (!idx) {
        throw DataError("unknown term '" + term + "'");
    }
    return std::log(static_cast<double>(vocab.n_docs()) / static_cast<double>(vocab.df(*idx)));
}

DocVector tfidf_vector(std::span<const Token> tokens, const Vocabulary& vocab) {
    std::map<std::size_t, std::int64_t> counts;
    for (const Token& t : tokens) {
        if (auto idx = vocab.index_of(t)) {
            ++counts[*idx];
        }
    }
    DocVector vec;
    for (const auto& [idx, count] : counts) {
        const double weight =
            static_cast<double>(count) * std::log(static_cast<double>(vocab.n_docs()) /
                                                  static_cast<double>(vocab.df(idx)));
        if (weight != 0.0) {
            vec.emplace(vocab.terms()[idx], weight);
        }
    }
    return vec;
}

json vocabulary_to_json(const Vocabulary& vocab) {
    json terms = json::array();
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        terms.push_back(json{{"term", vocab.terms()[i]}, {"df", vocab.df(i)}});
    }
    return json{{"n_docs", vocab.n_docs()}, {"terms", std::move(terms)}};
}

Vocabulary vocabulary_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n_docs") || !j.contains("terms") ||
        !j["terms"].is_array()) {
        throw IoError("vocabulary JSON must be {n_docs, terms: [...]}");
    }
    std::vector<std::string> terms;
    std::vector<std::int64_t> df;
    for (const json& entry : j["terms"]) {
        if (!entry.is_object() || !entry.contains("term") || !entry.contains("df") ||
            !entry["term"].is_string() || !entry["df"].is_number_integer()) {
            throw IoError("vocabulary term entries must be {term, df}");
        }
        terms.push_back(entry["term"].get<std::string>());
        df.push_back(entry["df"].get<std::int64_t>());
    }
    try {
        return Vocabulary(std::move(terms), std::move(df), j["n_docs"].get<std::int64_t>());
    } catch (const DataError& e) {
        throw IoError(std::string("invalid vocabulary JSON: ") + e.what());
    }
}

} // namespace sentimin
