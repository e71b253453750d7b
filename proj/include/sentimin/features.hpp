#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "sentimin/textprep.hpp"

namespace sentimin {

// Inclusive document-frequency-ratio window for vocabulary pruning.
struct PruneBounds {
    double min_df_ratio = 0.0099;
    double max_df_ratio = 0.90;
};

void validate(const PruneBounds& bounds); // 0 <= min <= max <= 1

// Ordered term set with per-term document frequencies. Terms are unique and
// lexicographically sorted; 1 <= df <= n_docs for every term.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::int64_t> df,
               std::int64_t n_docs);

    const std::vector<std::string>& terms() const { return terms_; }
    std::int64_t df(std::size_t i) const { return df_[i]; }
    std::int64_t n_docs() const { return n_docs_; }
    std::size_t size() const { return terms_.size(); }
    std::optional<std::size_t> index_of(const std::string& term) const;

private:
    std::vector<std::string> terms_;
    std::vector<std::int64_t> df_;
    std::int64_t n_docs_ = 0;
    std::unordered_map<std::string, std::size_t> index_;
};

Vocabulary build_vocabulary(std::span<const std::vector<Token>> docs);

// Keeps terms with min_df_ratio <= df/n_docs <= max_df_ratio, both ends
// inclusive; n_docs is unchanged.
Vocabulary prune_by_df(const Vocabulary& vocab, const PruneBounds& bounds);

// ln(n_docs / df). df >= 1 is guaranteed for in-vocabulary terms.
double idf(const Vocabulary& vocab, const std::string& term);

// Sparse TF-IDF vector; zero weights are omitted, out-of-vocabulary tokens
// are ignored. Ordered map so iteration (and JSON output) is deterministic.
using DocVector = std::map<std::string, double>;

DocVector tfidf_vector(std::span<const Token> tokens, const Vocabulary& vocab);

// Persistence format: {"n_docs": N, "terms": [{"term": t, "df": n}, ...]}.
nlohmann::json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& j);

} // namespace sentimin
