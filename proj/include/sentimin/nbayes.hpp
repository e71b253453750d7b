#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "sentimin/corpus.hpp"
#include "sentimin/features.hpp"

namespace sentimin {

struct TokenizedDoc {
    std::vector<Token> tokens;
    Label label = Label::Positive;
};

// TokenCounts is the canonical multinomial model over raw in-vocabulary
// token counts. TfidfWeights treats each document's TF-IDF weights as
// fractional counts instead; experimental, off by default.
enum class EventModel { TokenCounts, TfidfWeights };

// Two-class multinomial NB in log space. Label order is fixed: index 0 is
// Positive, index 1 is Negative (also the tie-break order).
struct NbModel {
    double alpha = 1.0;
    Vocabulary vocab;
    std::array<double, 2> class_log_prior{};
    std::array<std::vector<double>, 2> cond_log_prob; // aligned with vocab terms
};

// class_log_prior(c) = ln(N_c / N);
// cond_log_prob(c, w) = ln((count(w,c) + alpha) / (count_all(c) + alpha*|V|)).
NbModel train(std::span<const TokenizedDoc> docs, const Vocabulary& vocab, double alpha = 1.0,
              EventModel event_model = EventModel::TokenCounts);

// score(c) = prior(c) + sum over distinct in-vocabulary tokens of
// count * cond_log_prob(c, t). Accumulated in vocabulary-index order so the
// result is bag-of-words: bit-identical under token reordering.
std::array<double, 2> log_posterior(const NbModel& model, std::span<const Token> tokens);

struct Prediction {
    Label label = Label::Positive;
    std::array<double, 2> log_score{};
    std::array<double, 2> posterior{};
};

// Argmax of log_posterior; exact ties go to Positive. Posteriors via
// max-subtracted exp-normalization.
Prediction classify(const NbModel& model, std::span<const Token> tokens);

nlohmann::json model_to_json(const NbModel& model);
NbModel model_from_json(const nlohmann::json& j);

void save_model(const NbModel& model, const std::filesystem::path& path);
NbModel load_model(const std::filesystem::path& path);

} // namespace sentimin
