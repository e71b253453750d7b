#include "sentimin/nbayes.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sentimin/error.hpp"
#include "sentimin/io_util.hpp"

namespace sentimin {

using nlohmann::json;

NbModel train(std::span<const TokenizedDoc> docs, const Vocabulary& vocab, double alpha,
              EventModel event_model) {
    if (!(alpha > 0.0)) {
        throw ConfigError("smoothing alpha must be > 0");
    }
    if (vocab.size() == 0) {
        throw DataError("cannot train on an empty vocabulary");
    }

    std::array<std::int64_t, 2> n_docs_per_class{};
    std::array<std::vector<double>, 2> counts;
    counts[0].assign(vocab.size(), 0.0);
    counts[1].assign(vocab.size(), 0.0);

    for (const TokenizedDoc& doc : docs) {
        const std::size_t c = label_index(doc.label);
        ++n_docs_per_class[c];
        if (event_model == EventModel::TokenCounts) {
            for (const Token& t : doc.tokens) {
                if (auto idx = vocab.index_of(t)) {
                    counts[c][*idx] += 1.0;
                }
            }
        } else {
            for (const auto& [term, weight] : tfidf_vector(doc.tokens, vocab)) {
                counts[c][*vocab.index_of(term)] += weight;
            }
        }
    }

    for (Label l : {Label::Positive, Label::Negative}) {
        if (n_docs_per_class[label_index(l)] == 0) {
            throw DataError("training data has no " + std::string(to_string(l)) + " documents");
        }
    }

    NbModel model;
    model.alpha = alpha;
    model.vocab = vocab;
    const double n_total = static_cast<double>(docs.size());
    for (std::size_t c = 0; c < 2; ++c) {
        model.class_log_prior[c] = std::log(static_cast<double>(n_docs_per_class[c]) / n_total);
        double count_all = 0.0;
        for (double v : counts[c]) count_all += v;
        const double denom = count_all + alpha * static_cast<double>(vocab.size());
        model.cond_log_prob[c].resize(vocab.size());
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            model.cond_log_prob[c][i] = std::log((counts[c][i] + alpha) / denom);
        }
    }
    return model;
}

std::array<double, 2> log_posterior(const NbModel& model, std::span<const Token> tokens) {
    // Counts keyed by vocabulary index: summation order is then independent
    // of token order.
    std::map<std::size_t, std::int64_t> counts;
    for (const Token& t : tokens) {
        if (auto idx = model.vocab.index_of(t)) {
            ++counts[*idx];
        }
    }
    std::array<double, 2> score = model.class_log_prior;
    for (const auto& [idx, count] : counts) {
        const double n = static_cast<double>(count);
        score[0] += n * model.cond_log_prob[0][idx];
        score[1] += n * model.cond_log_prob[1][idx];
    }
    return score;
}

Prediction classify(const NbModel& model, std::span<const Token> tokens) {
    Prediction pred;
    pred.log_score = log_posterior(model, tokens);
    pred.label = pred.log_score[0] >= pred.log_score[1] ? Label::Positive : Label::Negative;
    const double m = std::max(pred.log_score[0], pred.log_score[1]);
    const double e0 = std::exp(pred.log_score[0] - m);
    const double e1 = std::exp(pred.log_score[1] - m);
    pred.posterior[0] = e0 / (e0 + e1);
    pred.posterior[1] = e1 / (e0 + e1);
    return pred;
}

json model_to_json(const NbModel& model) {
    return json{{"alpha", model.alpha},
                {"labels", json::array({"positive", "negative"})},
                {"log_priors", json::array({model.class_log_prior[0], model.class_log_prior[1]})},
                {"vocab_ref", vocabulary_to_json(model.vocab)},
                {"cond_log_prob", json{{"positive", model.cond_log_prob[0]},
                                       {"negative", model.cond_log_prob[1]}}}};
}

NbModel model_from_json(const json& j) {
    const auto fail = [](const std::string& what) -> NbModel {
        throw IoError("invalid model JSON: " + what);
    };
    if (!j.is_object()) return fail("not an object");
    for (const char* key : {"alpha", "labels", "log_priors", "vocab_ref", "cond_log_prob"}) {
        if (!j.contains(key)) return fail(std::string("missing field '") + key + "'");
    }
    if (j["labels"] != json::array({"positive", "negative"})) {
        return fail("labels must be [\"positive\", \"negative\"]");
    }
    if (!j["log_priors"].is_array() || j["log_priors"].size() != 2) {
        return fail("log_priors must hold exactly two values");
    }

    NbModel model;
    if (!j["alpha"].is_number()) return fail("alpha must be a number");
    model.alpha = j["alpha"].get<double>();
    model.vocab = vocabulary_from_json(j["vocab_ref"]);
    model.class_log_prior[0] = j["log_priors"][0].get<double>();
    model.class_log_prior[1] = j["log_priors"][1].get<double>();

    const json& cond = j["cond_log_prob"];
    if (!cond.is_object() || !cond.contains("positive") || !cond.contains("negative")) {
        return fail("cond_log_prob must hold 'positive' and 'negative' arrays");
    }
    model.cond_log_prob[0] = cond["positive"].get<std::vector<double>>();
    model.cond_log_prob[1] = cond["negative"].get<std::vector<double>>();
    if (model.cond_log_prob[0].size() != model.vocab.size() ||
        model.cond_log_prob[1].size() != model.vocab.size()) {
        return fail("cond_log_prob arrays must match the vocabulary size");
    }
    return model;
}

void save_model(const NbModel& model, const std::filesystem::path& path) {
    atomic_write_text(path, model_to_json(model).dump(2) + "\n");
}

NbModel load_model(const std::filesystem::path& path) {
    const std::string content = read_text_file(path);
    const json j = json::parse(content, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
        throw IoError("model file " + path.string() + " is not valid JSON");
    }
    try {
        return model_from_json(j);
    } catch (const IoError& e) {
        throw IoError("model file " + path.string() + ": " + e.what());
    }
}

} // namespace sentimin
