#include "sentimin/evaluate.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "sentimin/error.hpp"
#include "sentimin/rng.hpp"

namespace sentimin {

using nlohmann::json;

void ConfusionMatrix::add(Label predicted, Label actual) {
    if (predicted == Label::Positive) {
        (actual == Label::Positive ? tp : fp) += 1;
    } else {
        (actual == Label::Positive ? fn : tn) += 1;
    }
}

ConfusionMatrix operator+(const ConfusionMatrix& a, const ConfusionMatrix& b) {
    return ConfusionMatrix{a.tp + b.tp, a.fp + b.fp, a.fn + b.fn, a.tn + b.tn};
}

MetricsReport metrics(const ConfusionMatrix& cm) {
    if (cm.total() <= 0) {
        throw DataError("confusion matrix is empty");
    }
    const auto ratio = [](std::int64_t num, std::int64_t den) -> std::optional<double> {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    };
    const auto mean = [](std::optional<double> a,
                         std::optional<double> b) -> std::optional<double> {
        if (!a || !b) return std::nullopt;
        return (*a + *b) / 2.0;
    };

    MetricsReport m;
    const double total = static_cast<double>(cm.total());
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / total;
    m.precision_pos = ratio(cm.tp, cm.tp + cm.fp);
    m.precision_neg = ratio(cm.tn, cm.tn + cm.fn);
    m.recall_pos = ratio(cm.tp, cm.tp + cm.fn);
    m.recall_neg = ratio(cm.tn, cm.tn + cm.fp);
    m.macro_precision = mean(m.precision_pos, m.precision_neg);
    m.macro_recall = mean(m.recall_pos, m.recall_neg);

    // Chance agreement from the row/column marginals.
    const double pe = (static_cast<double>(cm.tp + cm.fp) * static_cast<double>(cm.tp + cm.fn) +
                       static_cast<double>(cm.fn + cm.tn) * static_cast<double>(cm.fp + cm.tn)) /
                      (total * total);
    if (pe != 1.0) {
        m.kappa = (m.accuracy - pe) / (1.0 - pe);
    }
    return m;
}

ConfusionMatrix confusion_matrix(std::span<const Label> predictions,
                                 std::span<const Label> truths) {
    if (predictions.size() != truths.size()) {
        throw DataError("predictions and truths differ in length (" +
                        std::to_string(predictions.size()) + " vs " +
                        std::to_string(truths.size()) + ")");
    }
    if (predictions.empty()) {
        throw DataError("cannot build a confusion matrix from zero observations");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        cm.add(predictions[i], truths[i]);
    }
    return cm;
}

FoldPlan kfold_split(std::span<const Label> labels, int k, std::uint64_t seed) {
    if (k < 2) {
        throw ConfigError("k must be >= 2");
    }
    std::array<std::vector<std::size_t>, 2> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_label[label_index(labels[i])].push_back(i);
    }
    for (Label l : {Label::Positive, Label::Negative}) {
        const std::size_t have = by_label[label_index(l)].size();
        if (have < static_cast<std::size_t>(k)) {
            throw DataError("class " + std::string(to_string(l)) + " has " +
                            std::to_string(have) + " documents, fewer than k=" +
                            std::to_string(k));
        }
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(labels.size(), 0);
    DeterministicRng rng(seed);
    for (auto& idx : by_label) {
        rng.shuffle(idx);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            plan.assignments[idx[j]] = static_cast<int>(j % static_cast<std::size_t>(k));
        }
    }
    return plan;
}

namespace {

FoldReport run_fold(const std::vector<TokenizedDoc>& docs, const FoldPlan& plan, int fold,
                    const CvConfig& config) {
    std::vector<std::vector<Token>> train_tokens;
    std::vector<TokenizedDoc> train_docs;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (plan.assignments[i] != fold) {
            train_tokens.push_back(docs[i].tokens);
            train_docs.push_back(docs[i]);
        }
    }
    const Vocabulary vocab = prune_by_df(build_vocabulary(train_tokens), config.bounds);
    const NbModel model = train(train_docs, vocab, config.alpha, config.event_model);

    FoldReport report;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (plan.assignments[i] == fold) {
            report.matrix.add(classify(model, docs[i].tokens).label, docs[i].label);
        }
    }
    report.metrics = metrics(report.matrix);
    return report;
}

} // namespace

CvResult cross_validate(const LabeledCorpus& corpus, const CvConfig& config) {
    std::vector<Label> labels;
    labels.reserve(corpus.size());
    for (const LabeledDocument& doc : corpus.documents) {
        labels.push_back(doc.label);
    }

    CvResult result;
    result.plan = kfold_split(labels, config.k, config.seed);

    std::vector<TokenizedDoc> docs;
    docs.reserve(corpus.size());
    for (const LabeledDocument& doc : corpus.documents) {
        docs.push_back(TokenizedDoc{preprocess(doc.text, config.prep), doc.label});
    }

    result.folds.resize(static_cast<std::size_t>(config.k));
    if (config.parallel_folds) {
        std::vector<std::future<FoldReport>> futures;
        futures.reserve(result.folds.size());
        for (int fold = 0; fold < config.k; ++fold) {
            futures.push_back(std::async(std::launch::async, run_fold, std::cref(docs),
                                         std::cref(result.plan), fold, std::cref(config)));
        }
        for (int fold = 0; fold < config.k; ++fold) {
            result.folds[static_cast<std::size_t>(fold)] =
                futures[static_cast<std::size_t>(fold)].get();
        }
    } else {
        for (int fold = 0; fold < config.k; ++fold) {
            result.folds[static_cast<std::size_t>(fold)] =
                run_fold(docs, result.plan, fold, config);
        }
    }

    for (const FoldReport& fold : result.folds) {
        result.aggregate = result.aggregate + fold.matrix;
    }
    result.metrics = metrics(result.aggregate);
    return result;
}

json metrics_to_json(const MetricsReport& m) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    return json{{"accuracy", m.accuracy},
                {"precision_pos", opt(m.precision_pos)},
                {"precision_neg", opt(m.precision_neg)},
                {"recall_pos", opt(m.recall_pos)},
                {"recall_neg", opt(m.recall_neg)},
                {"macro_precision", opt(m.macro_precision)},
                {"macro_recall", opt(m.macro_recall)},
                {"kappa", opt(m.kappa)}};
}

json matrix_to_json(const ConfusionMatrix& cm) {
    return json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

json cv_report_json(const CvResult& result) {
    json folds = json::array();
    for (std::size_t i = 0; i < result.folds.size(); ++i) {
        folds.push_back(json{{"fold", i},
                             {"matrix", matrix_to_json(result.folds[i].matrix)},
                             {"metrics", metrics_to_json(result.folds[i].metrics)}});
    }
    return json{{"k", result.plan.k},
                {"seed", result.plan.seed},
                {"aggregate_matrix", matrix_to_json(result.aggregate)},
                {"metrics", metrics_to_json(result.metrics)},
                {"folds", std::move(folds)}};
}

namespace {

std::string pct(const std::optional<double>& v) {
    if (!v) return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", *v * 100.0);
    return buf;
}

std::string num3(const std::optional<double>& v) {
    if (!v) return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return buf;
}

} // namespace

std::string metrics_table_text(const ConfusionMatrix& cm, const MetricsReport& m) {
    std::ostringstream out;
    const auto row = [&](const std::string& a, const std::string& b, const std::string& c,
                         const std::string& d) {
        out << a;
        for (std::size_t n = a.size(); n < 16; ++n) out << ' ';
        out << b;
        for (std::size_t n = b.size(); n < 12; ++n) out << ' ';
        out << c;
        for (std::size_t n = c.size(); n < 12; ++n) out << ' ';
        out << d << '\n';
    };
    row("", "Positive", "Negative", "Class Precision");
    row("Pred. Positive", std::to_string(cm.tp), std::to_string(cm.fp), pct(m.precision_pos));
    row("Pred. Negative", std::to_string(cm.fn), std::to_string(cm.tn), pct(m.precision_neg));
    row("Class Recall", pct(m.recall_pos), pct(m.recall_neg), "");
    out << '\n';
    out << "accuracy:         " << pct(m.accuracy) << '\n';
    out << "macro precision:  " << pct(m.macro_precision) << '\n';
    out << "macro recall:     " << pct(m.macro_recall) << '\n';
    out << "kappa:            " << num3(m.kappa) << '\n';
    return out.str();
}

} // namespace sentimin
