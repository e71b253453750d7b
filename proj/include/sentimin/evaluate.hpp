#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentimin/corpus.hpp"
#include "sentimin/features.hpp"
#include "sentimin/nbayes.hpp"

namespace sentimin {

// Standard convention: rows are predictions, columns are actual labels.
// tp = predicted Positive & actually Positive, fp = predicted Positive &
// actually Negative, fn = predicted Negative & actually Positive.
struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
    void add(Label predicted, Label actual);
};

ConfusionMatrix operator+(const ConfusionMatrix& a, const ConfusionMatrix& b);

// A metric whose denominator is zero is reported as nullopt ("undefined"),
// never as 0.
struct MetricsReport {
    double accuracy = 0.0;
    std::optional<double> precision_pos;
    std::optional<double> precision_neg;
    std::optional<double> recall_pos;
    std::optional<double> recall_neg;
    std::optional<double> macro_precision;
    std::optional<double> macro_recall;
    std::optional<double> kappa; // Cohen's, (Po - Pe) / (1 - Pe)
};

MetricsReport metrics(const ConfusionMatrix& cm);

ConfusionMatrix confusion_matrix(std::span<const Label> predictions,
                                 std::span<const Label> truths);

// Stratified fold assignment: within each class, documents are shuffled by a
// seeded generator and dealt round-robin, so per-class fold sizes differ by
// at most one.
struct FoldPlan {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> assignments; // per document, in corpus order
};

FoldPlan kfold_split(std::span<const Label> labels, int k, std::uint64_t seed);

struct FoldReport {
    ConfusionMatrix matrix;
    MetricsReport metrics;
};

struct CvConfig {
    PrepConfig prep;
    PruneBounds bounds;
    double alpha = 1.0;
    EventModel event_model = EventModel::TokenCounts;
    int k = 10;
    std::uint64_t seed = 42;
    bool parallel_folds = false;
};

struct CvResult {
    FoldPlan plan;
    ConfusionMatrix aggregate; // element-wise sum of the fold matrices
    MetricsReport metrics;     // derived from the aggregate
    std::vector<FoldReport> folds;
};

// For each fold: vocabulary and pruning are rebuilt from the training folds
// only, the model is trained there and the held-out fold classified. The
// parallel path must be bit-identical to the sequential one.
CvResult cross_validate(const LabeledCorpus& corpus, const CvConfig& config);

nlohmann::json metrics_to_json(const MetricsReport& m);
nlohmann::json matrix_to_json(const ConfusionMatrix& cm);
nlohmann::json cv_report_json(const CvResult& result);

// Plain-text table: predicted-vs-actual counts with class precision/recall
// margins, then the summary metrics.
std::string metrics_table_text(const ConfusionMatrix& cm, const MetricsReport& m);

} // namespace sentimin
