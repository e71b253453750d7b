#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentimin/corpus.hpp"

namespace sentimin {

// One classified document attributed to a brand; empty brand means
// unattributed.
struct BrandedLabel {
    std::string brand;
    Label label = Label::Positive;
};

struct BrandSummary {
    std::string brand;
    std::int64_t n_classified = 0; // positive + negative
    std::int64_t positive = 0;
    std::int64_t negative = 0;
    double positive_pct = 0.0; // fractions in [0,1]; display rounds to 1 decimal
    double negative_pct = 0.0;
};

struct BrandReport {
    std::vector<BrandSummary> summaries; // brand-lexicographic before ranking
    std::vector<std::string> warnings;
};

inline constexpr const char* kUnattributedBrand = "unattributed";

// One summary per brand seen in the predictions; unbranded predictions fall
// into the "unattributed" bucket with a warning. expected_brands that end up
// with zero documents are excluded, also with a warning.
BrandReport summarize_brand(std::span<const BrandedLabel> predictions,
                            std::span<const std::string> expected_brands = {});

BrandSummary make_brand_summary(std::string brand, std::int64_t positive, std::int64_t negative);

// Descending by positive_pct at full precision; ties broken by larger
// n_classified, then brand name.
std::vector<BrandSummary> rank_by_satisfaction(std::vector<BrandSummary> summaries);

nlohmann::json brand_summaries_json(const std::vector<BrandSummary>& summaries);
std::string brand_table_text(const std::vector<BrandSummary>& summaries);

// "45.9%" style: fraction rendered as a percentage with one decimal.
std::string format_pct(double fraction);

} // namespace sentimin
