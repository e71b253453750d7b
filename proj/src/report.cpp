#include "sentimin/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "sentimin/error.hpp"

namespace sentimin {

using nlohmann::json;

BrandSummary make_brand_summary(std::string brand, std::int64_t positive, std::int64_t negative) {
    if (positive < 0 || negative < 0 || positive + negative == 0) {
        throw DataError("brand summary needs non-negative counts with a positive total");
    }
    BrandSummary s;
    s.brand = std::move(brand);
    s.positive = positive;
    s.negative = negative;
    s.n_classified = positive + negative;
    s.positive_pct = static_cast<double>(positive) / static_cast<double>(s.n_classified);
    s.negative_pct = static_cast<double>(negative) / static_cast<double>(s.n_classified);
    return s;
}

BrandReport summarize_brand(std::span<const BrandedLabel> predictions,
                            std::span<const std::string> expected_brands) {
    std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts; // brand -> (pos, neg)
    std::int64_t unattributed = 0;
    for (const BrandedLabel& p : predictions) {
        const std::string& brand = p.brand.empty() ? kUnattributedBrand : p.brand;
        if (p.brand.empty()) ++unattributed;
        auto& [pos, neg] = counts[brand];
        (p.label == Label::Positive ? pos : neg) += 1;
    }

    BrandReport report;
    if (unattributed > 0) {
        report.warnings.push_back(std::to_string(unattributed) +
                                  " prediction(s) carry no brand; counted as '" +
                                  std::string(kUnattributedBrand) + "'");
    }
    for (const std::string& brand : expected_brands) {
        if (counts.find(brand) == counts.end()) {
            report.warnings.push_back("brand '" + brand + "' has zero classified documents; omitted");
        }
    }
    for (const auto& [brand, pn] : counts) {
        report.summaries.push_back(make_brand_summary(brand, pn.first, pn.second));
    }
    return report;
}

std::vector<BrandSummary> rank_by_satisfaction(std::vector<BrandSummary> summaries) {
    std::sort(summaries.begin(), summaries.end(), [](const BrandSummary& a, const BrandSummary& b) {
        if (a.positive_pct != b.positive_pct) return a.positive_pct > b.positive_pct;
        if (a.n_classified != b.n_classified) return a.n_classified > b.n_classified;
        return a.brand < b.brand;
    });
    return summaries;
}

json brand_summaries_json(const std::vector<BrandSummary>& summaries) {
    json out = json::array();
    for (const BrandSummary& s : summaries) {
        out.push_back(json{{"brand", s.brand},
                           {"n_classified", s.n_classified},
                           {"positive", s.positive},
                           {"negative", s.negative},
                           {"positive_pct", s.positive_pct},
                           {"negative_pct", s.negative_pct}});
    }
    return out;
}

std::string format_pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
    return buf;
}

std::string brand_table_text(const std::vector<BrandSummary>& summaries) {
    std::ostringstream out;
    const auto row = [&](const std::string& a, const std::string& b, const std::string& c,
                         const std::string& d) {
        out << a;
        for (std::size_t n = a.size(); n < 16; ++n) out << ' ';
        out << b;
        for (std::size_t n = b.size(); n < 12; ++n) out << ' ';
        out << c;
        for (std::size_t n = c.size(); n < 16; ++n) out << ' ';
        out << d << '\n';
    };
    row("Brand", "Classified", "Positive", "Negative");
    for (const BrandSummary& s : summaries) {
        row(s.brand, std::to_string(s.n_classified),
            std::to_string(s.positive) + " (" + format_pct(s.positive_pct) + ")",
            std::to_string(s.negative) + " (" + format_pct(s.negative_pct) + ")");
    }
    return out.str();
}

} // namespace sentimin
