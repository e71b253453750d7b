#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sentimin/textprep.hpp"

namespace sentimin {

enum class Label { Positive, Negative };

constexpr std::size_t label_index(Label l) {
    return l == Label::Positive ? 0 : 1;
}

std::string_view to_string(Label l);
std::optional<Label> parse_label(std::string_view text); // case-insensitive

// One message from an exported social-media dump. Optional fields default
// to empty strings.
struct RawPost {
    std::string id;
    std::string text;
    std::string author;
    std::string timestamp;
    std::string matched_keyword;
};

// A document ready for training/classification. brand is empty when the
// document is unattributed.
struct LabeledDocument {
    std::string id;
    std::string text;
    Label label = Label::Positive;
    std::string brand;
};

template <typename DocT>
struct Corpus {
    std::vector<DocT> documents; // insertion order, unique ids
    std::string provenance;

    std::size_t size() const { return documents.size(); }
    bool empty() const { return documents.empty(); }
};

using RawCorpus = Corpus<RawPost>;
using LabeledCorpus = Corpus<LabeledDocument>;

struct IngestReport {
    std::size_t read = 0; // non-blank lines seen
    std::size_t kept = 0;
    std::vector<std::size_t> malformed_lines; // 1-based line numbers
    std::size_t duplicates_removed = 0;
};

struct IngestResult {
    RawCorpus corpus;
    IngestReport report;
};

// Reads a JSONL dump (fields: id and text required; author, timestamp,
// matched_keyword, brand optional). Malformed lines are collected in the
// report, not dropped silently; a repeated id is a hard error.
IngestResult ingest_jsonl(const std::filesystem::path& path);

// Case-insensitive substring match on text or matched_keyword; a retained
// post gets matched_keyword set to the first keyword that hit.
RawCorpus filter_by_keywords(const RawCorpus& corpus, const std::vector<std::string>& keywords);

template <typename DocT>
struct DedupResult {
    Corpus<DocT> corpus;
    std::size_t removed = 0;
};

// Keeps the first document of each duplicate group. The duplicate key is the
// text after case folding and whitespace collapsing.
template <typename DocT>
DedupResult<DocT> deduplicate(const Corpus<DocT>& corpus) {
    DedupResult<DocT> result;
    result.corpus.provenance = corpus.provenance;
    std::unordered_set<std::string> seen;
    for (const DocT& doc : corpus.documents) {
        std::string key = collapse_whitespace(case_fold(doc.text));
        if (seen.insert(std::move(key)).second) {
            result.corpus.documents.push_back(doc);
        } else {
            ++result.removed;
        }
    }
    return result;
}

struct TrainTestSplit {
    LabeledCorpus train;
    LabeledCorpus test;
};

// Samples n_per_class documents of each label without replacement (seeded,
// deterministic); both partitions keep the corpus order.
TrainTestSplit split_train_test(const LabeledCorpus& corpus, std::size_t n_per_class,
                                std::uint64_t seed);

// Strict readers/writers for artifact-produced files. A malformed line or
// missing label is an error here, unlike ingest_jsonl.
LabeledCorpus read_labeled_jsonl(const std::filesystem::path& path);

std::string to_jsonl(const RawCorpus& corpus);
std::string to_jsonl(const LabeledCorpus& corpus);
void write_jsonl(const RawCorpus& corpus, const std::filesystem::path& path);
void write_jsonl(const LabeledCorpus& corpus, const std::filesystem::path& path);

// CSV label file: columns id,label (header row optional), label in
// {positive, negative}, case-insensitive.
std::vector<std::pair<std::string, Label>> read_labels_csv(const std::filesystem::path& path);

// Joins CSV labels onto a raw corpus by id. Every document must end up
// labeled; CSV rows for unknown ids are ignored.
LabeledCorpus apply_labels(const RawCorpus& corpus,
                           const std::vector<std::pair<std::string, Label>>& labels);

} // namespace sentimin
