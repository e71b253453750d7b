#include "sentimin/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "sentimin/error.hpp"
#include "sentimin/io_util.hpp"
#include "sentimin/rng.hpp"

namespace sentimin {

using nlohmann::json;

std::string_view to_string(Label l) {
    return l == Label::Positive ? "positive" : "negative";
}

std::optional<Label> parse_label(std::string_view text) {
    std::string folded = case_fold(text);
    if (folded == "positive") return Label::Positive;
    if (folded == "negative") return Label::Negative;
    return std::nullopt;
}

namespace {

struct JsonlRecord {
    std::string id;
    std::string text;
    std::string author;
    std::string timestamp;
    std::string matched_keyword;
    std::string brand;
    std::optional<Label> label;
};

// Returns nullopt when the line is not a usable record (not an object,
// missing/empty id or text, or a wrongly typed field).
std::optional<JsonlRecord> parse_record(std::string_view line) {
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;

    const auto get_string = [&](const char* key, std::string& out) -> bool {
        auto it = j.find(key);
        if (it == j.end()) return true; // absent is fine
        if (!it->is_string()) return false;
        out = it->get<std::string>();
        return true;
    };

    JsonlRecord rec;
    if (!get_string("id", rec.id) || !get_string("text", rec.text) ||
        !get_string("author", rec.author) || !get_string("timestamp", rec.timestamp) ||
        !get_string("matched_keyword", rec.matched_keyword) || !get_string("brand", rec.brand)) {
        return std::nullopt;
    }
    if (rec.id.empty() || collapse_whitespace(rec.text).empty()) return std::nullopt;

    if (auto it = j.find("label"); it != j.end()) {
        if (!it->is_string()) return std::nullopt;
        rec.label = parse_label(it->get<std::string>());
        if (!rec.label) return std::nullopt;
    }
    return rec;
}

bool blank_line(std::string_view line) {
    return collapse_whitespace(line).empty();
}

} // namespace

IngestResult ingest_jsonl(const std::filesystem::path& path) {
    std::string content = read_text_file(path);
    IngestResult result;
    result.corpus.provenance = path.string();

    std::unordered_set<std::string> ids;
    std::istringstream lines(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (blank_line(line)) continue;
        ++result.report.read;
        std::optional<JsonlRecord> rec = parse_record(line);
        if (!rec) {
            result.report.malformed_lines.push_back(line_no);
            continue;
        }
        if (!ids.insert(rec->id).second) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": duplicate id '" +
                            rec->id + "'");
        }
        result.corpus.documents.push_back(RawPost{
            std::move(rec->id), std::move(rec->text), std::move(rec->author),
            std::move(rec->timestamp), std::move(rec->matched_keyword)});
        ++result.report.kept;
    }
    return result;
}

RawCorpus filter_by_keywords(const RawCorpus& corpus, const std::vector<std::string>& keywords) {
    if (keywords.empty()) {
        throw ConfigError("keyword list is empty");
    }
    std::vector<std::string> folded;
    folded.reserve(keywords.size());
    for (const std::string& kw : keywords) {
        std::string f = case_fold(kw);
        if (f.empty()) {
            throw ConfigError("keyword list contains an empty keyword");
        }
        folded.push_back(std::move(f));
    }

    RawCorpus out;
    out.provenance = corpus.provenance;
    for (const RawPost& post : corpus.documents) {
        const std::string text = case_fold(post.text);
        const std::string tagged = case_fold(post.matched_keyword);
        for (std::size_t k = 0; k < folded.size(); ++k) {
            if (text.find(folded[k]) != std::string::npos ||
                (!tagged.empty() && tagged.find(folded[k]) != std::string::npos)) {
                RawPost kept = post;
                kept.matched_keyword = keywords[k];
                out.documents.push_back(std::move(kept));
                break;
            }
        }
    }
    return out;
}

TrainTestSplit split_train_test(const LabeledCorpus& corpus, std::size_t n_per_class,
                                std::uint64_t seed) {
    std::array<std::vector<std::size_t>, 2> by_label;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        by_label[label_index(corpus.documents[i].label)].push_back(i);
    }
    for (Label l : {Label::Positive, Label::Negative}) {
        const auto& idx = by_label[label_index(l)];
        if (idx.size() < n_per_class) {
            throw DataError("insufficient " + std::string(to_string(l)) + " documents: have " +
                            std::to_string(idx.size()) + ", need " + std::to_string(n_per_class));
        }
    }

    DeterministicRng rng(seed);
    std::vector<bool> in_train(corpus.documents.size(), false);
    for (auto& idx : by_label) {
        rng.shuffle(idx);
        for (std::size_t i = 0; i < n_per_class; ++i) {
            in_train[idx[i]] = true;
        }
    }

    TrainTestSplit split;
    split.train.provenance = corpus.provenance;
    split.test.provenance = corpus.provenance;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        (in_train[i] ? split.train : split.test).documents.push_back(corpus.documents[i]);
    }
    return split;
}

LabeledCorpus read_labeled_jsonl(const std::filesystem::path& path) {
    std::string content = read_text_file(path);
    LabeledCorpus corpus;
    corpus.provenance = path.string();

    std::unordered_set<std::string> ids;
    std::istringstream lines(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (blank_line(line)) continue;
        std::optional<JsonlRecord> rec = parse_record(line);
        if (!rec) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": malformed record (id and non-empty text are required)");
        }
        if (!rec->label) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": record has no label (expected \"positive\" or \"negative\")");
        }
        if (!ids.insert(rec->id).second) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": duplicate id '" +
                            rec->id + "'");
        }
        std::string brand = rec->brand.empty() ? rec->matched_keyword : rec->brand;
        corpus.documents.push_back(LabeledDocument{std::move(rec->id), std::move(rec->text),
                                                   *rec->label, std::move(brand)});
    }
    return corpus;
}

namespace {

void append_optional(json& j, const char* key, const std::string& value) {
    if (!value.empty()) j[key] = value;
}

} // namespace

std::string to_jsonl(const RawCorpus& corpus) {
    std::string out;
    for (const RawPost& post : corpus.documents) {
        json j;
        j["id"] = post.id;
        j["text"] = post.text;
        append_optional(j, "author", post.author);
        append_optional(j, "timestamp", post.timestamp);
        append_optional(j, "matched_keyword", post.matched_keyword);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string to_jsonl(const LabeledCorpus& corpus) {
    std::string out;
    for (const LabeledDocument& doc : corpus.documents) {
        json j;
        j["id"] = doc.id;
        j["text"] = doc.text;
        j["label"] = std::string(to_string(doc.label));
        append_optional(j, "brand", doc.brand);
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_jsonl(const RawCorpus& corpus, const std::filesystem::path& path) {
    atomic_write_text(path, to_jsonl(corpus));
}

void write_jsonl(const LabeledCorpus& corpus, const std::filesystem::path& path) {
    atomic_write_text(path, to_jsonl(corpus));
}

std::vector<std::pair<std::string, Label>> read_labels_csv(const std::filesystem::path& path) {
    std::string content = read_text_file(path);
    std::vector<std::pair<std::string, Label>> labels;
    std::istringstream lines(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (blank_line(line)) continue;
        const std::size_t comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 'id,label'");
        }
        std::string id = collapse_whitespace(line.substr(0, comma));
        std::string value = collapse_whitespace(line.substr(comma + 1));
        if (line_no == 1 && case_fold(id) == "id" && case_fold(value) == "label") {
            continue; // header row
        }
        std::optional<Label> label = parse_label(value);
        if (id.empty() || !label) {
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": bad label row '" +
                            line + "'");
        }
        labels.emplace_back(std::move(id), *label);
    }
    return labels;
}

LabeledCorpus apply_labels(const RawCorpus& corpus,
                           const std::vector<std::pair<std::string, Label>>& labels) {
    std::unordered_map<std::string, Label> by_id;
    for (const auto& [id, label] : labels) {
        by_id[id] = label; // later rows win
    }
    LabeledCorpus out;
    out.provenance = corpus.provenance;
    for (const RawPost& post : corpus.documents) {
        auto it = by_id.find(post.id);
        if (it == by_id.end()) {
            throw DataError("document '" + post.id + "' has no label");
        }
        out.documents.push_back(
            LabeledDocument{post.id, post.text, it->second, post.matched_keyword});
    }
    return out;
}

} // namespace sentimin
