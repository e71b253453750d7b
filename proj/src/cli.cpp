#include "sentimin/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sentimin/config.hpp"
#include "sentimin/corpus.hpp"
#include "sentimin/error.hpp"
#include "sentimin/evaluate.hpp"
#include "sentimin/io_util.hpp"
#include "sentimin/nbayes.hpp"
#include "sentimin/report.hpp"

namespace sentimin::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string config_path;
    std::string stopword_path;
    std::optional<double> min_df;
    std::optional<double> max_df;
    std::optional<double> alpha;
    std::optional<int> k;
    std::optional<std::uint64_t> seed;
    std::string trace_path;
};

void add_common_options(CLI::App& cmd, CommonOptions& opts) {
    cmd.add_option("--config", opts.config_path, "Config file (key = value lines)")
        ->envname("SENTIMIN_CONFIG");
    cmd.add_option("--stopwords", opts.stopword_path, "Stopword list file");
    cmd.add_option("--min-df", opts.min_df, "Minimum document-frequency ratio");
    cmd.add_option("--max-df", opts.max_df, "Maximum document-frequency ratio");
    cmd.add_option("--alpha", opts.alpha, "Laplace smoothing constant");
    cmd.add_option("--k", opts.k, "Number of cross-validation folds");
    cmd.add_option("--seed", opts.seed, "Seed for all randomized steps");
    cmd.add_option("--trace", opts.trace_path, "Write per-document preprocessing trace JSONL");
}

// Config file first (when given), then explicit flags on top.
RunConfig resolve_config(const CommonOptions& opts) {
    RunConfig config;
    if (!opts.config_path.empty()) {
        apply_config_file(config, opts.config_path);
    }
    if (!opts.stopword_path.empty()) config.stopword_path = opts.stopword_path;
    if (opts.min_df) config.min_df_ratio = *opts.min_df;
    if (opts.max_df) config.max_df_ratio = *opts.max_df;
    if (opts.alpha) config.alpha = *opts.alpha;
    if (opts.k) config.k = *opts.k;
    if (opts.seed) config.seed = *opts.seed;
    validate(config);
    return config;
}

json trace_to_json(const PrepTrace& trace, const std::string& id) {
    return json{{"id", id},
                {"raw", trace.raw},
                {"case_folded", trace.case_folded},
                {"entities_stripped", trace.entities_stripped},
                {"punctuation_stripped", trace.punctuation_stripped},
                {"tokens", trace.tokens},
                {"stemmed", trace.stemmed},
                {"final_tokens", trace.final_tokens}};
}

// Preprocesses every document, optionally writing the trace file.
template <typename DocRange>
std::vector<std::vector<Token>> preprocess_all(const DocRange& docs, const PrepConfig& prep,
                                               const std::string& trace_path) {
    std::vector<std::vector<Token>> tokens;
    tokens.reserve(docs.size());
    std::string trace_out;
    for (const auto& doc : docs) {
        PrepTrace trace = preprocess_trace(doc.text, prep);
        if (!trace_path.empty()) {
            trace_out += trace_to_json(trace, doc.id).dump();
            trace_out += '\n';
        }
        tokens.push_back(std::move(trace.final_tokens));
    }
    if (!trace_path.empty()) {
        atomic_write_text(trace_path, trace_out);
    }
    return tokens;
}

LabeledCorpus load_labeled_corpus(const std::string& corpus_path, const std::string& labels_csv) {
    if (labels_csv.empty()) {
        return read_labeled_jsonl(corpus_path);
    }
    IngestResult ingested = ingest_jsonl(corpus_path);
    if (!ingested.report.malformed_lines.empty()) {
        throw DataError(corpus_path + ": " +
                        std::to_string(ingested.report.malformed_lines.size()) +
                        " malformed line(s); fix the corpus before training/evaluating");
    }
    return apply_labels(ingested.corpus, read_labels_csv(labels_csv));
}

std::vector<std::string> split_csv_list(const std::string& csv) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string item =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!collapse_whitespace(item).empty()) {
            items.push_back(collapse_whitespace(item));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return items;
}

int cmd_ingest(std::vector<std::string> inputs, const std::string& keywords_csv,
               const std::string& output_path) {
    const std::vector<std::string> keywords = split_csv_list(keywords_csv);
    if (keywords.empty()) {
        throw ConfigError("--keywords must name at least one keyword");
    }
    std::sort(inputs.begin(), inputs.end()); // deterministic merge order

    RawCorpus merged;
    IngestReport report;
    std::unordered_set<std::string> ids;
    for (const std::string& path : inputs) {
        IngestResult result = ingest_jsonl(path);
        report.read += result.report.read;
        report.kept += result.report.kept;
        report.malformed_lines.insert(report.malformed_lines.end(),
                                      result.report.malformed_lines.begin(),
                                      result.report.malformed_lines.end());
        for (RawPost& post : result.corpus.documents) {
            if (!ids.insert(post.id).second) {
                throw DataError("duplicate id '" + post.id + "' across input files");
            }
            merged.documents.push_back(std::move(post));
        }
        if (!merged.provenance.empty()) merged.provenance += ", ";
        merged.provenance += path;
    }

    RawCorpus filtered = filter_by_keywords(merged, keywords);
    DedupResult<RawPost> deduped = deduplicate(filtered);
    report.duplicates_removed = deduped.removed;
    report.kept = deduped.corpus.size();

    write_jsonl(deduped.corpus, output_path);
    std::cout << json{{"read", report.read},
                      {"kept", report.kept},
                      {"malformed", report.malformed_lines.size()},
                      {"malformed_lines", report.malformed_lines},
                      {"duplicates_removed", report.duplicates_removed}}
                     .dump(2)
              << "\n";
    return 0;
}

int cmd_train(const CommonOptions& opts, const std::string& corpus_path,
              const std::string& labels_csv, const std::string& output_path) {
    const RunConfig config = resolve_config(opts);
    const PrepConfig prep = make_prep_config(config);
    const LabeledCorpus corpus = load_labeled_corpus(corpus_path, labels_csv);

    const std::vector<std::vector<Token>> token_lists =
        preprocess_all(corpus.documents, prep, opts.trace_path);
    std::vector<TokenizedDoc> docs;
    docs.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        docs.push_back(TokenizedDoc{token_lists[i], corpus.documents[i].label});
    }

    const Vocabulary vocab =
        prune_by_df(build_vocabulary(token_lists), make_prune_bounds(config));
    const NbModel model = train(docs, vocab, config.alpha);
    save_model(model, output_path);
    std::cout << json{{"documents", corpus.size()},
                      {"vocabulary_size", vocab.size()},
                      {"alpha", config.alpha},
                      {"model", output_path}}
                     .dump(2)
              << "\n";
    return 0;
}

int cmd_evaluate(const CommonOptions& opts, bool parallel, const std::string& corpus_path,
                 const std::string& labels_csv, const std::string& output_path) {
    const RunConfig config = resolve_config(opts);
    CvConfig cv;
    cv.prep = make_prep_config(config);
    cv.bounds = make_prune_bounds(config);
    cv.alpha = config.alpha;
    cv.k = config.k;
    cv.seed = config.seed;
    cv.parallel_folds = parallel;

    const LabeledCorpus corpus = load_labeled_corpus(corpus_path, labels_csv);
    if (!opts.trace_path.empty()) {
        preprocess_all(corpus.documents, cv.prep, opts.trace_path);
    }
    const CvResult result = cross_validate(corpus, cv);

    std::cout << metrics_table_text(result.aggregate, result.metrics);
    const std::string report = cv_report_json(result).dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << "\n" << report;
    } else {
        atomic_write_text(output_path, report);
    }
    return 0;
}

int cmd_classify(const CommonOptions& opts, const std::string& model_path,
                 const std::string& corpus_path, const std::string& output_path) {
    const RunConfig config = resolve_config(opts);
    const PrepConfig prep = make_prep_config(config);
    const NbModel model = load_model(model_path);

    IngestResult input = ingest_jsonl(corpus_path);
    if (!input.report.malformed_lines.empty()) {
        std::cerr << "warning: " << input.report.malformed_lines.size()
                  << " malformed line(s) in " << corpus_path << " were skipped\n";
    }

    const std::vector<std::vector<Token>> token_lists =
        preprocess_all(input.corpus.documents, prep, opts.trace_path);

    std::string out;
    for (std::size_t i = 0; i < input.corpus.size(); ++i) {
        const RawPost& post = input.corpus.documents[i];
        const Prediction pred = classify(model, token_lists[i]);
        out += json{{"id", post.id},
                    {"brand", post.matched_keyword},
                    {"label", std::string(to_string(pred.label))},
                    {"posterior", pred.posterior[label_index(pred.label)]}}
                   .dump();
        out += '\n';
    }
    atomic_write_text(output_path, out);
    return 0;
}

int cmd_compare(const std::vector<std::string>& prediction_paths,
                const std::string& output_path) {
    std::vector<BrandedLabel> predictions;
    for (const std::string& path : prediction_paths) {
        const std::string content = read_text_file(path);
        std::size_t pos = 0, line_no = 0;
        while (pos < content.size()) {
            std::size_t eol = content.find('\n', pos);
            if (eol == std::string::npos) eol = content.size();
            const std::string_view line(content.data() + pos, eol - pos);
            pos = eol + 1;
            ++line_no;
            if (collapse_whitespace(line).empty()) continue;
            const json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("label") ||
                !j["label"].is_string()) {
                throw DataError(path + ":" + std::to_string(line_no) +
                                ": malformed prediction record");
            }
            const std::optional<Label> label = parse_label(j["label"].get<std::string>());
            if (!label) {
                throw DataError(path + ":" + std::to_string(line_no) + ": bad label value");
            }
            std::string brand;
            if (j.contains("brand") && j["brand"].is_string()) {
                brand = j["brand"].get<std::string>();
            }
            predictions.push_back(BrandedLabel{std::move(brand), *label});
        }
    }

    const BrandReport report = summarize_brand(predictions);
    const std::vector<BrandSummary> ranked = rank_by_satisfaction(report.summaries);
    for (const std::string& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    std::cout << brand_table_text(ranked);
    const std::string out = brand_summaries_json(ranked).dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << "\n" << out;
    } else {
        atomic_write_text(output_path, out);
    }
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Binary sentiment pipeline for short Indonesian social-media text"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Ingest dumps, filter by keywords, deduplicate");
    std::vector<std::string> ingest_inputs;
    std::string ingest_keywords, ingest_output;
    ingest->add_option("inputs", ingest_inputs, "JSONL dump files")->required();
    ingest->add_option("--keywords", ingest_keywords, "Comma-separated keyword list")->required();
    ingest->add_option("--output", ingest_output, "Normalized corpus JSONL path")->required();

    // train
    auto* train_cmd = app.add_subcommand("train", "Train a model on a labeled corpus");
    CommonOptions train_opts;
    std::string train_corpus, train_labels, train_output;
    add_common_options(*train_cmd, train_opts);
    train_cmd->add_option("corpus", train_corpus, "Labeled corpus JSONL")->required();
    train_cmd->add_option("--labels", train_labels, "CSV label file (id,label)");
    train_cmd->add_option("--output", train_output, "Model JSON path")->required();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Stratified k-fold cross-validation");
    CommonOptions eval_opts;
    std::string eval_corpus, eval_labels, eval_output;
    bool eval_parallel = false;
    add_common_options(*eval_cmd, eval_opts);
    eval_cmd->add_option("corpus", eval_corpus, "Labeled corpus JSONL")->required();
    eval_cmd->add_option("--labels", eval_labels, "CSV label file (id,label)");
    eval_cmd->add_option("--output", eval_output, "Evaluation report JSON path");
    eval_cmd->add_flag("--parallel", eval_parallel, "Run folds concurrently");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "Classify documents with a saved model");
    CommonOptions classify_opts;
    std::string classify_model, classify_corpus, classify_output;
    add_common_options(*classify_cmd, classify_opts);
    classify_cmd->add_option("model", classify_model, "Model JSON path")->required();
    classify_cmd->add_option("corpus", classify_corpus, "Corpus JSONL to classify")->required();
    classify_cmd->add_option("--output", classify_output, "Predictions JSONL path")->required();

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "Per-brand sentiment comparison");
    std::vector<std::string> compare_inputs;
    std::string compare_output;
    compare_cmd->add_option("predictions", compare_inputs, "Prediction JSONL files")->required();
    compare_cmd->add_option("--output", compare_output, "Comparison JSON path");

    try {
        app.parse(argc, argv);
        if (*ingest) return cmd_ingest(ingest_inputs, ingest_keywords, ingest_output);
        if (*train_cmd) return cmd_train(train_opts, train_corpus, train_labels, train_output);
        if (*eval_cmd) {
            return cmd_evaluate(eval_opts, eval_parallel, eval_corpus, eval_labels, eval_output);
        }
        if (*classify_cmd) {
            return cmd_classify(classify_opts, classify_model, classify_corpus, classify_output);
        }
        if (*compare_cmd) return cmd_compare(compare_inputs, compare_output);
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3; // bad flags are configuration errors
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sentimin::cli
