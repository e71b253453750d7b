#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "sentimin/features.hpp"
#include "sentimin/textprep.hpp"

namespace sentimin {

// All pipeline knobs in one place. Defaults: the paper-facing values where
// they exist (k, pruning window), this project's documented choices elsewhere.
struct RunConfig {
    std::string stopword_path; // empty = use the built-in list
    double min_df_ratio = 0.0099;
    double max_df_ratio = 0.90;
    double alpha = 1.0;
    int k = 10;
    std::uint64_t seed = 42;
    int min_token_len = 2;
    bool stem_enabled = true;
};

// Flat "key = value" file; '#' starts a comment line; unknown keys are an
// error, not ignored.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

void validate(const RunConfig& config);

// Loads the stopword list (file or built-in default) and copies the
// preprocessing knobs over.
PrepConfig make_prep_config(const RunConfig& config);

PruneBounds make_prune_bounds(const RunConfig& config);

} // namespace sentimin
