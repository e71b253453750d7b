#include "sentimin/config.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "sentimin/error.hpp"
#include "sentimin/io_util.hpp"

namespace sentimin {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
    }
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "': '" + value + "' is not a boolean");
}

} // namespace

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    const std::string content = read_text_file(path);
    std::istringstream lines(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "stopword_path") {
            config.stopword_path = value;
        } else if (key == "min_df_ratio") {
            config.min_df_ratio = parse_double(key, value);
        } else if (key == "max_df_ratio") {
            config.max_df_ratio = parse_double(key, value);
        } else if (key == "alpha") {
            config.alpha = parse_double(key, value);
        } else if (key == "k") {
            config.k = parse_int<int>(key, value);
        } else if (key == "seed") {
            config.seed = parse_int<std::uint64_t>(key, value);
        } else if (key == "min_token_len") {
            config.min_token_len = parse_int<int>(key, value);
        } else if (key == "stem_enabled") {
            config.stem_enabled = parse_bool(key, value);
        } else {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": unknown config key '" + key + "'");
        }
    }
}

void validate(const RunConfig& config) {
    validate(PruneBounds{config.min_df_ratio, config.max_df_ratio});
    if (!(config.alpha > 0.0)) {
        throw ConfigError("alpha must be > 0");
    }
    if (config.k < 2) {
        throw ConfigError("k must be >= 2");
    }
    if (config.min_token_len < 1) {
        throw ConfigError("min_token_len must be >= 1");
    }
}

PrepConfig make_prep_config(const RunConfig& config) {
    PrepConfig prep;
    prep.stopwords = config.stopword_path.empty() ? default_stopwords()
                                                  : load_stopword_file(config.stopword_path);
    prep.stem_enabled = config.stem_enabled;
    prep.min_token_len = static_cast<std::size_t>(config.min_token_len);
    return prep;
}

PruneBounds make_prune_bounds(const RunConfig& config) {
    return PruneBounds{config.min_df_ratio, config.max_df_ratio};
}

} // namespace sentimin
