#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "emgswn/pipeline.hpp"
#include "emgswn/synth.hpp"

namespace emgswn {

/// Reader for the flat TOML subset the CLI uses: [section] headers, one
/// `key = value` per line with string/integer/float/boolean values, and
/// `#` comments. Keys are addressed as "section.key".
class ConfigFile {
public:
    static ConfigFile parse_file(const std::filesystem::path& path);
    static ConfigFile parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    void set(const std::string& key, const std::string& value);

private:
    std::map<std::string, std::string> values_;
};

enum class ModelType { Own, Other };

std::string model_type_name(ModelType m);
ModelType model_type_from_name(const std::string& name);

/// Everything one experiment run needs; CLI flags override file values.
struct ExperimentConfig {
    FeatureConfig pipeline;
    ModelType model_type = ModelType::Own;
    int n_train_subjects = 9;
    std::uint64_t seed = 42;
    std::string data_root;  // empty: synthesize the cohort in memory
    CohortSpec cohort;
    int threads = 0;        // 0: hardware concurrency
    bool shuffle_labels = false;
    bool both_normalizations = false; // add the opposite normalization as a second group
    int bench_ticks = 2000;

    void validate() const; // throws ConfigError
};

ExperimentConfig experiment_from_config(const ConfigFile& file);

/// Canonical one-line-per-field rendering; feeds the provenance hash and
/// the report's config echo.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

} // namespace emgswn
