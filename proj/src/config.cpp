#include "emgswn/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "emgswn/errors.hpp"

namespace emgswn {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

} // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        out.values_[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool ConfigFile::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::int64_t ConfigFile::get_int(const std::string& key, std::int64_t fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config value is not an integer: " + key + " = " + it->second);
    }
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config value is not a number: " + key + " = " + it->second);
    }
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    throw ConfigError("config value is not a boolean: " + key + " = " + it->second);
}

void ConfigFile::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

std::string model_type_name(ModelType m) { return m == ModelType::Own ? "own" : "other"; }

ModelType model_type_from_name(const std::string& name) {
    if (name == "own") return ModelType::Own;
    if (name == "other") return ModelType::Other;
    throw ConfigError("unknown model type: " + name);
}

void ExperimentConfig::validate() const {
    pipeline.validate();
    if (model_type == ModelType::Other) {
        if (cohort.subjects < 2 && data_root.empty()) {
            throw ConfigError("model type other needs at least two subjects");
        }
        if (n_train_subjects < 1 || n_train_subjects > 9) {
            throw ConfigError("n_train_subjects must be in 1..9");
        }
    }
    if (cohort.subjects < 1 || cohort.sessions < 1) {
        throw ConfigError("cohort needs at least one subject and one session");
    }
    if (cohort.gain_min <= 0.0 || cohort.gain_max < cohort.gain_min) {
        throw ConfigError("cohort gain spread must satisfy 0 < min <= max");
    }
    if (bench_ticks < 100) {
        throw ConfigError("bench needs at least 100 ticks");
    }
}

ExperimentConfig experiment_from_config(const ConfigFile& file) {
    ExperimentConfig c;
    c.pipeline.normalization =
        normalization_from_name(file.get_string("experiment.normalization", "swn"));
    c.pipeline.l_norm_ms = static_cast<int>(file.get_int("experiment.l_norm_ms", 500));
    c.pipeline.l_feature_ms = static_cast<int>(file.get_int("experiment.l_feature_ms", 500));
    c.pipeline.feature = feature_from_name(file.get_string("experiment.feature", "mav"));
    c.pipeline.weighting = weighting_from_name(file.get_string("experiment.weighting", "flat"));
    c.pipeline.dividing = dividing_from_name(file.get_string("experiment.dividing", "none"));
    c.model_type = model_type_from_name(file.get_string("experiment.model_type", "own"));
    c.n_train_subjects = static_cast<int>(file.get_int("experiment.n_train_subjects", 9));
    c.seed = static_cast<std::uint64_t>(file.get_int("experiment.seed", 42));
    c.data_root = file.get_string("experiment.data_root", "");
    c.threads = static_cast<int>(file.get_int("experiment.threads", 0));
    c.shuffle_labels = file.get_bool("experiment.shuffle_labels", false);
    c.both_normalizations = file.get_bool("experiment.both_normalizations", false);
    c.cohort.subjects = static_cast<int>(file.get_int("synth.subjects", 10));
    c.cohort.sessions = static_cast<int>(file.get_int("synth.sessions", 10));
    c.cohort.gain_min = file.get_double("synth.gain_min", 0.2);
    c.cohort.gain_max = file.get_double("synth.gain_max", 5.0);
    c.cohort.master_seed = static_cast<std::uint64_t>(file.get_int("synth.master_seed", 1));
    c.bench_ticks = static_cast<int>(file.get_int("bench.ticks", 2000));
    return c;
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("normalization", normalization_name(c.pipeline.normalization));
    out.emplace_back("l_norm_ms", std::to_string(c.pipeline.l_norm_ms));
    out.emplace_back("l_feature_ms", std::to_string(c.pipeline.l_feature_ms));
    out.emplace_back("feature", feature_name(c.pipeline.feature));
    out.emplace_back("weighting", weighting_name(c.pipeline.weighting));
    out.emplace_back("dividing", dividing_name(c.pipeline.dividing));
    out.emplace_back("model_type", model_type_name(c.model_type));
    out.emplace_back("n_train_subjects", std::to_string(c.n_train_subjects));
    out.emplace_back("seed", std::to_string(c.seed));
    out.emplace_back("data_root", c.data_root);
    out.emplace_back("subjects", std::to_string(c.cohort.subjects));
    out.emplace_back("sessions", std::to_string(c.cohort.sessions));
    out.emplace_back("gain_min", std::to_string(c.cohort.gain_min));
    out.emplace_back("gain_max", std::to_string(c.cohort.gain_max));
    out.emplace_back("master_seed", std::to_string(c.cohort.master_seed));
    out.emplace_back("shuffle_labels", c.shuffle_labels ? "true" : "false");
    return out;
}

std::string config_hash(const ExperimentConfig& config) {
    // FNV-1a over the canonical echo
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& [k, v] : config_echo(config)) {
        for (const std::string* s : {&k, &v}) {
            for (char ch : *s) {
                h ^= static_cast<unsigned char>(ch);
                h *= 1099511628211ULL;
            }
            h ^= '\n';
            h *= 1099511628211ULL;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace emgswn
