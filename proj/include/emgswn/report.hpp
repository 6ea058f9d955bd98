#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "emgswn/stats.hpp"

namespace emgswn {

inline constexpr const char* kVersion = "0.1.0";

struct SubjectResult {
    int subject_id = 0;
    double accuracy = 0.0;
    int n_models = 1; // combinations averaged into this accuracy
};

struct GroupResult {
    std::string label;
    std::vector<SubjectResult> per_subject;
    double mean = 0.0;
    double sd = 0.0;

    void finalize(); // fills mean/sd from per_subject
};

struct Comparison {
    std::string a;
    std::string b;
    StatTestResult test;
};

struct GridCell {
    int l_norm_ms = 0;
    int l_feature_ms = 0;
    double mean = 0.0;
    double sd = 0.0;
    bool skipped = false;
};

struct CorrelationRow {
    int subject = 0;
    int channel = 0; // 1-based
    double r_swn = 0.0;
    double r_none = 0.0;
    bool skipped = false;
    std::string note;
};

struct TimingStats {
    double mean_us = 0.0;
    double p95_us = 0.0;
    double max_us = 0.0;
};

/// One emitted experiment result. Sections that do not apply to the
/// report kind stay empty and are omitted from the files.
struct RunReport {
    std::string kind;               // own | other | sweep | window_funcs | correlation | bench
    std::string version = kVersion;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<std::pair<std::string, std::string>> config_echo;

    std::vector<GroupResult> groups;
    std::vector<Comparison> comparisons;

    std::vector<GridCell> grid;

    std::vector<CorrelationRow> correlation;
    double mean_r_swn = 0.0;
    double mean_r_none = 0.0;

    TimingStats bench_swn;
    TimingStats bench_none;
    double swn_overhead_share = 0.0;
    int bench_ticks = 0;
    bool budget_met = false;
    double budget_ms = 20.0;

    std::vector<std::string> notes;
};

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);
bool reports_equal(const RunReport& a, const RunReport& b);

std::string report_to_csv(const RunReport& report);
std::string report_to_svg(const RunReport& report);

/// Writes report.json, report.csv and report.svg under out_dir.
void emit_report(const RunReport& report, const std::filesystem::path& out_dir);

} // namespace emgswn
