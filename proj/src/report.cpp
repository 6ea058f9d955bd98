#include "emgswn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "emgswn/errors.hpp"

namespace emgswn {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ordered_json test_to_json(const StatTestResult& t) {
    ordered_json j;
    j["statistic"] = t.statistic;
    j["p_value"] = t.p_value;
    j["corrected_p"] = t.corrected_p;
    j["stars"] = t.stars;
    j["exact"] = t.exact;
    return j;
}

StatTestResult test_from_json(const ordered_json& j) {
    StatTestResult t;
    t.statistic = j.at("statistic").get<double>();
    t.p_value = j.at("p_value").get<double>();
    t.corrected_p = j.at("corrected_p").get<double>();
    t.stars = j.at("stars").get<std::string>();
    t.exact = j.value("exact", false);
    return t;
}

// --- tiny SVG builder -------------------------------------------------

struct Svg {
    std::string body;
    double width, height;

    Svg(double w, double h) : width(w), height(h) {}

    void rect(double x, double y, double w, double h, const char* fill) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"/>\n",
                      x, y, w, h, fill);
        body += buf;
    }
    void line(double x1, double y1, double x2, double y2, const char* stroke) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                      "stroke-width=\"1\"/>\n",
                      x1, y1, x2, y2, stroke);
        body += buf;
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
        body += "<polyline fill=\"none\" stroke=\"";
        body += stroke;
        body += "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
            body += buf;
        }
        body += "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 11,
              const char* anchor = "middle") {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%d\" text-anchor=\"%s\" "
                      "font-family=\"sans-serif\">",
                      x, y, size, anchor);
        body += buf;
        for (char c : s) { // escape for well-formed XML
            if (c == '&') body += "&amp;";
            else if (c == '<') body += "&lt;";
            else if (c == '>') body += "&gt;";
            else body += c;
        }
        body += "</text>\n";
    }
    std::string finish() const {
        char head[160];
        std::snprintf(head, sizeof(head),
                      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                      "viewBox=\"0 0 %.0f %.0f\">\n",
                      width, height, width, height);
        return std::string(head) + body + "</svg>\n";
    }
};

const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                          "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

std::string groups_svg(const RunReport& report) {
    const double w = 720, h = 420, ml = 60, mr = 20, mt = 40, mb = 110;
    Svg svg(w, h);
    svg.text(w / 2, 20, report.kind + " accuracy (mean +/- sd across subjects)", 13);

    const double plot_w = w - ml - mr;
    const double plot_h = h - mt - mb;
    auto y_of = [&](double acc) { return mt + plot_h * (1.0 - acc); };

    svg.line(ml, mt, ml, mt + plot_h, "#333");
    svg.line(ml, mt + plot_h, ml + plot_w, mt + plot_h, "#333");
    for (int tick = 0; tick <= 10; tick += 2) {
        const double y = y_of(tick / 10.0);
        svg.line(ml - 4, y, ml, y, "#333");
        svg.text(ml - 8, y + 4, fmt(tick / 10.0), 10, "end");
    }

    const std::size_t n = report.groups.size();
    if (n > 0) {
        const double slot = plot_w / static_cast<double>(n);
        const double bar_w = slot * 0.6;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& g = report.groups[i];
            const double cx = ml + slot * (static_cast<double>(i) + 0.5);
            const double top = y_of(g.mean);
            svg.rect(cx - bar_w / 2, top, bar_w, mt + plot_h - top,
                     kPalette[i % 8]);
            svg.line(cx, y_of(g.mean - g.sd), cx, y_of(std::min(1.0, g.mean + g.sd)), "#222");
            svg.text(cx, mt + plot_h + 16, g.label, 10);
            svg.text(cx, top - 4, fmt(std::round(g.mean * 1000.0) / 1000.0), 10);
        }
        // significance brackets under the x labels
        double bracket_y = mt + plot_h + 34;
        for (const auto& cmp : report.comparisons) {
            std::size_t ia = n, ib = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (report.groups[i].label == cmp.a) ia = i;
                if (report.groups[i].label == cmp.b) ib = i;
            }
            if (ia == n || ib == n) continue;
            const double xa = ml + slot * (static_cast<double>(ia) + 0.5);
            const double xb = ml + slot * (static_cast<double>(ib) + 0.5);
            svg.line(xa, bracket_y, xb, bracket_y, "#555");
            svg.text((xa + xb) / 2, bracket_y - 2, cmp.test.stars, 10);
            bracket_y += 14;
        }
    }
    return svg.finish();
}

std::string grid_svg(const RunReport& report) {
    const double w = 720, h = 420, ml = 60, mr = 140, mt = 40, mb = 60;
    Svg svg(w, h);
    svg.text(w / 2, 20, "window-length sweep (mean accuracy)", 13);
    const double plot_w = w - ml - mr;
    const double plot_h = h - mt - mb;
    auto y_of = [&](double acc) { return mt + plot_h * (1.0 - acc); };
    auto x_of = [&](double ms) { return ml + plot_w * (ms - 100.0) / 400.0; };

    svg.line(ml, mt, ml, mt + plot_h, "#333");
    svg.line(ml, mt + plot_h, ml + plot_w, mt + plot_h, "#333");
    for (int ms = 100; ms <= 500; ms += 100) {
        svg.text(x_of(ms), mt + plot_h + 16, std::to_string(ms) + " ms", 10);
    }
    for (int tick = 0; tick <= 10; tick += 2) {
        svg.text(ml - 8, y_of(tick / 10.0) + 4, fmt(tick / 10.0), 10, "end");
    }

    std::vector<int> norms;
    for (const auto& cell : report.grid) {
        if (std::find(norms.begin(), norms.end(), cell.l_norm_ms) == norms.end()) {
            norms.push_back(cell.l_norm_ms);
        }
    }
    std::sort(norms.begin(), norms.end());
    for (std::size_t ni = 0; ni < norms.size(); ++ni) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& cell : report.grid) {
            if (cell.l_norm_ms != norms[ni] || cell.skipped) continue;
            pts.emplace_back(x_of(cell.l_feature_ms), y_of(cell.mean));
        }
        std::sort(pts.begin(), pts.end());
        if (!pts.empty()) svg.polyline(pts, kPalette[ni % 8]);
        svg.text(w - mr + 10, mt + 14 * static_cast<double>(ni) + 10,
                 "L_norm " + std::to_string(norms[ni]) + " ms", 10, "start");
        svg.rect(w - mr - 2, mt + 14 * static_cast<double>(ni) + 3, 8, 8, kPalette[ni % 8]);
    }
    return svg.finish();
}

std::string correlation_svg(const RunReport& report) {
    const double w = 480, h = 360, ml = 70, mt = 40, mb = 60;
    Svg svg(w, h);
    svg.text(w / 2, 20, "sigma vs MAV correlation (mean over channels/subjects)", 12);
    const double plot_h = h - mt - mb;
    auto y_of = [&](double r) { return mt + plot_h * (1.0 - (r + 1.0) / 2.0); };
    svg.line(ml, mt, ml, mt + plot_h, "#333");
    svg.line(ml, y_of(0.0), w - 20, y_of(0.0), "#999");
    for (double tick : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        svg.text(ml - 8, y_of(tick) + 4, fmt(tick), 10, "end");
    }
    const double bars[2] = {report.mean_r_swn, report.mean_r_none};
    const char* names[2] = {"swn", "none"};
    for (int i = 0; i < 2; ++i) {
        const double cx = ml + 90 + 140.0 * i;
        const double y0 = y_of(0.0);
        const double y1 = y_of(bars[i]);
        svg.rect(cx - 30, std::min(y0, y1), 60, std::abs(y1 - y0), kPalette[i]);
        svg.text(cx, mt + plot_h + 16, names[i], 11);
        svg.text(cx, std::min(y0, y1) - 4, fmt(std::round(bars[i] * 1000.0) / 1000.0), 10);
    }
    return svg.finish();
}

std::string bench_svg(const RunReport& report) {
    const double w = 480, h = 360, ml = 70, mt = 40, mb = 60;
    Svg svg(w, h);
    svg.text(w / 2, 20, "per-tick processing time (us)", 12);
    const double plot_h = h - mt - mb;
    const double top = std::max({report.bench_swn.max_us, report.bench_none.max_us, 1.0});
    auto y_of = [&](double us) { return mt + plot_h * (1.0 - us / (1.1 * top)); };
    svg.line(ml, mt, ml, mt + plot_h, "#333");
    const TimingStats* stats[2] = {&report.bench_swn, &report.bench_none};
    const char* names[2] = {"swn", "none"};
    for (int i = 0; i < 2; ++i) {
        const double cx = ml + 90 + 140.0 * i;
        svg.rect(cx - 30, y_of(stats[i]->mean_us), 60, mt + plot_h - y_of(stats[i]->mean_us),
                 kPalette[i]);
        svg.line(cx, y_of(stats[i]->p95_us), cx, y_of(stats[i]->max_us), "#222");
        svg.text(cx, mt + plot_h + 16, names[i], 11);
        svg.text(cx, y_of(stats[i]->mean_us) - 4, fmt(std::round(stats[i]->mean_us)), 10);
    }
    return svg.finish();
}

} // namespace

void GroupResult::finalize() {
    std::vector<double> accs;
    accs.reserve(per_subject.size());
    for (const auto& s : per_subject) accs.push_back(s.accuracy);
    mean = mean_of(accs);
    sd = sample_sd(accs);
}

std::string report_to_json(const RunReport& report) {
    ordered_json j;
    j["kind"] = report.kind;
    j["version"] = report.version;
    j["seed"] = report.seed;
    j["config_hash"] = report.config_hash;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : report.config_echo) cfg[k] = v;
    j["config"] = cfg;

    if (!report.groups.empty()) {
        ordered_json groups = ordered_json::array();
        for (const auto& g : report.groups) {
            ordered_json jg;
            jg["label"] = g.label;
            jg["mean"] = g.mean;
            jg["sd"] = g.sd;
            ordered_json per = ordered_json::array();
            for (const auto& s : g.per_subject) {
                per.push_back({{"subject", s.subject_id},
                               {"accuracy", s.accuracy},
                               {"n_models", s.n_models}});
            }
            jg["per_subject"] = per;
            groups.push_back(jg);
        }
        j["groups"] = groups;
    }
    if (!report.comparisons.empty()) {
        ordered_json cs = ordered_json::array();
        for (const auto& c : report.comparisons) {
            ordered_json jc;
            jc["a"] = c.a;
            jc["b"] = c.b;
            jc["test"] = test_to_json(c.test);
            cs.push_back(jc);
        }
        j["comparisons"] = cs;
    }
    if (!report.grid.empty()) {
        ordered_json cells = ordered_json::array();
        for (const auto& cell : report.grid) {
            cells.push_back({{"l_norm_ms", cell.l_norm_ms},
                             {"l_feature_ms", cell.l_feature_ms},
                             {"mean", cell.mean},
                             {"sd", cell.sd},
                             {"skipped", cell.skipped}});
        }
        j["grid"] = cells;
    }
    if (!report.correlation.empty()) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : report.correlation) {
            rows.push_back({{"subject", r.subject},
                            {"channel", r.channel},
                            {"r_swn", r.r_swn},
                            {"r_none", r.r_none},
                            {"skipped", r.skipped},
                            {"note", r.note}});
        }
        j["correlation"] = rows;
        j["mean_r_swn"] = report.mean_r_swn;
        j["mean_r_none"] = report.mean_r_none;
    }
    if (report.bench_ticks > 0) {
        auto timing = [](const TimingStats& t) {
            return ordered_json{{"mean_us", t.mean_us}, {"p95_us", t.p95_us},
                                {"max_us", t.max_us}};
        };
        j["bench"] = {{"ticks", report.bench_ticks},
                      {"swn", timing(report.bench_swn)},
                      {"none", timing(report.bench_none)},
                      {"swn_overhead_share", report.swn_overhead_share},
                      {"budget_ms", report.budget_ms},
                      {"budget_met", report.budget_met}};
    }
    if (!report.notes.empty()) j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunReport report;
    report.kind = j.at("kind").get<std::string>();
    report.version = j.at("version").get<std::string>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.config_hash = j.at("config_hash").get<std::string>();
    if (j.contains("config")) {
        for (const auto& [k, v] : j.at("config").items()) {
            report.config_echo.emplace_back(k, v.get<std::string>());
        }
    }
    if (j.contains("groups")) {
        for (const auto& jg : j.at("groups")) {
            GroupResult g;
            g.label = jg.at("label").get<std::string>();
            g.mean = jg.at("mean").get<double>();
            g.sd = jg.at("sd").get<double>();
            for (const auto& js : jg.at("per_subject")) {
                SubjectResult s;
                s.subject_id = js.at("subject").get<int>();
                s.accuracy = js.at("accuracy").get<double>();
                s.n_models = js.at("n_models").get<int>();
                g.per_subject.push_back(s);
            }
            report.groups.push_back(std::move(g));
        }
    }
    if (j.contains("comparisons")) {
        for (const auto& jc : j.at("comparisons")) {
            Comparison c;
            c.a = jc.at("a").get<std::string>();
            c.b = jc.at("b").get<std::string>();
            c.test = test_from_json(jc.at("test"));
            report.comparisons.push_back(std::move(c));
        }
    }
    if (j.contains("grid")) {
        for (const auto& jc : j.at("grid")) {
            GridCell c;
            c.l_norm_ms = jc.at("l_norm_ms").get<int>();
            c.l_feature_ms = jc.at("l_feature_ms").get<int>();
            c.mean = jc.at("mean").get<double>();
            c.sd = jc.at("sd").get<double>();
            c.skipped = jc.at("skipped").get<bool>();
            report.grid.push_back(c);
        }
    }
    if (j.contains("correlation")) {
        for (const auto& jr : j.at("correlation")) {
            CorrelationRow r;
            r.subject = jr.at("subject").get<int>();
            r.channel = jr.at("channel").get<int>();
            r.r_swn = jr.at("r_swn").get<double>();
            r.r_none = jr.at("r_none").get<double>();
            r.skipped = jr.at("skipped").get<bool>();
            r.note = jr.at("note").get<std::string>();
            report.correlation.push_back(std::move(r));
        }
        report.mean_r_swn = j.at("mean_r_swn").get<double>();
        report.mean_r_none = j.at("mean_r_none").get<double>();
    }
    if (j.contains("bench")) {
        const auto& jb = j.at("bench");
        auto timing = [](const json& t) {
            TimingStats s;
            s.mean_us = t.at("mean_us").get<double>();
            s.p95_us = t.at("p95_us").get<double>();
            s.max_us = t.at("max_us").get<double>();
            return s;
        };
        report.bench_ticks = jb.at("ticks").get<int>();
        report.bench_swn = timing(jb.at("swn"));
        report.bench_none = timing(jb.at("none"));
        report.swn_overhead_share = jb.at("swn_overhead_share").get<double>();
        report.budget_ms = jb.at("budget_ms").get<double>();
        report.budget_met = jb.at("budget_met").get<bool>();
    }
    if (j.contains("notes")) {
        report.notes = j.at("notes").get<std::vector<std::string>>();
    }
    return report;
}

bool reports_equal(const RunReport& a, const RunReport& b) {
    return report_to_json(a) == report_to_json(b);
}

std::string report_to_csv(const RunReport& report) {
    std::string out;
    if (!report.groups.empty()) {
        out += "group,subject,accuracy,n_models\n";
        for (const auto& g : report.groups) {
            for (const auto& s : g.per_subject) {
                out += g.label + ',' + std::to_string(s.subject_id) + ',' + fmt(s.accuracy) +
                       ',' + std::to_string(s.n_models) + '\n';
            }
        }
    } else if (!report.grid.empty()) {
        out += "l_norm_ms,l_feature_ms,mean,sd,skipped\n";
        for (const auto& c : report.grid) {
            out += std::to_string(c.l_norm_ms) + ',' + std::to_string(c.l_feature_ms) + ',' +
                   fmt(c.mean) + ',' + fmt(c.sd) + ',' + (c.skipped ? "1" : "0") + '\n';
        }
    } else if (!report.correlation.empty()) {
        out += "subject,channel,r_swn,r_none,skipped,note\n";
        for (const auto& r : report.correlation) {
            out += std::to_string(r.subject) + ',' + std::to_string(r.channel) + ',' +
                   fmt(r.r_swn) + ',' + fmt(r.r_none) + ',' + (r.skipped ? "1" : "0") + ',' +
                   r.note + '\n';
        }
    } else if (report.bench_ticks > 0) {
        out += "variant,mean_us,p95_us,max_us\n";
        out += "swn," + fmt(report.bench_swn.mean_us) + ',' + fmt(report.bench_swn.p95_us) +
               ',' + fmt(report.bench_swn.max_us) + '\n';
        out += "none," + fmt(report.bench_none.mean_us) + ',' + fmt(report.bench_none.p95_us) +
               ',' + fmt(report.bench_none.max_us) + '\n';
    }
    return out;
}

std::string report_to_svg(const RunReport& report) {
    if (!report.grid.empty()) return grid_svg(report);
    if (!report.correlation.empty()) return correlation_svg(report);
    if (report.bench_ticks > 0) return bench_svg(report);
    return groups_svg(report);
}

void emit_report(const RunReport& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(out_dir / name);
        if (!out) {
            throw DataError("cannot write report file under " + out_dir.string());
        }
        out << content;
    };
    write("report.json", report_to_json(report));
    write("report.csv", report_to_csv(report));
    write("report.svg", report_to_svg(report));
}

} // namespace emgswn
