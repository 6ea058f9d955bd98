#include "emgswn/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "emgswn/errors.hpp"

namespace emgswn {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, mode);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    return out;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) {
        throw DataError("cannot read " + path.string());
    }
    return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

void format_value(std::string& buf, double v) {
    char tmp[32];
    std::snprintf(tmp, sizeof(tmp), "%.12g", v);
    buf += tmp;
}

} // namespace

void write_signal_csv(const fs::path& path, const MultiChannelSignal& signal) {
    signal.validate();
    std::ofstream out = open_out(path);
    std::string line = "t";
    for (std::size_t c = 0; c < signal.channel_count(); ++c) {
        char tmp[16];
        std::snprintf(tmp, sizeof(tmp), ",ch%02u", static_cast<unsigned>(c + 1));
        line += tmp;
    }
    out << line << '\n';
    const double dt = 1.0 / signal.sample_rate_hz;
    for (std::size_t i = 0; i < signal.length(); ++i) {
        line.clear();
        format_value(line, static_cast<double>(i) * dt);
        for (const auto& ch : signal.channels) {
            line += ',';
            format_value(line, ch[i]);
        }
        out << line << '\n';
    }
}

MultiChannelSignal read_signal_csv(const fs::path& path, double sample_rate_hz) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty signal csv: " + path.string());
    }
    const std::size_t n_channels = split_csv_line(line).size() - 1;
    if (n_channels == 0) {
        throw DataError("signal csv without channel columns: " + path.string());
    }
    MultiChannelSignal s;
    s.sample_rate_hz = sample_rate_hz;
    s.channels.assign(n_channels, {});
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != n_channels + 1) {
            throw DataError("ragged signal csv row in " + path.string());
        }
        for (std::size_t c = 0; c < n_channels; ++c) {
            s.channels[c].push_back(std::stod(fields[c + 1]));
        }
    }
    return s;
}

void write_positions_csv(const fs::path& path, const std::vector<PoseSample>& track,
                         double sample_rate_hz) {
    std::ofstream out = open_out(path);
    out << "t,hand_x,hand_y,elbow_x,elbow_y,shoulder_x,shoulder_y\n";
    std::string line;
    for (std::size_t i = 0; i < track.size(); ++i) {
        line.clear();
        format_value(line, static_cast<double>(i) / sample_rate_hz);
        for (double v : {track[i].hand_x, track[i].hand_y, track[i].elbow_x, track[i].elbow_y,
                         track[i].shoulder_x, track[i].shoulder_y}) {
            line += ',';
            format_value(line, v);
        }
        out << line << '\n';
    }
}

std::vector<PoseSample> read_positions_csv(const fs::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty positions csv: " + path.string());
    }
    std::vector<PoseSample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) {
            throw DataError("positions csv needs 7 columns: " + path.string());
        }
        PoseSample p;
        p.hand_x = std::stod(fields[1]);
        p.hand_y = std::stod(fields[2]);
        p.elbow_x = std::stod(fields[3]);
        p.elbow_y = std::stod(fields[4]);
        p.shoulder_x = std::stod(fields[5]);
        p.shoulder_y = std::stod(fields[6]);
        out.push_back(p);
    }
    return out;
}

void write_features_csv(const fs::path& path, const FeatureMatrix& features) {
    std::ofstream out = open_out(path);
    std::string line;
    for (std::size_t c = 0; c < features.layout.size(); ++c) {
        if (c) line += ',';
        line += features.layout[c];
    }
    out << line << '\n';
    for (std::size_t r = 0; r < features.rows; ++r) {
        line.clear();
        for (std::size_t c = 0; c < features.cols; ++c) {
            if (c) line += ',';
            format_value(line, features.at(r, c));
        }
        out << line << '\n';
    }
}

FeatureMatrix read_features_csv(const fs::path& path, double rate_hz) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty feature csv: " + path.string());
    }
    FeatureMatrix m;
    m.layout = split_csv_line(line);
    m.cols = m.layout.size();
    m.rate_hz = rate_hz;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != m.cols) {
            throw DataError("ragged feature csv row in " + path.string());
        }
        for (const auto& f : fields) m.data.push_back(std::stod(f));
        ++m.rows;
    }
    return m;
}

void write_features_binary(const fs::path& path, const FeatureMatrix& features) {
    static_assert(std::endian::native == std::endian::little,
                  "binary feature tables are little-endian");
    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out.write(reinterpret_cast<const char*>(features.data.data()),
              static_cast<std::streamsize>(features.data.size() * sizeof(double)));

    nlohmann::ordered_json sidecar;
    sidecar["rows"] = features.rows;
    sidecar["cols"] = features.cols;
    sidecar["rate_hz"] = features.rate_hz;
    sidecar["layout"] = features.layout;
    std::ofstream meta = open_out(path.string() + ".json");
    meta << sidecar.dump(2) << '\n';
}

FeatureMatrix read_features_binary(const fs::path& path) {
    std::ifstream meta = open_in(path.string() + ".json");
    nlohmann::json sidecar;
    meta >> sidecar;

    FeatureMatrix m;
    m.rows = sidecar.at("rows").get<std::size_t>();
    m.cols = sidecar.at("cols").get<std::size_t>();
    m.rate_hz = sidecar.at("rate_hz").get<double>();
    m.layout = sidecar.at("layout").get<std::vector<std::string>>();

    std::ifstream in = open_in(path, std::ios::in | std::ios::binary);
    m.data.resize(m.rows * m.cols);
    in.read(reinterpret_cast<char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != m.data.size() * sizeof(double)) {
        throw DataError("binary feature table truncated: " + path.string());
    }
    return m;
}

fs::path trial_dir(const fs::path& root, int subject, int session, int trial) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "subject_%02d/session_%02d/trial_%02d", subject, session,
                  trial);
    return root / buf;
}

void write_trial(const fs::path& dir, const TrialRecord& trial, const ArmGeometry& geom) {
    write_signal_csv(dir / "emg.csv", trial.emg);
    write_positions_csv(dir / "positions.csv", trial.positions, kPositionRateHz);

    nlohmann::ordered_json meta;
    meta["movement_id"] = trial.movement_id;
    meta["session_id"] = trial.session_id;
    meta["trial_in_session"] = trial.trial_in_session;
    meta["gain_drift"] = trial.gain_drift;
    meta["emg_rate_hz"] = trial.emg.sample_rate_hz;
    meta["position_rate_hz"] = kPositionRateHz;
    meta["upper_arm_m"] = geom.upper_arm_m;
    meta["forearm_m"] = geom.forearm_m;
    std::ofstream out = open_out(dir / "meta.json");
    out << meta.dump(2) << '\n';
}

TrialRecord read_trial(const fs::path& dir, ArmGeometry& geom_out) {
    std::ifstream meta_in = open_in(dir / "meta.json");
    nlohmann::json meta;
    meta_in >> meta;

    TrialRecord trial;
    trial.movement_id = meta.at("movement_id").get<int>();
    trial.session_id = meta.at("session_id").get<int>();
    trial.trial_in_session = meta.at("trial_in_session").get<int>();
    trial.gain_drift = meta.value("gain_drift", 1.0);
    geom_out.upper_arm_m = meta.at("upper_arm_m").get<double>();
    geom_out.forearm_m = meta.at("forearm_m").get<double>();

    trial.emg = read_signal_csv(dir / "emg.csv", meta.at("emg_rate_hz").get<double>());
    trial.positions = read_positions_csv(dir / "positions.csv");
    return trial;
}

void write_subject_dataset(const fs::path& root, const SyntheticSubjectSpec& spec,
                           int sessions) {
    for_each_trial(spec, sessions, [&](TrialRecord&& trial) {
        write_trial(trial_dir(root, spec.subject_id, trial.session_id, trial.trial_in_session),
                    trial, kDefaultArm);
    });
}

std::vector<int> list_subjects(const fs::path& root) {
    if (!fs::exists(root)) {
        throw DataError("dataset root does not exist: " + root.string());
    }
    std::vector<int> ids;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (name.rfind("subject_", 0) == 0) {
            ids.push_back(std::stoi(name.substr(8)));
        }
    }
    std::sort(ids.begin(), ids.end());
    if (ids.empty()) {
        throw DataError("no subject_* directories under " + root.string());
    }
    return ids;
}

std::vector<fs::path> list_trial_dirs(const fs::path& root, int subject) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "subject_%02d", subject);
    const fs::path subject_dir = root / buf;
    if (!fs::exists(subject_dir)) {
        throw DataError("missing subject directory: " + subject_dir.string());
    }
    std::vector<fs::path> sessions;
    for (const auto& entry : fs::directory_iterator(subject_dir)) {
        if (entry.is_directory() &&
            entry.path().filename().string().rfind("session_", 0) == 0) {
            sessions.push_back(entry.path());
        }
    }
    std::sort(sessions.begin(), sessions.end());
    std::vector<fs::path> trials;
    for (const auto& session : sessions) {
        std::vector<fs::path> in_session;
        for (const auto& entry : fs::directory_iterator(session)) {
            if (entry.is_directory() &&
                entry.path().filename().string().rfind("trial_", 0) == 0) {
                in_session.push_back(entry.path());
            }
        }
        std::sort(in_session.begin(), in_session.end());
        trials.insert(trials.end(), in_session.begin(), in_session.end());
    }
    if (trials.empty()) {
        throw DataError("no trials under " + subject_dir.string());
    }
    return trials;
}

} // namespace emgswn
