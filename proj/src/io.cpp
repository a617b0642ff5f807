#include "coalhaus/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "coalhaus/config.hpp"

namespace coalhaus {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string stamp_line(const OutputStamp& stamp) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "# config=%016" PRIx64 " seed=%" PRIu64 "\n",
                  stamp.config_hash, stamp.seed);
    return buf;
}

const char* mode_name(LookdownMode mode) {
    return mode == LookdownMode::Oracle ? "oracle" : "scalable";
}

} // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError(ConfigError::Kind::Io, "cannot open for writing: " + path);
    out << content;
    if (!out) throw ConfigError(ConfigError::Kind::Io, "write failed: " + path);
}

std::string trajectories_csv(const OutputStamp& stamp,
                             const std::vector<TrajectorySummary>& trajs) {
    std::string out = stamp_line(stamp);
    out += "rep,t_rescaled,n,extinct\n";
    for (std::size_t rep = 0; rep < trajs.size(); ++rep) {
        const auto& tr = trajs[rep];
        for (std::size_t i = 0; i < tr.grid.size(); ++i) {
            const bool gone = tr.extinct && tr.n_values[i] == 0.0;
            out += std::to_string(rep);
            out += ',';
            out += format_double(tr.grid[i]);
            out += ',';
            out += format_double(tr.n_values[i]);
            out += ',';
            out += gone ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string frequencies_csv(const OutputStamp& stamp,
                            const std::vector<TrajectorySummary>& trajs) {
    std::string out = stamp_line(stamp);
    out += "rep,t_rescaled,type,freq\n";
    for (std::size_t rep = 0; rep < trajs.size(); ++rep) {
        const auto& tr = trajs[rep];
        for (std::size_t i = 0; i < tr.frequencies.size(); ++i) {
            for (const auto& [type, freq] : tr.frequencies[i]) {
                out += std::to_string(rep);
                out += ',';
                out += format_double(tr.grid[i]);
                out += ',';
                out += std::to_string(type);
                out += ',';
                out += format_double(freq);
                out += '\n';
            }
        }
    }
    return out;
}

std::string lookdown_events_csv(const OutputStamp& stamp,
                                const std::vector<LookdownRun>& runs) {
    std::string out = stamp_line(stamp);
    if (!runs.empty()) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "# k=%d r_K=%s horizon=%s mode=%s\n", runs[0].k,
                      format_double(runs[0].r_K).c_str(),
                      format_double(runs[0].horizon).c_str(), mode_name(runs[0].mode));
        out += buf;
    }
    out += "rep,t_model,kind,levels\n";
    for (std::size_t rep = 0; rep < runs.size(); ++rep) {
        for (const auto& ev : runs[rep].events) {
            out += std::to_string(rep);
            out += ',';
            out += format_double(ev.t_model);
            out += ',';
            out += ev.is_birth ? "birth" : "death";
            out += ',';
            for (std::size_t i = 0; i < ev.levels.size(); ++i) {
                if (i) out += '-';
                out += std::to_string(ev.levels[i]);
            }
            out += '\n';
        }
    }
    return out;
}

std::string limit_events_csv(const OutputStamp& stamp,
                             const std::vector<LimitRun>& runs) {
    std::string out = stamp_line(stamp);
    out += "rep,t,levels\n";
    for (std::size_t rep = 0; rep < runs.size(); ++rep) {
        for (const auto& ev : runs[rep].events) {
            out += std::to_string(rep);
            out += ',';
            out += format_double(ev.t);
            out += ',';
            for (std::size_t i = 0; i < ev.levels.size(); ++i) {
                if (i) out += '-';
                out += std::to_string(ev.levels[i]);
            }
            out += '\n';
        }
    }
    return out;
}

std::string partitions_csv(const OutputStamp& stamp,
                           const std::vector<PartitionPath>& paths) {
    std::string out = stamp_line(stamp);
    out += "rep,t,partition\n";
    for (std::size_t rep = 0; rep < paths.size(); ++rep) {
        const auto& path = paths[rep];
        out += std::to_string(rep);
        out += ",0,";
        out += path.initial.to_string();
        out += '\n';
        for (const auto& step : path.steps) {
            out += std::to_string(rep);
            out += ',';
            out += format_double(step.time);
            out += ',';
            out += step.after.to_string();
            out += '\n';
        }
    }
    return out;
}

std::string convergence_csv(const OutputStamp& stamp, const ConvergenceReport& report) {
    std::string out = stamp_line(stamp);
    out += "K,j,sup_gap\n";
    for (const auto& row : report.rows) {
        for (int j = 2; j <= report.k; ++j) {
            out += format_double(row.K);
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += format_double(row.sup_by_j[static_cast<std::size_t>(j)]);
            out += '\n';
        }
        out += format_double(row.K);
        out += ",all,";
        out += format_double(row.sup_gap);
        out += '\n';
    }
    return out;
}

std::string rate_table_csv(const OutputStamp& stamp,
                           const std::vector<std::vector<double>>& table) {
    std::string out = stamp_line(stamp);
    out += "n,j,rate\n";
    for (std::size_t row = 0; row < table.size(); ++row) {
        const int n = static_cast<int>(row) + 2; // first row is n = 2
        for (std::size_t col = 0; col < table[row].size(); ++col) {
            out += std::to_string(n);
            out += ',';
            out += std::to_string(static_cast<int>(col) + 2);
            out += ',';
            out += format_double(table[row][col]);
            out += '\n';
        }
    }
    return out;
}

std::string reports_json(const OutputStamp& stamp, const std::vector<TestReport>& reports) {
    nlohmann::json root;
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016" PRIx64, stamp.config_hash);
    root["config_hash"] = hex;
    root["seed"] = stamp.seed;
    root["reports"] = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json item;
        item["test"] = r.test;
        item["statistic"] = r.statistic;
        item["threshold"] = r.threshold;
        item["pass"] = r.pass;
        item["n"] = r.n;
        item["seed"] = r.seed;
        if (!r.metadata.empty()) item["metadata"] = r.metadata;
        root["reports"].push_back(std::move(item));
    }
    return root.dump(2) + "\n";
}

EventsFile read_lookdown_events_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(ConfigError::Kind::Io, "cannot open: " + path);
    EventsFile file;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string token;
            while (ss >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = token.substr(0, eq);
                const std::string val = token.substr(eq + 1);
                if (key == "config")
                    file.config_hash = std::stoull(val, nullptr, 16);
                else if (key == "seed")
                    file.seed = std::stoull(val);
                else if (key == "k")
                    file.k = std::stoi(val);
                else if (key == "r_K")
                    file.r_K = std::stod(val);
                else if (key == "horizon")
                    file.horizon = std::stod(val);
                else if (key == "mode")
                    file.mode = val == "oracle" ? LookdownMode::Oracle
                                                : LookdownMode::Scalable;
            }
            continue;
        }
        if (!header_seen) { // the rep,t_model,kind,levels column header
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string rep_s, t_s, kind_s, levels_s;
        if (!std::getline(ss, rep_s, ',') || !std::getline(ss, t_s, ',') ||
            !std::getline(ss, kind_s, ',') || !std::getline(ss, levels_s))
            throw ConfigError(ConfigError::Kind::Parse, "bad events row: " + line);
        const std::size_t rep = std::stoull(rep_s);
        while (file.runs.size() <= rep) file.runs.emplace_back();
        LookdownEvent ev;
        ev.t_model = std::stod(t_s);
        ev.is_birth = kind_s == "birth";
        std::istringstream ls(levels_s);
        std::string lvl;
        while (std::getline(ls, lvl, '-')) ev.levels.push_back(std::stoll(lvl));
        file.runs[rep].events.push_back(std::move(ev));
    }
    for (auto& run : file.runs) {
        run.k = file.k;
        run.r_K = file.r_K;
        run.horizon = file.horizon;
        run.mode = file.mode;
    }
    return file;
}

} // namespace coalhaus
