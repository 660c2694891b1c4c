#include "itm/result_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace itm {

using nlohmann::json;

namespace {

ProbeStatus probe_status_from_string(const std::string& s) {
    if (s == "ok") return ProbeStatus::Ok;
    if (s == "blowup") return ProbeStatus::BlowUp;
    if (s == "stepfail") return ProbeStatus::StepFailure;
    throw std::runtime_error("io: unknown probe status '" + s + "'");
}

json to_json(const IterationRecord& rec) {
    return json{{"j", rec.index},
                {"h_star", rec.h_star},
                {"gamma", rec.gamma},
                {"lambda", rec.lambda},
                {"skin_friction", rec.skin_friction},
                {"status", to_string(rec.status)}};
}

IterationRecord record_from_json(const json& j) {
    IterationRecord rec;
    rec.index = j.at("j").get<int>();
    rec.h_star = j.at("h_star").get<double>();
    rec.gamma = j.at("gamma").get<double>();
    rec.lambda = j.at("lambda").get<double>();
    rec.skin_friction = j.at("skin_friction").get<double>();
    rec.status = probe_status_from_string(j.at("status").get<std::string>());
    return rec;
}

}  // namespace

std::vector<SolutionSample> solution_from_trajectory(const Trajectory& traj) {
    std::vector<SolutionSample> samples;
    samples.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        samples.push_back(
            {traj.nodes[i], traj.value(i, 0), traj.value(i, 1), traj.value(i, 2)});
    }
    return samples;
}

std::string format_double17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string to_json_string(const ResultDocument& doc) {
    json j;
    j["command"] = doc.command;
    j["timestamp"] = doc.timestamp;
    j["version"] = doc.version;
    j["config"] = doc.config;
    j["iterations"] = json::array();
    for (const auto& rec : doc.iterations) j["iterations"].push_back(to_json(rec));
    j["final"] = json{{"converged", doc.final_scalars.converged},
                      {"h_star", doc.final_scalars.h_star},
                      {"lambda", doc.final_scalars.lambda},
                      {"skin_friction", doc.final_scalars.skin_friction}};
    j["solution"] = json::array();
    for (const auto& s : doc.solution) {
        j["solution"].push_back(json::array({s.eta, s.f, s.fprime, s.fsecond}));
    }
    j["continuation"] = json::array();
    for (const auto& row : doc.continuation) {
        j["continuation"].push_back(json{{"beta", row.beta},
                                         {"h_star_normal", row.h_star_normal},
                                         {"h_star_reverse", row.h_star_reverse},
                                         {"skin_normal", row.skin_normal},
                                         {"skin_reverse", row.skin_reverse}});
    }
    j["extras"] = doc.extras;
    return j.dump(2);
}

ResultDocument from_json_string(const std::string& text) {
    const json j = json::parse(text);
    ResultDocument doc;
    doc.command = j.at("command").get<std::string>();
    doc.timestamp = j.at("timestamp").get<std::string>();
    doc.version = j.at("version").get<std::string>();
    doc.config = j.at("config").get<std::map<std::string, std::string>>();
    for (const auto& item : j.at("iterations")) {
        doc.iterations.push_back(record_from_json(item));
    }
    const auto& fin = j.at("final");
    doc.final_scalars.converged = fin.at("converged").get<bool>();
    doc.final_scalars.h_star = fin.at("h_star").get<double>();
    doc.final_scalars.lambda = fin.at("lambda").get<double>();
    doc.final_scalars.skin_friction = fin.at("skin_friction").get<double>();
    for (const auto& item : j.at("solution")) {
        doc.solution.push_back({item.at(0).get<double>(), item.at(1).get<double>(),
                                item.at(2).get<double>(), item.at(3).get<double>()});
    }
    for (const auto& item : j.at("continuation")) {
        doc.continuation.push_back({item.at("beta").get<double>(),
                                    item.at("h_star_normal").get<double>(),
                                    item.at("h_star_reverse").get<double>(),
                                    item.at("skin_normal").get<double>(),
                                    item.at("skin_reverse").get<double>()});
    }
    doc.extras = j.at("extras").get<std::map<std::string, double>>();
    return doc;
}

void write_json(const ResultDocument& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    out << to_json_string(doc) << "\n";
    if (!out) throw std::runtime_error("io: write failed for '" + path + "'");
}

ResultDocument read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("io: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

namespace {

void write_metadata_comments(std::ofstream& out, const ResultDocument& doc) {
    out << "# command=" << doc.command << "\n";
    out << "# timestamp=" << doc.timestamp << "\n";
    out << "# version=" << doc.version << "\n";
    for (const auto& [key, value] : doc.config) out << "# " << key << "=" << value << "\n";
    for (const auto& [key, value] : doc.extras) {
        out << "# " << key << "=" << format_double17(value) << "\n";
    }
    out << "# converged=" << (doc.final_scalars.converged ? "true" : "false")
        << " h_star=" << format_double17(doc.final_scalars.h_star)
        << " lambda=" << format_double17(doc.final_scalars.lambda)
        << " skin_friction=" << format_double17(doc.final_scalars.skin_friction) << "\n";
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_csv_tables(const ResultDocument& doc, const std::string& base_path) {
    {
        auto out = open_csv(base_path + "_iterations.csv");
        write_metadata_comments(out, doc);
        out << "j,h_star,lambda,gamma,skin_friction,status\n";
        for (const auto& rec : doc.iterations) {
            out << rec.index << ',' << format_double17(rec.h_star) << ','
                << format_double17(rec.lambda) << ',' << format_double17(rec.gamma) << ','
                << format_double17(rec.skin_friction) << ',' << to_string(rec.status)
                << "\n";
        }
        if (!out) throw std::runtime_error("io: write failed for '" + base_path + "_iterations.csv'");
    }
    {
        auto out = open_csv(base_path + "_solution.csv");
        write_metadata_comments(out, doc);
        out << "eta,f,fprime,fsecond\n";
        for (const auto& s : doc.solution) {
            out << format_double17(s.eta) << ',' << format_double17(s.f) << ','
                << format_double17(s.fprime) << ',' << format_double17(s.fsecond) << "\n";
        }
        if (!out) throw std::runtime_error("io: write failed for '" + base_path + "_solution.csv'");
    }
    if (!doc.continuation.empty()) {
        auto out = open_csv(base_path + "_continuation.csv");
        write_metadata_comments(out, doc);
        out << "beta,h_star_normal,h_star_reverse,skin_normal,skin_reverse\n";
        for (const auto& row : doc.continuation) {
            out << format_double17(row.beta) << ',' << format_double17(row.h_star_normal)
                << ',' << format_double17(row.h_star_reverse) << ','
                << format_double17(row.skin_normal) << ','
                << format_double17(row.skin_reverse) << "\n";
        }
        if (!out) throw std::runtime_error("io: write failed for '" + base_path + "_continuation.csv'");
    }
}

// ---------------------------------------------------------------------------
// Config files
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::string nearest_key(const std::string& key, const std::vector<std::string>& known) {
    std::string best;
    std::size_t best_distance = static_cast<std::size_t>(-1);
    for (const auto& candidate : known) {
        const std::size_t d = edit_distance(key, candidate);
        if (d < best_distance) {
            best_distance = d;
            best = candidate;
        }
    }
    return best;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(
    const std::string& text, const std::vector<std::string>& known_keys) {
    std::map<std::string, std::string> entries;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config: line " + std::to_string(line_number) +
                                     " is not of the form key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) {
            throw std::runtime_error("config: unknown key '" + key +
                                     "'; nearest valid key is '" +
                                     nearest_key(key, known_keys) + "'");
        }
        entries[key] = value;
    }
    return entries;
}

std::map<std::string, std::string> load_config_file(
    const std::string& path, const std::vector<std::string>& known_keys) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), known_keys);
}

}  // namespace itm
