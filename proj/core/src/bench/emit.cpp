#include "kgd/bench/emit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgd/text.hpp"

namespace kgd::bench {

namespace {

const char* kRecordHeader = "solver,problem,outcome,iters,gevals,seconds,rel_gnorm";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

Outcome outcome_from_string(const std::string& s, int line_no) {
    if (s == "Success") return Outcome::Success;
    if (s == "Failure") return Outcome::Failure;
    throw ParseError(line_no, "bad outcome '" + s + "'");
}

}  // namespace

EmitFormat format_from_string(const std::string& name) {
    if (name == "csv") return EmitFormat::Csv;
    if (name == "jsonl") return EmitFormat::JsonLines;
    throw InvalidConfig("unknown format '" + name + "' (expected csv or jsonl)");
}

void write_records_csv(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
    out << kRecordHeader << '\n';
    for (const auto& r : records) {
        out << r.solver << ',' << r.problem << ',' << to_string(r.outcome) << ','
            << r.iterations << ',' << r.grad_evals << ',' << format_double(r.seconds) << ','
            << format_double(r.rel_gnorm) << '\n';
    }
}

void write_records_jsonl(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
    for (const auto& r : records) {
        nlohmann::json j{{"solver", r.solver},
                         {"problem", r.problem},
                         {"outcome", to_string(r.outcome)},
                         {"iters", r.iterations},
                         {"gevals", r.grad_evals},
                         {"seconds", r.seconds},
                         {"rel_gnorm", std::isfinite(r.rel_gnorm)
                                           ? nlohmann::json(r.rel_gnorm)
                                           : nlohmann::json(format_double(r.rel_gnorm))}};
        out << j.dump() << '\n';
    }
}

std::vector<BenchmarkRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty records file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto want = split_csv_line(kRecordHeader);
    const auto have = split_csv_line(line);
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (i >= have.size() || have[i] != want[i]) {
            throw ParseError(1, "missing or misplaced column '" + want[i] + "'");
        }
    }

    std::vector<BenchmarkRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != want.size()) {
            throw ParseError(line_no, "expected " + std::to_string(want.size()) + " fields, got " +
                                          std::to_string(f.size()));
        }
        BenchmarkRecord r;
        r.solver = f[0];
        r.problem = f[1];
        r.outcome = outcome_from_string(f[2], line_no);
        auto iters = parse_long(f[3]);
        auto gevals = parse_long(f[4]);
        auto seconds = parse_double(f[5]);
        auto rel = parse_double(f[6]);
        if (!iters || !gevals || !seconds || !rel) {
            throw ParseError(line_no, "bad numeric field");
        }
        r.iterations = *iters;
        r.grad_evals = *gevals;
        r.seconds = *seconds;
        r.rel_gnorm = *rel;
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<BenchmarkRecord> read_records_jsonl(std::istream& in) {
    std::vector<BenchmarkRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_no, e.what());
        }
        for (const char* key : {"solver", "problem", "outcome", "iters", "gevals", "seconds",
                                "rel_gnorm"}) {
            if (!j.contains(key)) throw ParseError(line_no, std::string("missing field '") + key + "'");
        }
        BenchmarkRecord r;
        r.solver = j["solver"].get<std::string>();
        r.problem = j["problem"].get<std::string>();
        r.outcome = outcome_from_string(j["outcome"].get<std::string>(), line_no);
        r.iterations = j["iters"].get<long>();
        r.grad_evals = j["gevals"].get<long>();
        r.seconds = j["seconds"].get<double>();
        if (j["rel_gnorm"].is_string()) {
            auto v = parse_double(j["rel_gnorm"].get<std::string>());
            if (!v) throw ParseError(line_no, "bad rel_gnorm");
            r.rel_gnorm = *v;
        } else {
            r.rel_gnorm = j["rel_gnorm"].get<double>();
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<BenchmarkRecord> read_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl") {
        return read_records_jsonl(in);
    }
    return read_records_csv(in);
}

void write_profile_csv(const PerformanceProfile& profile, std::ostream& out) {
    out << "solver,tau,r\n";
    for (const auto& curve : profile.curves) {
        for (const auto& [tau, r] : curve.points) {
            out << curve.solver << ',' << format_double(tau) << ',' << format_double(r) << '\n';
        }
    }
}

void write_profile_jsonl(const PerformanceProfile& profile, std::ostream& out) {
    for (const auto& curve : profile.curves) {
        for (const auto& [tau, r] : curve.points) {
            out << nlohmann::json{{"solver", curve.solver}, {"tau", tau}, {"r", r}}.dump() << '\n';
        }
    }
}

void write_gnuplot_script(const PerformanceProfile& profile, const std::string& csv_path,
                          std::ostream& out) {
    out << "set datafile separator ','\n"
        << "set key bottom right\n"
        << "set xlabel 'tau'\n"
        << "set ylabel 'fraction of problems'\n"
        << "set yrange [0:1.05]\n"
        << "set title 'performance profile (" << to_string(profile.metric) << ")'\n"
        << "plot \\\n";
    for (std::size_t i = 0; i < profile.curves.size(); ++i) {
        const auto& solver = profile.curves[i].solver;
        out << "  '" << csv_path << "' using 2:($1 eq '" << solver
            << "' ? $3 : 1/0) with steps title '" << solver << "'";
        out << (i + 1 < profile.curves.size() ? ", \\\n" : "\n");
    }
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
    out << "k,f,rel_gnorm,alpha,shrinks\n";
    for (const auto& s : trace.steps) {
        const double rel = trace.g_norm0 > 0 ? s.g_norm / trace.g_norm0 : s.g_norm;
        const double alpha = std::isnan(s.alpha_applied) ? s.alpha_assigned : s.alpha_applied;
        out << s.k << ',' << format_double(s.f) << ',' << format_double(rel) << ','
            << format_double(alpha) << ',' << s.shrinks << '\n';
    }
}

}  // namespace kgd::bench
