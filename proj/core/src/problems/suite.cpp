#include "kgd/problems/suite.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgd/problems/cycle.hpp"
#include "kgd/problems/libsvm.hpp"
#include "kgd/problems/logistic.hpp"
#include "kgd/problems/quadratic.hpp"
#include "kgd/problems/raydan.hpp"
#include "kgd/text.hpp"

namespace kgd {

namespace {

using KeyValues = std::map<std::string, std::string>;

struct ParsedSpec {
    std::string name;
    KeyValues keys;
};

ParsedSpec split_spec(const std::string& spec) {
    ParsedSpec out;
    const auto colon = spec.find(':');
    out.name = spec.substr(0, colon);
    if (colon == std::string::npos) return out;

    std::string last_key;
    std::stringstream rest(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(rest, tok, ',')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            // continuation of a comma-separated value list (spectrum=1,10)
            if (last_key.empty()) throw InvalidConfig("bad problem spec token '" + tok + "'");
            out.keys[last_key] += "," + tok;
        } else {
            last_key = tok.substr(0, eq);
            out.keys[last_key] = tok.substr(eq + 1);
        }
    }
    return out;
}

double want_double(const KeyValues& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    auto v = parse_double(it->second);
    if (!v) throw InvalidConfig("bad value for '" + key + "': " + it->second);
    return *v;
}

long want_long(const KeyValues& kv, const std::string& key, long fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    auto v = parse_long(it->second);
    if (!v) throw InvalidConfig("bad value for '" + key + "': " + it->second);
    return *v;
}

Vector parse_vector(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto v = parse_double(tok);
        if (!v) throw InvalidConfig("bad number in list: '" + tok + "'");
        vals.push_back(*v);
    }
    return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

void reject_unknown_keys(const ParsedSpec& p, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : p.keys) {
        bool ok = false;
        for (const char* a : allowed) {
            if (k == a) {
                ok = true;
                break;
            }
        }
        if (!ok) throw InvalidConfig("unknown key '" + k + "' for problem '" + p.name + "'");
    }
}

Vector seeded_normal(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
}

}  // namespace

Vector log_spaced_spectrum(int n, double kappa) {
    if (n < 1) throw InvalidConfig("spectrum size must be >= 1");
    if (!(kappa >= 1.0)) throw InvalidConfig("kappa must be >= 1");
    Vector s(n);
    if (n == 1) {
        s[0] = 1.0;
        return s;
    }
    for (int i = 0; i < n; ++i) {
        s[i] = std::pow(kappa, static_cast<double>(i) / (n - 1));
    }
    s[n - 1] = kappa;  // exact endpoints
    s[0] = 1.0;
    return s;
}

ProblemInstance make_instance(const std::string& spec, std::uint64_t default_seed) {
    const ParsedSpec p = split_spec(spec);
    ProblemInstance inst;
    inst.name = spec;
    inst.spec = spec;

    if (p.name == "quadratic") {
        reject_unknown_keys(p, {"spectrum", "n", "kappa", "seed"});
        const auto seed = static_cast<std::uint64_t>(
            want_long(p.keys, "seed", static_cast<long>(default_seed)));
        Vector spectrum;
        if (auto it = p.keys.find("spectrum"); it != p.keys.end()) {
            spectrum = parse_vector(it->second);
        } else {
            const long n = want_long(p.keys, "n", 10);
            const double kappa = want_double(p.keys, "kappa", 10.0);
            spectrum = log_spaced_spectrum(static_cast<int>(n), kappa);
        }
        const auto n = spectrum.size();
        inst.problem = make_quadratic(spectrum, Vector::Zero(n), seed);
        inst.x0 = seeded_normal(n, seed + 1);
    } else if (p.name == "raydan") {
        reject_unknown_keys(p, {"n"});
        const long n = want_long(p.keys, "n", 100);
        inst.problem = raydan_sc2(static_cast<int>(n));
        inst.x0 = Vector::Ones(n);
    } else if (p.name == "cycle") {
        reject_unknown_keys(p, {"b"});
        const double b = want_double(p.keys, "b", 1.0);
        auto cycle = make_cycle_problem(b);
        inst.x0 = cycle->cycle_start();
        inst.alpha0 = cycle->cycle_alpha0();
        inst.problem = std::move(cycle);
    } else if (p.name == "synth-logistic") {
        reject_unknown_keys(p, {"m", "n", "seed", "gamma"});
        const long m = want_long(p.keys, "m", 1000);
        const long n = want_long(p.keys, "n", 50);
        const auto seed = static_cast<std::uint64_t>(
            want_long(p.keys, "seed", static_cast<long>(default_seed)));
        std::optional<double> gamma;
        if (p.keys.count("gamma")) gamma = want_double(p.keys, "gamma", 0.0);
        inst.problem = synth_logistic(m, static_cast<int>(n), seed, gamma);
        inst.x0 = Vector::Zero(n);
    } else if (p.name == "logistic") {
        reject_unknown_keys(p, {"path", "gamma"});
        auto it = p.keys.find("path");
        if (it == p.keys.end()) throw InvalidConfig("logistic requires path=FILE");
        LibsvmData data = parse_libsvm_file(it->second);
        const double gamma =
            want_double(p.keys, "gamma", 1.0 / static_cast<double>(data.a.rows()));
        const auto n = data.a.cols();
        inst.problem = make_logistic(std::move(data.a), std::move(data.y), gamma);
        inst.x0 = Vector::Zero(n);
    } else {
        throw InvalidConfig("unknown problem '" + p.name + "'");
    }
    return inst;
}

std::vector<ProblemInstance> smoke_suite(std::uint64_t seed) {
    auto named = [&](std::string name, const std::string& spec) {
        ProblemInstance inst = make_instance(spec, seed);
        inst.name = std::move(name);
        return inst;
    };
    std::vector<ProblemInstance> out;
    out.push_back(named("quad-k10", "quadratic:n=10,kappa=10,seed=" + std::to_string(seed)));
    out.push_back(named("quad-k100", "quadratic:n=50,kappa=100,seed=" + std::to_string(seed + 1)));
    out.push_back(
        named("quad-k1000", "quadratic:n=100,kappa=1000,seed=" + std::to_string(seed + 2)));
    out.push_back(named("raydan-100", "raydan:n=100"));
    out.push_back(named("cycle", "cycle:b=1"));
    out.push_back(named("synth-logistic",
                        "synth-logistic:m=1000,n=50,seed=" + std::to_string(seed)));
    return out;
}

std::vector<ProblemInstance> load_manifest(const std::string& path, std::uint64_t default_seed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    std::vector<ProblemInstance> out;

    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(1, std::string("manifest JSON: ") + e.what());
        }
        if (!doc.is_array()) throw ParseError(1, "manifest JSON must be an array");
        for (const auto& item : doc) {
            if (!item.contains("spec")) throw ParseError(1, "manifest entry missing 'spec'");
            ProblemInstance inst = make_instance(item["spec"].get<std::string>(), default_seed);
            if (item.contains("name")) inst.name = item["name"].get<std::string>();
            out.push_back(std::move(inst));
        }
        return out;
    }

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        try {
            out.push_back(make_instance(line.substr(first, last - first + 1), default_seed));
        } catch (const InvalidConfig& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return out;
}

}  // namespace kgd
