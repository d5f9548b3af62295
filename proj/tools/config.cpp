#include "config.hpp"

#include "bh/errors.hpp"
#include "bh/sampled.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bh::cli {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw UsageError("config: " + msg); }

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        bad(key + ": not a number: '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(d)) bad(key + ": not a number: '" + v + "'");
    return d;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long long i;
    try {
        i = std::stoll(v, &pos);
    } catch (const std::exception&) {
        bad(key + ": not an integer: '" + v + "'");
    }
    if (pos != v.size()) bad(key + ": not an integer: '" + v + "'");
    return i;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    unsigned long long i;
    try {
        i = std::stoull(v, &pos);
    } catch (const std::exception&) {
        bad(key + ": not an unsigned integer: '" + v + "'");
    }
    if (pos != v.size() || v.find('-') != std::string::npos) bad(key + ": not an unsigned integer: '" + v + "'");
    return i;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> GridSpec::values() const {
    return kind == "log" ? logspace(start, stop, count) : linspace(start, stop, count);
}

const GridSpec& ExperimentConfig::grid(const std::string& name) const {
    auto it = grids.find(name);
    if (it == grids.end()) bad("missing section [grid." + name + "]");
    return it->second;
}

void ExperimentConfig::validate() const {
    if (!(lambda > 0)) bad("run.lambda must be > 0");
    try {
        quadrature.validate();
    } catch (const std::exception& e) {
        bad(std::string("quadrature: ") + e.what());
    }
    for (const auto& [name, g] : grids) {
        if (g.kind != "linear" && g.kind != "log") bad("grid." + name + ".kind must be linear or log");
        if (g.count < 1) bad("grid." + name + ".count must be >= 1");
        if (!(g.stop > g.start)) bad("grid." + name + ": stop must exceed start");
        if (g.kind == "log" && !(g.start > 0)) bad("grid." + name + ": log grid needs start > 0");
    }
    if (max_level < 1 || max_level > 20) bad("decomposition.max_level must be in [1, 20]");
    if (n < 1 || n > max_level) bad("decomposition.n must be in [1, max_level]");
    if (nodes < 4) bad("decomposition.nodes must be >= 4");
    if (A < 0) bad("decomposition.A must be >= 0");
    if (oscillation_samples < 1) bad("decomposition.oscillation_samples must be >= 1");
    if (random_atoms < 1) bad("measure.random_atoms must be >= 1");
}

std::string ExperimentConfig::canonical() const {
    std::map<std::string, std::string> kv{
        {"run.lambda", g17(lambda)},
        {"run.function", function},
        {"run.seed", std::to_string(seed)},
        {"quadrature.abs_tol", g17(quadrature.abs_tol)},
        {"quadrature.rel_tol", g17(quadrature.rel_tol)},
        {"quadrature.max_subdivisions", std::to_string(quadrature.max_subdivisions)},
        {"quadrature.truncation_radius", g17(quadrature.truncation_radius)},
        {"decomposition.max_level", std::to_string(max_level)},
        {"decomposition.n", std::to_string(n)},
        {"decomposition.nodes", std::to_string(nodes)},
        {"decomposition.A", g17(A)},
        {"decomposition.oscillation_samples", std::to_string(oscillation_samples)},
        {"measure.random_atoms", std::to_string(random_atoms)},
    };
    for (const auto& [name, g] : grids) {
        const std::string p = "grid." + name + ".";
        kv[p + "kind"] = g.kind;
        kv[p + "start"] = g17(g.start);
        kv[p + "stop"] = g17(g.stop);
        kv[p + "count"] = std::to_string(g.count);
    }
    // output_dir is left out: it does not change any result
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::hash_hex() const {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
    return buf;
}

ExperimentConfig parse_config(std::istream& is) {
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        bad(e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    ExperimentConfig c;
    for (const auto& [section, body] : tree) {
        if (body.empty()) bad("key '" + section + "' outside a section");
        for (const auto& [key, node] : body) {
            const std::string v = node.data();
            const std::string full = section + "." + key;
            if (section == "run") {
                if (key == "lambda") c.lambda = to_double(full, v);
                else if (key == "function") c.function = v;
                else if (key == "seed") c.seed = to_u64(full, v);
                else if (key == "output_dir") c.output_dir = v;
                else bad("unknown key " + full);
            } else if (section == "quadrature") {
                if (key == "abs_tol") c.quadrature.abs_tol = to_double(full, v);
                else if (key == "rel_tol") c.quadrature.rel_tol = to_double(full, v);
                else if (key == "max_subdivisions") c.quadrature.max_subdivisions = static_cast<int>(to_int(full, v));
                else if (key == "truncation_radius") c.quadrature.truncation_radius = to_double(full, v);
                else bad("unknown key " + full);
            } else if (section == "decomposition") {
                if (key == "max_level") c.max_level = static_cast<int>(to_int(full, v));
                else if (key == "n") c.n = static_cast<int>(to_int(full, v));
                else if (key == "nodes") c.nodes = static_cast<int>(to_int(full, v));
                else if (key == "A") c.A = to_double(full, v);
                else if (key == "oscillation_samples") c.oscillation_samples = to_u64(full, v);
                else bad("unknown key " + full);
            } else if (section == "measure") {
                if (key == "random_atoms") c.random_atoms = to_u64(full, v);
                else bad("unknown key " + full);
            } else if (section.rfind("grid.", 0) == 0 && section.size() > 5) {
                GridSpec& g = c.grids[section.substr(5)];
                if (key == "kind") g.kind = v;
                else if (key == "start") g.start = to_double(full, v);
                else if (key == "stop") g.stop = to_double(full, v);
                else if (key == "count") g.count = to_u64(full, v);
                else bad("unknown key " + full);
            } else {
                bad("unknown section [" + section + "]");
            }
        }
    }
    if (const char* env = std::getenv("BH_OUTPUT_DIR"); env && *env) c.output_dir = env;
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path.string());
    return parse_config(in);
}

}  // namespace bh::cli
