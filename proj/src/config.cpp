#include "anosov/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace anosov {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Located {
    std::string source;
    int line = 0;
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
    }
};

template <class T>
T parse_number(const std::string& v, const Located& at) {
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) at.fail("cannot read '" + v + "' as a number");
    return out;
}

double parse_real(const std::string& v, const Located& at) {
    // from_chars for double is missing on older libstdc++; strtod is exact too.
    char* end = nullptr;
    double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) at.fail("cannot read '" + v + "' as a real number");
    return out;
}

bool parse_bool(const std::string& v, const Located& at) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    at.fail("expected true or false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const Located&)>;

template <class T>
Setter count(T CertifyConfig::*field) {
    return [field](RunConfig& c, const std::string& v, const Located& at) {
        c.certify.*field = parse_number<T>(v, at);
    };
}

Setter real(double CertifyConfig::*field) {
    return [field](RunConfig& c, const std::string& v, const Located& at) { c.certify.*field = parse_real(v, at); };
}

Setter tolerance(double Tolerances::*field) {
    return [field](RunConfig& c, const std::string& v, const Located& at) {
        c.certify.tol.*field = parse_real(v, at);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"run.seed", [](RunConfig& c, const std::string& v, const Located& at) {
             c.certify.seed = parse_number<std::uint64_t>(v, at);
         }},
        {"run.group", [](RunConfig& c, const std::string& v, const Located& at) {
             try {
                 (void)SurfaceGroup::preset(v);
             } catch (const std::invalid_argument& e) {
                 at.fail(e.what());
             }
             c.certify.group = v;
         }},
        {"run.k", count(&CertifyConfig::k)},
        {"run.threads", count(&CertifyConfig::threads)},
        {"run.out", [](RunConfig& c, const std::string& v, const Located&) { c.out_dir = v; }},
        {"samples.busemann", count(&CertifyConfig::busemann_samples)},
        {"samples.rn", count(&CertifyConfig::rn_samples)},
        {"samples.rn_word_len", count(&CertifyConfig::rn_word_len)},
        {"samples.periodic_word_len", count(&CertifyConfig::periodic_word_len)},
        {"samples.holonomy_segments", count(&CertifyConfig::holonomy_segments)},
        {"samples.asymptotic_pairs", count(&CertifyConfig::asymptotic_pairs)},
        {"samples.stable", count(&CertifyConfig::stable_samples)},
        {"samples.separation_pairs", count(&CertifyConfig::separation_pairs)},
        {"samples.separation_eps", real(&CertifyConfig::separation_eps)},
        {"samples.separation_gaps", [](RunConfig& c, const std::string& v, const Located& at) {
             std::istringstream in(v);
             std::string item;
             c.certify.separation_gaps.clear();
             while (in >> item) c.certify.separation_gaps.push_back(parse_real(item, at));
             if (c.certify.separation_gaps.empty()) at.fail("separation_gaps needs at least one value");
         }},
        {"samples.c1", count(&CertifyConfig::c1_samples)},
        {"samples.mollifier_scale", count(&CertifyConfig::mollifier_scale)},
        {"samples.cone_calibration", count(&CertifyConfig::cone_calibration)},
        {"samples.cone_t_max", real(&CertifyConfig::cone_t_max)},
        {"samples.cone_points", count(&CertifyConfig::cone_points)},
        {"samples.quasigeodesic_leaves", count(&CertifyConfig::quasigeodesic_leaves)},
        {"census.max_word_len", count(&CertifyConfig::census_word_len)},
        {"census.max_k", count(&CertifyConfig::census_max_k)},
        {"tolerances.busemann", tolerance(&Tolerances::busemann)},
        {"tolerances.rn_relative", tolerance(&Tolerances::rn_relative)},
        {"tolerances.period_holonomy", tolerance(&Tolerances::period_holonomy)},
        {"tolerances.holonomy_bound", tolerance(&Tolerances::holonomy_bound)},
        {"tolerances.exponent_relative", tolerance(&Tolerances::exponent_relative)},
        {"tolerances.growth_relative", tolerance(&Tolerances::growth_relative)},
        {"tolerances.decay_min", tolerance(&Tolerances::decay_min)},
        {"tolerances.mollifier_halving", tolerance(&Tolerances::mollifier_halving)},
        {"tolerances.mollifier_exact", tolerance(&Tolerances::mollifier_exact)},
        {"tolerances.c2_min", tolerance(&Tolerances::c2_min)},
        {"tolerances.quasigeodesic_spread", tolerance(&Tolerances::quasigeodesic_spread)},
        {"tolerances.integrator", tolerance(&Tolerances::integrator)},
        {"tolerances.period", tolerance(&Tolerances::period)},
        {"trace.x", [](RunConfig& c, const std::string& v, const Located& at) { c.trace.x = parse_real(v, at); }},
        {"trace.y", [](RunConfig& c, const std::string& v, const Located& at) { c.trace.y = parse_real(v, at); }},
        {"trace.s", [](RunConfig& c, const std::string& v, const Located& at) { c.trace.s = parse_real(v, at); }},
        {"trace.t", [](RunConfig& c, const std::string& v, const Located& at) { c.trace.t = parse_real(v, at); }},
        {"trace.field", [](RunConfig& c, const std::string& v, const Located& at) {
             if (v != "exact" && v != "smoothed") at.fail("field must be exact or smoothed");
             c.trace.field = v;
         }},
        {"trace.scale", [](RunConfig& c, const std::string& v, const Located& at) {
             c.trace.scale = parse_number<int>(v, at);
         }},
        {"trace.word", [](RunConfig& c, const std::string& v, const Located& at) {
             try {
                 c.trace.word = Word::parse(v).str();
             } catch (const std::exception& e) {
                 at.fail(e.what());
             }
         }},
        {"trace.fixed_point", [](RunConfig& c, const std::string& v, const Located& at) {
             c.trace.fixed_point = parse_number<int>(v, at);
         }},
        {"trace.one_period", [](RunConfig& c, const std::string& v, const Located& at) {
             c.trace.one_period = parse_bool(v, at);
         }},
        {"charts.anchors", [](RunConfig& c, const std::string& v, const Located& at) {
             c.charts.anchors = parse_number<int>(v, at);
         }},
        {"charts.samples", [](RunConfig& c, const std::string& v, const Located& at) {
             c.charts.samples = parse_number<int>(v, at);
         }},
        {"charts.rn_word_len", [](RunConfig& c, const std::string& v, const Located& at) {
             c.charts.rn_word_len = parse_number<int>(v, at);
         }},
        {"render.leaves", [](RunConfig& c, const std::string& v, const Located& at) {
             c.render.leaves = parse_number<int>(v, at);
         }},
        {"render.rays", [](RunConfig& c, const std::string& v, const Located& at) {
             c.render.rays = parse_number<int>(v, at);
         }},
        {"render.tile_radius", [](RunConfig& c, const std::string& v, const Located& at) {
             c.render.tile_radius = parse_real(v, at);
         }},
    };
    return table;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw, section;
    std::map<std::string, int> seen;
    Located at{source, 0};
    while (std::getline(in, raw)) {
        ++at.line;
        std::string line = raw;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') at.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) at.fail("empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) at.fail("missing key before '='");
        if (section.empty()) at.fail("key '" + key + "' outside any section");
        std::string full = section + "." + key;
        auto it = setters().find(full);
        if (it == setters().end()) at.fail("unknown key '" + key + "' in section [" + section + "]");
        if (auto prev = seen.find(full); prev != seen.end())
            at.fail("duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
        seen[full] = at.line;
        if (value.empty()) at.fail("missing value for '" + key + "'");
        it->second(cfg, value, at);
    }
    try {
        validate(cfg.certify);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path + ": cannot open configuration file");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str(), path);
}

std::string default_config_text(std::uint64_t seed) {
    const CertifyConfig d;
    std::ostringstream o;
    o << "[run]\nseed = " << seed << "\ngroup = " << d.group << "\nk = " << d.k << "\n\n"
      << "[samples]\nbusemann = " << d.busemann_samples << "\nrn = " << d.rn_samples
      << "\nrn_word_len = " << d.rn_word_len << "\nperiodic_word_len = " << d.periodic_word_len
      << "\nholonomy_segments = " << d.holonomy_segments << "\nasymptotic_pairs = " << d.asymptotic_pairs
      << "\nstable = " << d.stable_samples << "\nseparation_pairs = " << d.separation_pairs
      << "\nseparation_eps = " << d.separation_eps << "\nseparation_gaps =";
    for (double g : d.separation_gaps) o << ' ' << g;
    o << "\nc1 = " << d.c1_samples << "\nmollifier_scale = " << d.mollifier_scale
      << "\ncone_calibration = " << d.cone_calibration << "\ncone_t_max = " << d.cone_t_max
      << "\ncone_points = " << d.cone_points << "\nquasigeodesic_leaves = " << d.quasigeodesic_leaves << "\n\n"
      << "[census]\nmax_word_len = " << d.census_word_len << "\nmax_k = " << d.census_max_k << "\n";
    return o.str();
}

}  // namespace anosov
