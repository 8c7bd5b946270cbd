// Acceptance run: the default sweep twice with one seed, then one line per
// criterion. Exit status is nonzero if any criterion fails.
#include "anosov/commands.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace anosov;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240601;

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

double constant(const PropertyResult& p, const std::string& name) {
    for (const Constant& c : p.constants)
        if (c.name == name) return c.value;
    return NAN;
}

struct Criterion {
    int id;
    bool ok;
    std::string detail;
};

Criterion section(int id, const CertificationReport& r, const std::string& sid,
                  const std::function<std::string(const PropertyResult&, bool&)>& extra) {
    const PropertyResult* p = r.find(sid);
    if (!p) return {id, false, "section " + sid + " missing"};
    bool ok = p->pass();
    std::string detail = fmt::format("{} {} samples {} time {:.1f}s", sid, ok ? "pass" : "FAIL", p->samples, p->seconds);
    if (!p->error.empty()) detail += " error: " + p->error;
    detail += "; " + extra(*p, ok);
    return {id, ok, detail};
}

}  // namespace

int main() {
    const fs::path root = fs::temp_directory_path() / "anosov-acceptance";
    fs::remove_all(root);
    RunConfig cfg;
    cfg.certify.seed = kSeed;
    std::ostringstream log;

    cfg.out_dir = (root / "first").string();
    CertificationReport r;
    cmd_verify(cfg, log, &r);
    cfg.out_dir = (root / "second").string();
    cmd_verify(cfg, log);

    const CertifyConfig& c = r.config;
    const Tolerances& tol = c.tol;
    std::vector<Criterion> out;

    out.push_back(section(1, r, "busemann", [&](const PropertyResult& p, bool& ok) {
        ok = ok && p.samples >= 10000 && tol.busemann <= 1e-9 && p.seconds < 10.0;
        return fmt::format("tolerance {}, need >= 10000 samples and < 10 s", tol.busemann);
    }));
    out.push_back(section(2, r, "rn_derivative", [&](const PropertyResult& p, bool& ok) {
        ok = ok && p.samples >= 1000 && constant(p, "max_word_len") >= 4 && tol.rn_relative <= 1e-5 && p.seconds < 60.0;
        return fmt::format("words up to length {}, relative tolerance {}, need < 60 s", constant(p, "max_word_len"),
                           tol.rn_relative);
    }));
    out.push_back(section(3, r, "periodic_holonomy", [&](const PropertyResult& p, bool& ok) {
        ok = ok && c.periodic_word_len >= 3 && tol.period_holonomy <= 1e-6 && p.samples > 0;
        return fmt::format("{} orbits from words of length <= {}, relative tolerance {}, first return monotone",
                           p.samples, c.periodic_word_len, tol.period_holonomy);
    }));
    out.push_back(section(4, r, "holonomy_bound", [&](const PropertyResult& p, bool& ok) {
        ok = ok && p.samples >= 1000 && tol.holonomy_bound <= 1e-6 && tol.exponent_relative <= 0.05;
        return fmt::format("fitted exponent {:.4f}, diam(D) {:.4f}", constant(p, "backward_fitted_exponent"),
                           constant(p, "diam_D"));
    }));
    out.push_back(section(5, r, "topological_anosov", [&](const PropertyResult& p, bool& ok) {
        double pairs = constant(p, "separation_pairs");
        ok = ok && tol.decay_min >= 0.9 && pairs >= 1000;
        return fmt::format("decay exponent >= {}, {} separation pairs, t(kappa) up to {:.2f}", tol.decay_min, pairs,
                           constant(p, "t_uniform"));
    }));
    out.push_back(section(6, r, "mollifier", [&](const PropertyResult& p, bool& ok) {
        ok = ok && tol.mollifier_halving <= 0.2 && p.seconds < 30.0;
        return fmt::format("halving ratios in [{:.4f}, {:.4f}], need < 30 s", constant(p, "min_halving_ratio"),
                           constant(p, "max_halving_ratio"));
    }));
    out.push_back(section(7, r, "cone_field", [&](const PropertyResult& p, bool& ok) {
        double beta = constant(p, "beta"), c4 = constant(p, "c4"), c2 = constant(p, "c2");
        ok = ok && beta > 2.0 * c4 && c2 > 0.5 && tol.c2_min >= 0.5 && p.samples >= 1000 &&
             constant(p, "leaves") >= 100;
        return fmt::format("beta {:.4f} > 2 c4 {:.4f}, c2 {:.4f}, quasigeodesic R {:.4g} over {} leaves", beta, 2 * c4,
                           c2, constant(p, "R"), constant(p, "leaves"));
    }));
    out.push_back(section(8, r, "census", [&](const PropertyResult& p, bool& ok) {
        ok = ok && c.census_word_len >= 4 && p.seconds < 300.0;
        std::string factors;
        for (int k = 1; k <= 4; ++k) {
            const CensusScalingRow* row = nullptr;
            for (const CensusScalingRow& s : r.census)
                if (s.k == k) row = &s;
            if (!row || row->factor != k || row->scaling_mismatches != 0 || row->min_count < 2u * k) ok = false;
            factors += fmt::format(" k{}:{}", k, row ? format_real(row->factor) : "missing");
        }
        return fmt::format("word length {}, factors{}, need < 300 s", c.census_word_len, factors);
    }));

    bool same = true;
    std::string differing;
    for (const char* f : {"report.txt", "report_checks.csv", "report_constants.csv", "separation.csv",
                          "census_scaling.csv"}) {
        std::string a = slurp(root / "first" / f), b = slurp(root / "second" / f);
        if (a.empty() || a != b) {
            same = false;
            differing += std::string(" ") + f;
        }
    }
    out.push_back({9, same, same ? "five report files byte-identical across two runs" : "differs:" + differing});

    bool all = true;
    for (const Criterion& k : out) {
        std::cout << fmt::format("criterion {} {} {}\n", k.id, k.ok ? "PASS" : "FAIL", k.detail);
        all = all && k.ok;
    }
    fs::remove_all(root);
    return all ? 0 : 1;
}
