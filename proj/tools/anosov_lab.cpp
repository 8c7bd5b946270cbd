// anosov-lab: certification sweeps, orbit traces, census tables and renders.
// Exit status: 0 pass, 1 check failure, 2 usage or configuration error.
#include "anosov/commands.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> k;
    std::optional<int> max_word_len;
};

anosov::RunConfig resolve(const Overrides& o) {
    anosov::RunConfig cfg = o.config.empty() ? anosov::RunConfig{} : anosov::load_config(o.config);
    if (o.seed) cfg.certify.seed = *o.seed;
    if (o.k) cfg.certify.k = *o.k;
    if (o.max_word_len) cfg.certify.census_word_len = *o.max_word_len;
    // Only the output directory may come from the environment.
    if (const char* env = std::getenv("ANOSOV_OUT"); env && *env) cfg.out_dir = env;
    if (o.out) cfg.out_dir = *o.out;
    anosov::validate(cfg.certify);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological and smooth Anosov certification for flows on circle bundles over a genus-2 surface"};
    app.require_subcommand(1);
    Overrides ov;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", ov.config, "configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", ov.seed, "seed for every sampled check");
        sub->add_option("--out", ov.out, "output directory");
        sub->add_option("--k", ov.k, "fibre cover index");
        sub->add_option("--max-word-len", ov.max_word_len, "census word-length budget");
    };
    auto* verify = app.add_subcommand("verify", "run the full certification sweep");
    auto* trace = app.add_subcommand("trace", "trace one orbit to CSV and SVG");
    auto* census = app.add_subcommand("census", "closed orbits per free homotopy class");
    auto* charts = app.add_subcommand("measure-charts", "chart coordinates and rn-derivative tables");
    auto* render = app.add_subcommand("render", "draw leaves of the horizontal foliation");
    for (auto* sub : {verify, trace, census, charts, render}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        anosov::RunConfig cfg = resolve(ov);
        if (verify->parsed()) return anosov::cmd_verify(cfg, std::cout);
        if (trace->parsed()) return anosov::cmd_trace(cfg, std::cout);
        if (census->parsed()) return anosov::cmd_census(cfg, std::cout);
        if (charts->parsed()) return anosov::cmd_measure_charts(cfg, std::cout);
        if (render->parsed()) return anosov::cmd_render(cfg, std::cout);
    } catch (const anosov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
