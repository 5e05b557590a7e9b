// Command-line driver: batch pipeline from stabilization sweep to complex
// resonance energy, each stage a file-to-file transform.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "stabres/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"stabres: resonance extraction from real-scaled stabilization graphs"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, out_dir = "out";
    int threads = 1;
    app.add_option("--config", config_path, "run configuration (JSON)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* stab = app.add_subcommand("stab", "eta sweep -> graph.csv + graph.meta.json");
    std::string graph_path;
    auto* diab =
        app.add_subcommand("diabatize", "graph.csv -> crossings.json (per-crossing fits)");
    diab->add_option("graph", graph_path, "stabilization graph CSV")->required();
    std::string crossings_path;
    auto* reso = app.add_subcommand(
        "resonance", "crossings.json -> trajectory CSVs + report.json");
    reso->add_option("crossings", crossings_path, "crossing records JSON")->required();
    auto* bench = app.add_subcommand(
        "benchmark", "direct complex scaling -> benchmark_trajectory.csv + benchmark.json");

    CLI11_PARSE(app, argc, argv);

    try {
        const stabres::RunConfig cfg = stabres::load_config(config_path);
        if (stab->parsed()) stabres::cmd_stab(cfg, out_dir, threads);
        if (diab->parsed()) stabres::cmd_diabatize(cfg, graph_path, out_dir, threads);
        if (reso->parsed()) stabres::cmd_resonance(cfg, crossings_path, out_dir, threads);
        if (bench->parsed()) stabres::cmd_benchmark(cfg, out_dir, threads);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
