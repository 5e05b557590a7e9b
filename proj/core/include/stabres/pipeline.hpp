#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabres/contfit.hpp"
#include "stabres/diabatize.hpp"
#include "stabres/direct_cs.hpp"
#include "stabres/expost_cs.hpp"
#include "stabres/stabgraph.hpp"

namespace stabres {

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::vector<double> points() const;
};

/// One JSON document drives the whole pipeline; every numeric field is
/// validated against the owning module's preconditions at load time.
struct RunConfig {
    PotentialParams potential;
    BasisSpec basis;
    GridSpec eta_grid;

    double window_center = 1.5388;
    double window_half_width = 0.05;

    // diabatize stage
    int min_points = 5;
    double min_delta = 1e-5;  // drops uncoupled (symmetry-forbidden) crossings
    bool refine = true;
    double fine_step = 1e-3;
    double max_half_extent = 0.012;
    double neighbor_fraction = 0.35;

    ChannelDataOptions channel_data;

    // resonance stage
    GridSpec theta_grid{2.5e-3, 0.45, 2.5e-3};
    std::vector<double> delta_etas{0.0};
    int extrapolation_degree = 2;
    std::optional<std::pair<double, double>> extrapolation_window;  // nullopt = auto

    // direct-CS benchmark
    bool benchmark_enabled = true;
    Parity benchmark_parity = Parity::Full;
    GridSpec benchmark_theta{0.01, 0.35, 0.01};

    void validate() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// FNV-1a fingerprint of the canonicalized config, embedded in every output.
std::string config_hash(const RunConfig& cfg);

/// One fitted crossing: the two-level parameters joined with the channel fit.
struct CrossingRecord {
    double eta_c = 0.0;       // channel anchor (parabolic-root fit)
    double eta_c_gapmin = 0.0;  // spline gap-minimum estimate
    double E_r = 0.0;
    double delta = 0.0;
    double a_c = 0.0;
    double alpha_c = 0.0;
    double beta_c = 0.0;
    double sigma = 0.0;
    double fit_residual = 0.0;
    double delta_predictor = 0.0;
    int n_window_points = 0;
    std::complex<double> eta_EP;
    std::complex<double> E_EP;
};

/// Local grid refinement around detected crossings: re-centers on each gap
/// minimum at `fine_step` resolution and adds points until the core
/// (gap < ~3x minimum) holds at least `core_points` samples. Returns the etas
/// added to the graph.
struct RefineOptions {
    double fine_step = 1e-3;
    double max_half_extent = 0.012;
    double neighbor_fraction = 0.35;
    int core_points = 7;
    int max_recenter = 8;
};
std::vector<double> refine_crossings(StabilizationGraph& g, const DetectOptions& detect,
                                     const RefineOptions& opt, int threads);

/// Fit every detected crossing (predictor -> corrector -> channel fit).
/// Crossings with fitted delta below `min_delta` are symmetry-forbidden true
/// crossings and are dropped.
std::vector<CrossingRecord> fit_crossings(const StabilizationGraph& g,
                                          const std::vector<CrossingWindow>& windows,
                                          const RunConfig& cfg);

/// Diabatic model from fitted records: resonance energy = median of the
/// per-crossing E_r, channels ordered by eta_c. `E0` is the continuum
/// threshold the channels relax to (0 for this model).
DiabaticModel build_model(const std::vector<CrossingRecord>& records, double E0 = 0.0);

// --- file-to-file subcommands (exit-code behavior lives in the CLI) ---
void cmd_stab(const RunConfig& cfg, const std::string& out_dir, int threads);
void cmd_diabatize(const RunConfig& cfg, const std::string& graph_path,
                   const std::string& out_dir, int threads);
void cmd_resonance(const RunConfig& cfg, const std::string& crossings_path,
                   const std::string& out_dir, int threads);
void cmd_benchmark(const RunConfig& cfg, const std::string& out_dir, int threads);

/// Reads the records array back (schema check included).
std::vector<CrossingRecord> read_crossings_json(const std::string& path);

}  // namespace stabres
