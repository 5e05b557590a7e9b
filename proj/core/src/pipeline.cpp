#include "stabres/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <json.hpp>

#include "stabres/io.hpp"
#include "stabres/numerics.hpp"

namespace stabres {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0) || !(stop >= start)) throw InvalidArgument("bad grid spec");
    const int n = static_cast<int>(std::llround((stop - start) / step)) + 1;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = start + i * step;
    return out;
}

void RunConfig::validate() const {
    potential.validate();
    basis.validate();
    if (!(eta_grid.step > 0.0) || !(eta_grid.stop > eta_grid.start))
        throw InvalidArgument("config: bad eta_grid");
    if (eta_grid.start < -1.75 || eta_grid.stop > 2.0)
        throw InvalidArgument("config: eta_grid outside [-1.75, 2]");
    if (!(window_half_width > 0.0)) throw InvalidArgument("config: window half_width <= 0");
    if (min_points < 3) throw InvalidArgument("config: diabatize.min_points < 3");
    if (!(fine_step > 0.0)) throw InvalidArgument("config: diabatize.fine_step <= 0");
    if (!(theta_grid.step > 0.0) || !(theta_grid.stop > theta_grid.start) ||
        theta_grid.start <= 0.0 || theta_grid.stop >= std::numbers::pi / 4.0)
        throw InvalidArgument("config: resonance theta grid must lie in (0, pi/4)");
    if (extrapolation_degree < 1 || extrapolation_degree > 3)
        throw InvalidArgument("config: extrapolation degree must be 1..3");
    if (delta_etas.empty()) throw InvalidArgument("config: delta_eta list empty");
    if (!(channel_data.energy_min_fraction >= 0.0 && channel_data.energy_min_fraction < 1.0))
        throw InvalidArgument("config: contfit.energy_min_fraction outside [0,1)");
    if (benchmark_enabled &&
        (benchmark_theta.start <= 0.0 || benchmark_theta.stop >= std::numbers::pi / 4.0))
        throw InvalidArgument("config: benchmark theta grid must lie in (0, pi/4)");
}

namespace {

Parity parity_from_string(const std::string& s) {
    if (s == "full") return Parity::Full;
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw InvalidArgument("config: parity must be full|even|odd, got '" + s + "'");
}

std::string parity_to_string(Parity p) {
    switch (p) {
        case Parity::Full: return "full";
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
    }
    return "full";
}

GridSpec grid_from(const json& j) {
    GridSpec g;
    g.start = j.at("start").get<double>();
    g.stop = j.at("stop").get<double>();
    g.step = j.at("step").get<double>();
    return g;
}

json grid_to(const GridSpec& g) {
    return json{{"start", g.start}, {"stop", g.stop}, {"step", g.step}};
}

json config_to_json(const RunConfig& c) {
    json j;
    j["potential"] = {{"v0", c.potential.v0},     {"v1", c.potential.v1},
                      {"sigma0", c.potential.sigma0}, {"sigma1", c.potential.sigma1},
                      {"x0", c.potential.x0}};
    j["basis"] = {{"L0", c.basis.L0},
                  {"N", c.basis.N},
                  {"mu", c.basis.mu},
                  {"quadrature_points", c.basis.quadrature_points},
                  {"parity", parity_to_string(c.basis.parity)}};
    j["eta_grid"] = grid_to(c.eta_grid);
    j["window"] = {{"center", c.window_center}, {"half_width", c.window_half_width}};
    j["diabatize"] = {{"min_points", c.min_points},
                      {"min_delta", c.min_delta},
                      {"refine", c.refine},
                      {"fine_step", c.fine_step},
                      {"max_half_extent", c.max_half_extent},
                      {"neighbor_fraction", c.neighbor_fraction}};
    j["contfit"] = {{"energy_min_fraction", c.channel_data.energy_min_fraction},
                    {"energy_max", c.channel_data.energy_max},
                    {"window_margin_factor", c.channel_data.window_margin_factor},
                    {"E0", c.channel_data.E0}};
    json res = {{"theta_grid", grid_to(c.theta_grid)},
                {"delta_eta", c.delta_etas},
                {"extrapolation_degree", c.extrapolation_degree}};
    if (c.extrapolation_window)
        res["extrapolation_window"] = {c.extrapolation_window->first,
                                       c.extrapolation_window->second};
    else
        res["extrapolation_window"] = "auto";
    j["resonance"] = res;
    j["benchmark"] = {{"enabled", c.benchmark_enabled},
                      {"parity", parity_to_string(c.benchmark_parity)},
                      {"theta_grid", grid_to(c.benchmark_theta)}};
    return j;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("config JSON: ") + e.what());
    }
    RunConfig c;
    try {
        const json& p = j.at("potential");
        c.potential.v0 = p.at("v0").get<double>();
        c.potential.v1 = p.at("v1").get<double>();
        c.potential.sigma0 = p.at("sigma0").get<double>();
        c.potential.sigma1 = p.at("sigma1").get<double>();
        c.potential.x0 = p.at("x0").get<double>();
        const json& b = j.at("basis");
        c.basis.L0 = b.at("L0").get<double>();
        c.basis.N = b.at("N").get<int>();
        c.basis.mu = b.value("mu", 1.0);
        c.basis.quadrature_points = b.value("quadrature_points", 4 * c.basis.N);
        c.basis.parity = parity_from_string(b.value("parity", std::string("full")));
        c.eta_grid = grid_from(j.at("eta_grid"));
        c.window_center = j.at("window").at("center").get<double>();
        c.window_half_width = j.at("window").at("half_width").get<double>();
        if (j.contains("diabatize")) {
            const json& d = j["diabatize"];
            c.min_points = d.value("min_points", c.min_points);
            c.min_delta = d.value("min_delta", c.min_delta);
            c.refine = d.value("refine", c.refine);
            c.fine_step = d.value("fine_step", c.fine_step);
            c.max_half_extent = d.value("max_half_extent", c.max_half_extent);
            c.neighbor_fraction = d.value("neighbor_fraction", c.neighbor_fraction);
        }
        if (j.contains("contfit")) {
            const json& f = j["contfit"];
            c.channel_data.energy_min_fraction =
                f.value("energy_min_fraction", c.channel_data.energy_min_fraction);
            c.channel_data.energy_max = f.value("energy_max", c.channel_data.energy_max);
            c.channel_data.window_margin_factor =
                f.value("window_margin_factor", c.channel_data.window_margin_factor);
            c.channel_data.E0 = f.value("E0", 0.0);
        }
        c.channel_data.window_half_width = c.window_half_width;
        if (j.contains("resonance")) {
            const json& r = j["resonance"];
            if (r.contains("theta_grid")) c.theta_grid = grid_from(r["theta_grid"]);
            if (r.contains("delta_eta"))
                c.delta_etas = r["delta_eta"].get<std::vector<double>>();
            c.extrapolation_degree = r.value("extrapolation_degree", 2);
            if (r.contains("extrapolation_window") && !r["extrapolation_window"].is_string()) {
                const auto w = r["extrapolation_window"].get<std::vector<double>>();
                if (w.size() != 2) throw SchemaError("extrapolation_window needs [lo, hi]");
                c.extrapolation_window = std::make_pair(w[0], w[1]);
            }
        }
        if (j.contains("benchmark")) {
            const json& bm = j["benchmark"];
            c.benchmark_enabled = bm.value("enabled", true);
            c.benchmark_parity = parity_from_string(bm.value("parity", std::string("full")));
            if (bm.contains("theta_grid")) c.benchmark_theta = grid_from(bm["theta_grid"]);
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    return parse_config(io::read_text_file(path));
}

std::string config_hash(const RunConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(num::fnv1a64(config_to_json(cfg).dump())));
    return buf;
}

namespace {

json meta_json(const RunConfig& cfg) {
    return json{{"config_hash", config_hash(cfg)},
                {"x0", cfg.potential.x0},
                {"tool", "stabres"},
                {"format_version", 1}};
}

DetectOptions detect_options(const RunConfig& cfg) {
    DetectOptions d;
    d.center = cfg.window_center;
    d.half_width = cfg.window_half_width;
    d.min_points = cfg.min_points;
    d.neighbor_fraction = cfg.neighbor_fraction;
    d.max_half_extent = cfg.max_half_extent;
    return d;
}

}  // namespace

std::vector<double> refine_crossings(StabilizationGraph& g, const DetectOptions& detect,
                                     const RefineOptions& opt, int threads) {
    std::vector<double> added;
    auto add_rows = [&](const std::vector<double>& etas) {
        std::vector<double> fresh;
        for (double e : etas) {
            if (e < g.min_eta() || e > g.max_eta()) continue;
            const auto it = std::lower_bound(g.etas.begin(), g.etas.end(), e - 1e-12);
            if (it != g.etas.end() && std::abs(*it - e) < 1e-12) continue;
            fresh.push_back(e);
        }
        std::vector<Eigen::VectorXd> rows(fresh.size());
        num::parallel_for(fresh.size(), threads, [&](std::size_t i) {
            rows[i] = sweep_point(fresh[i], g.potential, g.basis);
        });
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            g.insert(fresh[i], std::move(rows[i]));
            added.push_back(fresh[i]);
        }
    };

    const std::vector<CrossingWindow> coarse = detect_crossings(g, detect);
    for (std::size_t m = 0; m < coarse.size(); ++m) {
        double half_extent = opt.max_half_extent;
        if (m > 0)
            half_extent = std::min(half_extent, opt.neighbor_fraction *
                                                    (coarse[m].eta_at_min -
                                                     coarse[m - 1].eta_at_min));
        if (m + 1 < coarse.size())
            half_extent = std::min(half_extent, opt.neighbor_fraction *
                                                    (coarse[m + 1].eta_at_min -
                                                     coarse[m].eta_at_min));
        const double step = std::min(opt.fine_step, half_extent / 6.0);
        const int j = coarse[m].lower_branch;

        // fine grid around the minimum, re-centered until it is interior
        double center = coarse[m].eta_at_min;
        for (int walk = 0; walk < opt.max_recenter; ++walk) {
            std::vector<double> fine;
            const int nsteps = static_cast<int>(std::llround(half_extent / step));
            for (int i = -nsteps; i <= nsteps; ++i) fine.push_back(center + i * step);
            add_rows(fine);
            // locate the refined minimum in the graph
            double best_eta = center, best_gap = 1e300;
            for (std::size_t i = 0; i < g.etas.size(); ++i) {
                if (std::abs(g.etas[i] - center) > half_extent + 0.5 * step) continue;
                const double gap = g.energies[i][j + 1] - g.energies[i][j];
                if (gap < best_gap) {
                    best_gap = gap;
                    best_eta = g.etas[i];
                }
            }
            if (std::abs(best_eta - center) < half_extent - 0.5 * step &&
                best_eta > g.min_eta() && best_eta < g.max_eta()) {
                center = best_eta;
                break;
            }
            center = best_eta;
        }

        // adaptive core refinement: the region gap < ~3x minimum needs enough
        // samples for the spline minimum and the corrector
        for (int round = 0; round < 3; ++round) {
            double gmin = 1e300, eta_min = center, gfar = 0.0, eta_far = center;
            for (std::size_t i = 0; i < g.etas.size(); ++i) {
                if (std::abs(g.etas[i] - center) > half_extent + 0.5 * step) continue;
                const double gap = g.energies[i][j + 1] - g.energies[i][j];
                if (gap < gmin) { gmin = gap; eta_min = g.etas[i]; }
                if (gap > gfar) { gfar = gap; eta_far = g.etas[i]; }
            }
            const double slope = (gfar - gmin) / std::max(std::abs(eta_far - eta_min), 1e-12);
            const double radius = std::min(gmin / std::max(slope, 1e-12), half_extent);
            int in_core = 0;
            for (std::size_t i = 0; i < g.etas.size(); ++i)
                if (std::abs(g.etas[i] - eta_min) <= radius) ++in_core;
            if (in_core >= opt.core_points) break;
            std::vector<double> fine;
            for (int i = -(opt.core_points / 2 + 1); i <= opt.core_points / 2 + 1; ++i)
                fine.push_back(eta_min + i * radius / (opt.core_points / 2 + 1));
            add_rows(fine);
            center = eta_min;
        }
    }
    std::sort(added.begin(), added.end());
    return added;
}

std::vector<CrossingRecord> fit_crossings(const StabilizationGraph& g,
                                          const std::vector<CrossingWindow>& windows,
                                          const RunConfig& cfg) {
    std::vector<CrossingRecord> out;
    for (const CrossingWindow& w : windows) {
        if (w.needs_refinement) continue;
        // a gap minimum closer to the graph boundary than one window extent
        // has truncated one-sided data and cannot be fitted reliably
        if (w.eta_at_min - g.min_eta() < cfg.max_half_extent ||
            g.max_eta() - w.eta_at_min < cfg.max_half_extent)
            continue;
        const PredictorEstimate est = predictor(w);
        const TwoLevelDiabat d = corrector(w, est);
        if (d.delta < cfg.min_delta) continue;  // symmetry-forbidden true crossing

        ChannelData data = extract_channel_data(g, w, d.E_r, cfg.channel_data);
        CrossingRecord r;
        r.eta_c_gapmin = d.eta_c;
        r.eta_c = fit_eta_c(data.emb_etas, data.emb_E, d.E_r, d.eta_c);
        r.E_r = d.E_r;
        r.delta = d.delta;
        r.a_c = d.a_c;
        const ExponentFit ef =
            fit_exponent(data.etas, data.E_eta, r.eta_c, d.E_r, cfg.channel_data.E0);
        r.alpha_c = ef.alpha;
        r.beta_c = ef.beta;
        r.fit_residual = ef.residual;
        r.sigma = d.fit_sigma;
        r.delta_predictor = est.delta;
        r.n_window_points = static_cast<int>(w.etas.size());

        ContinuumChannel ch{r.eta_c, r.alpha_c, r.beta_c, cfg.channel_data.E0, r.E_r};
        const EpLocation ep = ep_location(d, ch);
        r.eta_EP = ep.eta_EP;
        r.E_EP = ep.energy;
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(),
              [](const CrossingRecord& a, const CrossingRecord& b) { return a.eta_c < b.eta_c; });
    return out;
}

DiabaticModel build_model(const std::vector<CrossingRecord>& records, double E0) {
    if (records.empty()) throw InvalidArgument("build_model: no crossing records");
    std::vector<double> ers;
    for (const auto& r : records) ers.push_back(r.E_r);
    std::sort(ers.begin(), ers.end());
    const std::size_t n = ers.size();
    DiabaticModel m;
    m.E_r = (n % 2) ? ers[n / 2] : 0.5 * (ers[n / 2 - 1] + ers[n / 2]);
    for (const auto& r : records) {
        ContinuumChannel ch{r.eta_c, r.alpha_c, r.beta_c, E0, r.E_r};
        m.channels.emplace_back(ch, r.delta);
    }
    return m;
}

// ---------------------------------------------------------------------------
// subcommands

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
}

json record_to_json(const CrossingRecord& r) {
    return json{{"eta_c", r.eta_c},
                {"eta_c_gapmin", r.eta_c_gapmin},
                {"E_r", r.E_r},
                {"delta", r.delta},
                {"a_c", r.a_c},
                {"alpha_c", r.alpha_c},
                {"beta_c", r.beta_c},
                {"sigma", r.sigma},
                {"fit_residual", r.fit_residual},
                {"delta_predictor", r.delta_predictor},
                {"n_window_points", r.n_window_points},
                {"eta_EP", {r.eta_EP.real(), r.eta_EP.imag()}},
                {"E_EP", {r.E_EP.real(), r.E_EP.imag()}}};
}

CrossingRecord record_from_json(const json& j) {
    CrossingRecord r;
    r.eta_c = j.at("eta_c").get<double>();
    r.eta_c_gapmin = j.value("eta_c_gapmin", r.eta_c);
    r.E_r = j.at("E_r").get<double>();
    r.delta = j.at("delta").get<double>();
    r.a_c = j.at("a_c").get<double>();
    r.alpha_c = j.at("alpha_c").get<double>();
    r.beta_c = j.at("beta_c").get<double>();
    r.sigma = j.at("sigma").get<double>();
    r.fit_residual = j.value("fit_residual", 0.0);
    r.delta_predictor = j.value("delta_predictor", 0.0);
    r.n_window_points = j.value("n_window_points", 0);
    if (j.contains("eta_EP"))
        r.eta_EP = {j["eta_EP"][0].get<double>(), j["eta_EP"][1].get<double>()};
    if (j.contains("E_EP"))
        r.E_EP = {j["E_EP"][0].get<double>(), j["E_EP"][1].get<double>()};
    return r;
}

}  // namespace

void cmd_stab(const RunConfig& cfg, const std::string& out_dir, int threads) {
    ensure_dir(out_dir);
    StabilizationGraph g = sweep(cfg.eta_grid.points(), cfg.potential, cfg.basis, threads);

    std::vector<double> added;
    if (cfg.refine) {
        RefineOptions ro;
        ro.fine_step = cfg.fine_step;
        ro.max_half_extent = cfg.max_half_extent;
        ro.neighbor_fraction = cfg.neighbor_fraction;
        added = refine_crossings(g, detect_options(cfg), ro, threads);
    }

    io::write_graph_csv(out_dir + "/graph.csv", g);
    json meta = meta_json(cfg);
    meta["kind"] = "stabilization_graph";
    meta["n_etas"] = g.etas.size();
    meta["n_states"] = g.n_states();
    meta["refined_etas_added"] = added.size();
    meta["basis"] = {{"L0", cfg.basis.L0},
                     {"N", cfg.basis.N},
                     {"mu", cfg.basis.mu},
                     {"parity", parity_to_string(cfg.basis.parity)}};
    io::write_text_file(out_dir + "/graph.meta.json", meta.dump(2) + "\n");
}

void cmd_diabatize(const RunConfig& cfg, const std::string& graph_path,
                   const std::string& out_dir, int threads) {
    ensure_dir(out_dir);
    StabilizationGraph g = io::read_graph_csv(graph_path);
    g.potential = cfg.potential;
    g.basis = cfg.basis;
    if (!g.etas.empty() && g.n_states() != g.basis.size())
        throw SchemaError("graph has " + std::to_string(g.n_states()) +
                          " states but the config basis produces " +
                          std::to_string(g.basis.size()));

    std::vector<double> added;
    std::vector<CrossingWindow> windows;
    if (g.etas.size() >= 3) {
        windows = detect_crossings(g, detect_options(cfg));
        const bool under_resolved =
            std::any_of(windows.begin(), windows.end(),
                        [](const CrossingWindow& w) { return w.needs_refinement; });
        if (under_resolved && cfg.refine) {
            RefineOptions ro;
            ro.fine_step = cfg.fine_step;
            ro.max_half_extent = cfg.max_half_extent;
            ro.neighbor_fraction = cfg.neighbor_fraction;
            added = refine_crossings(g, detect_options(cfg), ro, threads);
            windows = detect_crossings(g, detect_options(cfg));
        }
    }

    const std::vector<CrossingRecord> records = fit_crossings(g, windows, cfg);

    json out;
    json meta = meta_json(cfg);
    meta["kind"] = "crossings";
    meta["n_detected"] = windows.size();
    meta["n_fitted"] = records.size();
    json refinement_requests = json::array();
    for (const auto& w : windows)
        if (w.needs_refinement)
            refinement_requests.push_back({{"eta", w.eta_at_min},
                                           {"points", w.etas.size()}});
    meta["refinement_requests"] = refinement_requests;
    meta["refined_etas_added"] = added;
    out["meta"] = meta;
    out["records"] = json::array();
    for (const auto& r : records) out["records"].push_back(record_to_json(r));
    io::write_text_file(out_dir + "/crossings.json", out.dump(2) + "\n");
}

std::vector<CrossingRecord> read_crossings_json(const std::string& path) {
    json j;
    try {
        j = json::parse(io::read_text_file(path));
    } catch (const json::exception& e) {
        throw SchemaError(std::string("crossings JSON: ") + e.what());
    }
    if (!j.contains("records") || !j["records"].is_array())
        throw SchemaError("crossings JSON: missing 'records' array");
    std::vector<CrossingRecord> out;
    try {
        for (const auto& rj : j["records"]) out.push_back(record_from_json(rj));
    } catch (const json::exception& e) {
        throw SchemaError(std::string("crossings JSON record: ") + e.what());
    }
    return out;
}

void cmd_resonance(const RunConfig& cfg, const std::string& crossings_path,
                   const std::string& out_dir, int threads) {
    ensure_dir(out_dir);
    const std::vector<CrossingRecord> records = read_crossings_json(crossings_path);
    const DiabaticModel model = build_model(records, cfg.channel_data.E0);
    const std::vector<double> thetas = cfg.theta_grid.points();

    json results = json::array();
    for (double deta : cfg.delta_etas) {
        const ResonanceTrajectory traj = theta_sweep(model, thetas, deta, threads);
        char name[64];
        std::snprintf(name, sizeof(name), "%s/trajectory_deta_%+.3f.csv", out_dir.c_str(),
                      deta);
        io::write_trajectory_csv(name, traj);

        auto [wlo, whi] = cfg.extrapolation_window
                              ? *cfg.extrapolation_window
                              : auto_stable_window(traj);
        const Extrapolation ex = extrapolate(traj, wlo, whi, cfg.extrapolation_degree);
        results.push_back({{"delta_eta", deta},
                           {"E", {ex.energy.real(), ex.energy.imag()}},
                           {"width", -2.0 * ex.energy.imag()},
                           {"window", {ex.window_lo, ex.window_hi}},
                           {"degree", ex.degree},
                           {"fit_rms", ex.fit_rms}});
    }

    json report;
    json meta = meta_json(cfg);
    meta["kind"] = "resonance_report";
    meta["n_channels"] = model.channels.size();
    meta["model_E_r"] = model.E_r;
    report["meta"] = meta;
    report["results"] = results;

    if (cfg.benchmark_enabled) {
        BasisSpec bb = cfg.basis;
        bb.parity = cfg.benchmark_parity;
        const BenchmarkResult bench =
            benchmark_resonance(cfg.potential, bb, cfg.benchmark_theta.points(),
                                {cfg.window_center, 0.0}, threads);
        io::write_trajectory_csv(out_dir + "/benchmark_trajectory.csv",
                                 bench.trajectory.thetas, bench.trajectory.resonance);
        report["benchmark"] = {{"E", {bench.energy.real(), bench.energy.imag()}},
                               {"width", -2.0 * bench.energy.imag()},
                               {"theta_star", bench.trajectory.theta_star}};
        // difference against the delta_eta = 0 extrapolation (or the first one)
        std::size_t i0 = 0;
        for (std::size_t i = 0; i < cfg.delta_etas.size(); ++i)
            if (std::abs(cfg.delta_etas[i]) < std::abs(cfg.delta_etas[i0])) i0 = i;
        const std::complex<double> Eex{results[i0]["E"][0].get<double>(),
                                       results[i0]["E"][1].get<double>()};
        const std::complex<double> diff = Eex - bench.energy;
        report["difference"] = {{"dE", {diff.real(), diff.imag()}},
                                {"abs", std::abs(diff)},
                                {"width_rel_err",
                                 std::abs(-2.0 * Eex.imag() + 2.0 * bench.energy.imag()) /
                                     (-2.0 * bench.energy.imag())}};
    }
    io::write_text_file(out_dir + "/report.json", report.dump(2) + "\n");
}

void cmd_benchmark(const RunConfig& cfg, const std::string& out_dir, int threads) {
    ensure_dir(out_dir);
    BasisSpec bb = cfg.basis;
    bb.parity = cfg.benchmark_parity;
    const BenchmarkResult bench =
        benchmark_resonance(cfg.potential, bb, cfg.benchmark_theta.points(),
                            {cfg.window_center, 0.0}, threads);
    io::write_trajectory_csv(out_dir + "/benchmark_trajectory.csv",
                             bench.trajectory.thetas, bench.trajectory.resonance);
    json out;
    json meta = meta_json(cfg);
    meta["kind"] = "benchmark";
    out["meta"] = meta;
    out["E"] = {bench.energy.real(), bench.energy.imag()};
    out["width"] = -2.0 * bench.energy.imag();
    out["theta_star"] = bench.trajectory.theta_star;
    io::write_text_file(out_dir + "/benchmark.json", out.dump(2) + "\n");
}

}  // namespace stabres
