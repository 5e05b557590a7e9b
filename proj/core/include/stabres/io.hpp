#pragma once

#include <string>

#include "stabres/expost_cs.hpp"
#include "stabres/stabgraph.hpp"

namespace stabres::io {

/// Shortest round-trippable decimal (17 significant digits).
std::string format_g17(double v);

/// Graph table as CSV: header `eta,E1,E2,...`, one row per eta, full precision.
void write_graph_csv(const std::string& path, const StabilizationGraph& g);

/// Parses a graph CSV; throws SchemaError naming the offending line. Basis and
/// potential metadata are not part of the table and must be supplied by the
/// caller.
StabilizationGraph read_graph_csv(const std::string& path);

/// Trajectory as CSV: header `theta,ReE,ImE,weight`.
void write_trajectory_csv(const std::string& path, const ResonanceTrajectory& traj);

/// Same schema for a direct-CS trajectory (weight fixed at 1).
void write_trajectory_csv(const std::string& path, const std::vector<double>& thetas,
                          const std::vector<std::complex<double>>& energies);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace stabres::io
