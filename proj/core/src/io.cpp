#include "stabres/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stabres::io {

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_graph_csv(const std::string& path, const StabilizationGraph& g) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "eta";
    for (int k = 1; k <= g.n_states(); ++k) out << ",E" << k;
    out << "\n";
    for (std::size_t i = 0; i < g.etas.size(); ++i) {
        out << format_g17(g.etas[i]);
        for (int k = 0; k < g.energies[i].size(); ++k)
            out << ',' << format_g17(g.energies[i][k]);
        out << "\n";
    }
    if (!out) throw Error("write failed: " + path);
}

namespace {

std::vector<double> parse_row(const std::string& line, int lineno) {
    std::vector<double> vals;
    const char* s = line.c_str();
    char* end = nullptr;
    for (;;) {
        const double v = std::strtod(s, &end);
        if (end == s)
            throw SchemaError("line " + std::to_string(lineno) + ": expected a number at '" +
                              std::string(s).substr(0, 12) + "'");
        vals.push_back(v);
        s = end;
        if (*s == ',') {
            ++s;
        } else if (*s == '\0' || *s == '\r') {
            break;
        } else {
            throw SchemaError("line " + std::to_string(lineno) + ": unexpected character '" +
                              std::string(1, *s) + "'");
        }
    }
    return vals;
}

}  // namespace

StabilizationGraph read_graph_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("line 1: empty file " + path);
    if (line.rfind("eta", 0) != 0)
        throw SchemaError("line 1: header must start with 'eta'");
    int ncols = 0;
    for (char c : line)
        if (c == ',') ++ncols;
    if (ncols < 1) throw SchemaError("line 1: no energy columns in header");

    StabilizationGraph g;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const std::vector<double> vals = parse_row(line, lineno);
        if (static_cast<int>(vals.size()) != ncols + 1)
            throw SchemaError("line " + std::to_string(lineno) + ": expected " +
                              std::to_string(ncols + 1) + " fields, got " +
                              std::to_string(vals.size()));
        if (!g.etas.empty() && !(vals[0] > g.etas.back()))
            throw SchemaError("line " + std::to_string(lineno) +
                              ": eta values must be strictly increasing");
        Eigen::VectorXd row(ncols);
        for (int k = 0; k < ncols; ++k) {
            row[k] = vals[k + 1];
            if (k > 0 && row[k] < row[k - 1])
                throw SchemaError("line " + std::to_string(lineno) +
                                  ": energies must be ascending");
        }
        g.etas.push_back(vals[0]);
        g.energies.push_back(std::move(row));
    }
    return g;
}

void write_trajectory_csv(const std::string& path, const ResonanceTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "theta,ReE,ImE,weight\n";
    for (std::size_t i = 0; i < traj.thetas.size(); ++i)
        out << format_g17(traj.thetas[i]) << ',' << format_g17(traj.energies[i].real())
            << ',' << format_g17(traj.energies[i].imag()) << ','
            << format_g17(traj.weights[i]) << "\n";
}

void write_trajectory_csv(const std::string& path, const std::vector<double>& thetas,
                          const std::vector<std::complex<double>>& energies) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "theta,ReE,ImE,weight\n";
    for (std::size_t i = 0; i < thetas.size(); ++i)
        out << format_g17(thetas[i]) << ',' << format_g17(energies[i].real()) << ','
            << format_g17(energies[i].imag()) << ",1\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace stabres::io
