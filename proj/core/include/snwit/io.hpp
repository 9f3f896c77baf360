#pragma once

// State and matrix documents (JSON text) and the built-in named states.
//
// State file:  {"dimA": 2, "dimB": 2, "matrix": [[[re, im], ...], ...]}
//              (dimA*dimB)^2 entries, row-major.
// Matrix file: {"rows": 2, "cols": 2, "entries": [1, 2, 3, 4]}, row-major.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "snwit/qstate.hpp"

namespace snwit {

BipartiteState read_state(std::istream& in, Check check = Check::kDensity);
BipartiteState read_state_file(const std::filesystem::path& path, Check check = Check::kDensity);
void write_state(std::ostream& out, const BipartiteState& state);
void write_state_file(const std::filesystem::path& path, const BipartiteState& state);

Eigen::MatrixXd read_matrix(std::istream& in);
Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);

/// rho0, rho_family:K, maxmixed:D, maxent:D (projector of the maximally entangled state).
BipartiteState builtin_state(std::string_view name);

}  // namespace snwit
