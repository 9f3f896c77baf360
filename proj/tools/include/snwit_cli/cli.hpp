#pragma once

// The snwit command-line surface. Each subcommand is a plain function of its
// options and output streams so tests can drive it without a process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snwit/ensemble.hpp"

namespace snwit::cli {

inline constexpr int kExitOk = 0;
/// I/O, parse, validation and usage failures.
inline constexpr int kExitFailure = 2;

/// Exactly one of builtin / input is set.
struct StateSource {
  std::string builtin;
  std::filesystem::path input;
};

struct OscOptions {
  StateSource source;
  std::optional<std::filesystem::path> csv_out;
};

struct CoeffsOptions {
  StateSource source;
  std::size_t k = 2;
  bool numeric = false;
  std::uint64_t seed = 1;
  std::size_t restarts = 32;
  std::optional<std::filesystem::path> csv_out;
};

struct Table1Options {
  std::uint64_t seed = 1;
  std::size_t restarts = 32;
};

struct EnsembleOptions {
  EnsembleConfig config;
  /// "-" writes to standard output.
  std::filesystem::path out = "-";
};

struct BoundsOptions {
  std::filesystem::path input;
};

struct WitnessOptions {
  StateSource target;
  StateSource test;
  std::size_t k = 2;
  std::string method = "lambda";
};

inline constexpr const char* kCoeffsCsvHeader = "state,k,target_sn,lambda_exact,lambda_numeric,theta,zeta,eta,P";
inline constexpr const char* kTable1CsvHeader = "state,lambda,theta,zeta,eta,P,lambda_method";

/// Witness values below this are reported as certificates.
inline constexpr double kCertifyThreshold = -1e-9;

// Each command returns an exit code and reports errors on `err`.
int cmd_osc(const OscOptions& options, std::ostream& out, std::ostream& err);
int cmd_coeffs(const CoeffsOptions& options, std::ostream& out, std::ostream& err);
int cmd_table1(const Table1Options& options, std::ostream& out, std::ostream& err);
int cmd_ensemble(const EnsembleOptions& options, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err);
int cmd_witness(const WitnessOptions& options, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches to a subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snwit::cli
