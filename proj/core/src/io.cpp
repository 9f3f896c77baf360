#include "snwit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "snwit/errors.hpp"

namespace snwit {

namespace {

using nlohmann::json;

json parse_document(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; count newlines before it for a line number.
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(std::string("malformed JSON: ") + e.what(), line);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::size_t require_count(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double require_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  return v.get<double>();
}

std::size_t parse_suffix(std::string_view name, std::string_view prefix) {
  const std::string_view digits = name.substr(prefix.size());
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("invalid built-in state '" + std::string(name) + "'");
  }
  return value;
}

}  // namespace

BipartiteState read_state(std::istream& in, Check check) {
  const json doc = parse_document(in);
  const std::size_t da = require_count(doc, "dimA");
  const std::size_t db = require_count(doc, "dimB");
  if (!doc.contains("matrix") || !doc.at("matrix").is_array()) throw ParseError("missing array field 'matrix'");
  const json& rows = doc.at("matrix");
  const std::size_t n = da * db;
  if (rows.size() != n) {
    throw DimensionError("'matrix' has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != n) {
      throw DimensionError("row " + std::to_string(r) + " of 'matrix' must hold " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const json& z = row[c];
      const std::string where = "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (!z.is_array() || z.size() != 2) throw ParseError(where + " must be a [re, im] pair");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(require_real(z[0], where), require_real(z[1], where));
    }
  }
  return BipartiteState(da, db, std::move(m), check);
}

BipartiteState read_state_file(const std::filesystem::path& path, Check check) {
  std::ifstream in = open_input(path);
  return read_state(in, check);
}

void write_state(std::ostream& out, const BipartiteState& state) {
  json rows = json::array();
  const ComplexMatrix& m = state.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  json doc = {{"dimA", state.dim_a()}, {"dimB", state.dim_b()}, {"matrix", std::move(rows)}};
  out << doc.dump() << '\n';
}

void write_state_file(const std::filesystem::path& path, const BipartiteState& state) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_state(out, state);
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  const json doc = parse_document(in);
  const std::size_t rows = require_count(doc, "rows");
  const std::size_t cols = require_count(doc, "cols");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) throw ParseError("missing array field 'entries'");
  const json& entries = doc.at("entries");
  if (entries.size() != rows * cols) {
    throw DimensionError("'entries' holds " + std::to_string(entries.size()) + " values, expected " +
                         std::to_string(rows * cols));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows * cols; ++i) {
    m(static_cast<Eigen::Index>(i / cols), static_cast<Eigen::Index>(i % cols)) =
        require_real(entries[i], "entries[" + std::to_string(i) + "]");
  }
  return m;
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(m(r, c));
  out << json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}}.dump() << '\n';
}

BipartiteState builtin_state(std::string_view name) {
  if (name == "rho0") return rho0();
  if (name.starts_with("rho_family:")) return rho_family(parse_suffix(name, "rho_family:"));
  if (name.starts_with("maxmixed:")) return maximally_mixed(parse_suffix(name, "maxmixed:"));
  if (name.starts_with("maxent:")) return max_entangled(parse_suffix(name, "maxent:")).projector();
  throw ParseError("unknown built-in state '" + std::string(name) +
                   "' (expected rho0, rho_family:K, maxmixed:D or maxent:D)");
}

}  // namespace snwit
