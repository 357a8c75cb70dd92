/// @file io.hpp
/// @brief Field / trace serialization (JSON) and CSV report writers.
///
/// Field files carry the grid parameters plus per-mode real/imaginary radial
/// samples, so a file round-trips bit-exactly through load_field(save_field).
#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "field.hpp"
#include "norms.hpp"

namespace stokeslab {

namespace detail {

inline nlohmann::json mode_matrix_to_json(const Eigen::MatrixXcd& c, int M) {
  nlohmann::json modes = nlohmann::json::array();
  for (int m = -M; m <= M; ++m) {
    Eigen::RowVectorXcd row = c.row(m + M);
    if (row.cwiseAbs().maxCoeff() == 0.0) continue;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (int j = 0; j < row.size(); ++j) {
      re.push_back(row[j].real());
      im.push_back(row[j].imag());
    }
    modes.push_back({{"m", m}, {"re", re}, {"im", im}});
  }
  return modes;
}

inline void mode_matrix_from_json(const nlohmann::json& modes, Eigen::MatrixXcd& c, int M) {
  for (const auto& entry : modes) {
    int m = entry.at("m").get<int>();
    if (m < -M || m > M) throw std::runtime_error("field file: mode index out of range");
    const auto& re = entry.at("re");
    const auto& im = entry.at("im");
    if (int(re.size()) != c.cols() || int(im.size()) != c.cols())
      throw std::runtime_error("field file: radial sample count mismatch");
    for (int j = 0; j < c.cols(); ++j)
      c(m + M, j) = Complex(re[j].get<double>(), im[j].get<double>());
  }
}

}  // namespace detail

inline nlohmann::json field_to_json(const DiscField& f) {
  nlohmann::json out;
  out["n_r"] = f.grid()->n_r();
  out["n_theta"] = f.grid()->n_theta();
  out["rank"] = f.is_scalar() ? "scalar" : "vector";
  nlohmann::json comps = nlohmann::json::array();
  for (int k = 0; k < f.n_components(); ++k)
    comps.push_back(detail::mode_matrix_to_json(f.component(k), f.grid()->n_theta()));
  out["components"] = comps;
  return out;
}

inline DiscField field_from_json(const nlohmann::json& j, DiscGridPtr grid = nullptr) {
  int n_r = j.at("n_r").get<int>();
  int M = j.at("n_theta").get<int>();
  if (!grid) grid = DiscGrid::make(n_r, M);
  if (grid->n_r() != n_r || grid->n_theta() != M)
    throw std::runtime_error("field file: grid parameters do not match");
  bool scalar = j.at("rank").get<std::string>() == "scalar";
  DiscField f = scalar ? DiscField::scalar(grid) : DiscField::vector(grid);
  const auto& comps = j.at("components");
  if (int(comps.size()) != f.n_components())
    throw std::runtime_error("field file: component count mismatch");
  for (int k = 0; k < f.n_components(); ++k)
    detail::mode_matrix_from_json(comps[k], f.component(k), M);
  return f;
}

inline nlohmann::json spacetime_field_to_json(const SpaceTimeField& u) {
  nlohmann::json out;
  out["t_start"] = u.tgrid().t_start;
  out["t_end"] = u.tgrid().t_end;
  out["n_t"] = u.tgrid().n_t;
  nlohmann::json slices = nlohmann::json::array();
  for (int k = 0; k < u.n_slices(); ++k) slices.push_back(field_to_json(u.slice(k)));
  out["slices"] = slices;
  return out;
}

inline SpaceTimeField spacetime_field_from_json(const nlohmann::json& j,
                                                DiscGridPtr grid = nullptr) {
  SpaceTimeGrid tg(j.at("t_start").get<double>(), j.at("t_end").get<double>(),
                   j.at("n_t").get<int>());
  const auto& slices = j.at("slices");
  if (int(slices.size()) != tg.n_nodes())
    throw std::runtime_error("field file: slice count mismatch");
  DiscField first = field_from_json(slices[0], grid);
  SpaceTimeField u(tg, first.grid(),
                   first.is_scalar() ? FieldRank::Scalar : FieldRank::Vector);
  u.slice(0) = first;
  for (int k = 1; k < tg.n_nodes(); ++k)
    u.slice(k) = field_from_json(slices[k], first.grid());
  return u;
}

inline nlohmann::json trace_to_json(const BoundaryTrace& b) {
  nlohmann::json modes = nlohmann::json::array();
  for (int m = -b.n_theta(); m <= b.n_theta(); ++m) {
    Complex c = b.mode(m);
    if (c == 0.0) continue;
    modes.push_back({{"m", m}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"n_theta", b.n_theta()}, {"modes", modes}};
}

inline BoundaryTrace trace_from_json(const nlohmann::json& j) {
  BoundaryTrace b(j.at("n_theta").get<int>());
  for (const auto& e : j.at("modes"))
    b.mode_ref(e.at("m").get<int>()) =
        Complex(e.at("re").get<double>(), e.at("im").get<double>());
  return b;
}

inline void save_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return nlohmann::json::parse(in);
}

// ---------------------------------------------------------------------------
// CSV with metadata sidecar.
// ---------------------------------------------------------------------------

/// Deterministic CSV writer: header row + fixed-format rows; the companion
/// .meta file records the run configuration as key: value lines.
class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> columns)
      : path_(std::move(path)), columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size())
      throw std::invalid_argument("CsvWriter: column count mismatch");
    rows_.push_back(row);
  }

  void set_meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
  }

  void write() const {
    std::ofstream out(path_);
    if (!out) throw std::runtime_error("cannot open for writing: " + path_);
    for (size_t i = 0; i < columns_.size(); ++i)
      out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    out << std::setprecision(17);
    for (const auto& row : rows_) {
      for (size_t i = 0; i < row.size(); ++i)
        out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
    std::ofstream meta(path_ + ".meta");
    for (const auto& [k, v] : meta_) meta << k << ": " << v << "\n";
  }

 private:
  std::string path_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

/// NormReport as two-column key/value CSV.
inline void save_norm_report(const NormReport& rep, const std::string& path,
                             const std::vector<std::pair<std::string, std::string>>& meta = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "key,value\n" << std::setprecision(17);
  for (const auto& [k, v] : rep.values) out << k << "," << v << "\n";
  std::ofstream m(path + ".meta");
  for (const auto& [k, v] : meta) m << k << ": " << v << "\n";
}

}  // namespace stokeslab
