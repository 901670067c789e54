#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hofloq/analytic_modes.hpp"
#include "hofloq/criticality.hpp"
#include "hofloq/invariants.hpp"
#include "hofloq/model.hpp"
#include "hofloq/spectral.hpp"

namespace hofloq {

std::string_view version();

/// Real number with an optional factor of pi: "0.75pi", "pi", "-pi/2",
/// "3pi/4", "2*pi", "1.25".
double parse_real(const std::string& text);

/// Shortest round-trip text: 17 significant digits.
std::string format_real(double x);

Protocol parse_protocol(const std::string& s);
Boundary parse_boundary(const std::string& s);
Frame parse_frame(const std::string& s);
ScanAxes parse_axes(const std::string& s);

/// Flat "namespace.key = value" configuration. Lines starting with '#' are
/// comments. Keys are stored sorted, so serialization is canonical.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);
  std::string to_text() const;

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  void erase(const std::string& key) { values_.erase(key); }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double real_or(const std::string& key, double fallback) const;
  long integer_or(const std::string& key, long fallback) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  bool operator==(const RunConfig&) const = default;

 private:
  std::map<std::string, std::string> values_;
};

/// Model parameters from keys jx0, jx1, jy0, jy1, jx1p, theta, phi, protocol
/// (optionally prefixed with "model."). theta replaces (jx0, jx1) and phi
/// replaces (jy0, jy1); mixing the two forms in a sector or leaving a sector
/// unspecified is an error (std::invalid_argument).
ModelParams parse_params(const std::map<std::string, std::string>& raw);

// --- Output schemas ------------------------------------------------------------------

/// index,quasienergy,ipr
void write_spectrum_csv(const std::filesystem::path& path, const QuasienergySpectrum& spec);
/// cell_x,sub_x,cell_y,sub_y,probability,re,im; one block of basis-size rows
/// per mode, in the given order.
void write_modes_csv(const std::filesystem::path& path, const Basis& basis,
                     const std::vector<Vec>& modes);
/// <axis1>,<axis2>,omega_0,omega_pi,gap0,gap_pi
void write_scan_csv(const std::filesystem::path& path, const ScanGrid& grid);

/// params, w_pair, omega_pair, closing_flag, predicted/observed N's, pass.
std::string invariant_json(const InvariantReport& r,
                           const std::optional<BccVerdict>& verdict = std::nullopt);
std::string verdicts_json(const std::vector<BccVerdict>& verdicts);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Tracks the files of one run; unless committed, removes them (and the
/// output directory if the run created it) on destruction.
class OutputTransaction {
 public:
  explicit OutputTransaction(std::filesystem::path dir);
  ~OutputTransaction();
  OutputTransaction(const OutputTransaction&) = delete;
  OutputTransaction& operator=(const OutputTransaction&) = delete;

  std::filesystem::path file(const std::string& name);
  void commit() { committed_ = true; }

 private:
  std::filesystem::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::vector<std::filesystem::path> files_;
};

}  // namespace hofloq
