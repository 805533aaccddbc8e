#ifndef EMDEN_IO_HPP
#define EMDEN_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "emden/dispersion.hpp"
#include "emden/energy_classical.hpp"

namespace emden {

// Material records:
//   {"kind": "lorentz", "omega_p": 0.5, "omega_0": 1.0, "gamma": 0.1}
//   {"kind": "drude",   "omega_p": 0.5, "gamma": 0.1}
//   {"kind": "vacuum"}
//   {"kind": "tabulated", "samples": [[w, eps_R, eps_I], ...]}
// plus an optional "mu" sub-record of the same shape.
DispersionModel material_from_json(const nlohmann::json& j);
DispersionModel load_material(const std::filesystem::path& path);

// CSV with a header row, '.' decimal separator, '\n' line ends, and %.17g
// doubles so identical runs produce byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(std::span<const double> values);
  const std::string& str() const { return text_; }

 private:
  std::size_t n_cols_;
  std::string text_;
};

std::string format_double(double v);

// oscillator-ledger time series in its CSV interchange format
std::string ledger_to_csv(const LedgerSeries& series);

// write to a temp file in the same directory, then rename over the target
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

// ------------------------------------------------------------- run config

struct BandConfig {
  double omega_min = 0.1;
  double omega_max = 3.0;
  std::size_t n_points = 200;
  std::string spacing = "log";  // "log" | "linear"
};

struct SimBlock {
  std::size_t traj = 1000;
  std::size_t steps = 65536;
  double dt = 0.004;
  std::uint64_t seed = 12345;
};

struct OutputConfig {
  std::string path;    // empty: stdout
  std::string format;  // "csv" | "json"; empty picks the subcommand's native form
};

struct RunConfig {
  std::string material_path;
  BandConfig band;
  double temperature = 0.0;
  double regularization_a = 1e-4;
  SimBlock sim;
  OutputConfig output;

  void validate() const;
  std::vector<double> grid() const;
  nlohmann::json to_json() const;      // canonical form, also used for hashing
  std::string config_hash() const;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::filesystem::path& path);
};

}  // namespace emden

#endif
