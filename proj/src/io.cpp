#include "emden/io.hpp"

#include <cstdio>
#include <fstream>

#include "emden/errors.hpp"

namespace emden {

using nlohmann::json;

namespace {

ResponseFunction response_from_json(const json& j, const char* label) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw validation_error(std::string(label) + ": record needs a string field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  auto num = [&](const char* field) {
    if (!j.contains(field) || !j.at(field).is_number())
      throw validation_error(std::string(label) + ": missing or non-numeric field '" + field +
                             "'");
    return j.at(field).get<double>();
  };
  if (kind == "vacuum") return {};
  if (kind == "lorentz") return lorentz_response(num("omega_p"), num("omega_0"), num("gamma"));
  if (kind == "drude") return drude_response(num("omega_p"), num("gamma"));
  if (kind == "tabulated") {
    if (!j.contains("samples") || !j.at("samples").is_array())
      throw validation_error(std::string(label) + ": tabulated record needs 'samples'");
    std::vector<TabSample> samples;
    for (const auto& row : j.at("samples")) {
      if (!row.is_array() || row.size() != 3)
        throw validation_error(std::string(label) + ": each sample must be [omega, eps_R, eps_I]");
      samples.push_back({row[0].get<double>(),
                         complexd(row[1].get<double>(), row[2].get<double>())});
    }
    return tabulated_response(std::move(samples));
  }
  throw validation_error(std::string(label) + ": unknown kind '" + kind + "'");
}

}  // namespace

DispersionModel material_from_json(const json& j) {
  DispersionModel m;
  m.eps = response_from_json(j, "material");
  if (j.contains("mu")) m.mu = response_from_json(j.at("mu"), "material.mu");
  m.validate();
  return m;
}

DispersionModel load_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open material file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw validation_error("material file is not valid JSON (" + path.string() + "): " + e.what());
  }
  return material_from_json(j);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : n_cols_(header.size()) {
  if (header.empty()) throw validation_error("csv: empty header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::add_row(std::span<const double> values) {
  if (values.size() != n_cols_) throw validation_error("csv: row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ledger_to_csv(const LedgerSeries& series) {
  CsvWriter csv({"t", "kinetic", "potential", "field", "dissipated_rate", "drive_power"});
  for (const auto& r : series.rows) {
    const double row[6] = {r.t, r.kinetic, r.potential, r.field, r.dissipated_rate,
                           r.drive_power};
    csv.add_row(row);
  }
  return csv.str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write output file: " + tmp.string());
    out << text;
    if (!out.good()) throw validation_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw validation_error("cannot move " + tmp.string() + " to " + path.string());
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void RunConfig::validate() const {
  if (!(band.omega_min > 0.0)) throw validation_error("config: band.omega_min must be positive");
  if (!(band.omega_max > band.omega_min))
    throw validation_error("config: band.omega_max must exceed omega_min");
  if (band.n_points < 2) throw validation_error("config: band.n_points must be >= 2");
  if (band.spacing != "log" && band.spacing != "linear")
    throw validation_error("config: band.spacing must be 'log' or 'linear'");
  if (!(sim.dt > 0.0)) throw validation_error("config: simulation.dt must be positive");
  if (sim.steps < 1) throw validation_error("config: simulation.steps must be >= 1");
  if (sim.traj < 1) throw validation_error("config: simulation.traj must be >= 1");
  if (!(regularization_a > 0.0)) throw validation_error("config: regularization a must be positive");
  if (!output.format.empty() && output.format != "csv" && output.format != "json")
    throw validation_error("config: output.format must be 'csv' or 'json'");
}

std::vector<double> RunConfig::grid() const {
  return band.spacing == "log" ? log_grid(band.omega_min, band.omega_max, band.n_points)
                               : linear_grid(band.omega_min, band.omega_max, band.n_points);
}

json RunConfig::to_json() const {
  json j;
  j["material"] = material_path;
  j["band"] = {{"omega_min", band.omega_min},
               {"omega_max", band.omega_max},
               {"n_points", band.n_points},
               {"spacing", band.spacing}};
  j["temperature"] = temperature;
  j["regularization_a"] = regularization_a;
  j["simulation"] = {
      {"traj", sim.traj}, {"steps", sim.steps}, {"dt", sim.dt}, {"seed", sim.seed}};
  j["output"] = {{"path", output.path}, {"format", output.format}};
  return j;
}

std::string RunConfig::config_hash() const { return hex64(fnv1a64(to_json().dump())); }

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    if (j.contains("material")) c.material_path = j.at("material").get<std::string>();
    if (j.contains("band")) {
      const auto& b = j.at("band");
      if (b.contains("omega_min")) c.band.omega_min = b.at("omega_min").get<double>();
      if (b.contains("omega_max")) c.band.omega_max = b.at("omega_max").get<double>();
      if (b.contains("n_points")) c.band.n_points = b.at("n_points").get<std::size_t>();
      if (b.contains("spacing")) c.band.spacing = b.at("spacing").get<std::string>();
    }
    if (j.contains("temperature")) c.temperature = j.at("temperature").get<double>();
    if (j.contains("regularization_a"))
      c.regularization_a = j.at("regularization_a").get<double>();
    if (j.contains("simulation")) {
      const auto& s = j.at("simulation");
      if (s.contains("traj")) c.sim.traj = s.at("traj").get<std::size_t>();
      if (s.contains("steps")) c.sim.steps = s.at("steps").get<std::size_t>();
      if (s.contains("dt")) c.sim.dt = s.at("dt").get<double>();
      if (s.contains("seed")) c.sim.seed = s.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.contains("path")) c.output.path = o.at("path").get<std::string>();
      if (o.contains("format")) c.output.format = o.at("format").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("config: malformed field (") + e.what() + ")");
  }
  return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw validation_error("config file is not valid JSON (" + path.string() + "): " + e.what());
  }
  return from_json(j);
}

}  // namespace emden
