#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "juliadim/cylinders.hpp"
#include "juliadim/measures.hpp"

namespace juliadim {

// Everything that determines a run. Serialized into every output file.
struct RunConfig {
  std::string command;
  std::vector<double> alphas;
  std::vector<double> ts;
  int depth = 20;
  int max_depth = 26;
  double tol = 1e-8;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 0;
  std::map<std::string, std::string> extra;

  void validate() const;
  std::vector<std::string> lines() const;
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header,
                    std::vector<std::string> volatile_columns = {});
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& data() const { return rows_; }

  // Header plus rows, RFC 4180 quoting where needed.
  std::string body() const;
  // Body without volatile columns such as wall-clock timings.
  std::string stable_body() const;
  std::uint64_t content_hash() const;

 private:
  std::vector<std::string> header_;
  std::vector<bool> volatile_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double x);
std::string num(Complex z);

// Leading '#' lines carry the run config and the content hash.
std::string render_csv(const RunConfig& cfg, const CsvTable& table);
void write_text(const std::string& path, const std::string& text);
void write_csv(const std::string& path, const RunConfig& cfg, const CsvTable& table);

// Strips '#' lines and the named columns; used to compare reruns.
std::string stable_csv_content(const std::string& text,
                               const std::vector<std::string>& volatile_columns);

CsvTable point_set_table(const PointSet& s);
CsvTable cylinder_table(const std::vector<CylinderSample>& samples);
CsvTable atom_table(const MeasureAtoms& atoms);

struct SvgSeries {
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool scatter = false;
  std::string label;
};

std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<std::pair<double, std::string>>& vmarkers = {},
                     const std::vector<std::string>& comments = {});

}  // namespace juliadim
