#include "juliadim/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace juliadim {

void RunConfig::validate() const {
  if (command.empty()) throw DomainError("config: missing command");
  for (double a : alphas)
    if (!(a > 0.0 && a < 2.0 * kPi)) throw DomainError("config: alpha outside (0, 2 pi)");
  for (double t : ts)
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("config: t must be >= 0");
  if (depth < 1 || depth > kMaxStoredTreeDepth)
    throw DomainError("config: depth must lie in [1, 24]");
  if (max_depth < 2 || max_depth > 26) throw DomainError("config: max-depth must lie in [2, 26]");
  if (!(tol > 0.0)) throw DomainError("config: tol must be positive");
  if (threads < 0) throw DomainError("config: threads must be >= 0");
}

std::vector<std::string> RunConfig::lines() const {
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
  };
  std::vector<std::string> out{
      "command=" + command,     "alpha=" + join(alphas),
      "t=" + join(ts),          "depth=" + std::to_string(depth),
      "max_depth=" + std::to_string(max_depth), "tol=" + num(tol),
      "out=" + out_dir,         "seed=" + std::to_string(seed),
      "threads=" + std::to_string(threads)};
  for (const auto& [k, v] : extra) out.push_back(k + "=" + v);
  return out;
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

std::string num(Complex z) {
  return num(z.real()) + (std::signbit(z.imag()) ? "" : "+") + num(z.imag()) + "i";
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string q = "\"";
  for (char c : cell) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render_rows(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows,
                        const std::vector<bool>& skip) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    bool first = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!skip.empty() && skip[i]) continue;
      if (!first) os << ',';
      os << quote(cells[i]);
      first = false;
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header,
                   std::vector<std::string> volatile_columns)
    : header_(std::move(header)), volatile_(header_.size(), false) {
  for (const auto& v : volatile_columns) {
    auto it = std::find(header_.begin(), header_.end(), v);
    if (it == header_.end()) throw DomainError("CsvTable: unknown volatile column " + v);
    volatile_[it - header_.begin()] = true;
  }
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw DomainError("CsvTable: row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::body() const { return render_rows(header_, rows_, {}); }

std::string CsvTable::stable_body() const { return render_rows(header_, rows_, volatile_); }

std::uint64_t CsvTable::content_hash() const { return fnv1a(stable_body()); }

std::string render_csv(const RunConfig& cfg, const CsvTable& table) {
  std::ostringstream os;
  for (const auto& l : cfg.lines()) os << "# " << l << '\n';
  os << "# content_hash=" << std::hex << std::setw(16) << std::setfill('0')
     << table.content_hash() << std::dec << '\n';
  os << table.body();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error("write failed for " + path);
}

void write_csv(const std::string& path, const RunConfig& cfg, const CsvTable& table) {
  write_text(path, render_csv(cfg, table));
}

std::string stable_csv_content(const std::string& text,
                               const std::vector<std::string>& volatile_columns) {
  std::istringstream in(text);
  std::string line;
  std::vector<bool> skip;
  std::ostringstream out;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (!header_seen) {
      skip.assign(cells.size(), false);
      for (std::size_t i = 0; i < cells.size(); ++i)
        skip[i] = std::find(volatile_columns.begin(), volatile_columns.end(), cells[i]) !=
                  volatile_columns.end();
      header_seen = true;
    }
    bool first = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i < skip.size() && skip[i]) continue;
      if (!first) out << ',';
      out << cells[i];
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

CsvTable point_set_table(const PointSet& s) {
  CsvTable t({"word", "re", "im", "multiplicity"});
  for (std::size_t i = 0; i < s.points.size(); ++i)
    t.add_row({s.words[i], num(s.points[i].real()), num(s.points[i].imag()),
               std::to_string(s.multiplicity[i])});
  return t;
}

CsvTable cylinder_table(const std::vector<CylinderSample>& samples) {
  CsvTable t({"family", "n", "count", "diam", "min_abs", "max_abs"});
  for (const auto& s : samples)
    t.add_row({family_name(s.id.family), std::to_string(s.id.index),
               std::to_string(s.points.points.size()), num(s.diam_estimate),
               num(s.min_abs), num(s.max_abs)});
  return t;
}

CsvTable atom_table(const MeasureAtoms& atoms) {
  CsvTable t({"re", "im", "weight", "kind"});
  const char* kind = atoms.kind == MeasureKind::conformal ? "conformal" : "invariant";
  for (std::size_t i = 0; i < atoms.size(); ++i)
    t.add_row({num(atoms.points[i].real()), num(atoms.points[i].imag()),
               num(atoms.weights[i]), kind});
  return t;
}

std::string svg_plot(const std::vector<SvgSeries>& series, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<std::pair<double, std::string>>& vmarkers,
                     const std::vector<std::string>& comments) {
  const double W = 720, H = 480, L = 70, R = 20, T = 40, B = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) { x0 -= 1; x1 += 1; }
  if (!(y1 > y0)) { y0 -= 1; y1 += 1; }
  double py = 0.05 * (y1 - y0);
  y0 -= py;
  y1 += py;
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  for (const auto& c : comments) os << "<!-- " << c << " -->\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
     << title << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
     << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
    os << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << xv << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << yv << "</text>\n";
  }
  if (y0 < 0 && y1 > 0)
    os << "<line x1=\"" << L << "\" y1=\"" << sy(0) << "\" x2=\"" << W - R << "\" y2=\""
       << sy(0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& [xv, label] : vmarkers) {
    os << "<line x1=\"" << sx(xv) << "\" y1=\"" << T << "\" x2=\"" << sx(xv) << "\" y2=\""
       << H - B << "\" stroke=\"#d62728\" stroke-dasharray=\"5 3\"/>\n";
    os << "<text x=\"" << sx(xv) + 4 << "\" y=\"" << T + 14
       << "\" font-size=\"12\" fill=\"#d62728\">" << label << "</text>\n";
  }
  for (const auto& s : series) {
    if (s.scatter) {
      for (std::size_t i = 0; i < s.x.size(); ++i)
        os << "<circle cx=\"" << sx(s.x[i]) << "\" cy=\"" << sy(s.y[i])
           << "\" r=\"1.2\" fill=\"" << s.color << "\"/>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) os << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
      os << "\"/>\n";
    }
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
     << ")\" text-anchor=\"middle\" font-size=\"13\">" << ylabel << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace juliadim
