#include "kirchhoff2d/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "kirchhoff2d/errors.hpp"

namespace kirchhoff2d {

using nlohmann::json;

const char* const kTrajectoryColumns = "t,hx,hy,theta,lx,ly,r,Fx,Fy,T,gamma_drift,sumG_drift";

namespace {
void put(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}
}  // namespace

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = kTrajectoryColumns;
  out += '\n';
  for (size_t i = 0; i < tr.size(); ++i) {
    const double row[] = {tr.t[i],        tr.h[i].x(),        tr.h[i].y(),  tr.theta[i],
                          tr.ell[i].x(),  tr.ell[i].y(),      tr.r[i],      tr.force[i][0],
                          tr.force[i][1], tr.force[i][2],     tr.gamma_drift[i], tr.sumG_drift[i]};
    for (size_t c = 0; c < std::size(row); ++c) {
      if (c) out += ',';
      put(out, row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int CsvTable::index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : static_cast<int>(it - columns.begin());
}

std::vector<double> CsvTable::column(const std::string& name) const {
  int c = index(name);
  if (c < 0) throw Error("no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(l);
    while (std::getline(ls, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      size_t a = cell.find_first_not_of(' ');
      cells.push_back(a == std::string::npos ? "" : cell.substr(a));
    }
    return cells;
  };
  if (!std::getline(in, line)) throw Error("empty CSV");
  t.columns = split(line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (cells.size() != t.columns.size()) throw Error("CSV line " + std::to_string(lineno) + ": wrong field count");
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      double v = std::strtod(c.c_str(), &end);
      if (c.empty() || *end != '\0') throw Error("CSV line " + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

json run_metadata(const Scenario& s, const Trajectory& tr) {
  json j;
  j["scenario"] = scenario_to_json(s);
  j["status"] = tr.status;
  j["samples"] = tr.size();
  j["reflections"] = tr.reflections;
  ConservationReport rep = conservation_report(tr);
  j["conservation"] = {{"gamma", rep.gamma},
                       {"total_vorticity", rep.total_vorticity},
                       {"l1", rep.lp[0]},
                       {"l2", rep.lp[1]},
                       {"l4", rep.lp[2]},
                       {"linf", rep.lp[3]},
                       {"normal_residual", rep.normal_residual}};
  double compat = 0;
  for (double c : tr.compatibility) compat = std::max(compat, c);
  j["max_compatibility"] = compat;
  j["columns"] = kTrajectoryColumns;
  return j;
}

std::string write_run(const Scenario& s, const Trajectory& tr, const std::string& dir) {
  std::filesystem::path d(dir);
  std::string csv = (d / "trajectory.csv").string();
  write_text(csv, trajectory_csv(tr));
  write_text((d / "trajectory.json").string(), run_metadata(s, tr).dump(2) + "\n");
  return csv;
}

json bem_dump(const PanelSystem& p) {
  json j;
  j["panels"] = p.size();
  j["h"] = {p.h().x(), p.h().y()};
  j["theta"] = p.theta();
  json nodes = json::array(), normals = json::array();
  for (int i = 0; i < p.size(); ++i) {
    nodes.push_back({p.nodes()[i].x(), p.nodes()[i].y()});
    normals.push_back({p.normals()[i].x(), p.normals()[i].y()});
  }
  j["nodes"] = nodes;
  j["normals"] = normals;
  j["weights"] = std::vector<double>(p.weights().data(), p.weights().data() + p.size());
  j["params"] = std::vector<double>(p.params().data(), p.params().data() + p.size());
  auto mat = [&](const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      std::vector<double> r(m.cols());
      for (int k = 0; k < m.cols(); ++k) r[k] = m(i, k);
      rows.push_back(r);
    }
    return rows;
  };
  j["single_layer"] = mat(p.single_layer());
  j["normal_derivative"] = mat(p.normal_derivative());
  return j;
}

namespace {
std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}
}  // namespace

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::vector<PlotSeries>& series,
                     bool log_y) {
  const double W = 720, H = 440, L = 70, R = 160, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || (log_y && !(s.y[i] > 0))) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };

  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    double X = px(xv), Y = H - B - k * (H - T - B) / 4;
    o << "<line x1=\"" << X << "\" y1=\"" << H - B << "\" x2=\"" << X << "\" y2=\"" << H - B + 5 << "\" stroke=\"black\"/>";
    o << "<text x=\"" << X << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    o << "<line x1=\"" << L - 5 << "\" y1=\"" << Y << "\" x2=\"" << L << "\" y2=\"" << Y << "\" stroke=\"black\"/>";
    o << "<text x=\"" << L - 8 << "\" y=\"" << Y + 4 << "\" text-anchor=\"end\">"
      << (log_y ? "1e" + fmt(yv) : fmt(yv)) << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << esc(xlabel) << "</text>\n";
  for (size_t s = 0; s < series.size(); ++s) {
    const auto& sr = series[s];
    const char* c = colours[s % std::size(colours)];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < sr.x.size() && i < sr.y.size(); ++i) {
      if (!std::isfinite(sr.y[i]) || (log_y && !(sr.y[i] > 0))) continue;
      o << fmt(px(sr.x[i])) << ',' << fmt(py(sr.y[i])) << ' ';
    }
    o << "\"/>\n";
    double ly = T + 16 + 18 * s;
    o << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - R + 32 << "\" y2=\"" << ly - 4
      << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << W - R + 38 << "\" y=\"" << ly << "\">" << esc(sr.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace kirchhoff2d
