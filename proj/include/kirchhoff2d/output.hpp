#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kirchhoff2d/dynamics.hpp"
#include "kirchhoff2d/panels.hpp"
#include "kirchhoff2d/scenario.hpp"

namespace kirchhoff2d {

extern const char* const kTrajectoryColumns;  // CSV header line

std::string trajectory_csv(const Trajectory& traj);
void write_text(const std::string& path, const std::string& text);  // creates parent dirs
std::string read_text(const std::string& path);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int index(const std::string& name) const;  // -1 when missing
  std::vector<double> column(const std::string& name) const;
};
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

nlohmann::json run_metadata(const Scenario& s, const Trajectory& traj);

// writes <dir>/trajectory.csv and <dir>/trajectory.json; returns the CSV path
std::string write_run(const Scenario& s, const Trajectory& traj, const std::string& dir);

nlohmann::json bem_dump(const PanelSystem& panels);

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};
// one panel of line plots with axes and a legend
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::vector<PlotSeries>& series,
                     bool log_y = false);

}  // namespace kirchhoff2d
