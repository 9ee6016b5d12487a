#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kirchhoff2d/geometry.hpp"
#include "kirchhoff2d/vortex.hpp"

namespace kirchhoff2d {

struct ShapeSpec {
  std::string kind = "disc";  // disc | ellipse | fourier
  double radius = 1.0;
  double a = 1.0, b = 1.0;
  FourierCoeffs coeffs;       // used by fourier
  double gevrey_order = 1.0;
  std::optional<double> collar;
  double rotation = 0.0;      // rotate the reference shape about the origin

  BodyShape build() const;
  bool operator==(const ShapeSpec&) const = default;
};

struct VorticitySpec {
  std::string kind = "none";  // none | particles | vortex-pair | patch
  // particles
  std::vector<Vec2> positions;
  std::vector<double> strengths;
  std::vector<double> areas;
  // vortex-pair: two equal vortices at centre -/+ separation/2 along axis
  Vec2 centre = Vec2::Zero();
  double separation = 1.0;
  double axis = 0.0;
  double strength = 1.0;      // per vortex for a pair, total for a patch
  // patch: uniform disc of `count` particles, jittered with the scenario seed
  double radius = 0.5;
  int count = 0;

  VortexField build(std::uint64_t seed) const;
  bool operator==(const VorticitySpec&) const = default;
};

struct Scenario {
  std::string name = "scenario";
  ShapeSpec shape;
  Vec2 h0 = Vec2::Zero();
  Vec2 ell0 = Vec2::Zero();
  double r0 = 0.0;
  double mass = 1.0;
  double inertia = 1.0;
  VorticitySpec vorticity;
  double gamma = 0.0;
  double dt = 0.01;
  double duration = 0.0;
  int panels = 128;
  double epsilon = -1.0;      // blob core radius; < 0 picks the default
  std::string output = "out";
  std::uint64_t seed = 0;

  RigidState initial_state() const;
  VortexField initial_field() const;
  void validate() const;      // throws ConfigError
  bool operator==(const Scenario&) const = default;
};

// key = value lines, '#' comments, values: numbers, "strings", bare words,
// true/false, [arrays] and {key: value} tables; values may span lines while
// brackets are open.
nlohmann::json parse_config_text(const std::string& text);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);
nlohmann::json scenario_to_json(const Scenario& s);

// the built-in scenario of this name, as config text
std::string preset_scenario_text(const std::string& name);
std::vector<std::string> preset_names();

struct InitialCheck {
  double normal_residual = 0;  // max |(u0 - u_S).n| at the nodes
  double divergence = 0;       // zero by construction
  double compatibility = 0;
};
InitialCheck check_initial_data(const Scenario& s);

}  // namespace kirchhoff2d
