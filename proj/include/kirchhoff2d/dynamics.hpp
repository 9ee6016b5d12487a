#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirchhoff2d/panels.hpp"
#include "kirchhoff2d/pressure.hpp"
#include "kirchhoff2d/scenario.hpp"
#include "kirchhoff2d/vortex.hpp"

namespace kirchhoff2d {

struct SimState {
  double time = 0;
  RigidState rigid;
  VortexField field;
  ConservedQuantities diagnostics;
};

struct SimOptions {
  int panels = 128;
  PanelOptions panel_options;
  PressureOptions pressure;
  double collision_fraction = 1e-3;  // CollisionFlag above this share of reflected particles
};

// right-hand side of the coupled system at one configuration
struct Evaluation {
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();    // pairings of grad mu with grad Phi_a
  Eigen::Vector3d accel = Eigen::Vector3d::Zero();  // (ell', r') = M^-1 rhs
  std::vector<Vec2> particle_velocity;
  double normal_residual = 0;
  double circulation = 0;
  double compatibility = 0;  // relative defect of the mu problem
};

struct StepLog {
  int reflections = 0;
  double max_normal_residual = 0;
  double max_compatibility = 0;
};

class Simulator {
 public:
  Simulator(const BodyShape& shape, SimOptions opts = {});

  const BodyShape& shape() const { return shape_; }
  const KirchhoffPotentials& kirchhoff() const { return kirchhoff_; }
  AddedMassTensor added_mass(const RigidState& s) const;

  Evaluation evaluate(const RigidState& s, const VortexField& f) const;
  // one RK4 step with all stages coupled; `first` reuses an evaluation at `state`
  SimState step(const SimState& state, double dt, StepLog* log = nullptr,
                const Evaluation* first = nullptr) const;

 private:
  BodyShape shape_;
  SimOptions opts_;
  PanelSystem body_;
  KirchhoffPotentials kirchhoff_;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec2> h, ell;
  std::vector<double> theta, r;
  std::vector<Eigen::Vector3d> force;  // Fx, Fy, T (the rhs at each sample)
  std::vector<double> gamma_drift, sumG_drift;
  std::vector<double> normal_residual, compatibility;
  std::vector<ConservedQuantities> conserved;
  std::string status = "ok";  // or the error that halted the run
  int reflections = 0;

  size_t size() const { return t.size(); }
};

struct ConservationReport {
  double gamma = 0;
  double total_vorticity = 0;
  double lp[4] = {0, 0, 0, 0};
  double normal_residual = 0;  // max over samples
};

ConservationReport conservation_report(const Trajectory& traj);

struct RunOptions {
  std::optional<double> dt;     // overrides the scenario
  std::optional<int> panels;
  bool catch_errors = true;     // record the error and stop; false rethrows
};

Trajectory run(const Scenario& scenario, RunOptions opts = {});
// lower-level entry: fixed-step loop from an explicit state
Trajectory run(const Simulator& sim, SimState initial, double dt, double duration, bool catch_errors = true);

}  // namespace kirchhoff2d
