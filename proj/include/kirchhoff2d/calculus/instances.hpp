#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kirchhoff2d/calculus/poly.hpp"

namespace kirchhoff2d::calculus {

struct InstanceOptions {
  int stream_degree = 3;  // u = (-d2 q, d1 q) for a stream function q of this degree in x
  int field_degree = 3;   // psi, scalar, phi hat
  int time_degree = 1;
  int max_numerator = 3;
  int max_denominator = 3;
  double density = 0.7;   // chance that a coefficient is nonzero
  bool rotating = true;   // rigid instances: false keeps theta = 0
};

// random divergence free velocity and companion fields, all with rational coefficients
struct PolynomialFieldInstance {
  std::uint64_t seed = 0;
  Poly stream;
  PVec u;
  PVec psi;      // generic vector field
  Poly scalar;   // scalar field for the gradient identities
  PMat phi_hat;  // generic matrix field
  PVec w;        // divergence free vector field

  bool divergence_free() const;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  Rational rational(const InstanceOptions& o);
  Rational nonzero_rational(const InstanceOptions& o);
  Poly poly(int xdeg, int tdeg, const InstanceOptions& o, int trunc = -1);
  bool coin(double p);
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

PolynomialFieldInstance random_instance(std::uint64_t seed, const InstanceOptions& opts = {});

// f, Df, ..., D^n f with D = d_t + u . grad
std::vector<Poly> material_powers(const Poly& f, const PVec& u, int n);
std::vector<PVec> material_powers(const PVec& f, const PVec& u, int n);

// Taylor data about (t, x) = (0, x0) for the boundary identities, in the
// local variables (t, xi) with x = x0 + xi; everything is truncated at `trunc`
struct RigidSeriesInstance {
  std::uint64_t seed = 0;
  int trunc = 0;
  PVec h;          // body centre
  Poly theta;      // rotation angle, theta(0) = 0 on top of a fixed rational rotation
  Poly r;          // theta'
  PVec ell;        // h'
  PMat Q;          // rotation matrix series
  Poly rho;        // rho0(Q^T (x - h)) with rho0 polynomial
  PVec u;          // divergence free fluid velocity
  PVec u_solid;    // ell + r (x - h)^perp
  PVec phi;        // u - u_solid
  PVec psi;        // generic vector field
  PVec sigma[3];   // e1, e2, (x - h)^perp
};

RigidSeriesInstance random_rigid_instance(std::uint64_t seed, int trunc, const InstanceOptions& opts = {});

}  // namespace kirchhoff2d::calculus
