#pragma once

#include <array>
#include <string>

#include "bicons/space_form.hpp"

namespace bicons {

/// Ambient vectors are 4-vectors; for eps=0 the fourth component stays 0.
using Vec4 = std::array<double, 4>;

/// Position and adapted frame of the immersion at one point.
struct FrameState {
  Vec4 Phi{};
  Vec4 E1{};
  Vec4 E2{};
  Vec4 N{};
};

FrameState operator+(const FrameState& a, const FrameState& b);
FrameState operator*(double s, const FrameState& a);

/// Linear model of N^3(eps): the unit sphere of R^4 (eps=+1), the upper sheet
/// of <x,x> = -1 in R^{3,1} with x4 timelike (eps=-1), or R^3 (eps=0).
class AmbientModel {
 public:
  explicit AmbientModel(SpaceFormSign eps) : eps_(eps) {}

  SpaceFormSign eps() const { return eps_; }
  /// 3 for R^3, 4 otherwise.
  int dimension() const { return eps_.value() == 0 ? 3 : 4; }
  bool lorentzian() const { return eps_.value() == -1; }
  bool constrained() const { return eps_.value() != 0; }
  /// <Phi, Phi> on the model: +1, -1, or 0 (unconstrained).
  double constraint_value() const { return eps_.as_double(); }
  std::string name() const;

  double inner(const Vec4& a, const Vec4& b) const;
  /// |<p,p> - constraint|; 0 for R^3.
  double constraint_residual(const Vec4& p) const;
  /// Nearest point of the model along the ray (sphere, hyperboloid); identity on R^3.
  Vec4 project(const Vec4& p) const;

  /// Phi = e4 (origin for R^3), E1 = e1, E2 = e2, N = e3.
  FrameState initial_frame() const;
  /// Max deviation of the Gram matrix of (Phi, E1, E2, N) from
  /// diag(constraint, 1, 1, 1); Phi is omitted for R^3.
  double gram_drift(const FrameState& f) const;
  /// Re-orthonormalizes the frame: symmetric (polar) orthonormalization for
  /// Euclidean models, Lorentz Gram-Schmidt starting from Phi for eps=-1.
  FrameState correct(const FrameState& f) const;

 private:
  SpaceFormSign eps_;
};

}  // namespace bicons
