#include "bicons/ambient.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bicons/errors.hpp"

namespace bicons {

FrameState operator+(const FrameState& a, const FrameState& b) {
  FrameState r;
  for (int i = 0; i < 4; ++i) {
    r.Phi[i] = a.Phi[i] + b.Phi[i];
    r.E1[i] = a.E1[i] + b.E1[i];
    r.E2[i] = a.E2[i] + b.E2[i];
    r.N[i] = a.N[i] + b.N[i];
  }
  return r;
}

FrameState operator*(double s, const FrameState& a) {
  FrameState r;
  for (int i = 0; i < 4; ++i) {
    r.Phi[i] = s * a.Phi[i];
    r.E1[i] = s * a.E1[i];
    r.E2[i] = s * a.E2[i];
    r.N[i] = s * a.N[i];
  }
  return r;
}

std::string AmbientModel::name() const {
  switch (eps_.value()) {
    case 1:
      return "S3";
    case -1:
      return "H3";
    default:
      return "R3";
  }
}

double AmbientModel::inner(const Vec4& a, const Vec4& b) const {
  const double s = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return lorentzian() ? s - a[3] * b[3] : s + a[3] * b[3];
}

double AmbientModel::constraint_residual(const Vec4& p) const {
  if (!constrained()) return 0.0;
  return std::abs(inner(p, p) - constraint_value());
}

Vec4 AmbientModel::project(const Vec4& p) const {
  if (!constrained()) return p;
  const double q = inner(p, p) * constraint_value();
  if (!(q > 0.0)) throw NumericalFailure("AmbientModel::project: point cannot be normalized onto " + name());
  Vec4 r = p;
  const double s = 1.0 / std::sqrt(q);
  for (double& v : r) v *= s;
  if (lorentzian() && r[3] < 0.0)
    for (double& v : r) v = -v;
  return r;
}

FrameState AmbientModel::initial_frame() const {
  FrameState f;
  if (constrained()) f.Phi = {0.0, 0.0, 0.0, 1.0};
  f.E1 = {1.0, 0.0, 0.0, 0.0};
  f.E2 = {0.0, 1.0, 0.0, 0.0};
  f.N = {0.0, 0.0, 1.0, 0.0};
  return f;
}

double AmbientModel::gram_drift(const FrameState& f) const {
  const Vec4* v[4] = {&f.Phi, &f.E1, &f.E2, &f.N};
  const int first = constrained() ? 0 : 1;
  double worst = 0.0;
  for (int i = first; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      double target = i == j ? 1.0 : 0.0;
      if (i == 0 && j == 0) target = constraint_value();
      worst = std::max(worst, std::abs(inner(*v[i], *v[j]) - target));
    }
  }
  return worst;
}

FrameState AmbientModel::correct(const FrameState& f) const {
  if (lorentzian()) {
    FrameState r;
    r.Phi = project(f.Phi);
    Vec4* out[3] = {&r.E1, &r.E2, &r.N};
    const Vec4* in[3] = {&f.E1, &f.E2, &f.N};
    for (int k = 0; k < 3; ++k) {
      Vec4 v = *in[k];
      // <Phi,Phi> = -1, so the Phi-component is removed with a + sign.
      const double cp = inner(v, r.Phi);
      for (int i = 0; i < 4; ++i) v[i] += cp * r.Phi[i];
      for (int m = 0; m < k; ++m) {
        const double c = inner(v, *out[m]);
        for (int i = 0; i < 4; ++i) v[i] -= c * (*out[m])[i];
      }
      const double n = std::sqrt(inner(v, v));
      for (int i = 0; i < 4; ++i) (*out[k])[i] = v[i] / n;
    }
    return r;
  }
  // Symmetric orthonormalization M <- (M M^T)^{-1/2} M, which moves the frame least.
  const int d = constrained() ? 4 : 3;
  const Vec4* rows[4] = {&f.Phi, &f.E1, &f.E2, &f.N};
  const int first = constrained() ? 0 : 1;
  Eigen::MatrixXd M(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) M(r, c) = (*rows[first + r])[c];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M * M.transpose());
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd S = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  const Eigen::MatrixXd Q = S * M;
  FrameState r = f;
  Vec4* outs[4] = {&r.Phi, &r.E1, &r.E2, &r.N};
  for (int k = 0; k < d; ++k)
    for (int c = 0; c < 4; ++c) (*outs[first + k])[c] = c < d ? Q(k, c) : 0.0;
  return r;
}

}  // namespace bicons
