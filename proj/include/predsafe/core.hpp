#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>

#include "predsafe/errors.hpp"

namespace predsafe {

/// Three-component state vector. For the truck the components are
/// (D [m], v [m/s], v_L [m/s]). Every constructed value is finite; any
/// arithmetic that produces NaN/Inf throws NumericError.
class Vec3 {
 public:
  constexpr Vec3() = default;
  Vec3(double c0, double c1, double c2) : c_{c0, c1, c2} { Check(); }

  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double, 3> components() const { return c_; }

  double dot(const Vec3& o) const {
    return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2];
  }
  double max_abs() const {
    return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
  }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
  }
  friend Vec3 operator*(double s, const Vec3& a) {
    return {s * a.c_[0], s * a.c_[1], s * a.c_[2]};
  }
  friend bool operator==(const Vec3& a, const Vec3& b) = default;

 private:
  void Check() const;

  std::array<double, 3> c_{};
};

/// Throws NumericError naming `what` if `value` is NaN or Inf.
double RequireFinite(double value, const char* what);

// Shortest decimal text that parses back to exactly `value`.
std::string ShortestString(double value);

/// Extended class-K-infinity function together with its inverse. Only the
/// linear member alpha(r) = A r is shipped; arbitrary monotone pairs are
/// accepted after a sampled self-check.
class ClassKInfE {
 public:
  using Fn = std::function<double(double)>;

  /// alpha(r) = gain * r, inverse r / gain. gain must be positive.
  static ClassKInfE Linear(double gain);

  /// Validates alpha(0) = 0, strict monotonicity and the inverse round trip
  /// on a grid over [-100, 100]; throws ConfigError otherwise.
  static ClassKInfE Custom(Fn alpha, Fn inverse);

  double operator()(double r) const { return alpha_(r); }
  double inverse(double r) const { return inverse_(r); }

 private:
  ClassKInfE(Fn alpha, Fn inverse)
      : alpha_(std::move(alpha)), inverse_(std::move(inverse)) {}

  Fn alpha_;
  Fn inverse_;
};

/// Robustness coefficient sigma(h) = sigma0 * exp(-lambda * h).
struct SigmaFn {
  double sigma0 = 1.0;  // [m/s^3] for the truck
  double lambda = 0.3;  // [1/m]

  double operator()(double h) const { return sigma0 * std::exp(-lambda * h); }
  double derivative(double h) const { return -lambda * (*this)(h); }
};

/// Control-affine dynamics x' = f(t, x) + g(t, x) u with scalar input.
struct Dynamics {
  std::function<Vec3(double, const Vec3&)> f;
  std::function<Vec3(double, const Vec3&)> g;
};

/// Barrier function h and its gradient.
struct Barrier {
  std::function<double(const Vec3&)> h;
  std::function<Vec3(const Vec3&)> grad;
};

struct LieDerivatives {
  double lfh = 0.0;
  double lgh = 0.0;
};

LieDerivatives lie_derivatives(const Dynamics& dyn, const Barrier& bar, double t,
                               const Vec3& x);

/// Time derivative of h along the dynamics for input u: Lfh + Lgh u.
double hdot(const Dynamics& dyn, const Barrier& bar, double t, const Vec3& x,
            double u);

/// Largest absolute deviation between bar.grad(x) and a central finite
/// difference of bar.h with step 1e-5 relative to |x|.
double gradient_check_error(const Barrier& bar, const Vec3& x);

}  // namespace predsafe
