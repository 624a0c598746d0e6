#include "predsafe/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <string>

namespace predsafe {

void Vec3::Check() const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(c_[i])) {
      std::ostringstream msg;
      msg << "non-finite state component " << i << " (" << c_[0] << ", "
          << c_[1] << ", " << c_[2] << ")";
      throw NumericError(msg.str());
    }
  }
}

double RequireFinite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw NumericError(std::string("non-finite ") + what);
  }
  return value;
}

std::string ShortestString(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

ClassKInfE ClassKInfE::Linear(double gain) {
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw ConfigError("class-K gain must be positive, got " +
                      std::to_string(gain));
  }
  return ClassKInfE([gain](double r) { return gain * r; },
                    [gain](double r) { return r / gain; });
}

ClassKInfE ClassKInfE::Custom(Fn alpha, Fn inverse) {
  if (!alpha || !inverse) throw ConfigError("class-K pair must be callable");
  if (alpha(0.0) != 0.0) throw ConfigError("class-K function must vanish at 0");
  double prev = alpha(-100.0);
  for (int i = -999; i <= 1000; ++i) {
    const double r = 0.1 * i;
    const double a = alpha(r);
    if (!(a > prev)) {
      throw ConfigError("class-K function not strictly increasing near r=" +
                        std::to_string(r));
    }
    const double back = alpha(inverse(r));
    if (std::abs(back - r) > 1e-12 * std::max(1.0, std::abs(r))) {
      throw ConfigError("class-K inverse round trip fails at r=" +
                        std::to_string(r));
    }
    prev = a;
  }
  return ClassKInfE(std::move(alpha), std::move(inverse));
}

LieDerivatives lie_derivatives(const Dynamics& dyn, const Barrier& bar, double t,
                               const Vec3& x) {
  RequireFinite(t, "time");
  const Vec3 grad = bar.grad(x);
  return {RequireFinite(grad.dot(dyn.f(t, x)), "Lfh"),
          RequireFinite(grad.dot(dyn.g(t, x)), "Lgh")};
}

double hdot(const Dynamics& dyn, const Barrier& bar, double t, const Vec3& x,
            double u) {
  const auto [lfh, lgh] = lie_derivatives(dyn, bar, t, x);
  return RequireFinite(lfh + lgh * u, "hdot");
}

double gradient_check_error(const Barrier& bar, const Vec3& x) {
  const double step = 1e-5 * std::max(1.0, x.max_abs());
  const Vec3 grad = bar.grad(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::array<double, 3> lo{x[0], x[1], x[2]};
    std::array<double, 3> hi = lo;
    lo[i] -= step;
    hi[i] += step;
    const double fd = (bar.h(Vec3(hi[0], hi[1], hi[2])) -
                       bar.h(Vec3(lo[0], lo[1], lo[2]))) /
                      (2.0 * step);
    worst = std::max(worst, std::abs(fd - grad[i]));
  }
  return worst;
}

}  // namespace predsafe
