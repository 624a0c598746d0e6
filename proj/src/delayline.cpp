#include "predsafe/delayline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "predsafe/core.hpp"
#include "predsafe/errors.hpp"

namespace predsafe {

InputHistory::InputHistory(double tau, double dt, std::optional<double> initial,
                           double start_time)
    : tau_(tau), dt_(dt), start_time_(start_time) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigError("sample period dt must be positive");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ConfigError("delay tau must be nonnegative");
  }
  const double ratio = tau / dt;
  const double cells = std::round(ratio);
  if (std::abs(ratio - cells) > 1e-9 * std::max(1.0, cells)) {
    throw ConfigError("delay tau=" + ShortestString(tau) +
                      " is not an integer multiple of dt=" + ShortestString(dt));
  }
  cells_.assign(static_cast<std::size_t>(cells), initial.value_or(0.0));
  valid_ = initial ? cells_.size() : 0;
}

double InputHistory::now() const {
  return start_time_ + static_cast<double>(steps_) * dt_;
}

void InputHistory::push(double t, double u) {
  const double expected = now();
  if (std::abs(t - expected) > 1e-6 * dt_) {
    throw ConfigError("off-grid push at t=" + ShortestString(t) +
                      ", expected t=" + ShortestString(expected));
  }
  ++steps_;
  if (cells_.empty()) return;
  cells_[head_] = u;
  head_ = (head_ + 1) % cells_.size();
  if (valid_ < cells_.size()) ++valid_;
}

double InputHistory::sample(double theta) const {
  if (!(theta >= -tau_ - 1e-9 * dt_) || !(theta < 0.0)) {
    std::ostringstream msg;
    msg << "history offset " << theta << " outside [-" << tau_ << ", 0)";
    throw ConfigError(msg.str());
  }
  const auto n = static_cast<long long>(cells_.size());
  // Grid floor with slack for offsets that land on a cell boundary.
  auto j = static_cast<long long>(std::floor((theta + tau_) / dt_ + 1e-9));
  if (j < 0) j = 0;
  if (j >= n) j = n - 1;
  return cell(static_cast<std::size_t>(j));
}

double InputHistory::cell(std::size_t j) const {
  if (j >= cells_.size()) throw ConfigError("history cell index out of range");
  // Without an initial history the oldest size() - valid_ cells are unknown.
  if (j < cells_.size() - valid_) {
    throw ConfigError("input history window not yet covered");
  }
  return cells_[(head_ + j) % cells_.size()];
}

}  // namespace predsafe
