#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace predsafe {

/// Committed control inputs over the trailing window [now - tau, now),
/// sampled on a uniform grid of period dt and held zero-order between
/// samples. tau must be an integer multiple of dt.
///
/// Timestamps are implicit: cell j in [0, size()) holds the input committed
/// at time now - tau + j * dt. push() commits the input for the cell that
/// starts at now() and advances the clock by dt.
class InputHistory {
 public:
  /// `initial` fills the whole window before start_time; without it the
  /// window counts as uncovered until size() inputs have been pushed.
  InputHistory(double tau, double dt, std::optional<double> initial = 0.0,
               double start_time = 0.0);

  double tau() const { return tau_; }
  double dt() const { return dt_; }
  /// Number of grid cells in the window (tau / dt).
  std::size_t size() const { return cells_.size(); }
  /// Controller clock; the newest committed sample is at now() - dt.
  double now() const;
  double newest_time() const { return now() - dt_; }
  bool covered() const { return valid_ >= cells_.size(); }

  /// Commits input u at grid time t, which must equal now().
  void push(double t, double u);

  /// u_t(theta) = u(now + theta) for theta in [-tau, 0), zero-order hold.
  double sample(double theta) const;
  /// Cell j counted from the oldest sample.
  double cell(std::size_t j) const;

 private:
  double tau_;
  double dt_;
  double start_time_;
  long long steps_ = 0;  // pushes since start_time
  std::size_t head_ = 0;  // index of the oldest cell
  std::size_t valid_ = 0;
  std::vector<double> cells_;
};

}  // namespace predsafe
