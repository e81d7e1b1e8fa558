#pragma once

#include "pathspace/common.hpp"

namespace pathspace {

/// Uniform grid on the time axis: t_k = k * step for 1 <= k <= n_max.
///
/// Every path length and partition cut point lives on this grid; times are
/// snapped with a relative tolerance and rejected when they fall off it.
class TimeGrid {
public:
    TimeGrid(double step, int n_max);

    double step() const noexcept { return step_; }
    int n_max() const noexcept { return n_max_; }
    double horizon() const noexcept { return step_ * n_max_; }
    double time(int k) const noexcept { return step_ * k; }

    /// Number of cells covering (0, t]. Throws when t is off-grid.
    int cells(double t) const;

    /// Same step halved, twice as many points: the same step functions are
    /// representable on it by splitting every cell.
    TimeGrid refined() const { return TimeGrid(step_ / 2, n_max_ * 2); }

    bool operator==(const TimeGrid& other) const noexcept {
        return step_ == other.step_ && n_max_ == other.n_max_;
    }

private:
    double step_;
    int n_max_;
};

}  // namespace pathspace
