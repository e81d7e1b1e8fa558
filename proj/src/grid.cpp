#include "pathspace/grid.hpp"

#include <cmath>

namespace pathspace {

TimeGrid::TimeGrid(double step, int n_max) : step_(step), n_max_(n_max) {
    if (!(step > 0) || !std::isfinite(step))
        throw Error("TimeGrid: step must be positive and finite");
    if (n_max < 2)
        throw Error("TimeGrid: n_max must be at least 2");
}

int TimeGrid::cells(double t) const {
    const double k = t / step_;
    const double r = std::round(k);
    if (std::abs(k - r) > 1e-9 * std::max(1.0, std::abs(k)))
        throw Error("time " + std::to_string(t) + " is not a multiple of the grid step");
    return static_cast<int>(r);
}

}  // namespace pathspace
