#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pathspace/common.hpp"

namespace pathspace {

/// Continuous path f: [0, t] -> R^dim sampled at k*step, k = 0..n, with
/// f(0) = 0. Linear interpolation between samples.
class SampledPath {
public:
    SampledPath(double step, int dim, std::vector<double> samples);

    double step() const noexcept { return step_; }
    int dim() const noexcept { return dim_; }
    int intervals() const noexcept { return intervals_; }
    double length() const noexcept { return step_ * intervals_; }
    const double* point(int k) const { return samples_.data() + static_cast<std::size_t>(k) * dim_; }
    const std::vector<double>& samples() const noexcept { return samples_; }

private:
    double step_;
    int dim_;
    int intervals_;
    std::vector<double> samples_;
};

/// Offset concatenation: run f, then continue with f(s) + g(lambda - s).
/// Both paths must start at the origin.
SampledPath concat_offset(const SampledPath& f, const SampledPath& g);

/// Closed disk obstacle K in the plane.
struct Disk {
    std::array<double, 2> center;
    double radius;
    double distance(const double* x) const;
};

/// Repulsive potential V(x) = strength / dist(x, K), with the linear
/// correction V~(x) = V(x) - <grad V(0), x> so that grad V~(0) = 0.
/// Without an obstacle V is identically zero.
struct Potential {
    std::optional<Disk> obstacle;
    double strength = 1.0;

    double value(const double* x) const;
    std::array<double, 2> grad(const double* x) const;
    std::array<double, 2> grad_normalized(const double* x) const;
    bool admissible(const double* x) const;
};

/// Concatenation transported through the flow f' = phi - grad V~(f): the
/// driving functions of f and g are joined by offset concatenation and the
/// initial value problem is integrated with explicit Euler on the common step.
/// Throws when an Euler step lands in K, reporting the offending time.
SampledPath concat_potential(const SampledPath& f, const SampledPath& g, const Potential& v);

}  // namespace pathspace
