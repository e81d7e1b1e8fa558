#pragma once

#include <span>
#include <vector>

#include "pathspace/grid.hpp"

namespace pathspace {

/// Discretized element of the fiber P(t) of the L^2 path space: a step
/// function on (0, t] with one complex d-vector per cell ((k-1)h, kh].
///
/// Values are stored cell-major (cell k occupies [k*d, (k+1)*d)). Paths are
/// immutable once built; every operation returns a new path.
class StepPath {
public:
    StepPath(TimeGrid grid, int dim, std::vector<cplx> values);

    /// The same value on every cell.
    static StepPath constant(const TimeGrid& grid, int cells, std::span<const cplx> value);
    static StepPath constant(const TimeGrid& grid, int cells, cplx value);
    static StepPath zero(const TimeGrid& grid, int cells, int dim);
    /// d = 1 path with real cell values.
    static StepPath real(const TimeGrid& grid, std::span<const double> values);
    /// The ramp lambda -> lambda sampled at cell midpoints (d = 1).
    static StepPath ramp(const TimeGrid& grid, int cells);
    /// A finite-dimensional vector viewed as a one-cell path on a unit grid,
    /// so that the L^2 inner product is the C^d inner product.
    static StepPath vector(std::span<const cplx> v);

    const TimeGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return dim_; }
    int cells() const noexcept { return cells_; }
    double length() const noexcept { return grid_.time(cells_); }

    std::span<const cplx> cell(int k) const {
        return {values_.data() + static_cast<std::size_t>(k) * dim_, static_cast<std::size_t>(dim_)};
    }
    cplx at(int k, int i = 0) const { return values_[static_cast<std::size_t>(k) * dim_ + i]; }
    const std::vector<cplx>& values() const noexcept { return values_; }

    /// Every cell split in two on the refined grid; same step function.
    StepPath refined() const;

    /// True when every component is real (imaginary part exactly zero).
    bool is_real() const noexcept;

    /// Exact cell comparison; paths of different lengths never compare equal.
    bool operator==(const StepPath& other) const noexcept;

private:
    TimeGrid grid_;
    int dim_;
    int cells_;
    std::vector<cplx> values_;
};

/// Concatenation f ⊞ g: f's cells followed by g's cells.
StepPath concat_box(const StepPath& f, const StepPath& g);

/// Propagator x(r, s): the cells of x over (r, s] shifted to start at 0.
/// Times are grid times; propagator(x, 0, length) == x.
StepPath propagator(const StepPath& x, double r, double s);
/// Same, with cell indices 0 <= from < to <= cells.
StepPath propagator_cells(const StepPath& x, int from, int to);

/// Shift by t: zero path of length t followed by x (left multiplication by
/// the vacuum element, i.e. the isometry U_t in coordinates).
StepPath shift(const StepPath& x, int cells);

/// Pad with zero cells on the right up to `cells` cells.
StepPath zero_extend(const StepPath& x, int cells);

/// L^2 inner product h * sum_k <a_k, b_k>, linear in the first argument.
/// Paths of different lengths are compared on their common prefix (zero
/// extension).
cplx l2_inner(const StepPath& a, const StepPath& b);
double l2_norm_sq(const StepPath& a);

/// Cellwise a + scale * b on equal-shaped paths.
StepPath axpy(const StepPath& a, cplx scale, const StepPath& b);
StepPath scaled(const StepPath& a, cplx scale);

/// Max over cells and components of |a - b| (equal shapes required).
double max_abs_diff(const StepPath& a, const StepPath& b);

/// Left-coherent section of ⊞-paths: e_t is the length-t prefix of a single
/// path spanning the horizon. Built from a seed element of P(t0) repeated
/// periodically (the construction giving e_{t0} = seed) or from the seed
/// followed by an explicit tail.
class PathSection {
public:
    explicit PathSection(StepPath full);

    static PathSection from_seed(const StepPath& seed, int horizon_cells);
    static PathSection from_seed(const StepPath& seed, const StepPath& tail);
    /// Validates the prefix property of an explicit family members[k-1] = e_{kh}.
    static PathSection from_family(const std::vector<StepPath>& members);

    /// e_t for t = cells * h, 1 <= cells <= horizon.
    StepPath at(int cells) const;
    const StepPath& full() const noexcept { return full_; }
    int horizon() const noexcept { return full_.cells(); }
    const TimeGrid& grid() const noexcept { return full_.grid(); }
    int dim() const noexcept { return full_.dim(); }

private:
    StepPath full_;
};

}  // namespace pathspace
