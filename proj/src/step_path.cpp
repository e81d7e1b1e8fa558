#include "pathspace/step_path.hpp"

#include <algorithm>
#include <cmath>

namespace pathspace {

namespace {

void require_compatible(const StepPath& a, const StepPath& b, const char* what) {
    if (a.grid().step() != b.grid().step())
        throw Error(std::string(what) + ": paths live on different grids");
    if (a.dim() != b.dim())
        throw Error(std::string(what) + ": dimension mismatch");
}

}  // namespace

StepPath::StepPath(TimeGrid grid, int dim, std::vector<cplx> values)
    : grid_(grid), dim_(dim), cells_(0), values_(std::move(values)) {
    if (dim < 1)
        throw Error("StepPath: dimension must be at least 1");
    if (values_.empty() || values_.size() % static_cast<std::size_t>(dim) != 0)
        throw Error("StepPath: need a positive whole number of cells");
    cells_ = static_cast<int>(values_.size() / static_cast<std::size_t>(dim));
}

StepPath StepPath::constant(const TimeGrid& grid, int cells, std::span<const cplx> value) {
    if (cells < 1)
        throw Error("StepPath::constant: length must be at least one cell");
    std::vector<cplx> v;
    v.reserve(static_cast<std::size_t>(cells) * value.size());
    for (int k = 0; k < cells; ++k)
        v.insert(v.end(), value.begin(), value.end());
    return StepPath(grid, static_cast<int>(value.size()), std::move(v));
}

StepPath StepPath::constant(const TimeGrid& grid, int cells, cplx value) {
    return constant(grid, cells, std::span<const cplx>(&value, 1));
}

StepPath StepPath::zero(const TimeGrid& grid, int cells, int dim) {
    if (cells < 1 || dim < 1)
        throw Error("StepPath::zero: bad shape");
    return StepPath(grid, dim, std::vector<cplx>(static_cast<std::size_t>(cells) * dim));
}

StepPath StepPath::real(const TimeGrid& grid, std::span<const double> values) {
    return StepPath(grid, 1, std::vector<cplx>(values.begin(), values.end()));
}

StepPath StepPath::ramp(const TimeGrid& grid, int cells) {
    if (cells < 1)
        throw Error("StepPath::ramp: length must be at least one cell");
    std::vector<cplx> v(static_cast<std::size_t>(cells));
    for (int k = 0; k < cells; ++k)
        v[k] = (k + 0.5) * grid.step();
    return StepPath(grid, 1, std::move(v));
}

StepPath StepPath::vector(std::span<const cplx> v) {
    return StepPath(TimeGrid(1.0, 2), static_cast<int>(v.size()), std::vector<cplx>(v.begin(), v.end()));
}

StepPath StepPath::refined() const {
    std::vector<cplx> v;
    v.reserve(values_.size() * 2);
    for (int k = 0; k < cells_; ++k) {
        auto c = cell(k);
        v.insert(v.end(), c.begin(), c.end());
        v.insert(v.end(), c.begin(), c.end());
    }
    return StepPath(grid_.refined(), dim_, std::move(v));
}

bool StepPath::is_real() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](cplx z) { return z.imag() == 0.0; });
}

bool StepPath::operator==(const StepPath& other) const noexcept {
    return grid_.step() == other.grid_.step() && dim_ == other.dim_ && values_ == other.values_;
}

StepPath concat_box(const StepPath& f, const StepPath& g) {
    require_compatible(f, g, "concat_box");
    std::vector<cplx> v;
    v.reserve(f.values().size() + g.values().size());
    v.insert(v.end(), f.values().begin(), f.values().end());
    v.insert(v.end(), g.values().begin(), g.values().end());
    return StepPath(f.grid(), f.dim(), std::move(v));
}

StepPath propagator_cells(const StepPath& x, int from, int to) {
    if (from < 0 || from >= to || to > x.cells())
        throw Error("propagator: need 0 <= r < s <= length(x)");
    const auto d = static_cast<std::size_t>(x.dim());
    std::vector<cplx> v(x.values().begin() + from * d, x.values().begin() + to * d);
    return StepPath(x.grid(), x.dim(), std::move(v));
}

StepPath propagator(const StepPath& x, double r, double s) {
    return propagator_cells(x, x.grid().cells(r), x.grid().cells(s));
}

StepPath shift(const StepPath& x, int cells) {
    if (cells == 0)
        return x;
    return concat_box(StepPath::zero(x.grid(), cells, x.dim()), x);
}

StepPath zero_extend(const StepPath& x, int cells) {
    if (cells < x.cells())
        throw Error("zero_extend: target shorter than path");
    if (cells == x.cells())
        return x;
    std::vector<cplx> v = x.values();
    v.resize(static_cast<std::size_t>(cells) * x.dim());
    return StepPath(x.grid(), x.dim(), std::move(v));
}

cplx l2_inner(const StepPath& a, const StepPath& b) {
    require_compatible(a, b, "l2_inner");
    const std::size_t n = std::min(a.values().size(), b.values().size());
    cplx acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a.values()[i] * std::conj(b.values()[i]);
    return acc * a.grid().step();
}

double l2_norm_sq(const StepPath& a) {
    double acc = 0.0;
    for (cplx z : a.values())
        acc += std::norm(z);
    return acc * a.grid().step();
}

StepPath axpy(const StepPath& a, cplx scale, const StepPath& b) {
    require_compatible(a, b, "axpy");
    if (a.cells() != b.cells())
        throw Error("axpy: length mismatch");
    std::vector<cplx> v(a.values());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += scale * b.values()[i];
    return StepPath(a.grid(), a.dim(), std::move(v));
}

StepPath scaled(const StepPath& a, cplx scale) {
    std::vector<cplx> v(a.values());
    for (auto& z : v)
        z *= scale;
    return StepPath(a.grid(), a.dim(), std::move(v));
}

double max_abs_diff(const StepPath& a, const StepPath& b) {
    require_compatible(a, b, "max_abs_diff");
    if (a.cells() != b.cells())
        throw Error("max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

PathSection::PathSection(StepPath full) : full_(std::move(full)) {}

PathSection PathSection::from_seed(const StepPath& seed, int horizon_cells) {
    if (horizon_cells < seed.cells())
        throw Error("PathSection: horizon shorter than seed");
    std::vector<cplx> v;
    const auto d = static_cast<std::size_t>(seed.dim());
    v.reserve(static_cast<std::size_t>(horizon_cells) * d);
    for (int k = 0; k < horizon_cells; ++k) {
        auto c = seed.cell(k % seed.cells());
        v.insert(v.end(), c.begin(), c.end());
    }
    return PathSection(StepPath(seed.grid(), seed.dim(), std::move(v)));
}

PathSection PathSection::from_seed(const StepPath& seed, const StepPath& tail) {
    return PathSection(concat_box(seed, tail));
}

PathSection PathSection::from_family(const std::vector<StepPath>& members) {
    if (members.empty())
        throw Error("PathSection: empty family");
    const StepPath& last = members.back();
    for (std::size_t k = 0; k < members.size(); ++k) {
        const StepPath& m = members[k];
        if (m.cells() != static_cast<int>(k + 1))
            throw Error("PathSection: member " + std::to_string(k + 1) + " has the wrong length");
        if (!(m == propagator_cells(last, 0, m.cells())))
            throw Error("PathSection: family is not left-coherent at t = " + std::to_string(m.length()));
    }
    return PathSection(last);
}

StepPath PathSection::at(int cells) const {
    if (cells < 1 || cells > full_.cells())
        throw Error("PathSection: time outside the section horizon");
    return propagator_cells(full_, 0, cells);
}

}  // namespace pathspace
