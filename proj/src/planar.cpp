#include "pathspace/planar.hpp"

#include <cmath>

namespace pathspace {

SampledPath::SampledPath(double step, int dim, std::vector<double> samples)
    : step_(step), dim_(dim), intervals_(0), samples_(std::move(samples)) {
    if (!(step > 0))
        throw Error("SampledPath: step must be positive");
    if (dim < 1 || samples_.size() % static_cast<std::size_t>(dim) != 0 ||
        samples_.size() / static_cast<std::size_t>(dim) < 2)
        throw Error("SampledPath: need at least two samples of the given dimension");
    intervals_ = static_cast<int>(samples_.size() / static_cast<std::size_t>(dim)) - 1;
}

namespace {

void require_origin(const SampledPath& p, const char* what) {
    for (int i = 0; i < p.dim(); ++i)
        if (std::abs(p.point(0)[i]) > 1e-12)
            throw Error(std::string(what) + ": path must start at the origin");
}

}  // namespace

SampledPath concat_offset(const SampledPath& f, const SampledPath& g) {
    if (f.step() != g.step() || f.dim() != g.dim())
        throw Error("concat_offset: paths sampled on different grids");
    require_origin(f, "concat_offset");
    require_origin(g, "concat_offset");
    std::vector<double> out(f.samples());
    const double* end = f.point(f.intervals());
    std::vector<double> base(end, end + f.dim());
    for (int j = 1; j <= g.intervals(); ++j)
        for (int i = 0; i < f.dim(); ++i)
            out.push_back(base[i] + g.point(j)[i]);
    return SampledPath(f.step(), f.dim(), std::move(out));
}

double Disk::distance(const double* x) const {
    return std::hypot(x[0] - center[0], x[1] - center[1]) - radius;
}

bool Potential::admissible(const double* x) const {
    return !obstacle || obstacle->distance(x) > 0.0;
}

double Potential::value(const double* x) const {
    if (!obstacle)
        return 0.0;
    return strength / obstacle->distance(x);
}

std::array<double, 2> Potential::grad(const double* x) const {
    if (!obstacle)
        return {0.0, 0.0};
    const double dx = x[0] - obstacle->center[0], dy = x[1] - obstacle->center[1];
    const double r = std::hypot(dx, dy);
    const double dist = r - obstacle->radius;
    const double c = -strength / (dist * dist * r);
    return {c * dx, c * dy};
}

std::array<double, 2> Potential::grad_normalized(const double* x) const {
    static constexpr double origin[2] = {0.0, 0.0};
    auto g = grad(x);
    auto g0 = grad(origin);
    return {g[0] - g0[0], g[1] - g0[1]};
}

SampledPath concat_potential(const SampledPath& f, const SampledPath& g, const Potential& v) {
    if (f.dim() != 2 || g.dim() != 2)
        throw Error("concat_potential: planar paths required");
    if (f.step() != g.step())
        throw Error("concat_potential: paths sampled on different grids");
    require_origin(f, "concat_potential");
    require_origin(g, "concat_potential");
    static constexpr double origin[2] = {0.0, 0.0};
    if (!v.admissible(origin))
        throw Error("concat_potential: obstacle contains the origin");
    for (const SampledPath* p : {&f, &g})
        for (int k = 0; k <= p->intervals(); ++k)
            if (!v.admissible(p->point(k)))
                throw Error("concat_potential: input path enters the obstacle at t = " +
                            std::to_string(k * p->step()));

    const double h = f.step();
    // Driving function of a sampled path at sample k (forward difference,
    // backward difference at the right end).
    auto drive = [&](const SampledPath& p, int k) {
        const int a = k < p.intervals() ? k : k - 1;
        const auto gv = v.grad_normalized(p.point(k));
        std::array<double, 2> out{};
        for (int i = 0; i < 2; ++i)
            out[i] = (p.point(a + 1)[i] - p.point(a)[i]) / h + gv[i];
        return out;
    };

    const int n = f.intervals(), m = g.intervals();
    const auto drive_f_end = drive(f, n);
    std::vector<double> out(static_cast<std::size_t>(n + m + 1) * 2, 0.0);
    for (int k = 0; k < n + m; ++k) {
        std::array<double, 2> phi;
        if (k < n) {
            phi = drive(f, k);
        } else {
            const auto dg = drive(g, k - n);
            phi = {drive_f_end[0] + dg[0], drive_f_end[1] + dg[1]};
        }
        const double* cur = &out[static_cast<std::size_t>(k) * 2];
        const auto gv = v.grad_normalized(cur);
        double* next = &out[static_cast<std::size_t>(k + 1) * 2];
        next[0] = cur[0] + h * (phi[0] - gv[0]);
        next[1] = cur[1] + h * (phi[1] - gv[1]);
        if (!v.admissible(next))
            throw Error("concat_potential: Euler step enters the obstacle at t = " +
                        std::to_string((k + 1) * h) + " (reduce the step)");
    }
    return SampledPath(h, 2, std::move(out));
}

}  // namespace pathspace
