#include "pathspace/cocycles.hpp"

#include <algorithm>
#include <cmath>

namespace pathspace {

namespace {

// Cellwise max |a - b| where missing cells count as zero.
double padded_diff(const StepPath& a, const StepPath& b) {
    const std::size_t n = std::max(a.values().size(), b.values().size());
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx x = i < a.values().size() ? a.values()[i] : 0.0;
        const cplx y = i < b.values().size() ? b.values()[i] : 0.0;
        m = std::max(m, std::abs(x - y));
    }
    return m;
}

}  // namespace

CocycleFamily::CocycleFamily(TimeGrid grid, int dim, CocycleConvention convention, std::vector<StepPath> members)
    : grid_(grid), dim_(dim), convention_(convention), members_(std::move(members)) {
    for (const auto& m : members_)
        if (m.dim() != dim_ || m.grid().step() != grid_.step())
            throw Error("CocycleFamily: member on a different grid or of a different dimension");
}

CocycleFamily CocycleFamily::zero(const TimeGrid& grid, int dim, int count) {
    std::vector<StepPath> m;
    m.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j)
        m.push_back(StepPath::zero(grid, j, dim));
    return CocycleFamily(grid, dim, CocycleConvention::Shift, std::move(m));
}

CocycleFamily CocycleFamily::difference(const StepPath& f, int count) {
    if (count < 1 || count >= f.cells())
        throw Error("CocycleFamily::difference: count must be in [1, cells(f))");
    std::vector<StepPath> m;
    m.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j)
        m.push_back(axpy(propagator_cells(f, j, f.cells()), -1.0, propagator_cells(f, 0, f.cells() - j)));
    return CocycleFamily(f.grid(), f.dim(), CocycleConvention::ForwardTranslate, std::move(m));
}

const StepPath& CocycleFamily::at(int cells) const {
    if (cells < 1 || cells > count())
        throw Error("CocycleFamily: no member for t = " + std::to_string(grid_.time(cells)));
    return members_[static_cast<std::size_t>(cells) - 1];
}

bool CocycleFamily::support_normalized() const noexcept {
    if (convention_ != CocycleConvention::Shift)
        return false;
    for (std::size_t j = 0; j < members_.size(); ++j) {
        const StepPath& m = members_[j];
        const int t = static_cast<int>(j) + 1;
        for (int k = t; k < m.cells(); ++k)
            for (int i = 0; i < dim_; ++i)
                if (m.at(k, i) != 0.0)
                    return false;
    }
    return true;
}

double cocycle1_residual(const CocycleFamily& fam) {
    const int n = fam.count();
    const int d = fam.dim();
    double worst = 0.0;
    for (int s = 1; s <= n; ++s)
        for (int t = 1; s + t <= n; ++t) {
            const StepPath& ps = fam.at(s);
            const StepPath& pt = fam.at(t);
            const StepPath& pst = fam.at(s + t);
            if (fam.convention() == CocycleConvention::ForwardTranslate) {
                const int upto = std::min({pst.cells(), ps.cells(), pt.cells() - s});
                for (int k = 0; k < upto; ++k)
                    for (int i = 0; i < d; ++i)
                        worst = std::max(worst, std::abs(pst.at(k, i) - ps.at(k, i) - pt.at(k + s, i)));
            } else {
                const int len = std::max({pst.cells(), ps.cells(), pt.cells() + s});
                auto get = [](const StepPath& p, int k, int i) { return k < p.cells() ? p.at(k, i) : cplx(0.0); };
                for (int k = 0; k < len; ++k)
                    for (int i = 0; i < d; ++i) {
                        const cplx shifted = k >= s ? get(pt, k - s, i) : cplx(0.0);
                        worst = std::max(worst, std::abs(get(pst, k, i) - get(ps, k, i) - shifted));
                    }
            }
        }
    return worst;
}

StepPath solve_cocycle1(const CocycleFamily& fam, double tol, cplx anchor) {
    const std::vector<cplx> a(static_cast<std::size_t>(fam.dim()), anchor);
    return solve_cocycle1(fam, tol, std::span<const cplx>(a));
}

StepPath solve_cocycle1(const CocycleFamily& fam, double tol, std::span<const cplx> anchor) {
    if (static_cast<int>(anchor.size()) != fam.dim())
        throw Error("solve_cocycle1: anchor needs one value per dimension");
    if (fam.convention() != CocycleConvention::ForwardTranslate)
        throw Error("solve_cocycle1: expects a forward-translate family");
    if (fam.count() < 1)
        throw Error("solve_cocycle1: empty family");
    const double pre = cocycle1_residual(fam);
    if (pre > tol)
        throw Error("solve_cocycle1: cocycle residual " + std::to_string(pre) + " exceeds tolerance");

    const StepPath& step = fam.at(1);
    const int d = fam.dim();
    const int cells = step.cells() + 1;
    std::vector<cplx> f(static_cast<std::size_t>(cells) * d);
    for (int i = 0; i < d; ++i)
        f[static_cast<std::size_t>(i)] = anchor[static_cast<std::size_t>(i)];
    for (int k = 0; k + 1 < cells; ++k)
        for (int i = 0; i < d; ++i)
            f[static_cast<std::size_t>(k + 1) * d + i] = f[static_cast<std::size_t>(k) * d + i] + step.at(k, i);
    StepPath prim(fam.grid(), d, std::move(f));

    double worst = 0.0;
    for (int t = 1; t <= fam.count(); ++t) {
        const StepPath& phi = fam.at(t);
        const int upto = std::min(phi.cells(), cells - t);
        for (int k = 0; k < upto; ++k)
            for (int i = 0; i < d; ++i)
                worst = std::max(worst, std::abs(phi.at(k, i) - (prim.at(k + t, i) - prim.at(k, i))));
    }
    if (worst > 10 * tol)
        throw Error("solve_cocycle1: primitive inconsistent with the family (residual " + std::to_string(worst) + ")");
    return prim;
}

GammaTable::GammaTable(TimeGrid grid, int dim, int horizon, std::vector<StepPath> entries)
    : grid_(grid), dim_(dim), horizon_(horizon), entries_(std::move(entries)) {
    if (horizon < 2)
        throw Error("GammaTable: horizon must be at least two cells");
    if (entries_.size() != index(horizon, horizon - 1, 1) + 1)
        throw Error("GammaTable: wrong number of entries");
    for (int s = 1; s < horizon; ++s)
        for (int t = 1; s + t <= horizon; ++t) {
            const StepPath& e = entries_[index(horizon, s, t)];
            if (e.cells() != s + t || e.dim() != dim)
                throw Error("GammaTable: entry has the wrong shape");
        }
}

std::size_t GammaTable::index(int horizon, int s, int t) {
    const auto sm = static_cast<std::size_t>(s - 1);
    return sm * static_cast<std::size_t>(horizon) - sm * static_cast<std::size_t>(s) / 2 + static_cast<std::size_t>(t - 1);
}

const StepPath& GammaTable::at(int s, int t) const {
    if (s < 1 || t < 1 || s + t > horizon_)
        throw Error("GammaTable: (s, t) outside the table");
    return entries_[index(horizon_, s, t)];
}

GammaTable gamma_of_section(const PathSection& e) {
    const int n = e.horizon();
    std::vector<StepPath> entries;
    entries.reserve(GammaTable::index(n, n - 1, 1) + 1);
    for (int s = 1; s < n; ++s)
        for (int t = 1; s + t <= n; ++t)
            entries.push_back(axpy(concat_box(e.at(s), e.at(t)), -1.0, e.at(s + t)));
    return GammaTable(e.grid(), e.dim(), n, std::move(entries));
}

double cocycle2_residual(const GammaTable& g) {
    const int n = g.horizon();
    const int d = g.dim();
    double worst = 0.0;
    for (int r = 1; r < n; ++r)
        for (int s = 1; r + s < n; ++s)
            for (int t = 1; r + s + t <= n; ++t) {
                const StepPath& a = g.at(r + s, t);
                const StepPath& b = g.at(r, s + t);
                const StepPath& c = g.at(s, t);
                const StepPath& e = g.at(r, s);
                for (int k = 0; k < r + s + t; ++k)
                    for (int i = 0; i < d; ++i) {
                        const cplx uc = k >= r ? c.at(k - r, i) : cplx(0.0);
                        const cplx ev = k < r + s ? e.at(k, i) : cplx(0.0);
                        worst = std::max(worst, std::abs(a.at(k, i) - b.at(k, i) - uc + ev));
                    }
            }
    return worst;
}

double stabilization_residual(const GammaTable& g) {
    const int n = g.horizon();
    double worst = 0.0;
    for (int s = 1; s + 2 <= n; ++s) {
        const StepPath& ref = g.at(s, n - s);
        for (int t = 2; s + t < n; ++t) {
            const StepPath& cur = g.at(s, t);
            // cells k with (k + 1) h < t h
            for (int k = 0; k + 1 < t; ++k)
                for (int i = 0; i < g.dim(); ++i)
                    worst = std::max(worst, std::abs(cur.at(k, i) - ref.at(k, i)));
        }
    }
    return worst;
}

double coboundary_residual(const CocycleFamily& phi, const GammaTable& g) {
    const int n = std::min(phi.count(), g.horizon());
    double worst = 0.0;
    for (int s = 1; s < n; ++s)
        for (int t = 1; s + t <= n; ++t) {
            const StepPath lhs = axpy(axpy(zero_extend(phi.at(s + t), s + t), -1.0, zero_extend(phi.at(s), s + t)),
                                      -1.0, zero_extend(shift(phi.at(t), s), s + t));
            worst = std::max(worst, padded_diff(lhs, g.at(s, t)));
        }
    return worst;
}

GammaTrivialization trivialize_gamma_full(const GammaTable& g, double tol, cplx anchor) {
    const int n = g.horizon();
    const int count = (n - 1) / 3;
    if (count < 1)
        throw Error("trivialize_gamma: horizon too short; need at least three times the largest t");
    const double c2 = cocycle2_residual(g);
    if (c2 > tol)
        throw Error("trivialize_gamma: 2-cocycle residual " + std::to_string(c2) + " exceeds tolerance");

    const int d = g.dim();
    const int u_cells = 2 * count;
    std::vector<StepPath> u;
    u.reserve(static_cast<std::size_t>(count));
    for (int s = 1; s <= count; ++s) {
        const StepPath& far = g.at(s, n - s);
        const StepPath& near = g.at(s, n - s - 1);
        std::vector<cplx> vals(static_cast<std::size_t>(u_cells) * d);
        for (int k = 0; k < u_cells; ++k)
            for (int i = 0; i < d; ++i) {
                const cplx a = far.at(k, i);
                if (std::abs(a - near.at(k, i)) > tol)
                    throw Error("trivialize_gamma: Gamma(s, T) does not stabilize on the grid");
                vals[static_cast<std::size_t>(k) * d + i] = -a;
            }
        u.emplace_back(g.grid(), d, std::move(vals));
    }

    std::vector<StepPath> v;
    v.reserve(static_cast<std::size_t>(count));
    for (int t = 1; t <= count; ++t)
        v.push_back(propagator_cells(u[static_cast<std::size_t>(t) - 1], t, t + count));
    CocycleFamily vfam(g.grid(), d, CocycleConvention::ForwardTranslate, std::move(v));
    StepPath w = solve_cocycle1(vfam, tol, anchor);

    std::vector<StepPath> phi;
    phi.reserve(static_cast<std::size_t>(count));
    for (int t = 1; t <= count; ++t)
        phi.push_back(axpy(propagator_cells(u[static_cast<std::size_t>(t) - 1], 0, t), -1.0, propagator_cells(w, 0, t)));
    CocycleFamily phifam(g.grid(), d, CocycleConvention::Shift, std::move(phi));

    const double res = coboundary_residual(phifam, g);
    if (res > 10 * tol)
        throw Error("trivialize_gamma: result misses the coboundary equation by " + std::to_string(res));
    return GammaTrivialization{std::move(phifam), std::move(u), std::move(vfam), std::move(w), res};
}

CocycleFamily trivialize_gamma(const GammaTable& g, double tol, cplx anchor) {
    return trivialize_gamma_full(g, tol, anchor).phi;
}

Logarithm::Logarithm(AdditiveForm form, PathSection section, CocycleFamily phi)
    : form_(std::move(form)), section_(std::move(section)), phi_(std::move(phi)) {
    if (form_.kind() != FormKind::Inner)
        throw Error("Logarithm: requires the coordinatized (inner) form");
    if (!phi_.support_normalized())
        throw Error("Logarithm: phi must be support-normalized (phi_t vanishing beyond t)");
}

StepPath Logarithm::log(const StepPath& z) const {
    const int t = z.cells();
    return axpy(axpy(z, -1.0, section_.at(t)), -1.0, zero_extend(phi_.at(t), t));
}

cplx Logarithm::rho(const StepPath& x) const {
    const int t = x.cells();
    const StepPath e = section_.at(t);
    const StepPath phi = zero_extend(phi_.at(t), t);
    return l2_inner(axpy(x, -1.0, e), phi) + form_(x, e) - 0.5 * (form_(e, e) + l2_norm_sq(phi));
}

StepPath build_log(const AdditiveForm& form, const PathSection& e, const CocycleFamily& phi, const StepPath& z) {
    return Logarithm(form, e, phi).log(z);
}

cplx rho_eval(const AdditiveForm& form, const PathSection& e, const CocycleFamily& phi, const StepPath& x) {
    return Logarithm(form, e, phi).rho(x);
}

MultiplierTable::MultiplierTable(TimeGrid grid, int horizon, std::vector<cplx> values)
    : grid_(grid), horizon_(horizon), values_(std::move(values)) {
    if (horizon < 2)
        throw Error("MultiplierTable: horizon must be at least two cells");
    if (values_.size() != GammaTable::index(horizon, horizon - 1, 1) + 1)
        throw Error("MultiplierTable: wrong number of values");
}

cplx MultiplierTable::at(int s, int t) const {
    if (s < 1 || t < 1 || s + t > horizon_)
        throw Error("MultiplierTable: (s, t) outside the table");
    return values_[GammaTable::index(horizon_, s, t)];
}

double multiplier_residual(const MultiplierTable& c) {
    const int n = c.horizon();
    double worst = 0.0;
    for (int r = 1; r < n; ++r)
        for (int s = 1; r + s < n; ++s)
            for (int t = 1; r + s + t <= n; ++t)
                worst = std::max(worst, std::abs(c.at(r, s + t) * c.at(s, t) - c.at(r + s, t) * c.at(r, s)));
    return worst;
}

std::vector<cplx> trivialize_multiplier(const MultiplierTable& c, double tol) {
    const int n = c.horizon();
    for (int s = 1; s < n; ++s)
        for (int t = 1; s + t <= n; ++t)
            if (std::abs(std::abs(c.at(s, t)) - 1.0) > tol)
                throw Error("trivialize_multiplier: multiplier is not unit-modulus");
    const double pre = multiplier_residual(c);
    if (pre > tol)
        throw Error("trivialize_multiplier: multiplier residual " + std::to_string(pre) + " exceeds tolerance");
    std::vector<cplx> u(static_cast<std::size_t>(n));
    u[0] = 1.0;
    for (int k = 1; k < n; ++k)
        u[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k) - 1] * u[0] / c.at(k, 1);
    const double post = multiplier_reconstruction_residual(c, u);
    if (post > 10 * tol)
        throw Error("trivialize_multiplier: reconstruction residual " + std::to_string(post) + " too large");
    return u;
}

double multiplier_reconstruction_residual(const MultiplierTable& c, const std::vector<cplx>& u) {
    const int n = c.horizon();
    if (static_cast<int>(u.size()) < n)
        throw Error("multiplier_reconstruction_residual: u too short");
    double worst = 0.0;
    for (int s = 1; s < n; ++s)
        for (int t = 1; s + t <= n; ++t) {
            const cplx rec = u[static_cast<std::size_t>(s) - 1] * u[static_cast<std::size_t>(t) - 1] /
                             u[static_cast<std::size_t>(s + t) - 1];
            worst = std::max(worst, std::abs(c.at(s, t) - rec));
        }
    return worst;
}

}  // namespace pathspace
