#include "pathspace/declog.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>

#include "pathspace/parallel.hpp"

namespace pathspace {

DecompVector::DecompVector(cplx l, StepPath path) : lambda(l), f(std::move(path)) {
    if (l == 0.0)
        throw Error("DecompVector: zero scalar");
}

cplx dv_inner(const DecompVector& u, const DecompVector& v) {
    if (u.cells() != v.cells())
        throw Error("dv_inner: vectors in different fibers");
    return u.lambda * std::conj(v.lambda) * std::exp(l2_inner(u.f, v.f));
}

double dv_norm_sq(const DecompVector& u) { return std::norm(u.lambda) * std::exp(l2_norm_sq(u.f)); }

DecompVector dv_multiply(const DecompVector& a, const DecompVector& b) {
    return DecompVector(a.lambda * b.lambda, concat_box(a.f, b.f));
}

DecompVector left_divide(const DecompVector& x, const DecompVector& b, double tol) {
    const int t = x.cells(), r = b.cells();
    if (r >= t)
        throw Error("left_divide: divisor must be shorter than the vector");
    const StepPath tail = propagator_cells(x.f, t - r, t);
    if (tail.dim() != b.f.dim() || max_abs_diff(tail, b.f) > tol)
        throw Error("left_divide: not a right divisor");
    return DecompVector(x.lambda / b.lambda, propagator_cells(x.f, 0, t - r));
}

DecompSection::DecompSection(StepPath f, std::vector<cplx> lambdas) : f_(std::move(f)), lambdas_(std::move(lambdas)) {
    if (static_cast<int>(lambdas_.size()) != f_.cells())
        throw Error("DecompSection: need one scalar per grid time");
    for (cplx l : lambdas_)
        if (l == 0.0)
            throw Error("DecompSection: zero scalar");
}

DecompSection::DecompSection(StepPath f)
    : DecompSection(f, std::vector<cplx>(static_cast<std::size_t>(f.cells()), 1.0)) {}

DecompSection DecompSection::reference(const StepPath& eps) {
    std::vector<cplx> l(static_cast<std::size_t>(eps.cells()));
    const double h = eps.grid().step();
    double acc = 0.0;
    for (int k = 0; k < eps.cells(); ++k) {
        for (cplx c : eps.cell(k))
            acc += h * std::norm(c);
        l[static_cast<std::size_t>(k)] = std::exp(-0.5 * acc);
    }
    return DecompSection(eps, std::move(l));
}

DecompSection DecompSection::reference(const TimeGrid& grid, int horizon_cells, std::span<const cplx> eps) {
    return reference(StepPath::constant(grid, horizon_cells, eps));
}

DecompSection DecompSection::vacuum(const TimeGrid& grid, int horizon_cells, int dim) {
    return DecompSection(StepPath::zero(grid, horizon_cells, dim));
}

DecompVector DecompSection::at(int cells) const {
    if (cells < 1 || cells > horizon())
        throw Error("DecompSection: time outside the horizon");
    return DecompVector(lambdas_[static_cast<std::size_t>(cells) - 1], propagator_cells(f_, 0, cells));
}

DecompVector DecompSection::between(int from, int to) const {
    if (from == 0)
        return at(to);
    if (from < 0 || from >= to || to > horizon())
        throw Error("DecompSection: bad propagator interval");
    return DecompVector(lambdas_[static_cast<std::size_t>(to) - 1] / lambdas_[static_cast<std::size_t>(from) - 1],
                        propagator_cells(f_, from, to));
}

DecompSection de_normalize(const DecompSection& x, const DecompSection& e) {
    if (e.horizon() < x.horizon())
        throw Error("de_normalize: reference shorter than the section");
    std::vector<cplx> l(x.lambdas());
    for (int k = 1; k <= x.horizon(); ++k)
        l[static_cast<std::size_t>(k) - 1] /= dv_inner(x.at(k), e.at(k));
    return DecompSection(x.path(), std::move(l));
}

DecompSection unit_normalize(const DecompSection& x) {
    std::vector<cplx> l(x.lambdas());
    for (int k = 1; k <= x.horizon(); ++k) {
        cplx& v = l[static_cast<std::size_t>(k) - 1];
        v = v / std::abs(v) * std::exp(-0.5 * l2_norm_sq(propagator_cells(x.path(), 0, k)));
    }
    return DecompSection(x.path(), std::move(l));
}

ModulusCurve modulus_curve(const DecompSection& x, const DecompSection& y, double tol) {
    const int n = std::min(x.horizon(), y.horizon());
    ModulusCurve out{{}, 0.0, 0.0};
    out.values.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const DecompVector a = x.at(k), b = y.at(k);
        if (std::abs(dv_norm_sq(a) - 1.0) > tol || std::abs(dv_norm_sq(b) - 1.0) > tol)
            throw Error("modulus_curve: sections are not unit-normalized");
        out.values.push_back(std::abs(dv_inner(a, b)));
    }
    for (std::size_t k = 1; k < out.values.size(); ++k)
        out.max_increase = std::max(out.max_increase, out.values[k] - out.values[k - 1]);
    out.first_gap = 1.0 - out.values.front();
    return out;
}

NormMonotone norm_monotone_check(const DecompSection& x, const DecompSection& e, double tol) {
    NormMonotone out{0.0, 0.0};
    double prev = 0.0;
    for (int k = 1; k <= x.horizon(); ++k) {
        const DecompVector v = x.at(k);
        if (std::abs(dv_inner(v, e.at(k)) - 1.0) > tol)
            throw Error("norm_monotone_check: section is not normalized against the reference");
        const double nv = std::sqrt(dv_norm_sq(v));
        if (k == 1)
            out.first_gap = nv - 1.0;
        else
            out.max_decrease = std::max(out.max_decrease, prev - nv);
        prev = nv;
    }
    return out;
}

double ineq_76_check(const DecompSection& x, const DecompSection& y, int s, int t, int T) {
    if (!(1 <= s && s < t && t <= T))
        throw Error("ineq_76_check: need s < t <= T");
    const double xs = dv_norm_sq(x.at(s)), xt = dv_norm_sq(x.at(t));
    const double ys = dv_norm_sq(y.at(s)), yt = dv_norm_sq(y.at(t));
    const double lhs = std::abs(dv_inner(x.at(s), y.at(s)) - dv_inner(x.at(t), y.at(t)));
    const double rhs = std::sqrt(dv_norm_sq(x.at(T)) * dv_norm_sq(y.at(T))) *
                       std::sqrt(std::max(0.0, (xt - xs) * (yt - ys)));
    return rhs - lhs;
}

cplx normalized_ratio(const DecompVector& x, const DecompVector& y, const DecompVector& e) {
    return dv_inner(x, y) * dv_norm_sq(e) / (dv_inner(x, e) * dv_inner(e, y));
}

namespace {

cplx cexpm1(cplx z) {
    const double a = z.real(), b = z.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

void require_fiber(const DecompVector& x, const DecompVector& y, const DecompSection& e) {
    if (x.cells() != y.cells())
        throw Error("vectors in different fibers");
    if (e.horizon() < x.cells())
        throw Error("reference section shorter than the vectors");
    if (x.f.dim() != e.dim() || y.f.dim() != e.dim())
        throw Error("reference section of a different dimension");
}

// Branch-tracked logarithm of k -> F(k), k = 1..n, with F -> 1 at the origin.
std::optional<cplx> track(const std::function<cplx(int)>& F, int n) {
    cplx prev = 1.0, acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        const cplx cur = F(k);
        const cplx ratio = cur / prev;
        if (!(std::abs(ratio - 1.0) < 1.0))
            return std::nullopt;
        acc += std::log(ratio);
        prev = cur;
    }
    return acc;
}

}  // namespace

cplx B_partition(const DecompVector& x, const DecompVector& y, const DecompSection& e, const Partition& p) {
    require_fiber(x, y, e);
    if (p.total_cells() != x.cells())
        throw Error("B_partition: partition does not cover (0, t]");
    const StepPath& ef = e.path();
    cplx sum = 0.0;
    const auto& c = p.cuts();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const StepPath fx = propagator_cells(x.f, c[i], c[i + 1]);
        const StepPath fy = propagator_cells(y.f, c[i], c[i + 1]);
        const StepPath fe = propagator_cells(ef, c[i], c[i + 1]);
        // log of <x_I, y_I> |e_I|^2 / (<x_I, e_I> <e_I, y_I>); the scalars cancel.
        const cplx a = l2_inner(fx, fy) + l2_inner(fe, fe) - l2_inner(fx, fe) - l2_inner(fe, fy);
        sum += cexpm1(a);
    }
    return sum;
}

Matrix B_gram(std::span<const DecompVector> xs, const DecompSection& e, const Partition& p) {
    const std::size_t n = xs.size();
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n * n, [&](std::size_t idx) {
        m(static_cast<Eigen::Index>(idx / n), static_cast<Eigen::Index>(idx % n)) =
            B_partition(xs[idx / n], xs[idx % n], e, p);
    });
    return m;
}

double B_refinement_check(std::span<const DecompVector> xs, const DecompSection& e, const Partition& coarse,
                          const Partition& fine) {
    if (!coarse.refined_by(fine))
        throw Error("B_refinement_check: second partition does not refine the first");
    return min_eigenvalue(B_gram(xs, e, coarse) - B_gram(xs, e, fine));
}

cplx model_log_oracle(const DecompVector& x, const DecompVector& y, const DecompSection& e) {
    require_fiber(x, y, e);
    const StepPath eps = propagator_cells(e.path(), 0, x.cells());
    return l2_inner(axpy(x.f, -1.0, eps), axpy(y.f, -1.0, eps));
}

BLimit B_limit(const DecompVector& x, const DecompVector& y, const DecompSection& e, int levels) {
    require_fiber(x, y, e);
    if (levels < 0 || levels > 30 || x.cells() % (1 << levels) != 0)
        throw Error("B_limit: grid exhausted before the requested depth");
    BLimit out{0.0, model_log_oracle(x, y, e), {}};
    for (int lv = 0; lv <= levels; ++lv) {
        const Partition p = Partition::dyadic(x.f.grid(), x.cells(), lv);
        const cplx b = B_partition(x, y, e, p);
        out.table.push_back({lv, p.pieces(), p.mesh(), b, std::abs(b - out.oracle)});
        out.estimate = b;
    }
    return out;
}

cplx le_branch(const DecompVector& x, const DecompVector& y, const DecompSection& e, int max_refine) {
    require_fiber(x, y, e);
    StepPath fx = x.f, fy = y.f, fe = propagator_cells(e.path(), 0, x.cells());
    for (int level = 0; level <= max_refine; ++level) {
        const int n = fx.cells();
        // prefix inner products, accumulated cell by cell
        std::vector<cplx> pxy(static_cast<std::size_t>(n)), pxe(pxy.size()), pey(pxy.size()), pee(pxy.size());
        const double h = fx.grid().step();
        cplx axy = 0.0, axe = 0.0, aey = 0.0, aee = 0.0;
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < fx.dim(); ++i) {
                axy += h * fx.at(k, i) * std::conj(fy.at(k, i));
                axe += h * fx.at(k, i) * std::conj(fe.at(k, i));
                aey += h * fe.at(k, i) * std::conj(fy.at(k, i));
                aee += h * fe.at(k, i) * std::conj(fe.at(k, i));
            }
            const auto u = static_cast<std::size_t>(k);
            pxy[u] = axy;
            pxe[u] = axe;
            pey[u] = aey;
            pee[u] = aee;
        }
        auto F = [&](int k) {
            const auto u = static_cast<std::size_t>(k) - 1;
            return std::exp(pxy[u]) * std::exp(pee[u]) / (std::exp(pxe[u]) * std::exp(pey[u]));
        };
        if (auto L = track(F, n))
            return *L;
        fx = fx.refined();
        fy = fy.refined();
        fe = fe.refined();
    }
    throw Error("le_branch: branch guard still violated after refinement; use a finer grid");
}

LeGram le_pd_gram(std::span<const DecompVector> xs, const DecompSection& e) {
    const std::size_t n = xs.size();
    const auto N = static_cast<Eigen::Index>(n);
    LeGram out{Matrix(N, N), Matrix(N, N), 0.0, 0.0, 0.0};
    parallel_for(n * n, [&](std::size_t idx) {
        const std::size_t i = idx / n, j = idx % n;
        const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
        out.le(I, J) = le_branch(xs[i], xs[j], e);
        const StepPath eps = propagator_cells(e.path(), 0, xs[i].cells());
        out.l2(I, J) = l2_inner(axpy(xs[i].f, -1.0, eps), axpy(xs[j].f, -1.0, eps));
    });
    if (n > 0) {
        out.min_eig = min_eigenvalue(out.le);
        out.l2_min_eig = min_eigenvalue(out.l2);
        out.max_diff = max_abs(out.le - out.l2);
    }
    return out;
}

double rebase_check(const DecompSection& e1, const DecompSection& e2, std::span<const DecompVector> xs) {
    const std::size_t n = xs.size();
    std::vector<cplx> d(n * n);
    parallel_for(n * n, [&](std::size_t idx) {
        d[idx] = le_branch(xs[idx / n], xs[idx % n], e2) - le_branch(xs[idx / n], xs[idx % n], e1);
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l)
                    worst = std::max(worst, std::abs(d[i * n + j] - d[i * n + l] - d[k * n + j] + d[k * n + l]));
    return worst;
}

cplx psi_s(const DecompSection& e, int s, const DecompVector& y) {
    const int t = y.cells();
    if (s < 1 || s + t > e.horizon())
        throw Error("psi_s: s + t exceeds the reference horizon");
    if (y.f.dim() != e.dim())
        throw Error("psi_s: dimension mismatch");
    StepPath fe = propagator_cells(e.path(), 0, s + t);
    StepPath fy = y.f;
    int shift_cells = s;
    for (int level = 0; level <= 4; ++level) {
        auto G = [&](int r) {
            const DecompVector er(1.0, propagator_cells(fe, 0, r));
            const DecompVector ep(1.0, propagator_cells(fe, shift_cells, shift_cells + r));
            const DecompVector yr(1.0, propagator_cells(fy, 0, r));
            const cplx c = dv_inner(ep, er);
            return std::abs(c) * dv_inner(yr, er) * std::sqrt(dv_norm_sq(ep)) /
                   (std::sqrt(dv_norm_sq(er)) * dv_inner(yr, ep) * c);
        };
        if (auto L = track(G, fy.cells()))
            return *L;
        fe = fe.refined();
        fy = fy.refined();
        shift_cells *= 2;
    }
    throw Error("psi_s: branch guard still violated after refinement; use a finer grid");
}

double psi_s_check(const DecompSection& e, std::span<const PsiPair> pairs) {
    double worst = 0.0;
    for (const auto& p : pairs) {
        const int s = p.x1.cells();
        const cplx lhs = le_branch(dv_multiply(p.x1, p.y1), dv_multiply(p.x2, p.y2), e) -
                         le_branch(p.x1, p.x2, e) - le_branch(p.y1, p.y2, e);
        const cplx rhs = psi_s(e, s, p.y1) + std::conj(psi_s(e, s, p.y2));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

ContinuitySlack continuity_slack(const DecompSection& u, const DecompSection& v, const DecompSection& e, int s, int t) {
    if (!(1 <= s && s < t))
        throw Error("continuity_slack: need s < t");
    const DecompVector us = u.at(s), ut = u.at(t), vs = v.at(s), vt = v.at(t);
    const cplx ls = le_branch(us, vs, e), lt = le_branch(ut, vt, e);
    const double nus = dv_norm_sq(us), nut = dv_norm_sq(ut), nvs = dv_norm_sq(vs), nvt = dv_norm_sq(vt);
    return {std::sqrt(std::max(0.0, (nus - 1.0) * (nvs - 1.0))) - std::abs(ls),
            std::sqrt(std::max(0.0, (nut - nus) * (nvt - nvs))) - std::abs(lt - ls)};
}

Lemma911Report lemma911(std::span<const std::vector<cplx>> net, cplx zeta) {
    Lemma911Report out{{}, true};
    for (const auto& z : net) {
        cplx prod = 1.0, sum = 0.0;
        double l2 = 0.0;
        for (cplx c : z) {
            if (std::abs(c) > 0.5)
                throw Error("lemma911: entries must satisfy |z(k)| <= 1/2");
            prod *= 1.0 + c;
            sum += c;
            l2 += std::norm(c);
        }
        const double gap = std::abs(prod - std::exp(zeta));
        const double bound = std::exp(sum.real()) * std::expm1(l2) + std::abs(std::exp(sum) - std::exp(zeta));
        // allowance for rounding in the running product
        const double slack = 4.0 * static_cast<double>(z.size() + 1) * DBL_EPSILON * std::abs(prod);
        if (gap > bound + slack)
            out.within_bound = false;
        out.rows.push_back({z.size(), prod, sum, l2, gap, bound});
    }
    return out;
}

}  // namespace pathspace
