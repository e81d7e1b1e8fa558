#include "pathspace/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathspace/parallel.hpp"

namespace pathspace {

KernelTable::KernelTable(std::vector<double> xs, std::vector<double> ys, Matrix values)
    : xs_(std::move(xs)), ys_(std::move(ys)), values_(std::move(values)) {
    if (xs_.size() < 2 || ys_.size() < 2)
        throw Error("KernelTable: need at least two nodes per axis");
    if (values_.rows() != static_cast<Eigen::Index>(xs_.size()) ||
        values_.cols() != static_cast<Eigen::Index>(ys_.size()))
        throw Error("KernelTable: value shape does not match the nodes");
    if (!std::is_sorted(xs_.begin(), xs_.end()) || !std::is_sorted(ys_.begin(), ys_.end()) ||
        std::adjacent_find(xs_.begin(), xs_.end()) != xs_.end() ||
        std::adjacent_find(ys_.begin(), ys_.end()) != ys_.end())
        throw Error("KernelTable: nodes must be strictly increasing");
}

namespace {

// Index i with nodes[i] <= v <= nodes[i+1] and the local coordinate in [0, 1].
std::pair<std::size_t, double> locate(const std::vector<double>& nodes, double v) {
    if (v < nodes.front() || v > nodes.back())
        throw Error("KernelTable: argument " + std::to_string(v) + " outside the tabulated range");
    auto it = std::upper_bound(nodes.begin(), nodes.end(), v);
    std::size_t i = it == nodes.end() ? nodes.size() - 2 : static_cast<std::size_t>(it - nodes.begin()) - 1;
    i = std::min(i, nodes.size() - 2);
    return {i, (v - nodes[i]) / (nodes[i + 1] - nodes[i])};
}

}  // namespace

cplx KernelTable::operator()(double a, double b) const {
    const auto [i, u] = locate(xs_, a);
    const auto [j, w] = locate(ys_, b);
    const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
    return (1 - u) * (1 - w) * values_(ii, jj) + u * (1 - w) * values_(ii + 1, jj) +
           (1 - u) * w * values_(ii, jj + 1) + u * w * values_(ii + 1, jj + 1);
}

std::string to_string(FormKind kind) {
    switch (kind) {
    case FormKind::Inner: return "inner";
    case FormKind::Gaussian: return "gaussian";
    case FormKind::Poisson: return "poisson";
    case FormKind::GammaKernel: return "gamma";
    case FormKind::Custom: return "custom";
    }
    return "unknown";
}

FormKind form_kind_from_string(const std::string& name) {
    for (auto k : {FormKind::Inner, FormKind::Gaussian, FormKind::Poisson, FormKind::GammaKernel, FormKind::Custom})
        if (to_string(k) == name)
            return k;
    throw Error("unknown form kind '" + name + "'");
}

AdditiveForm AdditiveForm::inner() { return AdditiveForm(); }

AdditiveForm AdditiveForm::gaussian(double c) {
    if (!(c > 0))
        throw Error("Gaussian form: c must be positive");
    AdditiveForm f;
    f.kind_ = FormKind::Gaussian;
    f.c_ = c;
    f.name_ = "gaussian";
    return f;
}

AdditiveForm AdditiveForm::poisson(double c, double h0) {
    if (!(c > 0) || !(h0 > 0))
        throw Error("Poisson form: c and h0 must be positive");
    AdditiveForm f;
    f.kind_ = FormKind::Poisson;
    f.c_ = c;
    f.h0_ = h0;
    f.name_ = "poisson";
    return f;
}

AdditiveForm AdditiveForm::gamma(std::shared_ptr<const KernelTable> table) {
    if (!table)
        throw Error("gamma form: missing table");
    AdditiveForm f;
    f.kind_ = FormKind::GammaKernel;
    f.table_ = std::move(table);
    f.name_ = "gamma";
    return f;
}

AdditiveForm AdditiveForm::custom(Fn fn, std::string name) {
    AdditiveForm f;
    f.kind_ = FormKind::Custom;
    f.fn_ = std::move(fn);
    f.name_ = std::move(name);
    return f;
}

bool AdditiveForm::real_only() const noexcept {
    return kind_ == FormKind::Gaussian || kind_ == FormKind::Poisson || kind_ == FormKind::GammaKernel;
}

cplx AdditiveForm::operator()(const StepPath& x, const StepPath& y) const {
    if (kind_ == FormKind::Custom)
        return fn_(x, y);
    if (x.cells() != y.cells())
        throw Error("eval_form: paths of different lengths");
    if (x.grid().step() != y.grid().step() || x.dim() != y.dim())
        throw Error("eval_form: paths on different grids or of different dimension");
    if (real_only() && (x.dim() != 1 || !x.is_real() || !y.is_real()))
        throw Error("eval_form: " + name_ + " form needs real one-dimensional paths");

    const double h = x.grid().step();
    const auto& xv = x.values();
    const auto& yv = y.values();
    cplx acc = 0.0;
    switch (kind_) {
    case FormKind::Inner:
        for (std::size_t i = 0; i < xv.size(); ++i)
            acc += xv[i] * std::conj(yv[i]);
        return acc * h;
    case FormKind::Gaussian: {
        double s = 0.0;
        for (std::size_t i = 0; i < xv.size(); ++i) {
            const double d = xv[i].real() - yv[i].real();
            s += d * d;
        }
        return -c_ * h * s;
    }
    case FormKind::Poisson:
        for (std::size_t i = 0; i < xv.size(); ++i)
            acc += std::polar(1.0, h0_ * (xv[i].real() - yv[i].real())) - 1.0;
        return c_ * h * acc;
    case FormKind::GammaKernel:
        for (std::size_t i = 0; i < xv.size(); ++i)
            acc += (*table_)(xv[i].real(), yv[i].real());
        return acc * h;
    case FormKind::Custom:
        break;
    }
    return acc;
}

cplx eval_form(const AdditiveForm& form, const StepPath& x, const StepPath& y) { return form(x, y); }

Matrix cross_gram(const AdditiveForm& form, std::span<const StepPath> xs, std::span<const StepPath> ys) {
    const auto n = static_cast<Eigen::Index>(xs.size()), m = static_cast<Eigen::Index>(ys.size());
    Matrix g(n, m);
    parallel_for(static_cast<std::size_t>(n * m), [&](std::size_t idx) {
        const auto i = static_cast<Eigen::Index>(idx) / m, j = static_cast<Eigen::Index>(idx) % m;
        g(i, j) = form(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]);
    });
    return g;
}

Matrix gram(const AdditiveForm& form, std::span<const StepPath> samples) {
    return cross_gram(form, samples, samples);
}

double cpd_check(const AdditiveForm& form, std::span<const StepPath> samples) {
    if (samples.size() < 2)
        throw Error("cpd_check: need at least two samples");
    const Matrix g = gram(form, samples);
    if (hermitian_defect(g) > 1e-12 * std::max(1.0, max_abs(g)))
        throw Error("cpd_check: Gram is not Hermitian (form is not self-adjoint)");
    return min_projected_eigenvalue(g);
}

double pd_root_check(const AdditiveForm& form, std::span<const StepPath> samples, std::span<const double> roots) {
    if (samples.empty())
        throw Error("pd_root_check: need at least one sample");
    if (roots.empty())
        throw Error("pd_root_check: need at least one root");
    const Matrix g = gram(form, samples);
    double worst = std::numeric_limits<double>::infinity();
    for (double n : roots) {
        if (!(n > 0))
            throw Error("pd_root_check: roots must be positive");
        if (max_abs(g) / n > 700.0)
            throw Error("pd_root_check: exponent overflow, rescale the form");
        const Matrix e = (g / n).array().exp().matrix();
        worst = std::min(worst, min_eigenvalue(e));
    }
    return worst;
}

Matrix additivity_residual_matrix(const AdditiveForm& form, std::span<const PathPair> pairs) {
    const auto n = static_cast<Eigen::Index>(pairs.size());
    std::vector<StepPath> joined;
    joined.reserve(pairs.size());
    for (const auto& p : pairs)
        joined.push_back(concat_box(p.x, p.y));
    Matrix r(n, n);
    parallel_for(static_cast<std::size_t>(n * n), [&](std::size_t idx) {
        const auto i = static_cast<std::size_t>(idx / static_cast<std::size_t>(n));
        const auto k = static_cast<std::size_t>(idx % static_cast<std::size_t>(n));
        r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            form(joined[i], joined[k]) - form(pairs[i].x, pairs[k].x) - form(pairs[i].y, pairs[k].y);
    });
    return r;
}

namespace {

double alternation_residual(const Matrix& r) {
    const Eigen::Index n = r.rows();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l)
                    worst = std::max(worst, std::abs(r(i, k) - r(i, l) - r(j, k) + r(j, l)));
    return worst;
}

}  // namespace

double additivity_split_check(const AdditiveForm& form, std::span<const PathPair> pairs) {
    if (pairs.empty())
        return 0.0;
    return alternation_residual(additivity_residual_matrix(form, pairs));
}

DefectTable::DefectTable(std::vector<Entry> entries, std::size_t anchor)
    : entries_(std::move(entries)), anchor_(anchor) {}

DefectTable DefectTable::zero() {
    return from_function([](const StepPath&, const StepPath&) { return cplx(0.0); });
}

DefectTable DefectTable::from_function(Fn fn) {
    DefectTable t;
    t.fallback_ = std::move(fn);
    return t;
}

std::optional<cplx> DefectTable::lookup(const StepPath& x, const StepPath& y) const {
    for (const auto& e : entries_)
        if (e.x == x && e.y == y)
            return e.psi;
    if (fallback_)
        return fallback_(x, y);
    return std::nullopt;
}

cplx DefectTable::operator()(const StepPath& x, const StepPath& y) const {
    if (auto v = lookup(x, y))
        return *v;
    throw Error("DefectTable: no defect value for the requested pair");
}

DefectTable defect_extract(const AdditiveForm& form, std::span<const PathPair> pairs, std::size_t anchor,
                           double tol) {
    if (anchor >= pairs.size())
        throw Error("defect_extract: anchor index out of range");
    const Matrix r = additivity_residual_matrix(form, pairs);
    const auto a = static_cast<Eigen::Index>(anchor);
    const double psi_anchor = r(a, a).real() / 2.0;
    std::vector<DefectTable::Entry> entries;
    entries.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        entries.push_back({pairs[i].x, pairs[i].y, r(static_cast<Eigen::Index>(i), a) - psi_anchor});
    double worst = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t k = 0; k < pairs.size(); ++k)
            worst = std::max(worst, std::abs(r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) -
                                             entries[i].psi - std::conj(entries[k].psi)));
    if (worst > tol)
        throw Error("defect_extract: split residual " + std::to_string(worst) + " above tolerance");
    return DefectTable(std::move(entries), anchor);
}

}  // namespace pathspace
