#include "pathspace/product.hpp"

#include <algorithm>
#include <cmath>

#include "pathspace/parallel.hpp"

namespace pathspace {

ProductVector::ProductVector(std::shared_ptr<const AdditiveForm> form, std::vector<Term> terms)
    : form_(std::move(form)), terms_(std::move(terms)) {
    if (!form_)
        throw Error("ProductVector: missing form");
    if (terms_.empty())
        throw Error("ProductVector: empty span");
    for (const auto& t : terms_)
        if (t.x.cells() != terms_[0].x.cells() || t.x.dim() != terms_[0].x.dim())
            throw Error("ProductVector: terms from different fibers");
}

ProductVector ProductVector::single(std::shared_ptr<const AdditiveForm> form, const StepPath& x, cplx lambda) {
    return ProductVector(std::move(form), {Term{lambda, x}});
}

ProductVector ProductVector::coalesced() const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Term& o) { return o.x == t.x; });
        if (it == out.end())
            out.push_back(t);
        else
            it->lambda += t.lambda;
    }
    return ProductVector(form_, std::move(out));
}

namespace {

void require_compatible(const ProductVector& u, const ProductVector& v) {
    if (u.form() != v.form())
        throw Error("ProductVector: vectors built on different forms");
}

}  // namespace

cplx pvec_inner(const ProductVector& u, const ProductVector& v) {
    require_compatible(u, v);
    if (u.cells() != v.cells())
        throw Error("pvec_inner: vectors in different fibers");
    const AdditiveForm& g = *u.form();
    cplx s = 0.0;
    for (const auto& a : u.terms())
        for (const auto& b : v.terms())
            s += a.lambda * std::conj(b.lambda) * std::exp(g(a.x, b.x));
    return s;
}

Matrix pvec_gram(std::span<const ProductVector> vs) {
    const std::size_t n = vs.size();
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    parallel_for(n * n, [&](std::size_t idx) {
        m(static_cast<Eigen::Index>(idx / n), static_cast<Eigen::Index>(idx % n)) = pvec_inner(vs[idx / n], vs[idx % n]);
    });
    return m;
}

ProductVector multiply(const ProductVector& u, const ProductVector& v, const DefectTable& psi) {
    require_compatible(u, v);
    std::vector<ProductVector::Term> out;
    out.reserve(u.terms().size() * v.terms().size());
    for (const auto& a : u.terms())
        for (const auto& b : v.terms())
            out.push_back({a.lambda * b.lambda * std::exp(-psi(a.x, b.x)), concat_box(a.x, b.x)});
    return ProductVector(u.form(), std::move(out)).coalesced();
}

double multiplicativity_residual(const ProductVector& u1, const ProductVector& v1, const ProductVector& u2,
                                 const ProductVector& v2, const DefectTable& psi) {
    const cplx lhs = pvec_inner(multiply(u1, v1, psi), multiply(u2, v2, psi));
    const cplx rhs = pvec_inner(u1, u2) * pvec_inner(v1, v2);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double associativity_residual(const ProductVector& u, const ProductVector& v, const ProductVector& w,
                              const DefectTable& psi) {
    const ProductVector a = multiply(multiply(u, v, psi), w, psi);
    const ProductVector b = multiply(u, multiply(v, w, psi), psi);
    double worst = 0.0;
    auto coeff = [](const ProductVector& p, const StepPath& x) {
        for (const auto& t : p.terms())
            if (t.x == x)
                return t.lambda;
        return cplx(0.0);
    };
    for (const auto& t : a.terms())
        worst = std::max(worst, std::abs(t.lambda - coeff(b, t.x)));
    for (const auto& t : b.terms())
        worst = std::max(worst, std::abs(t.lambda - coeff(a, t.x)));
    return worst;
}

DefectTable iso_defect(std::shared_ptr<const Logarithm> log) {
    return DefectTable::from_function([log](const StepPath& x, const StepPath& y) {
        return log->rho(concat_box(x, y)) - log->rho(x) - log->rho(y);
    });
}

ExpSpanVector standard_iso(const Logarithm& log, const ProductVector& u) {
    if (u.form()->kind() != FormKind::Inner || log.form().kind() != FormKind::Inner)
        throw Error("standard_iso: requires the coordinatized (inner) form");
    std::vector<ExpSpanVector::Term> out;
    out.reserve(u.terms().size());
    for (const auto& t : u.terms())
        out.push_back({t.lambda * std::exp(log.rho(t.x)), log.log(t.x)});
    return ExpSpanVector(std::move(out));
}

double iso_isometry_residual(const Logarithm& log, const ProductVector& u, const ProductVector& v) {
    const cplx want = pvec_inner(u, v);
    const cplx got = exp_inner(standard_iso(log, u), standard_iso(log, v));
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double iso_multiplicativity_residual(const Logarithm& log, const ProductVector& u, const ProductVector& v,
                                     std::span<const ExpSpanVector> probes) {
    auto shared = std::make_shared<const Logarithm>(log);
    const ExpSpanVector a = standard_iso(log, multiply(u, v, iso_defect(shared)));
    const ExpSpanVector b = exp_multiply(standard_iso(log, u), standard_iso(log, v));
    double worst = 0.0;
    for (const auto& p : probes) {
        const cplx pa = exp_inner(a, p);
        worst = std::max(worst, std::abs(pa - exp_inner(b, p)) / std::max(1.0, std::abs(pa)));
    }
    return worst;
}

}  // namespace pathspace
