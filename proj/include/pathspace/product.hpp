#pragma once

#include <memory>
#include <vector>

#include "pathspace/cocycles.hpp"
#include "pathspace/fock.hpp"

namespace pathspace {

/// Formal span sum_k lambda_k F_t(x_k) in the product structure E(t)
/// generated by an additive form; <F_t(x), F_t(y)> = e^{g(x, y)}.
class ProductVector {
public:
    struct Term {
        cplx lambda;
        StepPath x;
    };

    ProductVector(std::shared_ptr<const AdditiveForm> form, std::vector<Term> terms);
    static ProductVector single(std::shared_ptr<const AdditiveForm> form, const StepPath& x, cplx lambda = 1.0);

    const std::shared_ptr<const AdditiveForm>& form() const noexcept { return form_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    int cells() const noexcept { return terms_.front().x.cells(); }

    /// Merges terms whose paths compare exactly equal.
    ProductVector coalesced() const;

private:
    std::shared_ptr<const AdditiveForm> form_;
    std::vector<Term> terms_;
};

cplx pvec_inner(const ProductVector& u, const ProductVector& v);
Matrix pvec_gram(std::span<const ProductVector> vs);

/// F_s(x) F_t(y) = e^{-psi(x, y)} F_{s+t}(x ⊞ y), extended bilinearly and
/// coalesced.
ProductVector multiply(const ProductVector& u, const ProductVector& v, const DefectTable& psi);

/// |<u1 v1, u2 v2> - <u1, u2><v1, v2>|.
double multiplicativity_residual(const ProductVector& u1, const ProductVector& v1, const ProductVector& u2,
                                 const ProductVector& v2, const DefectTable& psi);

/// Max coefficient difference between (u v) w and u (v w) after coalescing.
double associativity_residual(const ProductVector& u, const ProductVector& v, const ProductVector& w,
                              const DefectTable& psi);

/// The defect rho(xy) - rho(x) - rho(y) under which the rescaled vectors
/// G_t(x) = e^{-rho(x)} F_t(x) multiply exactly.
DefectTable iso_defect(std::shared_ptr<const Logarithm> log);

/// W: F_t(x) -> e^{rho(x)} exp(log x), extended linearly.
ExpSpanVector standard_iso(const Logarithm& log, const ProductVector& u);

/// |<W u, W v> - <u, v>| / max(1, |<u, v>|).
double iso_isometry_residual(const Logarithm& log, const ProductVector& u, const ProductVector& v);

/// Compares W(u v) with W(u) W(v) through their pairings with probes p:
/// max |<W(uv), p> - <W(u)W(v), p>| / max(1, |<W(uv), p>|), where uv uses
/// iso_defect.
double iso_multiplicativity_residual(const Logarithm& log, const ProductVector& u, const ProductVector& v,
                                     std::span<const ExpSpanVector> probes);

}  // namespace pathspace
