#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pathspace/linalg.hpp"
#include "pathspace/step_path.hpp"

namespace pathspace {

/// Finite linear combination sum_k lambda_k exp(f_k) of exponential vectors
/// in the symmetric Fock space over L^2 paths (finite-dimensional vectors
/// enter as StepPath::vector). All inner products are exact.
class ExpSpanVector {
public:
    struct Term {
        cplx lambda;
        StepPath f;
    };

    ExpSpanVector() = default;
    explicit ExpSpanVector(std::vector<Term> terms);
    static ExpSpanVector exp(const StepPath& f, cplx lambda = 1.0);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    ExpSpanVector& add(const ExpSpanVector& other, cplx scale = 1.0);
    ExpSpanVector scaled(cplx scale) const;

private:
    std::vector<Term> terms_;
};

/// sum lambda_k conj(mu_l) e^{<f_k, h_l>}.
cplx exp_inner(const ExpSpanVector& u, const ExpSpanVector& v);
double exp_norm_sq(const ExpSpanVector& u);

/// exp(f) exp(g) = exp(f ⊞ g), extended bilinearly.
ExpSpanVector exp_multiply(const ExpSpanVector& u, const ExpSpanVector& v);

/// G_kl = e^{<f_k, f_l>}.
Matrix exp_gram(std::span<const StepPath> fs);

/// Basis of the degree-n symmetric tensors over C^d: multisets of {0..d-1}
/// given as occupation counts, in lexicographic order of sorted index lists.
const std::vector<std::vector<int>>& multisets(int d, int n);

/// Element of the Fock space truncated at degree N, in the orthonormal
/// multiset basis of each symmetric power.
class TruncFockVector {
public:
    TruncFockVector(int d, int max_degree);
    static TruncFockVector vacuum(int d, int max_degree);

    int dim() const noexcept { return d_; }
    int max_degree() const noexcept { return n_max_; }
    const std::vector<std::vector<int>>& basis(int degree) const { return multisets(d_, degree); }
    std::span<const cplx> degree(int n) const;
    std::span<cplx> degree(int n);

    cplx coeff(const std::vector<int>& counts) const;
    void set(const std::vector<int>& counts, cplx value);

    double degree_norm_sq(int n) const;
    double norm_sq() const;

    /// Norm squared of the part of the exact vector beyond max_degree, when
    /// the vector was produced by a truncation (0 otherwise).
    double tail_bound() const noexcept { return tail_; }
    void set_tail_bound(double t) noexcept { tail_ = t; }

    TruncFockVector& axpy(cplx scale, const TruncFockVector& other);

private:
    int d_;
    int n_max_;
    std::vector<std::vector<cplx>> comps_;
    double tail_ = 0.0;
};

cplx trunc_inner(const TruncFockVector& a, const TruncFockVector& b);

/// Degree-<=N truncation of exp(xi); tail_bound = sum_{n>N} |xi|^{2n}/n!.
TruncFockVector trunc_exp(std::span<const cplx> xi, int max_degree);

/// Coordinates of a path in the orthonormal basis h^{-1/2} 1_cell e_i.
std::vector<cplx> orthonormal_coords(const StepPath& f);

/// Truncation of an exponential span (coordinates via orthonormal_coords);
/// tail_bound is the triangle-inequality bound on the discarded norm.
TruncFockVector to_trunc(const ExpSpanVector& v, int max_degree);

/// f_zeta(xi) = <exp(xi), zeta> = sum_n n!^{-1/2} <xi^n, zeta_n>.
cplx pair_entire(const TruncFockVector& zeta, std::span<const cplx> xi);

/// max over s in S of |f_zeta(s)|.
double strong_span_witness(std::span<const std::vector<cplx>> samples, const TruncFockVector& zeta);

/// Weyl operator: exp(eta) -> e^{-|zeta|^2/2 - <eta, zeta>} exp(zeta + eta).
ExpSpanVector weyl_apply(const StepPath& zeta, const ExpSpanVector& v);

}  // namespace pathspace
