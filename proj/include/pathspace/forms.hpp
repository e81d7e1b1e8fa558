#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathspace/linalg.hpp"
#include "pathspace/step_path.hpp"

namespace pathspace {

/// Sampled function gamma(a, b) of two reals, evaluated by bilinear
/// interpolation on a rectangular table. Whether the interpolant is
/// conditionally positive definite is for the caller to check (cpd_check).
class KernelTable {
public:
    KernelTable(std::vector<double> xs, std::vector<double> ys, Matrix values);

    cplx operator()(double a, double b) const;
    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }
    const Matrix& values() const noexcept { return values_; }

private:
    std::vector<double> xs_, ys_;
    Matrix values_;
};

enum class FormKind { Inner, Gaussian, Poisson, GammaKernel, Custom };

std::string to_string(FormKind kind);
FormKind form_kind_from_string(const std::string& name);

/// Additive form g on pairs of same-length paths, evaluated as a cell sum
/// on the shared grid:
///   Inner:    h * sum <x_k, y_k>
///   Gaussian: -c * h * sum (x_k - y_k)^2
///   Poisson:  c * h * sum (exp(i h0 (x_k - y_k)) - 1)
///   Gamma:    h * sum gamma(x_k, y_k)
/// Custom forms wrap an arbitrary callable (used for perturbed forms).
class AdditiveForm {
public:
    using Fn = std::function<cplx(const StepPath&, const StepPath&)>;

    static AdditiveForm inner();
    static AdditiveForm gaussian(double c);
    static AdditiveForm poisson(double c, double h0);
    static AdditiveForm gamma(std::shared_ptr<const KernelTable> table);
    static AdditiveForm custom(Fn fn, std::string name = "custom");

    FormKind kind() const noexcept { return kind_; }
    double c() const noexcept { return c_; }
    double h0() const noexcept { return h0_; }
    const std::shared_ptr<const KernelTable>& table() const noexcept { return table_; }
    const std::string& name() const noexcept { return name_; }

    /// True for forms that need d = 1 real-valued cells.
    bool real_only() const noexcept;

    cplx operator()(const StepPath& x, const StepPath& y) const;

private:
    AdditiveForm() = default;

    FormKind kind_ = FormKind::Inner;
    double c_ = 1.0;
    double h0_ = 1.0;
    std::shared_ptr<const KernelTable> table_;
    Fn fn_;
    std::string name_ = "inner";
};

cplx eval_form(const AdditiveForm& form, const StepPath& x, const StepPath& y);

/// G_ij = g(x_i, x_j), assembled in parallel.
Matrix gram(const AdditiveForm& form, std::span<const StepPath> samples);
/// G_ij = g(x_i, y_j).
Matrix cross_gram(const AdditiveForm& form, std::span<const StepPath> xs, std::span<const StepPath> ys);

/// Minimum eigenvalue of the Gram projected onto sum-zero coefficient
/// vectors; nonnegative within tolerance certifies CPD on the sample.
/// Throws when the Gram is not Hermitian to 1e-12 * max(1, |G|_max).
double cpd_check(const AdditiveForm& form, std::span<const StepPath> samples);

/// min over n in roots of the minimum eigenvalue of [exp(G_ij / n)].
/// Throws on exponent overflow (|G_ij| / n > 700).
double pd_root_check(const AdditiveForm& form, std::span<const StepPath> samples,
                     std::span<const double> roots);

/// A pair (x, y) with x in P(s), y in P(t); s and t fixed across a sample.
struct PathPair {
    StepPath x;
    StepPath y;
};

/// R_ij = g(x_i y_i, x_j y_j) - g(x_i, x_j) - g(y_i, y_j).
Matrix additivity_residual_matrix(const AdditiveForm& form, std::span<const PathPair> pairs);

/// max |R_ik - R_il - R_jk + R_jl|; zero iff R splits as psi_i + conj psi_k.
double additivity_split_check(const AdditiveForm& form, std::span<const PathPair> pairs);

/// Defect psi on sampled pairs (x, y), with an optional fallback callable
/// for pairs outside the table. `zero()` is the defect of the built-in forms.
class DefectTable {
public:
    struct Entry {
        StepPath x;
        StepPath y;
        cplx psi;
    };
    using Fn = std::function<cplx(const StepPath&, const StepPath&)>;

    DefectTable() = default;
    DefectTable(std::vector<Entry> entries, std::size_t anchor);

    static DefectTable zero();
    static DefectTable from_function(Fn fn);

    std::optional<cplx> lookup(const StepPath& x, const StepPath& y) const;
    /// Throws when neither the table nor the fallback covers (x, y).
    cplx operator()(const StepPath& x, const StepPath& y) const;

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t anchor() const noexcept { return anchor_; }

private:
    std::vector<Entry> entries_;
    std::size_t anchor_ = 0;
    Fn fallback_;
};

/// Gauge Im psi(anchor) = 0: psi(anchor) = R_aa / 2, psi_i = R_ia - psi(anchor).
/// Throws when the split residual exceeds tol.
DefectTable defect_extract(const AdditiveForm& form, std::span<const PathPair> pairs, std::size_t anchor,
                           double tol = kDefaultTol);

}  // namespace pathspace
