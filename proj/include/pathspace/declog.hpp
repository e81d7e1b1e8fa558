#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pathspace/linalg.hpp"
#include "pathspace/partition.hpp"
#include "pathspace/step_path.hpp"

namespace pathspace {

/// lambda exp(f) in the exponential model, f of length t.
struct DecompVector {
    cplx lambda;
    StepPath f;

    DecompVector(cplx l, StepPath path);
    int cells() const noexcept { return f.cells(); }
};

/// lambda conj(mu) e^{<f, h>}.
cplx dv_inner(const DecompVector& u, const DecompVector& v);
double dv_norm_sq(const DecompVector& u);
/// (lambda exp f)(mu exp h) = lambda mu exp(f ⊞ h).
DecompVector dv_multiply(const DecompVector& a, const DecompVector& b);

/// a with a b = x; throws unless the tail of x's path equals b's path within tol.
DecompVector left_divide(const DecompVector& x, const DecompVector& b, double tol = kDefaultTol);

/// Left-coherent section t -> lambda_t exp(f|(0,t]) over the horizon of f;
/// lambdas[k-1] is the scalar at t = k h.
class DecompSection {
public:
    DecompSection(StepPath f, std::vector<cplx> lambdas);
    /// Every lambda_t = 1.
    explicit DecompSection(StepPath f);

    /// e_t = e^{-|eps|^2_(0,t] / 2} exp(eps 1_(0,t]); unit norm for all t.
    static DecompSection reference(const StepPath& eps);
    static DecompSection reference(const TimeGrid& grid, int horizon_cells, std::span<const cplx> eps);
    static DecompSection vacuum(const TimeGrid& grid, int horizon_cells, int dim);

    const StepPath& path() const noexcept { return f_; }
    const std::vector<cplx>& lambdas() const noexcept { return lambdas_; }
    int horizon() const noexcept { return f_.cells(); }
    const TimeGrid& grid() const noexcept { return f_.grid(); }
    int dim() const noexcept { return f_.dim(); }

    /// x_t for t = cells * h.
    DecompVector at(int cells) const;
    /// Propagator x(r, s) = (lambda_s / lambda_r) exp(f|(r,s]).
    DecompVector between(int from, int to) const;

private:
    StepPath f_;
    std::vector<cplx> lambdas_;
};

/// lambda_t := lambda_t / <x_t, e_t>, so that <x_t, e_t> = 1 for all t.
DecompSection de_normalize(const DecompSection& x, const DecompSection& e);
/// lambda_t := (lambda_t / |lambda_t|) / |exp(f_t)|, so that |x_t| = 1.
DecompSection unit_normalize(const DecompSection& x);

struct ModulusCurve {
    std::vector<double> values;  ///< |<x_t, y_t>|, t = h, 2h, ...
    double max_increase;         ///< largest step up (monotonicity violation)
    double first_gap;            ///< 1 - values[0]
};

/// t -> |<x_t, y_t>| for unit sections; throws when a norm deviates from 1 by more than tol.
ModulusCurve modulus_curve(const DecompSection& x, const DecompSection& y, double tol = kDefaultTol);

struct NormMonotone {
    double max_decrease;  ///< largest drop of |x_t| along the grid
    double first_gap;     ///< |x_h| - 1
};

/// Checks |x_t| nondecreasing for x in D^e (verified against e within tol).
NormMonotone norm_monotone_check(const DecompSection& x, const DecompSection& e, double tol = kDefaultTol);

/// RHS - LHS of
///   |<x_s,y_s> - <x_t,y_t>| <= |x_T||y_T| sqrt((|x_t|^2-|x_s|^2)(|y_t|^2-|y_s|^2)),
/// with s < t <= T given in cells.
double ineq_76_check(const DecompSection& x, const DecompSection& y, int s, int t, int T);

/// F = <x, y> |e|^2 / (<x, e><e, y>), the normalized inner product.
cplx normalized_ratio(const DecompVector& x, const DecompVector& y, const DecompVector& e);

/// sum over I in P of (<x_I, y_I> - 1), interval factors normalized against
/// e_I; x, y, e are the vectors at t = P.total_cells().
cplx B_partition(const DecompVector& x, const DecompVector& y, const DecompSection& e, const Partition& p);

/// [B_P(x_i, x_j)].
Matrix B_gram(std::span<const DecompVector> xs, const DecompSection& e, const Partition& p);

/// min eig of B_P - B_Q over the samples for P <= Q.
double B_refinement_check(std::span<const DecompVector> xs, const DecompSection& e, const Partition& coarse,
                          const Partition& fine);

struct ConvergenceRow {
    int level;
    int pieces;
    double mesh;
    cplx value;
    double gap;  ///< |value - oracle|
};

struct BLimit {
    cplx estimate;
    cplx oracle;
    std::vector<ConvergenceRow> table;
};

/// Dyadic schedule P_n = 2^n equal cells, n = 0..levels; throws when the
/// grid cannot hold 2^levels on-grid pieces.
BLimit B_limit(const DecompVector& x, const DecompVector& y, const DecompSection& e, int levels);

/// int_0^t <f - eps, h - eps>, the model value of L^e.
cplx model_log_oracle(const DecompVector& x, const DecompVector& y, const DecompSection& e);

/// L^e(t; x, y) by continuous branch tracking of the normalized ratio along
/// the prefixes s -> x_s, y_s, e_s. Cells are split (up to max_refine times)
/// when consecutive ratios move by 1 or more.
cplx le_branch(const DecompVector& x, const DecompVector& y, const DecompSection& e, int max_refine = 4);

struct LeGram {
    Matrix le;       ///< [L^e(t; x_i, x_j)]
    Matrix l2;       ///< [<f_i - eps, f_j - eps>]
    double min_eig;  ///< of le
    double l2_min_eig;
    double max_diff;  ///< max |le - l2|
};

LeGram le_pd_gram(std::span<const DecompVector> xs, const DecompSection& e);

/// Max alternation residual of D_ij = L^{e2}(x_i,x_j) - L^{e1}(x_i,x_j), which
/// vanishes iff D splits as phi(x_i) + conj phi(x_j).
double rebase_check(const DecompSection& e1, const DecompSection& e2, std::span<const DecompVector> xs);

/// psi_s(t; y) for y of length t, by branch tracking
///   |<e', e_r>| <y_r, e_r> / (<y_r, e'_r> <e'_r, e_r>),  e' = e(s, s + r),
/// over r in (0, t].
cplx psi_s(const DecompSection& e, int s, const DecompVector& y);

struct PsiPair {
    DecompVector x1, x2;  ///< length s
    DecompVector y1, y2;  ///< length t
};

/// max |L(s+t; x1 y1, x2 y2) - L(s; x1, x2) - L(t; y1, y2) - psi_s(t; y1) - conj psi_s(t; y2)|.
double psi_s_check(const DecompSection& e, std::span<const PsiPair> pairs);

struct ContinuitySlack {
    double first;   ///< sqrt((|u_s|^2-1)(|v_s|^2-1)) - |L(s)|
    double second;  ///< sqrt((|u_t|^2-|u_s|^2)(|v_t|^2-|v_s|^2)) - |L(t) - L(s)|
};

/// Slacks of the continuity estimates for u, v in D^e and s < t (cells).
ContinuitySlack continuity_slack(const DecompSection& u, const DecompSection& v, const DecompSection& e, int s, int t);

struct Lemma911Row {
    std::size_t length;
    cplx product;
    cplx sum;
    double l2_sq;  ///< |z|_2^2
    double gap;    ///< |product - e^zeta|
    double bound;  ///< e^{Re sum}(e^{|z|^2} - 1) + |e^{sum} - e^zeta|
};

struct Lemma911Report {
    std::vector<Lemma911Row> rows;
    bool within_bound;
};

/// Products prod (1 + z(k)) along a net of sequences, each checked against
/// the estimate |prod - e^zeta| <= e^{Re sum z}(e^{|z|_2^2} - 1) + |e^{sum z} - e^zeta|
/// (requires |z(k)| <= 1/2).
Lemma911Report lemma911(std::span<const std::vector<cplx>> net, cplx zeta);

}  // namespace pathspace
