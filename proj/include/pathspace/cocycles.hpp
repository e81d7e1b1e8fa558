#pragma once

#include <span>
#include <vector>

#include "pathspace/forms.hpp"

namespace pathspace {

enum class CocycleConvention {
    /// phi_{s+t}(x) = phi_s(x) + phi_t(x + s)
    ForwardTranslate,
    /// phi_{s+t} - phi_s - U_s phi_t = 0 (or = Gamma(s,t) for a trivialization)
    Shift,
};

/// Family t -> phi_t of grid functions indexed by t = j*h, j = 1..count.
/// Forward-translate members are functions on the half-line truncated to the
/// cells where they are known; shift-convention members are zero beyond
/// their stored length.
class CocycleFamily {
public:
    CocycleFamily(TimeGrid grid, int dim, CocycleConvention convention, std::vector<StepPath> members);

    /// Shift-convention family of zero members phi_t supported in (0, t].
    static CocycleFamily zero(const TimeGrid& grid, int dim, int count);
    /// phi_t = f(. + t) - f, the coboundary of a grid function f.
    static CocycleFamily difference(const StepPath& f, int count);

    const TimeGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return dim_; }
    CocycleConvention convention() const noexcept { return convention_; }
    int count() const noexcept { return static_cast<int>(members_.size()); }
    /// phi_t for t = cells * h.
    const StepPath& at(int cells) const;
    const std::vector<StepPath>& members() const noexcept { return members_; }

    /// Shift convention with phi_t vanishing beyond t.
    bool support_normalized() const noexcept;

private:
    TimeGrid grid_;
    int dim_;
    CocycleConvention convention_;
    std::vector<StepPath> members_;
};

/// Max residual of the defining cocycle equation over all on-grid s, t.
double cocycle1_residual(const CocycleFamily& fam);

/// Primitive f with phi_t = f(. + t) - f, built by h-step telescoping and
/// anchored at f(first cell) = anchor. Throws when the residual precondition
/// fails or validation exceeds 10 * tol.
StepPath solve_cocycle1(const CocycleFamily& fam, double tol = kDefaultTol, cplx anchor = 0.0);
/// Same, anchored componentwise (anchor has one entry per dimension).
StepPath solve_cocycle1(const CocycleFamily& fam, double tol, std::span<const cplx> anchor);

/// Gamma(s, t) for on-grid s, t >= h with s + t <= horizon; each entry is a
/// grid vector of length s + t.
class GammaTable {
public:
    GammaTable(TimeGrid grid, int dim, int horizon, std::vector<StepPath> entries);

    const TimeGrid& grid() const noexcept { return grid_; }
    int dim() const noexcept { return dim_; }
    int horizon() const noexcept { return horizon_; }
    const StepPath& at(int s, int t) const;
    const std::vector<StepPath>& entries() const noexcept { return entries_; }

    static std::size_t index(int horizon, int s, int t);

private:
    TimeGrid grid_;
    int dim_;
    int horizon_;
    std::vector<StepPath> entries_;
};

/// Gamma(s,t) = e_s ⊞ e_t - e_{s+t} in coordinates.
GammaTable gamma_of_section(const PathSection& e);

/// max ||Gamma(r+s,t) - Gamma(r,s+t) - U_r Gamma(s,t) + Gamma(r,s)||_max.
double cocycle2_residual(const GammaTable& g);

/// max |Gamma(s,t2)(k) - Gamma(s,t1)(k)| over cells k with (k+1)h < t1 < t2.
double stabilization_residual(const GammaTable& g);

/// max ||phi_{s+t} - phi_s - U_s phi_t - Gamma(s,t)||_max over s + t <= count.
double coboundary_residual(const CocycleFamily& phi, const GammaTable& g);

/// Intermediate families of the trivialization, exposed for inspection.
struct GammaTrivialization {
    CocycleFamily phi;  ///< shift convention, support-normalized
    std::vector<StepPath> u;  ///< u_t, t = 1..count, on the cells where it is defined
    CocycleFamily v;    ///< v_t(lambda) = u_t(lambda + t), forward-translate
    StepPath w;         ///< primitive of v
    double residual;    ///< coboundary_residual(phi, Gamma)
};

/// Trivializes Gamma: u_s = -Gamma(s, T) for stabilized T, v_t = u_t(. + t),
/// w = solve_cocycle1(v), phi_t = (u_t - w) on (0, t]. Produces phi_t for
/// t up to (horizon - 1) / 3 grid steps. Throws when the 2-cocycle or
/// stabilization checks fail, or when the result misses 10 * tol.
GammaTrivialization trivialize_gamma_full(const GammaTable& g, double tol = kDefaultTol, cplx anchor = 0.0);
CocycleFamily trivialize_gamma(const GammaTable& g, double tol = kDefaultTol, cplx anchor = 0.0);

/// The log map and rho gauge attached to a reference section and a
/// trivialization, in the coordinatized (Inner form) path space:
///   log(z) = z - e_t - phi_t,
///   rho(x) = <x - e_t, phi_t> + g(x, e_t) - (g(e_t, e_t) + ||phi_t||^2) / 2.
class Logarithm {
public:
    Logarithm(AdditiveForm form, PathSection section, CocycleFamily phi);

    StepPath log(const StepPath& z) const;
    cplx rho(const StepPath& x) const;

    const AdditiveForm& form() const noexcept { return form_; }
    const PathSection& section() const noexcept { return section_; }
    const CocycleFamily& phi() const noexcept { return phi_; }

private:
    AdditiveForm form_;
    PathSection section_;
    CocycleFamily phi_;
};

StepPath build_log(const AdditiveForm& form, const PathSection& e, const CocycleFamily& phi, const StepPath& z);
cplx rho_eval(const AdditiveForm& form, const PathSection& e, const CocycleFamily& phi, const StepPath& x);

/// Unit-modulus multiplier c(s, t) on grid pairs s, t >= h, s + t <= horizon.
class MultiplierTable {
public:
    MultiplierTable(TimeGrid grid, int horizon, std::vector<cplx> values);

    template <class F>
    static MultiplierTable tabulate(const TimeGrid& grid, int horizon, F&& fn) {
        std::vector<cplx> v(GammaTable::index(horizon, horizon - 1, 1) + 1);
        for (int s = 1; s < horizon; ++s)
            for (int t = 1; s + t <= horizon; ++t)
                v[GammaTable::index(horizon, s, t)] = fn(grid.time(s), grid.time(t));
        return MultiplierTable(grid, horizon, std::move(v));
    }

    const TimeGrid& grid() const noexcept { return grid_; }
    int horizon() const noexcept { return horizon_; }
    cplx at(int s, int t) const;

private:
    TimeGrid grid_;
    int horizon_;
    std::vector<cplx> values_;
};

/// max |c(r, s+t) c(s, t) - c(r+s, t) c(r, s)|.
double multiplier_residual(const MultiplierTable& c);

/// u with c(s,t) = u(s) u(t) / u(s+t), anchored at u(h) = 1; returned as
/// u[k-1] = u(k h), k = 1..horizon. Unique up to a character exp(i a t).
std::vector<cplx> trivialize_multiplier(const MultiplierTable& c, double tol = kDefaultTol);

/// max |c(s,t) - u(s) u(t) / u(s+t)|.
double multiplier_reconstruction_residual(const MultiplierTable& c, const std::vector<cplx>& u);

}  // namespace pathspace
