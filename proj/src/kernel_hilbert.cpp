#include "pathspace/kernel_hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "pathspace/parallel.hpp"

namespace pathspace {

CenteredVector::CenteredVector(StepPath p, StepPath m) : plus(std::move(p)), minus(std::move(m)) {
    if (plus.cells() != minus.cells())
        throw Error("CenteredVector: components must have equal length");
}

CenteredVector right_extend(const CenteredVector& v, const StepPath& e) {
    return CenteredVector(concat_box(v.plus, e), concat_box(v.minus, e));
}

CenteredVector shift_apply(const StepPath& u, const CenteredVector& v) {
    return CenteredVector(concat_box(u, v.plus), concat_box(u, v.minus));
}

cplx diff_inner(const AdditiveForm& form, const CenteredVector& v1, const CenteredVector& v2,
                const std::optional<StepPath>& filler) {
    if (v1.cells() != v2.cells()) {
        if (!filler)
            throw Error("diff_inner: lengths differ and no filler element was supplied");
        const bool first_short = v1.cells() < v2.cells();
        const int gap = std::abs(v1.cells() - v2.cells());
        if (filler->cells() != gap)
            throw Error("diff_inner: filler has the wrong length");
        return first_short ? diff_inner(form, right_extend(v1, *filler), v2)
                           : diff_inner(form, v1, right_extend(v2, *filler));
    }
    return form(v1.plus, v2.plus) - form(v1.plus, v2.minus) - form(v1.minus, v2.plus) +
           form(v1.minus, v2.minus);
}

Matrix centered_gram(const AdditiveForm& form, std::span<const CenteredVector> family) {
    const auto n = static_cast<Eigen::Index>(family.size());
    Matrix g(n, n);
    parallel_for(static_cast<std::size_t>(n * n), [&](std::size_t idx) {
        const auto i = static_cast<std::size_t>(idx) / family.size(), j = static_cast<std::size_t>(idx) % family.size();
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = diff_inner(form, family[i], family[j]);
    });
    return g;
}

double embed_check_45(const AdditiveForm& form, std::span<const EmbedSample> samples, const StepPath& filler) {
    double worst = 0.0;
    for (const auto& s : samples) {
        const CenteredVector left(concat_box(s.x1, filler), concat_box(s.x2, filler));
        const CenteredVector right(concat_box(s.y1, s.z1), concat_box(s.y2, s.z2));
        const cplx lhs = diff_inner(form, left, right);
        const cplx rhs = diff_inner(form, CenteredVector(s.x1, s.x2), CenteredVector(s.y1, s.y2));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

PurityResult purity_check_413(const AdditiveForm& form, int t_cells, const PuritySample& sample,
                              const StepPath& filler_t, const StepPath& filler_r) {
    if (filler_t.cells() != t_cells)
        throw Error("purity_check_413: filler_t must have length t");
    PurityResult out;
    for (const auto& head : sample.heads) {
        if (head.cells() != t_cells)
            throw Error("purity_check_413: head pairs must lie in P(t)");
        const CenteredVector left = right_extend(head, filler_r);
        for (const auto& tail : sample.tails) {
            if (tail.cells() != filler_r.cells())
                throw Error("purity_check_413: tail pairs must match filler_r's length");
            out.orthogonality = std::max(out.orthogonality,
                                         std::abs(diff_inner(form, left, shift_apply(filler_t, tail))));
        }
    }
    for (const auto& v : sample.long_pairs) {
        if (v.cells() <= t_cells)
            throw Error("purity_check_413: span pairs need length r > t");
        const StepPath a1 = propagator_cells(v.plus, 0, t_cells), a2 = propagator_cells(v.minus, 0, t_cells);
        const StepPath b1 = propagator_cells(v.plus, t_cells, v.cells());
        const StepPath b2 = propagator_cells(v.minus, t_cells, v.cells());
        const CenteredVector p(concat_box(a1, b1), concat_box(a2, b1));
        const CenteredVector q = shift_apply(filler_t, CenteredVector(b1, b2));
        auto ip = [&](const CenteredVector& a, const CenteredVector& b) { return diff_inner(form, a, b); };
        const cplx defect = ip(v, v) + ip(p, p) + ip(q, q) - 2.0 * ip(v, p).real() - 2.0 * ip(v, q).real() +
                            2.0 * ip(p, q).real();
        out.span = std::max(out.span, std::abs(defect));
    }
    return out;
}

StepPath coordinates(const CenteredVector& v) { return axpy(v.plus, -1.0, v.minus); }

}  // namespace pathspace
