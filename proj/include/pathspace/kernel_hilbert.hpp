#pragma once

#include <optional>
#include <span>

#include "pathspace/forms.hpp"

namespace pathspace {

/// Formal difference [plus] - [minus] of two same-length paths: an element
/// of the centered Gram space H_t of the form.
struct CenteredVector {
    StepPath plus;
    StepPath minus;

    CenteredVector(StepPath p, StepPath m);
    int cells() const noexcept { return plus.cells(); }
};

/// <[x1]-[y1], [x2]-[y2]> = g(x1,x2) - g(x1,y2) - g(y1,x2) + g(y1,y2).
/// When the lengths differ the shorter pair is right-extended by `filler`,
/// whose length must make up the difference.
cplx diff_inner(const AdditiveForm& form, const CenteredVector& v1, const CenteredVector& v2,
                const std::optional<StepPath>& filler = std::nullopt);

/// Right multiplication of both components by e: [x e] - [y e].
CenteredVector right_extend(const CenteredVector& v, const StepPath& e);

/// Left multiplication by u: [u x] - [u y] (realizes U_t on differences).
CenteredVector shift_apply(const StepPath& u, const CenteredVector& v);

/// Gram of a family of centered vectors of equal length.
Matrix centered_gram(const AdditiveForm& form, std::span<const CenteredVector> family);

/// Sample for the embedding identity: x1, x2, y1, y2 in P(s); z1, z2 in P(t-s).
struct EmbedSample {
    StepPath x1, x2, y1, y2, z1, z2;
};

/// max |<[x1 e]-[x2 e], [y1 z1]-[y2 z2]>_t - <[x1]-[x2], [y1]-[y2]>_s|.
double embed_check_45(const AdditiveForm& form, std::span<const EmbedSample> samples, const StepPath& filler);

struct PurityResult {
    double orthogonality = 0.0;  ///< max |<[x1]-[x2], U_t([y1]-[y2])>|
    double span = 0.0;           ///< max squared-norm defect of the N_t + U_t H decomposition
};

/// Orthogonality of N_t and U_t H on x-pairs in P(t) against y-pairs in P(r)
/// (evaluated as <[x1 f]-[x2 f], [e y1]-[e y2]> with fillers e in P(t),
/// f in P(r)), and the decomposition [x1]-[x2] = ([a1]-[a2]) + U_t([b1]-[b2])
/// for pairs in P(r_span), r_span > t, with a_i = x_i(0,t), b_i = x_i(t, r_span).
struct PuritySample {
    std::vector<CenteredVector> heads;       ///< pairs in P(t)
    std::vector<CenteredVector> tails;       ///< pairs in P(r)
    std::vector<CenteredVector> long_pairs;  ///< pairs in P(r_span), r_span > t
};

PurityResult purity_check_413(const AdditiveForm& form, int t_cells, const PuritySample& sample,
                              const StepPath& filler_t, const StepPath& filler_r);

/// In the L^2 (Inner form) coordinatization [x]-[y] is the vector x - y.
StepPath coordinates(const CenteredVector& v);

}  // namespace pathspace
