#pragma once

#include <random>
#include <vector>

#include "pathspace/step_path.hpp"

namespace testutil {

using pathspace::cplx;
using pathspace::StepPath;
using pathspace::TimeGrid;

inline cplx rand_c(std::mt19937_64& rng, double half = 0.5) {
    std::uniform_real_distribution<double> u(-half, half);
    const double re = u(rng);
    return {re, u(rng)};
}

inline StepPath random_path(std::mt19937_64& rng, const TimeGrid& g, int cells, int dim, double half = 0.5) {
    std::vector<cplx> v(static_cast<std::size_t>(cells) * dim);
    for (auto& c : v)
        c = rand_c(rng, half);
    return StepPath(g, dim, std::move(v));
}

inline StepPath random_real(std::mt19937_64& rng, const TimeGrid& g, int cells, double half = 1.0) {
    std::uniform_real_distribution<double> u(-half, half);
    std::vector<double> v(static_cast<std::size_t>(cells));
    for (auto& x : v)
        x = u(rng);
    return StepPath::real(g, v);
}

}  // namespace testutil
