#pragma once

#include <vector>

#include "pathspace/grid.hpp"

namespace pathspace {

/// Ordered on-grid cut list 0 = t_0 < t_1 < ... < t_n = t of (0, t],
/// stored as cell indices.
class Partition {
public:
    Partition(TimeGrid grid, std::vector<int> cuts);

    /// n equal cells of (0, t]; t must split into n on-grid pieces.
    static Partition uniform(const TimeGrid& grid, int total_cells, int pieces);
    /// 2^level equal cells.
    static Partition dyadic(const TimeGrid& grid, int total_cells, int level);

    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<int>& cuts() const noexcept { return cuts_; }
    int total_cells() const noexcept { return cuts_.back(); }
    int pieces() const noexcept { return static_cast<int>(cuts_.size()) - 1; }
    double mesh() const noexcept;

    /// Cut-set inclusion: *this <= finer.
    bool refined_by(const Partition& finer) const;
    /// Halves every cell whose length is at least two grid cells.
    Partition dyadic_refine() const;
    /// Union of cut sets.
    Partition common_refinement(const Partition& other) const;

private:
    TimeGrid grid_;
    std::vector<int> cuts_;
};

}  // namespace pathspace
