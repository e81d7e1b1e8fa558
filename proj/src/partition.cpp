#include "pathspace/partition.hpp"

#include <algorithm>
#include <iterator>

namespace pathspace {

Partition::Partition(TimeGrid grid, std::vector<int> cuts) : grid_(grid), cuts_(std::move(cuts)) {
    if (cuts_.size() < 2 || cuts_.front() != 0)
        throw Error("Partition: cuts must start at 0 and contain at least one cell");
    for (std::size_t k = 1; k < cuts_.size(); ++k)
        if (cuts_[k] <= cuts_[k - 1])
            throw Error("Partition: cuts must be strictly increasing");
}

Partition Partition::uniform(const TimeGrid& grid, int total_cells, int pieces) {
    if (pieces < 1 || total_cells % pieces != 0)
        throw Error("Partition::uniform: " + std::to_string(pieces) +
                    " equal pieces are not representable on the grid");
    std::vector<int> cuts(static_cast<std::size_t>(pieces) + 1);
    const int w = total_cells / pieces;
    for (int k = 0; k <= pieces; ++k)
        cuts[k] = k * w;
    return Partition(grid, std::move(cuts));
}

Partition Partition::dyadic(const TimeGrid& grid, int total_cells, int level) {
    if (level < 0 || level > 30)
        throw Error("Partition::dyadic: level out of range");
    return uniform(grid, total_cells, 1 << level);
}

double Partition::mesh() const noexcept {
    int m = 0;
    for (std::size_t k = 1; k < cuts_.size(); ++k)
        m = std::max(m, cuts_[k] - cuts_[k - 1]);
    return grid_.time(m);
}

bool Partition::refined_by(const Partition& finer) const {
    if (finer.total_cells() != total_cells())
        return false;
    return std::includes(finer.cuts_.begin(), finer.cuts_.end(), cuts_.begin(), cuts_.end());
}

Partition Partition::dyadic_refine() const {
    std::vector<int> cuts{0};
    for (std::size_t k = 1; k < cuts_.size(); ++k) {
        const int a = cuts_[k - 1], b = cuts_[k];
        if (b - a >= 2)
            cuts.push_back(a + (b - a) / 2);
        cuts.push_back(b);
    }
    return Partition(grid_, std::move(cuts));
}

Partition Partition::common_refinement(const Partition& other) const {
    if (other.total_cells() != total_cells())
        throw Error("Partition: refinement of partitions of different intervals");
    std::vector<int> cuts;
    std::set_union(cuts_.begin(), cuts_.end(), other.cuts_.begin(), other.cuts_.end(),
                   std::back_inserter(cuts));
    return Partition(grid_, std::move(cuts));
}

}  // namespace pathspace
