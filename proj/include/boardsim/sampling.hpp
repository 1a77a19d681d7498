#ifndef BOARDSIM_SAMPLING_HPP
#define BOARDSIM_SAMPLING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "boardsim/rng.hpp"

namespace boardsim {

/// Draws `count` distinct indices, each successive draw proportional to the
/// weight of the indices not yet drawn (Efraimidis-Spirakis keys).
/// Zero-weight indices are only drawn once every positive weight is exhausted.
/// The returned indices are sorted ascending.
std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights,
                                                             std::size_t count, Rng& rng);

/// Draws `count` distinct indices uniformly from [0, n), sorted ascending.
std::vector<std::size_t> uniform_sample_without_replacement(std::size_t n, std::size_t count,
                                                            Rng& rng);

/**
 * Fenwick tree over non-negative weights supporting point updates and
 * proportional sampling in O(log n).
 */
class WeightTree {
public:
    explicit WeightTree(std::size_t size = 0);

    std::size_t size() const noexcept { return weights_.size(); }
    double weight(std::size_t index) const noexcept { return weights_[index]; }
    double total() const noexcept;
    std::size_t positive_count() const noexcept { return positive_; }

    void set(std::size_t index, double weight);

    /// Index i with prefix(i) <= target < prefix(i+1), skipping zero weights.
    std::size_t find(double target) const;

    /// Draws an index with probability weight / total. Requires positive_count() > 0.
    std::size_t sample(Rng& rng) const;

    /// Rebuilds the internal sums from the stored weights (clears round-off drift).
    void rebuild();

private:
    std::vector<double> weights_;
    std::vector<double> tree_;
    std::size_t positive_ = 0;
    std::size_t updates_since_rebuild_ = 0;
};

} // namespace boardsim

#endif // BOARDSIM_SAMPLING_HPP
