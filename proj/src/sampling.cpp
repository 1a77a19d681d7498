#include "boardsim/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace boardsim {

std::vector<std::size_t> weighted_sample_without_replacement(std::span<const double> weights,
                                                             std::size_t count, Rng& rng)
{
    const std::size_t n = weights.size();
    if (count > n) {
        throw std::invalid_argument("cannot draw more items than available");
    }
    // key = ln(u) / w; the `count` largest keys form a successive weighted sample.
    // Zero weights get -inf and lose to every positive weight; ties among them
    // are broken by a second uniform key.
    struct Keyed {
        double key;
        double tie;
        std::size_t index;
    };
    std::vector<Keyed> keyed(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (weights[i] < 0.0 || !std::isfinite(weights[i])) {
            throw std::invalid_argument("sampling weights must be finite and non-negative");
        }
        double u = uniform01(rng);
        while (u == 0.0) {
            u = uniform01(rng);
        }
        const double key = weights[i] > 0.0 ? std::log(u) / weights[i]
                                            : -std::numeric_limits<double>::infinity();
        keyed[i] = {key, weights[i] > 0.0 ? 0.0 : u, i};
    }
    auto larger = [](const Keyed& a, const Keyed& b) {
        if (a.key != b.key) {
            return a.key > b.key;
        }
        if (a.tie != b.tie) {
            return a.tie > b.tie;
        }
        return a.index < b.index;
    };
    if (count < n) {
        std::nth_element(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(count),
                         keyed.end(), larger);
    }
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = keyed[i].index;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> uniform_sample_without_replacement(std::size_t n, std::size_t count,
                                                            Rng& rng)
{
    if (count > n) {
        throw std::invalid_argument("cannot draw more items than available");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + uniform_index(rng, n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

WeightTree::WeightTree(std::size_t size) : weights_(size, 0.0), tree_(size + 1, 0.0) {}

double WeightTree::total() const noexcept
{
    double sum = 0.0;
    for (std::size_t i = weights_.size(); i > 0; i -= i & (~i + 1)) {
        sum += tree_[i];
    }
    return std::max(sum, 0.0);
}

void WeightTree::set(std::size_t index, double weight)
{
    if (weight < 0.0 || !std::isfinite(weight)) {
        throw std::invalid_argument("tree weights must be finite and non-negative");
    }
    const double old = weights_[index];
    if (old == weight) {
        return;
    }
    if (old > 0.0) {
        --positive_;
    }
    if (weight > 0.0) {
        ++positive_;
    }
    weights_[index] = weight;
    if (++updates_since_rebuild_ >= 4096) {
        rebuild();
        return;
    }
    const double delta = weight - old;
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) {
        tree_[i] += delta;
    }
}

void WeightTree::rebuild()
{
    std::fill(tree_.begin(), tree_.end(), 0.0);
    positive_ = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] > 0.0) {
            ++positive_;
        }
        tree_[i + 1] += weights_[i];
        const std::size_t parent = (i + 1) + ((i + 1) & (~(i + 1) + 1));
        if (parent < tree_.size()) {
            tree_[parent] += tree_[i + 1];
        }
    }
    updates_since_rebuild_ = 0;
}

std::size_t WeightTree::find(double target) const
{
    const std::size_t n = weights_.size();
    std::size_t pos = 0;
    for (std::size_t step = std::bit_floor(n); step > 0; step >>= 1) {
        if (pos + step <= n && tree_[pos + step] <= target) {
            pos += step;
            target -= tree_[pos];
        }
    }
    // Round-off can land past the end or on an empty slot; move to the nearest
    // positive weight.
    if (pos >= n) {
        pos = n - 1;
    }
    if (weights_[pos] > 0.0) {
        return pos;
    }
    for (std::size_t d = 1; d < n; ++d) {
        if (pos >= d && weights_[pos - d] > 0.0) {
            return pos - d;
        }
        if (pos + d < n && weights_[pos + d] > 0.0) {
            return pos + d;
        }
    }
    throw std::logic_error("WeightTree::find on a tree without positive weights");
}

std::size_t WeightTree::sample(Rng& rng) const
{
    return find(uniform01(rng) * total());
}

} // namespace boardsim
