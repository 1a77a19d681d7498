#include "boardsim/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace boardsim {

namespace {

void check_growth_args(std::size_t n, std::size_t m)
{
    if (m == 0) {
        throw std::invalid_argument("edges per new node must be >= 1");
    }
    if (n <= m) {
        throw std::invalid_argument("node count " + std::to_string(n) +
                                    " must exceed edges per new node " + std::to_string(m));
    }
}

// Growth state shared by the preferential-attachment generators. A node with
// degree d appears d times in `endpoints`, so a uniform draw from it selects
// nodes proportionally to degree.
struct Growth {
    std::vector<Edge> edges;
    std::vector<NodeId> endpoints;
    std::vector<std::size_t> degree;

    Growth(std::size_t n, std::size_t m) : degree(n, 0)
    {
        edges.reserve(m * (m + 1) / 2 + (n - m - 1) * m);
        endpoints.reserve(2 * edges.capacity());
        for (NodeId i = 0; i <= m; ++i) {
            for (NodeId j = i + 1; j <= m; ++j) {
                link(i, j);
            }
        }
    }

    void link(NodeId a, NodeId b)
    {
        edges.emplace_back(a, b);
        endpoints.push_back(a);
        endpoints.push_back(b);
        ++degree[a];
        ++degree[b];
    }

    NodeId draw_by_degree(Rng& rng) const
    {
        return endpoints[uniform_index(rng, endpoints.size())];
    }
};

bool contains(const std::vector<NodeId>& chosen, NodeId node)
{
    return std::find(chosen.begin(), chosen.end(), node) != chosen.end();
}

FirmGraph grow_with_acceptance(std::size_t n, std::size_t m, std::span<const double> fitness, Rng& rng)
{
    Growth growth(n, m);
    const double max_fitness =
        fitness.empty() ? 1.0 : *std::max_element(fitness.begin(), fitness.end());

    std::vector<NodeId> chosen;
    chosen.reserve(m);
    for (NodeId node = static_cast<NodeId>(m + 1); node < n; ++node) {
        chosen.clear();
        while (chosen.size() < m) {
            const NodeId candidate = growth.draw_by_degree(rng);
            if (contains(chosen, candidate)) {
                continue;
            }
            if (!fitness.empty() && fitness[candidate] < max_fitness &&
                uniform01(rng) >= fitness[candidate] / max_fitness) {
                continue;
            }
            chosen.push_back(candidate);
        }
        for (NodeId target : chosen) {
            growth.link(node, target);
        }
    }
    return FirmGraph(n, growth.edges);
}

} // namespace

FirmGraph gen_ba(std::size_t n, std::size_t m, Rng& rng)
{
    check_growth_args(n, m);
    return grow_with_acceptance(n, m, {}, rng);
}

FirmGraph gen_fitness_ba(std::size_t n, std::size_t m, std::span<const double> fitness, Rng& rng)
{
    check_growth_args(n, m);
    if (fitness.size() != n) {
        throw std::invalid_argument("fitness count " + std::to_string(fitness.size()) +
                                    " does not match node count " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(fitness[i] > 0.0) || !std::isfinite(fitness[i])) {
            throw std::invalid_argument("fitness of node " + std::to_string(i) +
                                        " must be positive and finite");
        }
    }
    return grow_with_acceptance(n, m, fitness, rng);
}

HomophilyGraph gen_homophily_ba(std::size_t n, std::size_t m, double f_a, double h, Rng& rng)
{
    check_growth_args(n, m);
    if (!(h >= 0.0 && h <= 1.0)) {
        throw std::invalid_argument("homophily must lie in [0, 1]");
    }
    if (!(f_a > 0.0 && f_a < 1.0)) {
        throw std::invalid_argument("minority fraction must lie in (0, 1)");
    }

    HomophilyGraph out;
    auto& labels = out.groups.labels;
    labels.resize(n);
    auto draw_group = [&] { return uniform01(rng) < f_a ? Group::a : Group::b; };
    for (std::size_t i = 0; i <= m; ++i) {
        labels[i] = draw_group();
    }

    Growth growth(n, m);
    out.seed_edges = growth.edges.size();

    // Degree mass per group.
    double mass[2] = {0.0, 0.0};
    for (std::size_t i = 0; i <= m; ++i) {
        mass[static_cast<int>(labels[i])] += static_cast<double>(growth.degree[i]);
    }

    const double h_max = std::max(h, 1.0 - h);
    std::vector<NodeId> chosen;
    chosen.reserve(m);
    for (NodeId node = static_cast<NodeId>(m + 1); node < n; ++node) {
        const Group g = draw_group();
        labels[node] = g;
        auto affinity = [&](NodeId other) { return labels[other] == g ? h : 1.0 - h; };

        double remaining = h * mass[static_cast<int>(g)] + (1.0 - h) * mass[1 - static_cast<int>(g)];
        chosen.clear();
        while (chosen.size() < m) {
            if (remaining <= 1e-9) {
                // Every remaining candidate has zero weight: uniform over the rest.
                NodeId pick;
                do {
                    pick = static_cast<NodeId>(uniform_index(rng, node));
                } while (contains(chosen, pick));
                chosen.push_back(pick);
                ++out.fallback_edges;
                continue;
            }
            const NodeId candidate = growth.draw_by_degree(rng);
            if (contains(chosen, candidate)) {
                continue;
            }
            const double w = affinity(candidate);
            if (w < h_max && uniform01(rng) >= w / h_max) {
                continue;
            }
            chosen.push_back(candidate);
            remaining -= w * static_cast<double>(growth.degree[candidate]);
        }
        for (NodeId target : chosen) {
            growth.link(node, target);
            mass[static_cast<int>(labels[target])] += 1.0;
        }
        mass[static_cast<int>(g)] += static_cast<double>(m);
    }
    out.graph = FirmGraph(n, growth.edges);
    return out;
}

double hurwitz_zeta(double s, double q)
{
    if (!(s > 1.0) || !(q > 0.0)) {
        throw std::invalid_argument("hurwitz_zeta requires s > 1 and q > 0");
    }
    // Direct sum of the first terms plus an Euler-Maclaurin tail.
    constexpr int direct_terms = 16;
    double sum = 0.0;
    for (int k = 0; k < direct_terms; ++k) {
        sum += std::pow(k + q, -s);
    }
    const double a = direct_terms + q;
    double tail = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // Bernoulli numbers B2, B4, B6, B8, B10 over (2j)!.
    static constexpr double coeff[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                       -1.0 / 1209600.0, 1.0 / 47900160.0};
    double rising = s;          // s (s+1) ... (s + 2j - 2)
    double power = std::pow(a, -s - 1.0);
    for (int j = 0; j < 5; ++j) {
        tail += coeff[j] * rising * power;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        power /= a * a;
    }
    return sum + tail;
}

double fit_tail_exponent(std::span<const std::size_t> degrees, std::size_t k_min)
{
    if (k_min == 0) {
        throw std::invalid_argument("k_min must be >= 1");
    }
    std::size_t count = 0;
    double log_sum = 0.0;
    std::size_t first = 0;
    bool varied = false;
    for (std::size_t k : degrees) {
        if (k < k_min) {
            continue;
        }
        if (count == 0) {
            first = k;
        } else if (k != first) {
            varied = true;
        }
        ++count;
        log_sum += std::log(static_cast<double>(k));
    }
    if (count < 50) {
        throw std::invalid_argument("tail fit needs >= 50 observations at or above k_min, got " +
                                    std::to_string(count));
    }
    if (!varied) {
        throw std::invalid_argument("tail observations are all identical; exponent is unbounded");
    }

    const double n = static_cast<double>(count);
    const double q = static_cast<double>(k_min);
    auto neg_log_likelihood = [&](double alpha) {
        return n * std::log(hurwitz_zeta(alpha, q)) + alpha * log_sum;
    };

    // The objective is convex in alpha; golden-section search on a bracket.
    constexpr double inv_phi = 0.6180339887498949;
    double lo = 1.0 + 1e-6;
    double hi = 20.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = neg_log_likelihood(x1);
    double f2 = neg_log_likelihood(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = neg_log_likelihood(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = neg_log_likelihood(x2);
        }
    }
    return 0.5 * (lo + hi);
}

LogNormalParams lognormal_from_moments(double mean, double variance)
{
    if (!(mean > 0.0) || !(variance > 0.0)) {
        throw std::invalid_argument("log-normal mean and variance must be positive");
    }
    const double sigma2 = std::log1p(variance / (mean * mean));
    return {std::log(mean) - 0.5 * sigma2, std::sqrt(sigma2)};
}

std::size_t round_board_size(double raw, std::size_t min_size)
{
    const double rounded = std::round(raw);
    if (!(rounded >= static_cast<double>(min_size))) {
        return min_size;
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<std::size_t> sample_board_sizes(std::size_t n, double mean, double variance,
                                            std::size_t min_size, Rng& rng)
{
    const auto params = lognormal_from_moments(mean, variance);
    std::lognormal_distribution<double> dist(params.mu, params.sigma);
    std::vector<std::size_t> sizes(n);
    for (auto& s : sizes) {
        s = round_board_size(dist(rng), min_size);
    }
    return sizes;
}

std::vector<std::size_t> couple_sizes_to_degrees(std::span<const std::size_t> degrees,
                                                 std::span<const std::size_t> sizes)
{
    const std::size_t n = degrees.size();
    if (sizes.size() != n) {
        throw std::invalid_argument("board size count " + std::to_string(sizes.size()) +
                                    " does not match firm count " + std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });

    std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>{});

    std::vector<std::size_t> assigned(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
        assigned[order[rank]] = sorted[rank];
    }
    return assigned;
}

std::vector<std::size_t> couple_sizes_to_degrees(const FirmGraph& graph,
                                                 std::span<const std::size_t> sizes)
{
    const auto degrees = graph.degrees();
    return couple_sizes_to_degrees(std::span<const std::size_t>(degrees), sizes);
}

} // namespace boardsim
