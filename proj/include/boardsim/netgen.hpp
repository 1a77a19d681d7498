#ifndef BOARDSIM_NETGEN_HPP
#define BOARDSIM_NETGEN_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "boardsim/graph.hpp"
#include "boardsim/rng.hpp"

namespace boardsim {

/// Barabasi-Albert growth with linear preferential attachment.
///
/// Starts from a clique on m+1 nodes; every later node links to m distinct
/// existing nodes drawn with probability proportional to degree.
/// Throws std::invalid_argument when m == 0 or n <= m.
FirmGraph gen_ba(std::size_t n, std::size_t m, Rng& rng);

/// Preferential attachment weighted by node fitness: P(i) ~ fitness_i * k_i.
///
/// Uses the same degree-list draw as gen_ba followed by an acceptance test with
/// probability fitness_i / max fitness. With constant fitness no acceptance
/// draws are consumed, so the edge list equals gen_ba for the same stream.
FirmGraph gen_fitness_ba(std::size_t n, std::size_t m, std::span<const double> fitness, Rng& rng);

struct HomophilyGraph {
    FirmGraph graph;
    GroupLabeling groups;
    // Edges placed by the uniform fallback because every remaining candidate
    // had zero attachment weight.
    std::size_t fallback_edges = 0;
    // Edges inside the seed clique (placed before any attachment rule applies).
    std::size_t seed_edges = 0;
};

/// Group-homophily preferential attachment. A new node joins group a with
/// probability f_a, then links to existing node i with probability
/// proportional to h_{g(new), g(i)} * k_i where h_same = h and h_cross = 1 - h.
HomophilyGraph gen_homophily_ba(std::size_t n, std::size_t m, double f_a, double h, Rng& rng);

/// Discrete power-law maximum-likelihood exponent for the tail k >= k_min.
///
/// Maximizes -n ln zeta(alpha, k_min) - alpha sum ln k over alpha in (1, 20].
/// Throws std::invalid_argument with fewer than 50 tail observations or when
/// every tail observation is identical.
double fit_tail_exponent(std::span<const std::size_t> degrees, std::size_t k_min);

/// Hurwitz zeta function zeta(s, q) for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

struct LogNormalParams {
    double mu = 0.0;
    double sigma = 0.0;
};

/// Log-space parameters for a log-normal with the given arithmetic mean and variance.
LogNormalParams lognormal_from_moments(double mean, double variance);

/// Rounds a raw draw to the nearest integer and clamps it to min_size.
std::size_t round_board_size(double raw, std::size_t min_size);

std::vector<std::size_t> sample_board_sizes(std::size_t n, double mean, double variance,
                                            std::size_t min_size, Rng& rng);

/// Rank-order coupling: the firm with the k-th largest degree receives the
/// k-th largest size. Degree ties are broken by ascending node id.
std::vector<std::size_t> couple_sizes_to_degrees(std::span<const std::size_t> degrees,
                                                 std::span<const std::size_t> sizes);
std::vector<std::size_t> couple_sizes_to_degrees(const FirmGraph& graph,
                                                 std::span<const std::size_t> sizes);

} // namespace boardsim

#endif // BOARDSIM_NETGEN_HPP
