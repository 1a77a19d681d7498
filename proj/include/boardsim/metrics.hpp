#ifndef BOARDSIM_METRICS_HPP
#define BOARDSIM_METRICS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "boardsim/boards.hpp"
#include "boardsim/graph.hpp"
#include "boardsim/kernels.hpp"

namespace boardsim {

inline constexpr std::size_t kRepresentationBins = 20;

/// Eigenvector centrality scaled to unit maximum.
struct CentralityScores {
    std::vector<double> score;
    std::size_t iterations = 0;
};

/// Power iteration on (I + A) / 2, renormalized to unit max-norm each step.
/// Stops when successive vectors differ by < tol in max-norm; throws
/// std::runtime_error after max_iter iterations.
CentralityScores eigencentrality(const FirmGraph& graph, double tol = 1e-10,
                                 std::size_t max_iter = 100000,
                                 Execution exec = Execution::serial);

/// Firms sorted by descending centrality (ties by id), split into n_bins
/// equal-count bins with the remainder going to the leading bins.
std::vector<std::vector<std::size_t>> centrality_bins(std::span<const double> scores, std::size_t n_bins);

/// Female share per bin divided by overall female share (0 when the overall share is 0).
std::vector<double> representation_bins(const BoardState& state, std::span<const double> scores,
                                        std::size_t n_bins = kRepresentationBins);

/// Pearson correlation; 0 when either variable has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Correlation across firms of own-board female share and pooled
/// neighbor-board female share. Firms whose neighbors hold no occupied seats are skipped.
double network_homophily(const BoardState& state, const FirmGraph& graph,
                         Execution exec = Execution::serial);

enum class Observer { female, male, all };

/// Mean female share seen on neighboring boards by seats of the observer
/// group, divided by the overall female share. Empty when the observer group
/// holds no seats or the overall female share is zero.
std::optional<double> perception(const BoardState& state, const FirmGraph& graph, Observer observer,
                                 bool include_self = false, Execution exec = Execution::serial);

struct FstarStats {
    double mean = 0.0;
    double cv = 0.0;
};

/// Mean and coefficient of variation of f* over every occupied seat.
FstarStats fstar_stats(const BoardState& state, const FirmGraph& graph, double beta,
                       Execution exec = Execution::serial);

struct YearRecord {
    std::size_t year = 0;
    double inflow_x = 0.0;
    double share_f = 0.0;
    double lambda = 0.0;
    double net_homophily = 0.0;
    std::optional<double> perc_f_by_f;
    std::optional<double> perc_f_by_m;
    std::optional<double> perc_f_by_all;
    std::optional<double> delta_s;
    double fstar_mean = 0.0;
    double fstar_cv = 0.0;
    std::array<double, kRepresentationBins> rep_bins{};
    std::size_t total_seats = 0;
};

/// All observables for one year. `scores` are the run's centrality scores.
YearRecord measure_year(std::size_t year, const BoardState& state, const FirmGraph& graph,
                        std::span<const double> scores, double inflow_x, double lambda, double beta,
                        Execution exec = Execution::serial);

} // namespace boardsim

#endif // BOARDSIM_METRICS_HPP
