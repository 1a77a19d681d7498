#include "boardsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "boardsim/dynamics.hpp"

namespace boardsim {

CentralityScores eigencentrality(const FirmGraph& graph, double tol, std::size_t max_iter, Execution exec)
{
    const std::size_t n = graph.node_count();
    if (n == 0) {
        throw std::invalid_argument("eigencentrality of an empty graph");
    }
    CentralityScores out;
    std::vector<double> x(n, 1.0);
    std::vector<double> next(n);
    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        kernels::damped_adjacency_apply(graph, x, next, exec);
        const double top = *std::max_element(next.begin(), next.end());
        if (!(top > 0.0)) {
            throw std::runtime_error("eigencentrality collapsed to the zero vector");
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= top;
            diff = std::max(diff, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (diff < tol) {
            out.score = std::move(x);
            out.iterations = iter;
            return out;
        }
    }
    throw std::runtime_error("eigencentrality did not converge in " + std::to_string(max_iter) +
                             " iterations");
}

std::vector<std::vector<std::size_t>> centrality_bins(std::span<const double> scores, std::size_t n_bins)
{
    if (n_bins == 0) {
        throw std::invalid_argument("need at least one representation bin");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<std::vector<std::size_t>> bins(n_bins);
    const std::size_t base = scores.size() / n_bins;
    const std::size_t extra = scores.size() % n_bins;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < n_bins; ++b) {
        const std::size_t take = base + (b < extra ? 1 : 0);
        bins[b].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                       order.begin() + static_cast<std::ptrdiff_t>(pos + take));
        pos += take;
    }
    return bins;
}

std::vector<double> representation_bins(const BoardState& state, std::span<const double> scores,
                                        std::size_t n_bins)
{
    if (scores.size() != state.firm_count()) {
        throw std::invalid_argument("centrality scores do not match firm count");
    }
    const double overall = state.female_share();
    std::vector<double> out(n_bins, 0.0);
    if (overall == 0.0) {
        return out;
    }
    const auto bins = centrality_bins(scores, n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        std::size_t female = 0;
        std::size_t occupied = 0;
        for (std::size_t firm : bins[b]) {
            for (Seat s : state.board(firm)) {
                female += s == Seat::female;
                occupied += s != Seat::vacant;
            }
        }
        if (occupied > 0) {
            out[b] = static_cast<double>(female) / static_cast<double>(occupied) / overall;
        }
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y)
{
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) {
        return 0.0;
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    // Shares are ratios of small integers; anything this small is a constant column.
    constexpr double eps = 1e-24;
    if (sxx <= eps || syy <= eps) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

struct Neighborhood {
    FirmCounts own;
    std::vector<std::int64_t> female;
    std::vector<std::int64_t> occupied;
};

Neighborhood pool_neighborhood(const BoardState& state, const FirmGraph& graph, Execution exec)
{
    if (graph.node_count() != state.firm_count()) {
        throw std::invalid_argument("graph has " + std::to_string(graph.node_count()) +
                                    " firms but board state has " +
                                    std::to_string(state.firm_count()));
    }
    Neighborhood nb;
    nb.own = kernels::firm_counts(state, exec);
    nb.female.resize(graph.node_count());
    nb.occupied.resize(graph.node_count());
    kernels::neighbor_sum(graph, nb.own.female, nb.female, exec);
    kernels::neighbor_sum(graph, nb.own.occupied, nb.occupied, exec);
    return nb;
}

double network_homophily_from(const Neighborhood& nb)
{
    std::vector<double> own;
    std::vector<double> around;
    own.reserve(nb.female.size());
    around.reserve(nb.female.size());
    for (std::size_t f = 0; f < nb.female.size(); ++f) {
        if (nb.own.occupied[f] == 0 || nb.occupied[f] == 0) {
            continue;
        }
        own.push_back(static_cast<double>(nb.own.female[f]) / static_cast<double>(nb.own.occupied[f]));
        around.push_back(static_cast<double>(nb.female[f]) / static_cast<double>(nb.occupied[f]));
    }
    return pearson(own, around);
}

std::optional<double> perception_from(const Neighborhood& nb, Observer observer, bool include_self)
{
    std::int64_t total_female = 0;
    std::int64_t total_occupied = 0;
    for (std::size_t f = 0; f < nb.female.size(); ++f) {
        total_female += nb.own.female[f];
        total_occupied += nb.own.occupied[f];
    }
    if (total_female == 0 || total_occupied == 0) {
        return std::nullopt;
    }
    const double overall = static_cast<double>(total_female) / static_cast<double>(total_occupied);

    double weighted = 0.0;
    double observers = 0.0;
    for (std::size_t f = 0; f < nb.female.size(); ++f) {
        std::int64_t seen_female = nb.female[f];
        std::int64_t seen_total = nb.occupied[f];
        if (include_self) {
            seen_female += nb.own.female[f];
            seen_total += nb.own.occupied[f];
        }
        if (seen_total == 0) {
            continue;
        }
        std::int64_t count = 0;
        switch (observer) {
        case Observer::female: count = nb.own.female[f]; break;
        case Observer::male: count = nb.own.occupied[f] - nb.own.female[f]; break;
        case Observer::all: count = nb.own.occupied[f]; break;
        }
        const double share = static_cast<double>(seen_female) / static_cast<double>(seen_total);
        weighted += static_cast<double>(count) * share;
        observers += static_cast<double>(count);
    }
    if (observers == 0.0) {
        return std::nullopt;
    }
    return weighted / observers / overall;
}

FstarStats fstar_stats_from(const Neighborhood& nb, double beta)
{
    double seats = 0.0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t f = 0; f < nb.female.size(); ++f) {
        const double w = fstar_weight(nb.female[f], nb.occupied[f], nb.own.female[f],
                                      nb.own.occupied[f], beta);
        const double count = static_cast<double>(nb.own.occupied[f]);
        seats += count;
        sum += count * w;
        sum_sq += count * w * w;
    }
    FstarStats out;
    if (seats == 0.0) {
        return out;
    }
    out.mean = sum / seats;
    if (out.mean > 0.0) {
        const double var = std::max(0.0, sum_sq / seats - out.mean * out.mean);
        out.cv = std::sqrt(var) / out.mean;
    }
    return out;
}

} // namespace

double network_homophily(const BoardState& state, const FirmGraph& graph, Execution exec)
{
    return network_homophily_from(pool_neighborhood(state, graph, exec));
}

std::optional<double> perception(const BoardState& state, const FirmGraph& graph, Observer observer,
                                 bool include_self, Execution exec)
{
    return perception_from(pool_neighborhood(state, graph, exec), observer, include_self);
}

FstarStats fstar_stats(const BoardState& state, const FirmGraph& graph, double beta, Execution exec)
{
    return fstar_stats_from(pool_neighborhood(state, graph, exec), beta);
}

YearRecord measure_year(std::size_t year, const BoardState& state, const FirmGraph& graph,
                        std::span<const double> scores, double inflow_x, double lambda, double beta,
                        Execution exec)
{
    const Neighborhood nb = pool_neighborhood(state, graph, exec);
    YearRecord r;
    r.year = year;
    r.inflow_x = inflow_x;
    r.share_f = state.female_share();
    r.lambda = lambda;
    r.net_homophily = network_homophily_from(nb);
    r.perc_f_by_f = perception_from(nb, Observer::female, false);
    r.perc_f_by_m = perception_from(nb, Observer::male, false);
    r.perc_f_by_all = perception_from(nb, Observer::all, false);
    if (r.perc_f_by_all) {
        r.delta_s = *r.perc_f_by_all - 1.0;
    }
    const FstarStats fs = fstar_stats_from(nb, beta);
    r.fstar_mean = fs.mean;
    r.fstar_cv = fs.cv;
    const auto bins = representation_bins(state, scores, kRepresentationBins);
    std::copy(bins.begin(), bins.end(), r.rep_bins.begin());
    r.total_seats = state.total_seats();
    return r;
}

} // namespace boardsim
