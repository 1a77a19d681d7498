#include "boardsim/kernels.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boardsim::kernels {

namespace {

void tally_firm(const BoardState& state, std::size_t firm, FirmCounts& out)
{
    std::int64_t female = 0;
    std::int64_t occupied = 0;
    for (Seat s : state.board(firm)) {
        female += s == Seat::female;
        occupied += s != Seat::vacant;
    }
    out.female[firm] = female;
    out.occupied[firm] = occupied;
}

FirmCounts make_counts(const BoardState& state)
{
    FirmCounts out;
    out.female.resize(state.firm_count());
    out.occupied.resize(state.firm_count());
    return out;
}

inline std::int64_t row_sum(const FirmGraph& graph, std::span<const std::int64_t> values, NodeId i)
{
    std::int64_t sum = 0;
    for (NodeId j : graph.neighbors(i)) {
        sum += values[j];
    }
    return sum;
}

inline double damped_row(const FirmGraph& graph, std::span<const double> x, NodeId i)
{
    double sum = 0.0;
    for (NodeId j : graph.neighbors(i)) {
        sum += x[j];
    }
    return 0.5 * x[i] + 0.5 * sum;
}

} // namespace

namespace serial {

FirmCounts firm_counts(const BoardState& state)
{
    FirmCounts out = make_counts(state);
    for (std::size_t firm = 0; firm < state.firm_count(); ++firm) {
        tally_firm(state, firm, out);
    }
    return out;
}

void neighbor_sum(const FirmGraph& graph, std::span<const std::int64_t> values,
                  std::span<std::int64_t> out)
{
    for (NodeId i = 0; i < graph.node_count(); ++i) {
        out[i] = row_sum(graph, values, i);
    }
}

void damped_adjacency_apply(const FirmGraph& graph, std::span<const double> x, std::span<double> out)
{
    for (NodeId i = 0; i < graph.node_count(); ++i) {
        out[i] = damped_row(graph, x, i);
    }
}

} // namespace serial

namespace omp {

FirmCounts firm_counts(const BoardState& state)
{
    FirmCounts out = make_counts(state);
    const auto n = static_cast<std::ptrdiff_t>(state.firm_count());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t firm = 0; firm < n; ++firm) {
        tally_firm(state, static_cast<std::size_t>(firm), out);
    }
    return out;
}

void neighbor_sum(const FirmGraph& graph, std::span<const std::int64_t> values,
                  std::span<std::int64_t> out)
{
    const auto n = static_cast<std::ptrdiff_t>(graph.node_count());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = row_sum(graph, values, static_cast<NodeId>(i));
    }
}

void damped_adjacency_apply(const FirmGraph& graph, std::span<const double> x, std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(graph.node_count());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = damped_row(graph, x, static_cast<NodeId>(i));
    }
}

} // namespace omp

FirmCounts firm_counts(const BoardState& state, Execution exec)
{
    return exec == Execution::parallel ? omp::firm_counts(state) : serial::firm_counts(state);
}

void neighbor_sum(const FirmGraph& graph, std::span<const std::int64_t> values,
                  std::span<std::int64_t> out, Execution exec)
{
    if (exec == Execution::parallel) {
        omp::neighbor_sum(graph, values, out);
    } else {
        serial::neighbor_sum(graph, values, out);
    }
}

void damped_adjacency_apply(const FirmGraph& graph, std::span<const double> x, std::span<double> out,
                            Execution exec)
{
    if (exec == Execution::parallel) {
        omp::damped_adjacency_apply(graph, x, out);
    } else {
        serial::damped_adjacency_apply(graph, x, out);
    }
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int count)
{
#ifdef _OPENMP
    if (count > 0) {
        omp_set_num_threads(count);
    }
#else
    (void)count;
#endif
}

} // namespace boardsim::kernels
