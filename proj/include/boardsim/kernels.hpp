#ifndef BOARDSIM_KERNELS_HPP
#define BOARDSIM_KERNELS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "boardsim/boards.hpp"
#include "boardsim/graph.hpp"

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp`; the two produce
// bit-identical results (each output element is reduced in the same order).

namespace boardsim {

enum class Execution { serial, parallel };

struct FirmCounts {
    std::vector<std::int64_t> female;
    std::vector<std::int64_t> occupied;
};

namespace kernels {

namespace serial {
FirmCounts firm_counts(const BoardState& state);
// out[i] = sum of values[j] over neighbors j of i.
void neighbor_sum(const FirmGraph& graph, std::span<const std::int64_t> values,
                  std::span<std::int64_t> out);
// out[i] = 0.5 x[i] + 0.5 sum_{j ~ i} x[j]
void damped_adjacency_apply(const FirmGraph& graph, std::span<const double> x, std::span<double> out);
} // namespace serial

namespace omp {
FirmCounts firm_counts(const BoardState& state);
void neighbor_sum(const FirmGraph& graph, std::span<const std::int64_t> values,
                  std::span<std::int64_t> out);
void damped_adjacency_apply(const FirmGraph& graph, std::span<const double> x, std::span<double> out);
} // namespace omp

FirmCounts firm_counts(const BoardState& state, Execution exec = Execution::serial);
void neighbor_sum(const FirmGraph& graph, std::span<const std::int64_t> values,
                  std::span<std::int64_t> out, Execution exec = Execution::serial);
void damped_adjacency_apply(const FirmGraph& graph, std::span<const double> x, std::span<double> out,
                            Execution exec = Execution::serial);

// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads();
void set_threads(int count);

} // namespace kernels
} // namespace boardsim

#endif // BOARDSIM_KERNELS_HPP
