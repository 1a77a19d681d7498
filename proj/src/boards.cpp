#include "boardsim/boards.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "boardsim/sampling.hpp"

namespace boardsim {

BoardState::BoardState(std::span<const std::size_t> board_sizes)
    : offsets_(board_sizes.size() + 1, 0)
{
    for (std::size_t i = 0; i < board_sizes.size(); ++i) {
        if (board_sizes[i] == 0) {
            throw std::invalid_argument("board of firm " + std::to_string(i) + " has no seats");
        }
        offsets_[i + 1] = offsets_[i] + board_sizes[i];
    }
    seats_.assign(offsets_.back(), Seat::male);
}

std::size_t BoardState::firm_of(std::size_t seat_index) const noexcept
{
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), seat_index);
    return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

std::size_t BoardState::count(Seat group) const noexcept
{
    return static_cast<std::size_t>(std::count(seats_.begin(), seats_.end(), group));
}

double BoardState::female_share() const noexcept
{
    const std::size_t female = count(Seat::female);
    const std::size_t occupied = total_seats() - count(Seat::vacant);
    return occupied == 0 ? 0.0 : static_cast<double>(female) / static_cast<double>(occupied);
}

std::size_t initial_female_count(std::size_t total_seats, double initial_share)
{
    if (!(initial_share >= 0.0 && initial_share <= 1.0)) {
        throw std::invalid_argument("initial_share must lie in [0, 1]");
    }
    return static_cast<std::size_t>(std::llround(initial_share * static_cast<double>(total_seats)));
}

BoardState init_unbiased(std::span<const std::size_t> board_sizes, double initial_share, Rng& rng)
{
    BoardState state(board_sizes);
    const std::size_t female = initial_female_count(state.total_seats(), initial_share);
    for (std::size_t seat : uniform_sample_without_replacement(state.total_seats(), female, rng)) {
        state.seat(seat) = Seat::female;
    }
    return state;
}

double biased_seat_weight(double degree, double mean_degree, double gamma)
{
    return 1.0 + gamma * (mean_degree - degree) / degree;
}

BoardState init_biased(std::span<const std::size_t> board_sizes, const FirmGraph& graph,
                       double gamma, double initial_share, Rng& rng)
{
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("gamma must lie in [0, 1)");
    }
    if (graph.node_count() != board_sizes.size()) {
        throw std::invalid_argument("graph and board sizes disagree on firm count");
    }
    if (graph.node_count() > 0 && graph.min_degree() == 0) {
        throw std::invalid_argument("biased initialization needs every firm degree >= 1");
    }
    BoardState state(board_sizes);
    const double mean_degree = graph.mean_degree();
    std::vector<double> weights(state.total_seats());
    for (std::size_t firm = 0; firm < state.firm_count(); ++firm) {
        const double w = biased_seat_weight(static_cast<double>(graph.degree(static_cast<NodeId>(firm))),
                                            mean_degree, gamma);
        const auto first = weights.begin() + static_cast<std::ptrdiff_t>(state.seat_offset(firm));
        std::fill(first, first + static_cast<std::ptrdiff_t>(state.board_size(firm)), w);
    }
    const std::size_t female = initial_female_count(state.total_seats(), initial_share);
    for (std::size_t seat : weighted_sample_without_replacement(weights, female, rng)) {
        state.seat(seat) = Seat::female;
    }
    return state;
}

BoardState initialize_boards(std::span<const std::size_t> board_sizes, const FirmGraph& graph,
                             const InitConfig& config, Rng& rng)
{
    switch (config.mode) {
    case InitMode::unbiased:
        return init_unbiased(board_sizes, config.initial_share, rng);
    case InitMode::biased:
        return init_biased(board_sizes, graph, config.gamma, config.initial_share, rng);
    }
    throw std::invalid_argument("unknown init mode");
}

void write_board_snapshot(std::ostream& out, const BoardState& state)
{
    out << "firm_id,seat_idx,group\n";
    for (std::size_t firm = 0; firm < state.firm_count(); ++firm) {
        const auto board = state.board(firm);
        for (std::size_t s = 0; s < board.size(); ++s) {
            const char tag = board[s] == Seat::female ? 'F' : board[s] == Seat::male ? 'M' : 'V';
            out << firm << ',' << s << ',' << tag << '\n';
        }
    }
}

} // namespace boardsim
