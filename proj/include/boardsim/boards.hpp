#ifndef BOARDSIM_BOARDS_HPP
#define BOARDSIM_BOARDS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "boardsim/graph.hpp"
#include "boardsim/rng.hpp"

namespace boardsim {

// F is the minority group (women in the gender case).
enum class Seat : std::uint8_t { male = 0, female = 1, vacant = 2 };

/**
 * Seat-level board composition for every firm.
 *
 * Seats are stored contiguously, firm by firm; seat_offset(i) .. seat_offset(i+1)
 * belong to firm i. Seats are anonymous: only the group tag is tracked.
 */
class BoardState {
public:
    BoardState() = default;
    explicit BoardState(std::span<const std::size_t> board_sizes);

    std::size_t firm_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t total_seats() const noexcept { return seats_.size(); }
    std::size_t board_size(std::size_t firm) const noexcept { return offsets_[firm + 1] - offsets_[firm]; }
    std::size_t seat_offset(std::size_t firm) const noexcept { return offsets_[firm]; }

    std::span<const Seat> board(std::size_t firm) const noexcept
    {
        return {seats_.data() + offsets_[firm], board_size(firm)};
    }
    std::span<Seat> board(std::size_t firm) noexcept
    {
        return {seats_.data() + offsets_[firm], board_size(firm)};
    }

    Seat& seat(std::size_t index) noexcept { return seats_[index]; }
    Seat seat(std::size_t index) const noexcept { return seats_[index]; }
    std::span<const Seat> seats() const noexcept { return seats_; }
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }

    // Firm owning a flat seat index.
    std::size_t firm_of(std::size_t seat_index) const noexcept;

    std::size_t count(Seat group) const noexcept;
    double female_share() const noexcept;

    bool operator==(const BoardState&) const = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Seat> seats_;
};

enum class InitMode { unbiased, biased };

struct InitConfig {
    InitMode mode = InitMode::unbiased;
    double gamma = 0.8;
    double initial_share = 0.02;
};

/// Number of female seats the initial assignment places: round(share * seats).
std::size_t initial_female_count(std::size_t total_seats, double initial_share);

/// Places exactly round(initial_share * total) female seats uniformly at random.
BoardState init_unbiased(std::span<const std::size_t> board_sizes, double initial_share, Rng& rng);

/// Relative probability that a seat at a firm of degree k starts female:
/// 1 + gamma (mean_degree - k) / k.
double biased_seat_weight(double degree, double mean_degree, double gamma);

/// Places exactly round(initial_share * total) female seats, sampled without
/// replacement with probability proportional to biased_seat_weight of the
/// seat's firm. Throws std::invalid_argument unless 0 <= gamma < 1.
BoardState init_biased(std::span<const std::size_t> board_sizes, const FirmGraph& graph,
                       double gamma, double initial_share, Rng& rng);

BoardState initialize_boards(std::span<const std::size_t> board_sizes, const FirmGraph& graph,
                             const InitConfig& config, Rng& rng);

// CSV `firm_id,seat_idx,group` with group in {F, M, V}.
void write_board_snapshot(std::ostream& out, const BoardState& state);

} // namespace boardsim

#endif // BOARDSIM_BOARDS_HPP
