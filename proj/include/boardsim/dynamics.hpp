#ifndef BOARDSIM_DYNAMICS_HPP
#define BOARDSIM_DYNAMICS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "boardsim/boards.hpp"
#include "boardsim/graph.hpp"
#include "boardsim/rng.hpp"

namespace boardsim {

enum class LambdaMode { size_dependent, fixed };
enum class GrowthMode { exogenous, endogenous };
// normalized: x + g x (1 - x / x*); paper_literal: x + g x 2 (1 - x) / N_retiring.
enum class GrowthForm { normalized, paper_literal };
// increment: feedback scales only the yearly increment; literal: scales the whole level.
enum class EndoApplication { increment, literal };

struct DynamicsConfig {
    double retire_rate = 0.15;
    double g_f = 0.16;
    double target_share = 0.5;
    LambdaMode lambda_mode = LambdaMode::size_dependent;
    double lambda_bar = 0.9;
    double g_lambda = 20.0;
    double y_m = 0.16;
    double beta = 2.5;
    GrowthMode growth_mode = GrowthMode::exogenous;
    GrowthForm growth_form = GrowthForm::normalized;
    EndoApplication endo_application = EndoApplication::increment;
    std::size_t horizon_years = 80;
};

/// Throws std::invalid_argument naming the first out-of-range field.
void validate(const DynamicsConfig& config);

struct InflowState {
    double x = 0.02;
};

struct Retirement {
    std::vector<std::size_t> vacancies; // flat seat indices, ascending
    std::size_t retired_female = 0;
    std::size_t retired_male = 0;
};

/// Vacates each seat independently with probability `rate`.
Retirement retire(BoardState& state, double rate, Rng& rng);

double grow_exogenous(double x, double g_f, double target);

/// Perception feedback on the logistic step; delta_s = 0 reproduces grow_exogenous.
double grow_endogenous(double x, double g_f, double target, double delta_s,
                       EndoApplication application = EndoApplication::increment);

/// Growth law as printed, scaled by the number of retiring seats; clamped to [0, target].
double grow_paper_literal(double x, double g_f, double target, std::size_t retiring);

/// Dispatches on growth_mode / growth_form.
double grow_inflow(double x, const DynamicsConfig& config, double delta_s, std::size_t retiring);

/// Share of female vacancy placements assigned by neighborhood weight.
double lambda_schedule(double y, const DynamicsConfig& config);

/// f* = neighbor_female / neighbor_occupied + beta * own_female / own_occupied.
/// A term with an empty denominator contributes zero.
inline double fstar_weight(std::int64_t neighbor_female, std::int64_t neighbor_occupied,
                           std::int64_t own_female, std::int64_t own_occupied, double beta) noexcept
{
    double w = 0.0;
    if (neighbor_occupied > 0) {
        w += static_cast<double>(neighbor_female) / static_cast<double>(neighbor_occupied);
    }
    if (own_occupied > 0) {
        w += beta * static_cast<double>(own_female) / static_cast<double>(own_occupied);
    }
    return w;
}

/// f* for each vacancy, evaluated on currently occupied seats only.
std::vector<double> homophily_weights(const BoardState& state, const FirmGraph& graph, double beta,
                                      std::span<const std::size_t> vacancies);

struct Assignment {
    std::size_t female = 0;      // total female placements
    std::size_t homophilic = 0;  // of which drawn by f*
    std::size_t fallback = 0;    // homophilic draws made uniformly because every f* was zero
};

/// Fills every vacancy. round(x_next * |V|) become female; round(lambda * that)
/// of them are drawn one at a time proportionally to f* (recomputed after each
/// placement), the remaining female and all male placements are uniform.
Assignment assign_vacancies(BoardState& state, const FirmGraph& graph,
                            std::span<const std::size_t> vacancies, double x_next, double lambda,
                            double beta, Rng& rng);

struct StepReport {
    double share_before = 0.0;  // y(t), pre-retirement
    double delta_s = 0.0;       // perception deviation fed to endogenous growth
    double lambda = 0.0;
    double x_next = 0.0;
    std::size_t vacancies = 0;
    Assignment assignment;
};

/// One year: observe y(t) and delta_s(t), retire, grow the inflow, fill vacancies.
StepReport step(BoardState& state, const FirmGraph& graph, InflowState& inflow,
                const DynamicsConfig& config, Rng& rng);

} // namespace boardsim

#endif // BOARDSIM_DYNAMICS_HPP
