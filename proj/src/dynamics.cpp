#include "boardsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "boardsim/kernels.hpp"
#include "boardsim/metrics.hpp"
#include "boardsim/sampling.hpp"

namespace boardsim {

namespace {

void require(bool ok, const char* field, const char* range)
{
    if (!ok) {
        throw std::invalid_argument(std::string(field) + " must be " + range);
    }
}

} // namespace

void validate(const DynamicsConfig& c)
{
    require(c.retire_rate >= 0.0 && c.retire_rate <= 1.0, "retire_rate", "in [0, 1]");
    require(c.g_f >= 0.0 && std::isfinite(c.g_f), "g_f", "finite and >= 0");
    require(c.target_share > 0.0 && c.target_share <= 1.0, "target_share", "in (0, 1]");
    require(c.lambda_bar > 0.0 && c.lambda_bar <= 1.0, "lambda_bar", "in (0, 1]");
    require(std::isfinite(c.g_lambda), "g_lambda", "finite");
    require(c.y_m >= 0.0 && c.y_m <= 1.0, "y_m", "in [0, 1]");
    require(c.beta >= 0.0 && std::isfinite(c.beta), "beta", "finite and >= 0");
}

Retirement retire(BoardState& state, double rate, Rng& rng)
{
    Retirement out;
    std::bernoulli_distribution leaves(rate);
    for (std::size_t s = 0; s < state.total_seats(); ++s) {
        if (!leaves(rng)) {
            continue;
        }
        Seat& seat = state.seat(s);
        if (seat == Seat::female) {
            ++out.retired_female;
        } else if (seat == Seat::male) {
            ++out.retired_male;
        } else {
            continue;
        }
        seat = Seat::vacant;
        out.vacancies.push_back(s);
    }
    return out;
}

double grow_exogenous(double x, double g_f, double target)
{
    return std::min(target, x + g_f * x * (1.0 - x / target));
}

double grow_endogenous(double x, double g_f, double target, double delta_s, EndoApplication application)
{
    const double increment = g_f * x * (1.0 - x / target);
    if (application == EndoApplication::increment) {
        return std::min(target, x + std::max(0.0, 1.0 + delta_s) * increment);
    }
    return std::clamp((1.0 + delta_s) * (x + increment), 0.0, target);
}

double grow_paper_literal(double x, double g_f, double target, std::size_t retiring)
{
    if (retiring == 0) {
        return std::clamp(x, 0.0, target);
    }
    const double next = x + g_f * x * 2.0 * (1.0 - x) / static_cast<double>(retiring);
    return std::clamp(next, 0.0, target);
}

double grow_inflow(double x, const DynamicsConfig& config, double delta_s, std::size_t retiring)
{
    const bool endogenous = config.growth_mode == GrowthMode::endogenous;
    if (config.growth_form == GrowthForm::paper_literal) {
        const double base = grow_paper_literal(x, config.g_f, config.target_share, retiring);
        if (!endogenous) {
            return base;
        }
        if (config.endo_application == EndoApplication::increment) {
            return std::min(config.target_share, x + std::max(0.0, 1.0 + delta_s) * (base - x));
        }
        return std::clamp((1.0 + delta_s) * base, 0.0, config.target_share);
    }
    if (!endogenous) {
        return grow_exogenous(x, config.g_f, config.target_share);
    }
    return grow_endogenous(x, config.g_f, config.target_share, delta_s, config.endo_application);
}

double lambda_schedule(double y, const DynamicsConfig& config)
{
    if (config.lambda_mode == LambdaMode::fixed) {
        return config.lambda_bar;
    }
    const double logistic = 1.0 / (1.0 + std::exp(-config.g_lambda * (y - config.y_m)));
    return std::clamp(1.0 - logistic, 0.0, config.lambda_bar);
}

std::vector<double> homophily_weights(const BoardState& state, const FirmGraph& graph, double beta,
                                      std::span<const std::size_t> vacancies)
{
    const FirmCounts counts = kernels::firm_counts(state);
    std::vector<std::int64_t> nb_female(graph.node_count());
    std::vector<std::int64_t> nb_occupied(graph.node_count());
    kernels::neighbor_sum(graph, counts.female, nb_female);
    kernels::neighbor_sum(graph, counts.occupied, nb_occupied);

    std::vector<double> out;
    out.reserve(vacancies.size());
    for (std::size_t seat : vacancies) {
        const std::size_t f = state.firm_of(seat);
        out.push_back(fstar_weight(nb_female[f], nb_occupied[f], counts.female[f],
                                   counts.occupied[f], beta));
    }
    return out;
}

namespace {

// Remaining vacancies indexed two ways: a global pool for uniform draws and
// per-firm buckets for draws after a firm has been chosen by weight.
class VacancyIndex {
public:
    VacancyIndex(const BoardState& state, std::span<const std::size_t> vacancies)
        : seat_(vacancies.begin(), vacancies.end()),
          firm_(vacancies.size()),
          pool_(vacancies.size()),
          pool_pos_(vacancies.size()),
          bucket_begin_(state.firm_count() + 1, 0),
          bucket_count_(state.firm_count(), 0),
          bucket_(vacancies.size()),
          bucket_pos_(vacancies.size())
    {
        for (std::size_t k = 0; k < seat_.size(); ++k) {
            firm_[k] = state.firm_of(seat_[k]);
            ++bucket_count_[firm_[k]];
            pool_[k] = k;
            pool_pos_[k] = k;
        }
        for (std::size_t f = 0; f < bucket_count_.size(); ++f) {
            bucket_begin_[f + 1] = bucket_begin_[f] + bucket_count_[f];
        }
        std::vector<std::size_t> fill(bucket_begin_.begin(), bucket_begin_.end() - 1);
        for (std::size_t k = 0; k < seat_.size(); ++k) {
            bucket_pos_[k] = fill[firm_[k]];
            bucket_[fill[firm_[k]]++] = k;
        }
    }

    std::size_t remaining() const noexcept { return pool_.size(); }
    std::size_t remaining_at(std::size_t firm) const noexcept { return bucket_count_[firm]; }
    std::size_t seat(std::size_t k) const noexcept { return seat_[k]; }
    std::size_t firm(std::size_t k) const noexcept { return firm_[k]; }
    std::span<const std::size_t> pool() const noexcept { return pool_; }

    std::size_t draw_any(Rng& rng) const { return pool_[uniform_index(rng, pool_.size())]; }

    std::size_t draw_at(std::size_t firm, Rng& rng) const
    {
        return bucket_[bucket_begin_[firm] + uniform_index(rng, bucket_count_[firm])];
    }

    void remove(std::size_t k)
    {
        const std::size_t p = pool_pos_[k];
        const std::size_t last = pool_.back();
        pool_[p] = last;
        pool_pos_[last] = p;
        pool_.pop_back();

        const std::size_t f = firm_[k];
        const std::size_t b = bucket_pos_[k];
        const std::size_t tail_pos = bucket_begin_[f] + --bucket_count_[f];
        const std::size_t tail = bucket_[tail_pos];
        bucket_[b] = tail;
        bucket_pos_[tail] = b;
    }

private:
    std::vector<std::size_t> seat_;
    std::vector<std::size_t> firm_;
    std::vector<std::size_t> pool_;
    std::vector<std::size_t> pool_pos_;
    std::vector<std::size_t> bucket_begin_;
    std::vector<std::size_t> bucket_count_;
    std::vector<std::size_t> bucket_;
    std::vector<std::size_t> bucket_pos_;
};

} // namespace

Assignment assign_vacancies(BoardState& state, const FirmGraph& graph,
                            std::span<const std::size_t> vacancies, double x_next, double lambda,
                            double beta, Rng& rng)
{
    if (!(x_next >= 0.0 && x_next <= 1.0)) {
        throw std::invalid_argument("inflow share must lie in [0, 1]");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in [0, 1]");
    }
    Assignment out;
    if (vacancies.empty()) {
        return out;
    }

    const std::size_t n_vac = vacancies.size();
    out.female = static_cast<std::size_t>(std::llround(x_next * static_cast<double>(n_vac)));
    out.homophilic = static_cast<std::size_t>(std::llround(lambda * static_cast<double>(out.female)));

    VacancyIndex index(state, vacancies);
    auto place = [&](std::size_t k, Seat group) {
        state.seat(index.seat(k)) = group;
        index.remove(k);
    };

    if (out.homophilic > 0) {
        FirmCounts counts = kernels::firm_counts(state);
        std::vector<std::int64_t> nb_female(graph.node_count());
        std::vector<std::int64_t> nb_occupied(graph.node_count());
        kernels::neighbor_sum(graph, counts.female, nb_female);
        kernels::neighbor_sum(graph, counts.occupied, nb_occupied);

        WeightTree tree(state.firm_count());
        auto refresh = [&](std::size_t f) {
            const double w = fstar_weight(nb_female[f], nb_occupied[f], counts.female[f],
                                          counts.occupied[f], beta);
            tree.set(f, w * static_cast<double>(index.remaining_at(f)));
        };
        for (std::size_t f = 0; f < state.firm_count(); ++f) {
            refresh(f);
        }

        for (std::size_t i = 0; i < out.homophilic; ++i) {
            std::size_t k;
            if (tree.positive_count() == 0) {
                k = index.draw_any(rng);
                ++out.fallback;
            } else {
                k = index.draw_at(tree.sample(rng), rng);
            }
            const std::size_t f = index.firm(k);
            place(k, Seat::female);
            ++counts.female[f];
            ++counts.occupied[f];
            refresh(f);
            for (NodeId j : graph.neighbors(static_cast<NodeId>(f))) {
                ++nb_female[j];
                ++nb_occupied[j];
                refresh(j);
            }
        }
    }

    for (std::size_t i = out.homophilic; i < out.female; ++i) {
        place(index.draw_any(rng), Seat::female);
    }
    for (std::size_t k : index.pool()) {
        state.seat(index.seat(k)) = Seat::male;
    }
    return out;
}

StepReport step(BoardState& state, const FirmGraph& graph, InflowState& inflow,
                const DynamicsConfig& config, Rng& rng)
{
    StepReport report;
    report.share_before = state.female_share();
    if (config.growth_mode == GrowthMode::endogenous) {
        const auto ratio = perception(state, graph, Observer::all);
        report.delta_s = ratio ? *ratio - 1.0 : 0.0;
    }

    Retirement retired = retire(state, config.retire_rate, rng);
    report.vacancies = retired.vacancies.size();
    report.lambda = lambda_schedule(report.share_before, config);
    report.x_next = grow_inflow(inflow.x, config, report.delta_s, report.vacancies);
    inflow.x = report.x_next;

    report.assignment = assign_vacancies(state, graph, retired.vacancies, report.x_next,
                                         report.lambda, config.beta, rng);
    return report;
}

} // namespace boardsim
