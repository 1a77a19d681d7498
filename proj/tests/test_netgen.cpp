#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "boardsim/netgen.hpp"
#include "oracles.hpp"

using namespace boardsim;

namespace {

bool undirected_and_covered(const FirmGraph& g)
{
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (g.degree(u) < 1) {
            return false;
        }
        for (NodeId v : g.neighbors(u)) {
            if (!g.has_edge(v, u)) {
                return false;
            }
        }
    }
    return true;
}

bool connected(const FirmGraph& g)
{
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == g.node_count();
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<std::size_t> a, std::vector<std::size_t> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const std::size_t x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

struct GroupDegrees {
    double mean_a = 0.0;
    double mean_b = 0.0;
};

GroupDegrees group_degrees(const HomophilyGraph& hg)
{
    double sum[2] = {0, 0}, cnt[2] = {0, 0};
    for (NodeId u = 0; u < hg.graph.node_count(); ++u) {
        const int g = static_cast<int>(hg.groups.labels[u]);
        sum[g] += static_cast<double>(hg.graph.degree(u));
        cnt[g] += 1;
    }
    return {sum[0] / cnt[0], sum[1] / cnt[1]};
}

int minority_in_top(const HomophilyGraph& hg, std::size_t k)
{
    std::vector<NodeId> order(hg.graph.node_count());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](NodeId x, NodeId y) { return hg.graph.degree(x) > hg.graph.degree(y); });
    int count = 0;
    for (std::size_t i = 0; i < k; ++i) count += hg.groups.labels[order[i]] == Group::a;
    return count;
}

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double>& v)
{
    const double n = static_cast<double>(v.size());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / (n - 1) / n)};
}

} // namespace

TEST_SUITE("netgen")
{
    TEST_CASE("gen_ba small tree")
    {
        Rng rng(1);
        const auto g = gen_ba(3, 1, rng);
        CHECK(g.node_count() == 3);
        CHECK(g.edge_count() == 2);
        const auto d = g.degrees();
        CHECK(std::accumulate(d.begin(), d.end(), std::size_t{0}) == 4);
        CHECK(connected(g));
    }

    TEST_CASE("gen_ba rejects an unseedable size")
    {
        Rng rng(1);
        CHECK_THROWS_AS(gen_ba(3, 3, rng), std::invalid_argument);
        CHECK_THROWS_AS(gen_ba(2, 3, rng), std::invalid_argument);
        CHECK_THROWS_AS(gen_ba(5, 0, rng), std::invalid_argument);
    }

    TEST_CASE("gen_ba structure")
    {
        Rng rng(11);
        const auto g = gen_ba(2000, 3, rng);
        CHECK(g.edge_count() == 6 + 3 * (2000 - 4)); // seed clique on 4 nodes
        CHECK(g.min_degree() == 3);
        CHECK(undirected_and_covered(g));
        CHECK(connected(g));
    }

    TEST_CASE("gen_ba degree tail exponent")
    {
        Rng rng(2024);
        const auto g = gen_ba(10000, 3, rng);
        const auto d = g.degrees();
        const double alpha = fit_tail_exponent(d, 10);
        CHECK(alpha >= 2.7);
        CHECK(alpha <= 3.3);
    }

    TEST_CASE("older nodes grow as the square root of relative age")
    {
        const int runs = 300;
        double k100 = 0.0, k400 = 0.0;
        for (int r = 0; r < runs; ++r) {
            Rng rng(make_rng(99, r, Stream::network));
            const auto g = gen_ba(2000, 3, rng);
            k100 += static_cast<double>(g.degree(100));
            k400 += static_cast<double>(g.degree(400));
        }
        CHECK(k100 / k400 == doctest::Approx(2.0).epsilon(0.1));
    }

    TEST_CASE("constant fitness reproduces gen_ba")
    {
        for (std::uint64_t seed : {1u, 5u, 77u}) {
            Rng a(seed), b(seed);
            const std::vector<double> eta(10, 1.0);
            CHECK(gen_ba(10, 1, a).edge_list() == gen_fitness_ba(10, 1, eta, b).edge_list());
        }
        Rng a(3), b(3);
        const std::vector<double> eta(500, 2.5);
        CHECK(gen_ba(500, 3, a).edge_list() == gen_fitness_ba(500, 3, eta, b).edge_list());
    }

    TEST_CASE("constant fitness matches gen_ba in distribution")
    {
        std::vector<std::size_t> ba, fit;
        const std::vector<double> eta(500, 1.0);
        for (int r = 0; r < 100; ++r) {
            Rng a(make_rng(1, r, Stream::network));
            Rng b(make_rng(2, r, Stream::network));
            const auto da = gen_ba(500, 2, a).degrees();
            const auto db = gen_fitness_ba(500, 2, eta, b).degrees();
            ba.insert(ba.end(), da.begin(), da.end());
            fit.insert(fit.end(), db.begin(), db.end());
        }
        const double n = static_cast<double>(ba.size());
        // Critical value of the two-sample KS test at p = 0.01.
        const double critical = 1.628 * std::sqrt(2.0 / n);
        CHECK(ks_statistic(ba, fit) < critical);
    }

    TEST_CASE("a fitter late node overtakes its cohort")
    {
        const int runs = 200;
        const NodeId late = 500;
        int wins = 0;
        for (int r = 0; r < runs; ++r) {
            std::vector<double> eta(1000, 1.0);
            eta[late] = 10.0;
            Rng rng(make_rng(5, r, Stream::network));
            const auto g = gen_fitness_ba(1000, 2, eta, rng);
            std::vector<std::size_t> cohort;
            for (NodeId u = late - 25; u <= late + 25; ++u) {
                if (u != late) cohort.push_back(g.degree(u));
            }
            std::nth_element(cohort.begin(), cohort.begin() + cohort.size() / 2, cohort.end());
            wins += g.degree(late) > cohort[cohort.size() / 2];
        }
        CHECK(wins >= 190);
    }

    TEST_CASE("fitness must be positive")
    {
        Rng rng(1);
        std::vector<double> eta(10, 1.0);
        eta[4] = 0.0;
        CHECK_THROWS_AS(gen_fitness_ba(10, 1, eta, rng), std::invalid_argument);
        eta[4] = -1.0;
        CHECK_THROWS_AS(gen_fitness_ba(10, 1, eta, rng), std::invalid_argument);
        CHECK_THROWS_AS(gen_fitness_ba(10, 1, std::vector<double>(9, 1.0), rng), std::invalid_argument);
    }

    TEST_CASE("neutral homophily gives equal group degrees")
    {
        std::vector<double> a, b;
        for (int r = 0; r < 50; ++r) {
            Rng rng(make_rng(31, r, Stream::network));
            const auto gd = group_degrees(gen_homophily_ba(5000, 2, 0.3, 0.5, rng));
            a.push_back(gd.mean_a);
            b.push_back(gd.mean_b);
        }
        const auto ma = mean_se(a), mb = mean_se(b);
        CHECK(std::abs(ma.mean - mb.mean) <= 1.96 * (ma.se + mb.se));
    }

    TEST_CASE("strong homophily lowers minority degree")
    {
        int lower = 0;
        double top_share = 0.0;
        const int runs = 50;
        for (int r = 0; r < runs; ++r) {
            Rng rng(make_rng(32, r, Stream::network));
            const auto hg = gen_homophily_ba(5000, 2, 0.3, 0.9, rng);
            const auto gd = group_degrees(hg);
            lower += gd.mean_a < gd.mean_b;
            top_share += minority_in_top(hg, 10) / 10.0 / runs;
        }
        CHECK(lower == runs);
        // Under-represented among hubs relative to the 30% population share.
        CHECK(top_share < 0.3);
    }

    TEST_CASE("no minority node among the ten highest degrees in most runs")
    {
        int no_hub = 0;
        const int runs = 50;
        for (int r = 0; r < runs; ++r) {
            Rng rng(make_rng(32, r, Stream::network));
            no_hub += minority_in_top(gen_homophily_ba(5000, 2, 0.3, 0.9, rng), 10) == 0;
        }
        CHECK_MESSAGE(no_hub > runs / 2, "runs without a minority hub: " << no_hub << " of " << runs);
    }

    TEST_CASE("full homophily only crosses groups through the seed or the fallback")
    {
        for (int r = 0; r < 20; ++r) {
            Rng rng(make_rng(33, r, Stream::network));
            const auto hg = gen_homophily_ba(2000, 2, 0.3, 1.0, rng);
            std::size_t cross = 0;
            for (const auto& [u, v] : hg.graph.edge_list()) {
                cross += hg.groups.labels[u] != hg.groups.labels[v];
            }
            CHECK(cross <= hg.seed_edges + hg.fallback_edges);
            CHECK(undirected_and_covered(hg.graph));
        }
    }

    TEST_CASE("homophily labels follow f_a")
    {
        Rng rng(8);
        const auto hg = gen_homophily_ba(20000, 2, 0.3, 0.7, rng);
        CHECK(hg.groups.fraction_a() == doctest::Approx(0.3).epsilon(0.05));
        Rng bad(1);
        CHECK_THROWS_AS(gen_homophily_ba(100, 2, 0.0, 0.5, bad), std::invalid_argument);
        CHECK_THROWS_AS(gen_homophily_ba(100, 2, 0.3, 1.5, bad), std::invalid_argument);
    }

    TEST_CASE("generators are pure functions of the seed")
    {
        Rng a(42), b(42);
        CHECK(gen_ba(3000, 3, a).edge_list() == gen_ba(3000, 3, b).edge_list());
        Rng c(42), d(42);
        const auto hc = gen_homophily_ba(3000, 2, 0.3, 0.8, c);
        const auto hd = gen_homophily_ba(3000, 2, 0.3, 0.8, d);
        CHECK(hc.graph.edge_list() == hd.graph.edge_list());
        CHECK(hc.groups.labels == hd.groups.labels);
    }

    TEST_CASE("hurwitz zeta against known values")
    {
        CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
        CHECK(hurwitz_zeta(3.0, 1.0) == doctest::Approx(1.2020569031595942).epsilon(1e-13));
        // zeta(s, q) - zeta(s, q + 1) = q^-s
        CHECK(hurwitz_zeta(2.5, 10.0) - hurwitz_zeta(2.5, 11.0) ==
              doctest::Approx(std::pow(10.0, -2.5)).epsilon(1e-10));
    }

    TEST_CASE("tail fit recovers an exact power law")
    {
        // Inverse-CDF sampling from p(k) ~ k^-3 on k >= 1 using a directly summed table.
        const std::size_t kmax = 1000000;
        std::vector<double> cdf(kmax);
        double acc = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            acc += std::pow(static_cast<double>(k), -3.0);
            cdf[k - 1] = acc;
        }
        Rng rng(17);
        std::vector<std::size_t> sample(100000);
        for (auto& k : sample) {
            const double u = uniform01(rng) * acc;
            k = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) + 1;
        }
        CHECK(fit_tail_exponent(sample, 1) == doctest::Approx(3.0).epsilon(0.1 / 3.0));
    }

    TEST_CASE("tail fit rejects degenerate input")
    {
        CHECK_THROWS_AS(fit_tail_exponent(std::vector<std::size_t>(500, 4), 2), std::invalid_argument);
        CHECK_THROWS_AS(fit_tail_exponent(std::vector<std::size_t>(49, 10), 2), std::invalid_argument);
        std::vector<std::size_t> few(1000, 1);
        few[0] = 20;
        CHECK_THROWS_AS(fit_tail_exponent(few, 10), std::invalid_argument);
    }

    TEST_CASE("board sizes match the log-normal moments")
    {
        Rng rng(4);
        const auto sizes = sample_board_sizes(100000, 12.5, 20.6, 3, rng);
        double m = 0.0;
        for (auto s : sizes) m += static_cast<double>(s);
        m /= static_cast<double>(sizes.size());
        double v = 0.0;
        for (auto s : sizes) v += (static_cast<double>(s) - m) * (static_cast<double>(s) - m);
        v /= static_cast<double>(sizes.size() - 1);
        CHECK(m == doctest::Approx(12.5).epsilon(0.2 / 12.5));
        CHECK(v == doctest::Approx(20.6).epsilon(1.5 / 20.6));
        CHECK(*std::min_element(sizes.begin(), sizes.end()) >= 3);
    }

    TEST_CASE("board size rounding and clamping")
    {
        CHECK(round_board_size(1.7, 3) == 3);
        CHECK(round_board_size(3.49, 3) == 3);
        CHECK(round_board_size(12.5, 3) == 13);
        CHECK(round_board_size(12.49, 3) == 12);
        const auto p = lognormal_from_moments(12.5, 20.6);
        CHECK(std::exp(p.mu + 0.5 * p.sigma * p.sigma) == doctest::Approx(12.5));
        // Degenerate spread: every draw rounds to a neighbour of the mean.
        Rng rng(9);
        for (auto s : sample_board_sizes(1000, 12.5, 1e-12, 3, rng)) CHECK((s == 12 || s == 13));
        const auto flat = sample_board_sizes(1000, 12.3, 1e-12, 3, rng);
        CHECK(std::all_of(flat.begin(), flat.end(), [](auto s) { return s == 12; }));
    }

    TEST_CASE("rank coupling of sizes to degrees")
    {
        const std::vector<std::size_t> degrees{5, 1, 3};
        CHECK(couple_sizes_to_degrees(degrees, std::vector<std::size_t>{4, 9, 6}) ==
              std::vector<std::size_t>{9, 4, 6});
        CHECK(couple_sizes_to_degrees(degrees, std::vector<std::size_t>{6, 4, 9}) ==
              std::vector<std::size_t>{9, 4, 6});
        const std::vector<std::size_t> flat{2, 2, 2, 2};
        CHECK(couple_sizes_to_degrees(flat, std::vector<std::size_t>{3, 8, 5, 4}) ==
              std::vector<std::size_t>{8, 5, 4, 3});
        CHECK_THROWS_AS(couple_sizes_to_degrees(flat, std::vector<std::size_t>{3}), std::invalid_argument);
    }

    TEST_CASE("coupling preserves the multiset and the rank order")
    {
        Rng rng(12);
        const auto g = gen_ba(1000, 3, rng);
        const auto sizes = sample_board_sizes(1000, 12.5, 20.6, 3, rng);
        const auto coupled = couple_sizes_to_degrees(g, sizes);
        auto a = sizes, b = coupled;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        for (NodeId u = 0; u < 1000; ++u) {
            for (NodeId v = 0; v < 1000; v += 37) {
                if (g.degree(u) > g.degree(v)) {
                    CHECK(coupled[u] >= coupled[v]);
                }
            }
        }
    }
}
