#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "boardsim/sampling.hpp"

using namespace boardsim;

TEST_SUITE("sampling")
{
    TEST_CASE("weighted draw of one follows normalized weights")
    {
        const std::vector<double> w{3.0, 1.0};
        Rng rng(5);
        const int trials = 40000;
        int first = 0;
        for (int t = 0; t < trials; ++t) {
            first += weighted_sample_without_replacement(w, 1, rng)[0] == 0;
        }
        const double sigma = std::sqrt(0.75 * 0.25 / trials);
        CHECK(std::abs(first / double(trials) - 0.75) < 4 * sigma);
    }

    TEST_CASE("successive sampling probabilities for two of three")
    {
        // P(pair {0,1}) = w0/W * w1/(W-w0) + w1/W * w0/(W-w1)
        const std::vector<double> w{1.0, 2.0, 3.0};
        const double expected = 1.0 / 6 * 2.0 / 5 + 2.0 / 6 * 1.0 / 4;
        Rng rng(6);
        const int trials = 60000;
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            const auto s = weighted_sample_without_replacement(w, 2, rng);
            hits += s == std::vector<std::size_t>{0, 1};
        }
        const double sigma = std::sqrt(expected * (1 - expected) / trials);
        CHECK(std::abs(hits / double(trials) - expected) < 4 * sigma);
    }

    TEST_CASE("zero weights wait until positives are exhausted")
    {
        const std::vector<double> w{0.0, 1.0, 0.0, 2.0};
        Rng rng(1);
        for (int t = 0; t < 100; ++t) {
            CHECK(weighted_sample_without_replacement(w, 2, rng) == std::vector<std::size_t>{1, 3});
            CHECK(weighted_sample_without_replacement(w, 3, rng).size() == 3);
        }
        CHECK_THROWS(weighted_sample_without_replacement(w, 5, rng));
    }

    TEST_CASE("uniform draw is distinct and sorted")
    {
        Rng rng(2);
        const auto s = uniform_sample_without_replacement(100, 40, rng);
        CHECK(s.size() == 40);
        CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == 40);
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(uniform_sample_without_replacement(10, 10, rng).size() == 10);
    }

    TEST_CASE("weight tree sums and selection")
    {
        WeightTree t(5);
        t.set(0, 3.0);
        t.set(1, 1.0);
        CHECK(t.total() == doctest::Approx(4.0));
        CHECK(t.positive_count() == 2);
        CHECK(t.find(0.0) == 0);
        CHECK(t.find(2.999) == 0);
        CHECK(t.find(3.0) == 1);
        CHECK(t.find(3.999) == 1);
        t.set(0, 0.0);
        CHECK(t.positive_count() == 1);
        CHECK(t.find(0.0) == 1);

        WeightTree u(2);
        u.set(0, 3.0);
        u.set(1, 1.0);
        Rng rng(3);
        const int trials = 40000;
        int first = 0;
        for (int i = 0; i < trials; ++i) first += u.sample(rng) == 0;
        CHECK(std::abs(first / double(trials) - 0.75) < 4 * std::sqrt(0.75 * 0.25 / trials));
    }

    TEST_CASE("weight tree stays exact through many updates")
    {
        WeightTree t(64);
        Rng rng(4);
        std::vector<double> w(64, 0.0);
        for (int i = 0; i < 20000; ++i) {
            const auto k = uniform_index(rng, 64);
            w[k] = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng);
            t.set(k, w[k]);
        }
        double sum = 0.0;
        for (double x : w) sum += x;
        CHECK(t.total() == doctest::Approx(sum).epsilon(1e-12));
        for (std::size_t k = 0; k < 64; ++k) {
            if (w[k] > 0) {
                double prefix = 0.0;
                for (std::size_t j = 0; j < k; ++j) prefix += w[j];
                CHECK(t.find(prefix + 0.5 * w[k]) == k);
            }
        }
    }
}
