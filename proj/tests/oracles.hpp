#ifndef BOARDSIM_TESTS_ORACLES_HPP
#define BOARDSIM_TESTS_ORACLES_HPP

// Reference computations written independently of the library code.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "boardsim/boards.hpp"
#include "boardsim/graph.hpp"

namespace oracle {

// Principal eigenvector of the adjacency matrix by dense symmetric
// decomposition, absolute values scaled to unit max.
inline std::vector<double> dense_eigencentrality(const boardsim::FirmGraph& g)
{
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [u, v] : g.edge_list()) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    Eigen::VectorXd v = solver.eigenvectors().col(n - 1).cwiseAbs();
    v /= v.maxCoeff();
    return {v.data(), v.data() + n};
}

// Textbook two-pass Pearson correlation.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

// Own-board and pooled-neighbor female shares, computed seat by seat.
struct Shares {
    std::vector<double> own;
    std::vector<double> neighbor;
};

inline Shares firm_shares(const boardsim::BoardState& s, const boardsim::FirmGraph& g)
{
    using boardsim::Seat;
    Shares out;
    for (std::size_t f = 0; f < s.firm_count(); ++f) {
        double nf = 0, no = 0;
        for (auto j : g.neighbors(static_cast<boardsim::NodeId>(f))) {
            for (Seat seat : s.board(j)) {
                nf += seat == Seat::female;
                no += seat != Seat::vacant;
            }
        }
        if (no == 0) {
            continue;
        }
        double of = 0, oo = 0;
        for (Seat seat : s.board(f)) {
            of += seat == Seat::female;
            oo += seat != Seat::vacant;
        }
        out.own.push_back(oo > 0 ? of / oo : 0.0);
        out.neighbor.push_back(nf / no);
    }
    return out;
}

// Upper-tail probability of a binomial(n, 1/2) count >= k.
inline double sign_test_p(int k, int n)
{
    double p = 0.0;
    for (int i = k; i <= n; ++i) {
        p += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
                      n * std::log(2.0));
    }
    return p;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name)
{
    const char* env = std::getenv("BOARDSIM_TEST_TMP");
    std::filesystem::path root = env ? env : std::filesystem::temp_directory_path() / "boardsim_tests";
    auto dir = root / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace oracle

#endif
