#include "boardsim/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace boardsim {

FirmGraph::FirmGraph(std::size_t node_count, std::span<const Edge> edges)
{
    std::vector<std::size_t> counts(node_count, 0);
    for (const auto& [a, b] : edges) {
        if (a >= node_count || b >= node_count) {
            throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                        ") references a node outside [0, " +
                                        std::to_string(node_count) + ")");
        }
        if (a == b) {
            throw std::invalid_argument("self-loop on node " + std::to_string(a));
        }
        ++counts[a];
        ++counts[b];
    }

    offsets_.assign(node_count + 1, 0);
    for (std::size_t i = 0; i < node_count; ++i) {
        offsets_[i + 1] = offsets_[i] + counts[i];
    }
    targets_.resize(offsets_.back());

    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        targets_[cursor[a]++] = b;
        targets_[cursor[b]++] = a;
    }

    for (std::size_t i = 0; i < node_count; ++i) {
        auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
        auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last) {
            throw std::invalid_argument("duplicate edge at node " + std::to_string(i));
        }
    }
}

std::vector<std::size_t> FirmGraph::degrees() const
{
    std::vector<std::size_t> out(node_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = degree(static_cast<NodeId>(i));
    }
    return out;
}

double FirmGraph::mean_degree() const noexcept
{
    const auto n = node_count();
    return n == 0 ? 0.0 : static_cast<double>(targets_.size()) / static_cast<double>(n);
}

std::size_t FirmGraph::min_degree() const noexcept
{
    std::size_t best = node_count() == 0 ? 0 : targets_.size();
    for (std::size_t i = 0; i < node_count(); ++i) {
        best = std::min(best, degree(static_cast<NodeId>(i)));
    }
    return best;
}

bool FirmGraph::has_edge(NodeId a, NodeId b) const noexcept
{
    if (a >= node_count() || b >= node_count()) {
        return false;
    }
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> FirmGraph::edge_list() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId i = 0; i < node_count(); ++i) {
        for (NodeId j : neighbors(i)) {
            if (i < j) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

double GroupLabeling::fraction_a() const noexcept
{
    if (labels.empty()) {
        return 0.0;
    }
    const auto count = std::count(labels.begin(), labels.end(), Group::a);
    return static_cast<double>(count) / static_cast<double>(labels.size());
}

void write_edge_csv(std::ostream& out, const FirmGraph& graph)
{
    out << "src,dst\n";
    for (const auto& [a, b] : graph.edge_list()) {
        out << a << ',' << b << '\n';
    }
}

} // namespace boardsim
