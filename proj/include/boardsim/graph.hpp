#ifndef BOARDSIM_GRAPH_HPP
#define BOARDSIM_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace boardsim {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/**
 * Static undirected simple graph stored in compressed adjacency form.
 *
 * Node ids are dense in [0, n). Neighbor lists are sorted ascending.
 * Construction rejects self-loops, duplicate edges and out-of-range ids.
 */
class FirmGraph {
public:
    FirmGraph() = default;
    FirmGraph(std::size_t node_count, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId node) const noexcept
    {
        return {targets_.data() + offsets_[node], targets_.data() + offsets_[node + 1]};
    }

    std::size_t degree(NodeId node) const noexcept { return offsets_[node + 1] - offsets_[node]; }
    std::vector<std::size_t> degrees() const;
    double mean_degree() const noexcept;
    std::size_t min_degree() const noexcept;

    bool has_edge(NodeId a, NodeId b) const noexcept;

    // Edges with src < dst, ordered by (src, dst).
    std::vector<Edge> edge_list() const;

    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    const std::vector<NodeId>& targets() const noexcept { return targets_; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
};

enum class Group : std::uint8_t { a = 0, b = 1 };

struct GroupLabeling {
    std::vector<Group> labels;

    double fraction_a() const noexcept;
};

// Two-column `src,dst` CSV with a header row.
void write_edge_csv(std::ostream& out, const FirmGraph& graph);

} // namespace boardsim

#endif // BOARDSIM_GRAPH_HPP
