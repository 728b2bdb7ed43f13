#ifndef STYLO_TREE_HPP
#define STYLO_TREE_HPP

#include <string>
#include <vector>

#include "stylo/distance.hpp"

namespace stylo {

// Unrooted tree with labeled leaves and non-negative branch lengths.
struct UnrootedTree {
    struct Node {
        std::string label; // empty for internal nodes
        bool is_leaf() const { return !label.empty(); }
    };
    struct Edge {
        std::size_t a = 0;
        std::size_t b = 0;
        double length = 0.0;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;
    std::vector<std::string> leaf_labels() const;

    // Path-length matrix between leaves, rows/cols in `labels` order.
    DistanceMatrix path_lengths() const;
};

// Canonical neighbor joining over the Q-criterion; negative branch lengths
// are clamped to zero. Requires at least 3 labels.
UnrootedTree neighbor_joining(const DistanceMatrix& m);

// Newick serialization: rooted at the internal node adjacent to the
// lexicographically smallest leaf, children ordered by their smallest
// descendant label, branch lengths with up to 6 decimals.
std::string export_newick(const UnrootedTree& t);

UnrootedTree parse_newick(const std::string& text);

struct TreeLayout {
    struct PlacedNode {
        double x = 0.0;
        double y = 0.0;
        std::string label;
    };
    std::vector<PlacedNode> nodes; // indices follow the tree's nodes
    std::vector<UnrootedTree::Edge> edges;
};

// Equal-angle unrooted layout: each subtree gets an angular wedge
// proportional to its leaf count; drawn edge lengths equal branch lengths.
TreeLayout layout_tree(const UnrootedTree& t);

std::string layout_to_svg(const TreeLayout& layout);
std::string tree_to_dot(const UnrootedTree& t);

} // namespace stylo

#endif
