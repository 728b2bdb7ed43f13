#include "stylo/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "stylo/errors.hpp"

namespace stylo {

std::vector<std::vector<std::pair<std::size_t, double>>> UnrootedTree::adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes.size());
    for (const auto& e : edges) {
        adj[e.a].emplace_back(e.b, e.length);
        adj[e.b].emplace_back(e.a, e.length);
    }
    return adj;
}

std::vector<std::string> UnrootedTree::leaf_labels() const {
    std::vector<std::string> out;
    for (const auto& n : nodes)
        if (n.is_leaf()) out.push_back(n.label);
    std::sort(out.begin(), out.end());
    return out;
}

DistanceMatrix UnrootedTree::path_lengths() const {
    auto adj = adjacency();
    std::vector<std::size_t> leaves;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_leaf()) leaves.push_back(i);
    std::sort(leaves.begin(), leaves.end(), [&](std::size_t a, std::size_t b) {
        return nodes[a].label < nodes[b].label;
    });

    DistanceMatrix m;
    for (std::size_t l : leaves) m.labels.push_back(nodes[l].label);
    m.d.assign(leaves.size(), std::vector<double>(leaves.size(), 0.0));

    for (std::size_t li = 0; li < leaves.size(); ++li) {
        // DFS distances from this leaf
        std::vector<double> dist(nodes.size(), -1.0);
        std::vector<std::size_t> stack = {leaves[li]};
        dist[leaves[li]] = 0.0;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : adj[u])
                if (dist[v] < 0.0) {
                    dist[v] = dist[u] + w;
                    stack.push_back(v);
                }
        }
        for (std::size_t lj = 0; lj < leaves.size(); ++lj)
            m.d[li][lj] = li == lj ? 0.0 : dist[leaves[lj]];
    }
    return m;
}

UnrootedTree neighbor_joining(const DistanceMatrix& matrix) {
    matrix.validate();
    const std::size_t n = matrix.size();
    if (n < 3)
        throw ValidationError("neighbor_joining: need at least 3 labels, got " +
                              std::to_string(n));

    UnrootedTree tree;
    struct Cluster {
        std::size_t node; // index into tree.nodes
    };
    std::vector<Cluster> active;
    std::vector<std::vector<double>> d = matrix.d;
    for (std::size_t i = 0; i < n; ++i) {
        tree.nodes.push_back({matrix.labels[i]});
        active.push_back({i});
    }

    auto clamp0 = [](double x) { return x < 0.0 ? 0.0 : x; };

    while (active.size() > 3) {
        const std::size_t r = active.size();
        std::vector<double> rowsum(r, 0.0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) rowsum[i] += d[i][j];

        double best_q = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                const double q = (static_cast<double>(r) - 2.0) * d[i][j] -
                                 rowsum[i] - rowsum[j];
                if (q < best_q - 1e-15) { best_q = q; bi = i; bj = j; }
            }

        const double dij = d[bi][bj];
        const double li = clamp0(0.5 * dij + (rowsum[bi] - rowsum[bj]) /
                                                 (2.0 * (static_cast<double>(r) - 2.0)));
        const double lj = clamp0(dij - li);

        const std::size_t parent = tree.nodes.size();
        tree.nodes.push_back({""});
        tree.edges.push_back({active[bi].node, parent, li});
        tree.edges.push_back({active[bj].node, parent, lj});

        // distances from the new cluster to the remaining ones
        std::vector<double> dnew;
        for (std::size_t k = 0; k < r; ++k) {
            if (k == bi || k == bj) continue;
            dnew.push_back(0.5 * (d[bi][k] + d[bj][k] - dij));
        }

        std::vector<std::vector<double>> d2;
        std::vector<Cluster> active2;
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < r; ++k)
            if (k != bi && k != bj) keep.push_back(k);
        const std::size_t r2 = keep.size() + 1;
        d2.assign(r2, std::vector<double>(r2, 0.0));
        for (std::size_t a = 0; a < keep.size(); ++a) {
            active2.push_back(active[keep[a]]);
            for (std::size_t b = 0; b < keep.size(); ++b)
                d2[a][b] = d[keep[a]][keep[b]];
            d2[a][r2 - 1] = d2[r2 - 1][a] = clamp0(dnew[a]);
        }
        active2.push_back({parent});
        d = std::move(d2);
        active = std::move(active2);
    }

    // final three-way join via the three-point formulas
    const double dab = d[0][1], dac = d[0][2], dbc = d[1][2];
    const std::size_t center = tree.nodes.size();
    tree.nodes.push_back({""});
    tree.edges.push_back({active[0].node, center, clamp0(0.5 * (dab + dac - dbc))});
    tree.edges.push_back({active[1].node, center, clamp0(0.5 * (dab + dbc - dac))});
    tree.edges.push_back({active[2].node, center, clamp0(0.5 * (dac + dbc - dab))});
    return tree;
}

namespace {

std::string format_length(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << x;
    std::string s = os.str();
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

// Smallest leaf label in the subtree reached from `node` coming from `from`.
std::string smallest_descendant(
    const UnrootedTree& t,
    const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
    std::size_t node, std::size_t from) {
    if (t.nodes[node].is_leaf()) return t.nodes[node].label;
    std::string best;
    for (const auto& [next, _] : adj[node]) {
        if (next == from) continue;
        std::string s = smallest_descendant(t, adj, next, node);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

void write_newick(const UnrootedTree& t,
                  const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                  std::size_t node, std::size_t from, std::ostringstream& out) {
    if (t.nodes[node].is_leaf()) {
        out << t.nodes[node].label;
        return;
    }
    std::vector<std::pair<std::size_t, double>> children;
    for (const auto& [next, len] : adj[node])
        if (next != from) children.emplace_back(next, len);
    std::stable_sort(children.begin(), children.end(),
                     [&](const auto& a, const auto& b) {
                         return smallest_descendant(t, adj, a.first, node) <
                                smallest_descendant(t, adj, b.first, node);
                     });
    out << '(';
    bool first = true;
    for (const auto& [child, len] : children) {
        if (!first) out << ',';
        first = false;
        write_newick(t, adj, child, node, out);
        out << ':' << format_length(len);
    }
    out << ')';
}

} // namespace

std::string export_newick(const UnrootedTree& t) {
    if (t.nodes.empty()) throw ValidationError("export_newick: empty tree");
    auto adj = t.adjacency();

    // smallest leaf, then the internal node next to it as the root
    std::size_t smallest = t.nodes.size();
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].is_leaf() &&
            (smallest == t.nodes.size() || t.nodes[i].label < t.nodes[smallest].label))
            smallest = i;
    if (smallest == t.nodes.size())
        throw ValidationError("export_newick: tree has no leaves");
    if (adj[smallest].empty())
        throw ValidationError("export_newick: disconnected leaf");
    std::size_t root = adj[smallest][0].first;
    if (t.nodes[root].is_leaf()) root = smallest; // two-node tree

    std::ostringstream out;
    write_newick(t, adj, root, root, out);
    out << ';';
    return out.str();
}

namespace {

struct NewickParser {
    const std::string& text;
    std::size_t pos = 0;
    UnrootedTree tree;

    explicit NewickParser(const std::string& s) : text(s) {}

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    char take() { return pos < text.size() ? text[pos++] : '\0'; }

    std::size_t parse_node() {
        if (peek() == '(') {
            take();
            const std::size_t me = tree.nodes.size();
            tree.nodes.push_back({""});
            while (true) {
                const std::size_t child = parse_node();
                double len = 0.0;
                if (peek() == ':') {
                    take();
                    len = parse_number();
                }
                tree.edges.push_back({me, child, len});
                if (peek() == ',') { take(); continue; }
                break;
            }
            if (take() != ')')
                throw ValidationError("parse_newick: expected ')' at position " +
                                      std::to_string(pos));
            // optional internal label, ignored
            while (peek() != '\0' && peek() != ':' && peek() != ',' &&
                   peek() != ')' && peek() != ';')
                take();
            return me;
        }
        std::string label;
        while (peek() != '\0' && peek() != ':' && peek() != ',' &&
               peek() != ')' && peek() != ';')
            label.push_back(take());
        if (label.empty())
            throw ValidationError("parse_newick: empty label at position " +
                                  std::to_string(pos));
        tree.nodes.push_back({label});
        return tree.nodes.size() - 1;
    }

    double parse_number() {
        std::size_t start = pos;
        while (peek() != '\0' && peek() != ',' && peek() != ')' && peek() != ';')
            take();
        return std::stod(text.substr(start, pos - start));
    }
};

} // namespace

UnrootedTree parse_newick(const std::string& text) {
    NewickParser p(text);
    p.parse_node();
    if (p.peek() != ';')
        throw ValidationError("parse_newick: missing terminating ';'");
    return std::move(p.tree);
}

namespace {

std::size_t count_leaves(
    const UnrootedTree& t,
    const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
    std::size_t node, std::size_t from) {
    if (t.nodes[node].is_leaf()) return 1;
    std::size_t n = 0;
    for (const auto& [next, _] : adj[node])
        if (next != from) n += count_leaves(t, adj, next, node);
    return n;
}

void place(const UnrootedTree& t,
           const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
           std::size_t node, std::size_t from, double x, double y,
           double angle_from, double angle_to, TreeLayout& layout) {
    layout.nodes[node].x = x;
    layout.nodes[node].y = y;
    layout.nodes[node].label = t.nodes[node].label;

    std::vector<std::pair<std::size_t, double>> children;
    for (const auto& [next, len] : adj[node])
        if (next != from) children.emplace_back(next, len);
    std::stable_sort(children.begin(), children.end(),
                     [&](const auto& a, const auto& b) {
                         return smallest_descendant(t, adj, a.first, node) <
                                smallest_descendant(t, adj, b.first, node);
                     });
    std::size_t total = 0;
    for (const auto& [child, _] : children)
        total += count_leaves(t, adj, child, node);
    if (total == 0) return;

    double angle = angle_from;
    for (const auto& [child, len] : children) {
        const std::size_t leaves = count_leaves(t, adj, child, node);
        const double span = (angle_to - angle_from) *
                            static_cast<double>(leaves) / static_cast<double>(total);
        const double mid = angle + span / 2.0;
        place(t, adj, child, node, x + len * std::cos(mid), y + len * std::sin(mid),
              angle, angle + span, layout);
        angle += span;
    }
}

} // namespace

TreeLayout layout_tree(const UnrootedTree& t) {
    if (t.nodes.empty()) throw ValidationError("layout_tree: empty tree");
    auto adj = t.adjacency();

    // deterministic root: internal node next to the smallest leaf
    std::size_t smallest = 0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].is_leaf() &&
            (!t.nodes[smallest].is_leaf() || t.nodes[i].label < t.nodes[smallest].label))
            smallest = i;
    std::size_t root = adj[smallest].empty() ? smallest : adj[smallest][0].first;
    if (t.nodes[root].is_leaf()) root = smallest;

    TreeLayout layout;
    layout.nodes.resize(t.nodes.size());
    layout.edges = t.edges;
    place(t, adj, root, root, 0.0, 0.0, 0.0, 2.0 * std::acos(-1.0), layout);
    return layout;
}

std::string layout_to_svg(const TreeLayout& layout) {
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (const auto& n : layout.nodes) {
        minx = std::min(minx, n.x);
        maxx = std::max(maxx, n.x);
        miny = std::min(miny, n.y);
        maxy = std::max(maxy, n.y);
    }
    const double span = std::max(std::max(maxx - minx, maxy - miny), 1e-9);
    const double size = 800.0, margin = 80.0;
    const double scale = (size - 2.0 * margin) / span;
    auto px = [&](double x) { return margin + (x - minx) * scale; };
    auto py = [&](double y) { return margin + (y - miny) * scale; };

    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
        << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << " " << size
        << "\">\n";
    for (const auto& e : layout.edges) {
        const auto& a = layout.nodes[e.a];
        const auto& b = layout.nodes[e.b];
        out << "  <line x1=\"" << px(a.x) << "\" y1=\"" << py(a.y) << "\" x2=\""
            << px(b.x) << "\" y2=\"" << py(b.y)
            << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& n : layout.nodes) {
        if (n.label.empty()) continue;
        out << "  <circle cx=\"" << px(n.x) << "\" cy=\"" << py(n.y)
            << "\" r=\"3\" fill=\"black\"/>\n";
        out << "  <text x=\"" << px(n.x) + 6 << "\" y=\"" << py(n.y) + 4
            << "\" font-family=\"sans-serif\" font-size=\"13\">" << n.label
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string tree_to_dot(const UnrootedTree& t) {
    std::ostringstream out;
    out << "graph tree {\n  layout=neato;\n  node [shape=point];\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].is_leaf())
            out << "  n" << i << " [shape=plaintext, label=\"" << t.nodes[i].label
                << "\"];\n";
    out << std::fixed << std::setprecision(6);
    for (const auto& e : t.edges)
        out << "  n" << e.a << " -- n" << e.b << " [len=" << e.length << "];\n";
    out << "}\n";
    return out.str();
}

} // namespace stylo
