#pragma once

#include "hatlab/bitset.hpp"
#include "hatlab/rational.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace hatlab::graph {

/// Dense adjacency budget: rows are bitsets, so memory is vcount^2 bits.
inline constexpr std::size_t max_vertices = std::size_t{1} << 14;
inline constexpr std::size_t max_mis_vertices = 4096;

/// Undirected graph with explicit self-loops.  A looped vertex is adjacent
/// to itself and therefore never belongs to an independent set.
class Graph
{
public:
    Graph() = default;
    Graph(std::size_t vcount, std::string label);

    std::size_t vcount() const { return rows_.size(); }
    const std::string & label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// u == v adds a self-loop.
    void add_edge(std::size_t u, std::size_t v);

    bool adjacent(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
    bool has_loop(std::size_t v) const { return loops_.test(v); }

    /// Row of v; contains v itself iff v has a self-loop.
    const Bitset & row(std::size_t v) const { return rows_[v]; }
    const Bitset & loops() const { return loops_; }

    /// Vertices without a self-loop.
    Bitset loop_free() const;

    /// Neighbours other than v itself.
    std::size_t degree(std::size_t v) const;
    /// Edges between distinct vertices.
    std::size_t edge_count() const;
    std::size_t loop_count() const { return loops_.count(); }

    bool is_independent(const Bitset & set) const;

    friend bool operator==(const Graph & a, const Graph & b)
    {
        return a.rows_ == b.rows_ && a.loops_ == b.loops_;
    }

private:
    std::vector<Bitset> rows_;
    Bitset loops_;
    std::string label_;
};

/// Vertices {0,1}^n; x ~ y iff x & y == 0.  The all-zero vertex is looped.
Graph kneser(unsigned n);

/// Cartesian (Hamming) product, vertex (g, h) -> g * |H| + h.
Graph hamming_product(const Graph & g, const Graph & h);

/// t-fold product G □ ... □ G; t = 1 returns G.
Graph hamming_power(const Graph & g, unsigned t);

/// Vertices [m] x [m], (i,j) -> i*m + j; edges {(i,j),(j,k)} with i != k.
Graph shift_graph(unsigned m);

Graph complete_graph(std::size_t m);
Graph edgeless_graph(std::size_t m);

/// G(n, p): each unordered pair independently, pairs drawn in (u < v)
/// lexicographic order from one seeded stream.
Graph random_graph(std::size_t n, double p, std::uint64_t seed);

/// Subgraph induced on `keep`, relabelled to 0..|keep|-1 in increasing order.
Graph induced_subgraph(const Graph & g, const Bitset & keep);

struct MisResult
{
    Bitset set;
    std::size_t size = 0;
    Rational alpha_bar;
    std::uint64_t nodes_explored = 0;
};

/// Exact maximum independent set by branch and bound.  With `within`, the
/// search is restricted to that vertex subset; alpha_bar is still size over
/// the full vertex count.
MisResult max_independent_set(const Graph & g, const Bitset * within = nullptr);

/// Calls visit(set) once per inclusion-maximal independent set (loop-free
/// vertices only); stops early and returns false if visit returns false.
bool for_each_maximal_independent_set(const Graph & g, const std::function<bool(const Bitset &)> & visit);

/// All independent sets of size exactly `size`, in increasing-index order of
/// their sorted member lists.  Throws UnsupportedSize past `cap` results.
std::vector<Bitset> independent_sets_of_size(const Graph & g, std::size_t size, std::size_t cap);

// Text format:
//   hatlab-graph <vcount>
//   <v>: <neighbour> <neighbour> ...      (v listed in its own row = loop)
// one line per vertex, neighbours ascending.
void write_adjacency_text(const Graph & g, std::ostream & out);
Graph read_adjacency_text(std::istream & in);

// Binary format: "HLG1", u32 vcount, then vcount rows of ceil(vcount/64)
// u64 words, all little-endian.  Bit v of row v is the self-loop flag.
void write_binary(const Graph & g, std::ostream & out);
Graph read_binary(std::istream & in);

} // namespace hatlab::graph
