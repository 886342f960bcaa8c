#include "hatlab/graph.hpp"

#include "hatlab/errors.hpp"
#include "hatlab/rng.hpp"

#include <string>

namespace hatlab::graph {

namespace {

void check_budget(std::size_t vcount, const std::string & what)
{
    if (vcount > max_vertices)
        throw UnsupportedSize(what + ": " + std::to_string(vcount) + " vertices exceeds the dense adjacency limit of "
                              + std::to_string(max_vertices));
}

} // namespace

Graph::Graph(std::size_t vcount, std::string label) :
    rows_(vcount, Bitset(vcount)),
    loops_(vcount),
    label_(std::move(label))
{
}

void Graph::add_edge(std::size_t u, std::size_t v)
{
    rows_[u].set(v);
    rows_[v].set(u);
    if (u == v)
        loops_.set(u);
}

Bitset Graph::loop_free() const
{
    Bitset out(vcount());
    out.set_all();
    out.subtract(loops_);
    return out;
}

std::size_t Graph::degree(std::size_t v) const
{
    return rows_[v].count() - (has_loop(v) ? 1 : 0);
}

std::size_t Graph::edge_count() const
{
    std::size_t total = 0;
    for (std::size_t v = 0; v < vcount(); ++v)
        total += degree(v);
    return total / 2;
}

bool Graph::is_independent(const Bitset & set) const
{
    bool ok = true;
    set.for_each([&](std::size_t v) {
        if (ok && rows_[v].intersects(set))
            ok = false;
    });
    return ok;
}

Graph kneser(unsigned n)
{
    if (n < 1 || n > 13)
        throw UnsupportedSize("kneser: n must be in [1, 13], got " + std::to_string(n));
    const std::size_t size = std::size_t{1} << n;
    Graph g(size, "kneser(" + std::to_string(n) + ")");
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = x; y < size; ++y)
            if ((x & y) == 0)
                g.add_edge(x, y);
    return g;
}

Graph hamming_product(const Graph & g, const Graph & h)
{
    const std::size_t gv = g.vcount(), hv = h.vcount();
    if (gv != 0 && hv > max_vertices / gv)
        throw UnsupportedSize("hamming_product: " + std::to_string(gv) + " x " + std::to_string(hv)
                              + " vertices exceeds the dense adjacency limit of " + std::to_string(max_vertices));
    Graph out(gv * hv, "(" + g.label() + ")x(" + h.label() + ")");
    for (std::size_t x = 0; x < gv; ++x)
        for (std::size_t v = 0; v < hv; ++v) {
            const std::size_t self = x * hv + v;
            h.row(v).for_each([&](std::size_t u) {
                if (u >= v)
                    out.add_edge(self, x * hv + u);
            });
            g.row(x).for_each([&](std::size_t y) {
                if (y >= x)
                    out.add_edge(self, y * hv + v);
            });
        }
    return out;
}

Graph hamming_power(const Graph & g, unsigned t)
{
    if (t < 1)
        throw std::invalid_argument("hamming_power: t must be >= 1");
    Graph out = g;
    for (unsigned i = 1; i < t; ++i)
        out = hamming_product(out, g);
    out.set_label(g.label() + "^" + std::to_string(t));
    return out;
}

Graph shift_graph(unsigned m)
{
    if (m < 2 || m > 64)
        throw UnsupportedSize("shift_graph: m must be in [2, 64], got " + std::to_string(m));
    Graph g(std::size_t{m} * m, "shift(" + std::to_string(m) + ")");
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            for (unsigned k = 0; k < m; ++k)
                if (i != k)
                    g.add_edge(std::size_t{i} * m + j, std::size_t{j} * m + k);
    return g;
}

Graph complete_graph(std::size_t m)
{
    check_budget(m, "complete_graph");
    Graph g(m, "complete(" + std::to_string(m) + ")");
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v)
            g.add_edge(u, v);
    return g;
}

Graph edgeless_graph(std::size_t m)
{
    check_budget(m, "edgeless_graph");
    return Graph(m, "edgeless(" + std::to_string(m) + ")");
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed)
{
    if (! (p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("random_graph: p must be in [0, 1]");
    if (n > max_mis_vertices)
        throw UnsupportedSize("random_graph: n must be <= " + std::to_string(max_mis_vertices));
    Graph g(n, "gnp(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(seed) + ")");
    Rng rng(seed);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (rng.unit() < p)
                g.add_edge(u, v);
    return g;
}

Graph induced_subgraph(const Graph & g, const Bitset & keep)
{
    std::vector<std::size_t> old_of_new = keep.indices();
    std::vector<std::size_t> new_of_old(g.vcount(), Bitset::npos);
    for (std::size_t i = 0; i < old_of_new.size(); ++i)
        new_of_old[old_of_new[i]] = i;
    Graph out(old_of_new.size(), "induced(" + g.label() + ")");
    for (std::size_t i = 0; i < old_of_new.size(); ++i)
        g.row(old_of_new[i]).for_each([&](std::size_t u) {
            if (new_of_old[u] != Bitset::npos && new_of_old[u] >= i)
                out.add_edge(i, new_of_old[u]);
        });
    return out;
}

} // namespace hatlab::graph
