#include "hatlab/graph.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hatlab::graph {

void write_adjacency_text(const Graph & g, std::ostream & out)
{
    out << "hatlab-graph " << g.vcount() << '\n';
    for (std::size_t v = 0; v < g.vcount(); ++v) {
        out << v << ':';
        g.row(v).for_each([&](std::size_t u) { out << ' ' << u; });
        out << '\n';
    }
}

Graph read_adjacency_text(std::istream & in)
{
    std::string magic;
    std::size_t vcount = 0;
    if (! (in >> magic >> vcount) || magic != "hatlab-graph")
        throw std::runtime_error("adjacency text: missing 'hatlab-graph <vcount>' header");
    if (vcount > max_vertices)
        throw std::runtime_error("adjacency text: vertex count too large");
    Graph g(vcount, "file");
    // add_edge is symmetric, so the rows as written are kept for the check
    std::vector<Bitset> listed(vcount, Bitset(vcount));
    std::string line;
    std::getline(in, line);
    for (std::size_t v = 0; v < vcount; ++v) {
        if (! std::getline(in, line))
            throw std::runtime_error("adjacency text: truncated at vertex " + std::to_string(v));
        auto colon = line.find(':');
        if (colon == std::string::npos || std::stoul(line.substr(0, colon)) != v)
            throw std::runtime_error("adjacency text: expected row for vertex " + std::to_string(v));
        std::istringstream row(line.substr(colon + 1));
        std::size_t u;
        while (row >> u) {
            if (u >= vcount)
                throw std::runtime_error("adjacency text: neighbour out of range in row " + std::to_string(v));
            g.add_edge(v, u);
            listed[v].set(u);
        }
    }
    for (std::size_t v = 0; v < vcount; ++v)
        for (std::size_t u = 0; u < vcount; ++u)
            if (listed[v].test(u) != listed[u].test(v))
                throw std::runtime_error("adjacency text: asymmetric rows");
    return g;
}

namespace {

void put_u32(std::ostream & out, std::uint32_t x)
{
    unsigned char b[4];
    for (int i = 0; i < 4; ++i)
        b[i] = static_cast<unsigned char>(x >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 4);
}

void put_u64(std::ostream & out, std::uint64_t x)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(x >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 8);
}

std::uint64_t get_le(std::istream & in, int bytes)
{
    unsigned char b[8] = {};
    if (! in.read(reinterpret_cast<char *>(b), bytes))
        throw std::runtime_error("binary graph: truncated input");
    std::uint64_t x = 0;
    for (int i = bytes - 1; i >= 0; --i)
        x = (x << 8) | b[i];
    return x;
}

} // namespace

void write_binary(const Graph & g, std::ostream & out)
{
    out.write("HLG1", 4);
    put_u32(out, static_cast<std::uint32_t>(g.vcount()));
    for (std::size_t v = 0; v < g.vcount(); ++v)
        for (auto w : g.row(v).words())
            put_u64(out, w);
}

Graph read_binary(std::istream & in)
{
    char magic[4];
    if (! in.read(magic, 4) || std::memcmp(magic, "HLG1", 4) != 0)
        throw std::runtime_error("binary graph: bad magic (expected HLG1)");
    const auto vcount = static_cast<std::size_t>(get_le(in, 4));
    if (vcount > max_vertices)
        throw std::runtime_error("binary graph: vertex count too large");
    Graph g(vcount, "file");
    const std::size_t words = (vcount + 63) / 64;
    for (std::size_t v = 0; v < vcount; ++v)
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = get_le(in, 8);
            for (std::size_t b = 0; b < 64; ++b)
                if ((bits >> b) & 1u) {
                    std::size_t u = w * 64 + b;
                    if (u >= vcount)
                        throw std::runtime_error("binary graph: padding bits set");
                    g.add_edge(v, u);
                }
        }
    for (std::size_t v = 0; v < vcount; ++v)
        for (std::size_t u = 0; u < vcount; ++u)
            if (g.adjacent(v, u) != g.adjacent(u, v))
                throw std::runtime_error("binary graph: asymmetric rows");
    return g;
}

} // namespace hatlab::graph
