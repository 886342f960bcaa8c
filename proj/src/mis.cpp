// Exact independent-set search.
//
// max_independent_set is a branch and bound over candidate bitsets:
// degree-0/1 vertices are taken greedily, a vertex whose closed
// neighbourhood contains a neighbour's closed neighbourhood is dropped
// (dominance), a min-degree greedy clique cover of the candidates bounds what is
// still reachable, and branching is on a maximum-degree vertex.

#include "hatlab/graph.hpp"

#include "hatlab/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hatlab::graph {

namespace {

/// Number of cliques in a greedy cover of `cand`; stops counting once the
/// count exceeds `enough`.  Both the clique's seed and each extension are
/// the remaining vertex of fewest remaining neighbours, which keeps
/// low-degree vertices from ending up as singletons.
class CliqueCover
{
public:
    explicit CliqueCover(std::size_t n) : rest_(n), clique_(n), degree_(n) {}

    std::size_t operator()(const Graph & g, const Bitset & cand, std::size_t enough)
    {
        rest_ = cand;
        rest_.for_each([&](std::size_t v) { degree_[v] = static_cast<std::uint32_t>(g.row(v).and_count(rest_)); });
        std::size_t count = 0;
        while (rest_.any()) {
            std::size_t v = lowest(rest_);
            take(g, v);
            clique_.assign_and(rest_, g.row(v));
            while (clique_.any()) {
                std::size_t u = lowest(clique_);
                take(g, u);
                clique_ &= g.row(u);
            }
            if (++count > enough)
                break;
        }
        return count;
    }

private:
    std::size_t lowest(const Bitset & among) const
    {
        std::size_t pick = Bitset::npos;
        std::uint32_t d = 0;
        among.for_each([&](std::size_t v) {
            if (pick == Bitset::npos || degree_[v] < d) {
                pick = v;
                d = degree_[v];
            }
        });
        return pick;
    }

    void take(const Graph & g, std::size_t v)
    {
        rest_.reset(v);
        const Bitset & row = g.row(v);
        for (std::size_t u = row.next(0); u != Bitset::npos; u = row.next(u + 1))
            if (rest_.test(u))
                --degree_[u];
    }

    Bitset rest_, clique_;
    std::vector<std::uint32_t> degree_;
};

class MisSearch
{
public:
    MisSearch(const Graph & g, const Bitset & start) :
        g_(g), best_(g.vcount()), cover_(g.vcount()), closed_v_(g.vcount()), closed_u_(g.vcount()),
        component_(g.vcount()), frontier_(g.vcount()), grown_(g.vcount())
    {
        // depth never exceeds vcount + 1; references into the pool stay valid
        pool_.reserve(g.vcount() + 2);
        pool_.push_back(start);
        seed_with_greedy(start);
    }

    MisResult run()
    {
        search(0);
        MisResult out;
        out.set = best_;
        out.size = best_size_;
        out.alpha_bar = g_.vcount() ? ratio(best_size_, g_.vcount()) : Rational(0);
        out.nodes_explored = nodes_;
        return out;
    }

private:
    Bitset & level(std::size_t depth)
    {
        while (pool_.size() <= depth)
            pool_.emplace_back(g_.vcount());
        return pool_[depth];
    }

    void seed_with_greedy(const Bitset & start)
    {
        Bitset cand = start;
        while (cand.any()) {
            std::size_t pick = Bitset::npos, pick_degree = 0;
            cand.for_each([&](std::size_t v) {
                std::size_t d = g_.row(v).and_count(cand);
                if (pick == Bitset::npos || d < pick_degree) {
                    pick = v;
                    pick_degree = d;
                }
            });
            best_.set(pick);
            ++best_size_;
            cand.subtract(g_.row(pick));
            cand.reset(pick);
        }
    }

    void record()
    {
        if (current_.size() <= best_size_)
            return;
        best_size_ = current_.size();
        best_.clear();
        for (auto v : current_)
            best_.set(v);
    }

    void search(std::size_t depth)
    {
        ++nodes_;
        Bitset & cand = level(depth);
        const std::size_t entry_size = current_.size();

        std::size_t branch_vertex = Bitset::npos;
        while (cand.any()) {
            std::size_t min_v = Bitset::npos, min_d = 0, max_v = Bitset::npos, max_d = 0;
            cand.for_each([&](std::size_t v) {
                std::size_t d = g_.row(v).and_count(cand);
                if (min_v == Bitset::npos || d < min_d) {
                    min_v = v;
                    min_d = d;
                }
                if (max_v == Bitset::npos || d > max_d) {
                    max_v = v;
                    max_d = d;
                }
            });

            if (min_d <= 1) {
                // an isolated or pendant vertex is in some maximum set
                current_.push_back(static_cast<std::uint32_t>(min_v));
                cand.subtract(g_.row(min_v));
                cand.reset(min_v);
                continue;
            }

            // dominance: N[u] within N[max_v] for a neighbour u lets us drop max_v
            closed_v_.assign_and(g_.row(max_v), cand);
            closed_v_.set(max_v);
            bool dominated = false;
            for (std::size_t u = g_.row(max_v).next(0); u != Bitset::npos; u = g_.row(max_v).next(u + 1)) {
                if (! cand.test(u))
                    continue;
                closed_u_.assign_and(g_.row(u), cand);
                closed_u_.set(u);
                if (closed_u_.is_subset_of(closed_v_)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) {
                cand.reset(max_v);
                continue;
            }

            branch_vertex = max_v;
            break;
        }

        if (branch_vertex == Bitset::npos) {
            record();
        }
        else if (split_components(cand)) {
            record();
        }
        else {
            std::size_t slack = best_size_ >= current_.size() ? best_size_ - current_.size() : 0;
            if (cover_(g_, cand, slack) > slack) {
                Bitset & next = level(depth + 1);
                Bitset & here = pool_[depth];
                next.assign_andnot(here, g_.row(branch_vertex));
                next.reset(branch_vertex);
                current_.push_back(static_cast<std::uint32_t>(branch_vertex));
                search(depth + 1);
                current_.pop_back();

                // level() may have reallocated the pool during recursion
                Bitset & next2 = pool_[depth + 1];
                next2 = pool_[depth];
                next2.reset(branch_vertex);
                slack = best_size_ >= current_.size() ? best_size_ - current_.size() : 0;
                if (cover_(g_, next2, slack) > slack)
                    search(depth + 1);
            }
        }

        current_.resize(entry_size);
    }

    /// Fills component_ with the component of `within` containing its lowest vertex.
    void grow_component(const Bitset & within)
    {
        component_.clear();
        frontier_.clear();
        std::size_t first = within.first();
        component_.set(first);
        frontier_.set(first);
        while (frontier_.any()) {
            grown_.clear();
            frontier_.for_each([&](std::size_t v) { grown_ |= g_.row(v); });
            grown_ &= within;
            grown_.subtract(component_);
            component_ |= grown_;
            frontier_ = grown_;
        }
    }

    /// When `cand` is disconnected, solves each component on its own and
    /// appends the union to current_.
    bool split_components(const Bitset & cand)
    {
        grow_component(cand);
        if (component_.count() == cand.count())
            return false;
        Bitset left = cand;
        while (left.any()) {
            grow_component(left);
            left.subtract(component_);
            MisResult part = MisSearch(g_, component_).run();
            nodes_ += part.nodes_explored;
            part.set.for_each([&](std::size_t v) { current_.push_back(static_cast<std::uint32_t>(v)); });
        }
        return true;
    }

    const Graph & g_;
    std::vector<Bitset> pool_;
    std::vector<std::uint32_t> current_;
    Bitset best_;
    std::size_t best_size_ = 0;
    std::uint64_t nodes_ = 0;
    CliqueCover cover_;
    Bitset closed_v_, closed_u_, component_, frontier_, grown_;
};

void bron_kerbosch(const Graph & g, Bitset & chosen, const Bitset & cand, const Bitset & excluded,
                   const std::function<bool(const Bitset &)> & visit, bool & keep_going)
{
    if (! keep_going)
        return;
    if (cand.none()) {
        if (excluded.none())
            keep_going = visit(chosen);
        return;
    }

    // pivot: fewest candidates inside its closed neighbourhood
    std::size_t pivot = Bitset::npos, pivot_hits = 0;
    auto consider = [&](std::size_t u) {
        std::size_t hits = g.row(u).and_count(cand) + (cand.test(u) && ! g.has_loop(u) ? 1 : 0);
        if (pivot == Bitset::npos || hits < pivot_hits) {
            pivot = u;
            pivot_hits = hits;
        }
    };
    cand.for_each(consider);
    excluded.for_each(consider);

    Bitset branch = cand & g.row(pivot);
    if (cand.test(pivot))
        branch.set(pivot);

    Bitset p = cand, x = excluded;
    Bitset next_p(g.vcount()), next_x(g.vcount());
    for (std::size_t v = branch.first(); v != Bitset::npos && keep_going; v = branch.next(v + 1)) {
        next_p.assign_andnot(p, g.row(v));
        next_p.reset(v);
        next_x.assign_andnot(x, g.row(v));
        next_x.reset(v);
        chosen.set(v);
        bron_kerbosch(g, chosen, next_p, next_x, visit, keep_going);
        chosen.reset(v);
        p.reset(v);
        x.set(v);
    }
}

void fixed_size_search(const Graph & g, std::vector<std::size_t> & chosen, const Bitset & cand, std::size_t target,
                       std::size_t cap, std::vector<Bitset> & out)
{
    if (chosen.size() == target) {
        if (out.size() == cap)
            throw UnsupportedSize("independent_sets_of_size: more than " + std::to_string(cap) + " sets");
        Bitset s(g.vcount());
        for (auto v : chosen)
            s.set(v);
        out.push_back(std::move(s));
        return;
    }
    CliqueCover cover(g.vcount());
    const std::size_t need = target - chosen.size();
    if (cover(g, cand, need) < need)
        return;

    Bitset remaining = cand;
    Bitset next(g.vcount());
    for (std::size_t v = remaining.first(); v != Bitset::npos; v = remaining.first()) {
        remaining.reset(v);
        next.assign_andnot(remaining, g.row(v));
        chosen.push_back(v);
        fixed_size_search(g, chosen, next, target, cap, out);
        chosen.pop_back();
        if (cover(g, remaining, need) < need)
            break;
    }
}

} // namespace

MisResult max_independent_set(const Graph & g, const Bitset * within)
{
    if (g.vcount() > max_mis_vertices)
        throw UnsupportedSize("max_independent_set: " + std::to_string(g.vcount())
                              + " vertices exceeds the exact-search budget of " + std::to_string(max_mis_vertices)
                              + "; use a sampling-based lower bound instead");
    Bitset start = g.loop_free();
    if (within)
        start &= *within;
    return MisSearch(g, start).run();
}

bool for_each_maximal_independent_set(const Graph & g, const std::function<bool(const Bitset &)> & visit)
{
    Bitset chosen(g.vcount());
    Bitset excluded(g.vcount());
    bool keep_going = true;
    bron_kerbosch(g, chosen, g.loop_free(), excluded, visit, keep_going);
    return keep_going;
}

std::vector<Bitset> independent_sets_of_size(const Graph & g, std::size_t size, std::size_t cap)
{
    std::vector<Bitset> out;
    std::vector<std::size_t> chosen;
    fixed_size_search(g, chosen, g.loop_free(), size, cap, out);
    return out;
}

} // namespace hatlab::graph
