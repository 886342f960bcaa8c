#include "hatlab/cli.hpp"

#include "hatlab/blockers.hpp"
#include "hatlab/errors.hpp"
#include "hatlab/parallel.hpp"
#include "hatlab/random_subgraph.hpp"
#include "hatlab/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef HATLAB_VERSION
#define HATLAB_VERSION "dev"
#endif

namespace hatlab::cli {

namespace {

// Witness tables above this many entries are left out unless asked for.
constexpr std::size_t witness_emit_limit = 4096;

struct Run
{
    std::string command;
    Json params = Json::object();
    std::optional<std::uint64_t> seed;
    std::function<Json()> action;
    std::string summary;
    int status = exit_ok;
};

Json graph_summary(const graph::Graph & g)
{
    return Json{{"label", g.label()}, {"vcount", g.vcount()}, {"edges", g.edge_count()}, {"loops", g.loop_count()}};
}

graph::Graph load_graph(const std::string & spec, unsigned power)
{
    graph::Graph g = parse_graph_spec(spec);
    return power > 1 ? graph::hamming_power(g, power) : g;
}

Json partial_json(const blockers::PartialStrategy & partial)
{
    Json players = Json::array();
    for (const auto & table : partial.assignments) {
        Json entries = Json::array();
        for (const auto & [visible, choice] : table)
            entries.push_back(Json::array({visible, choice}));
        players.push_back(std::move(entries));
    }
    return Json{{"t", partial.t}, {"n", partial.n}, {"assignments", players}};
}

Json verdict_json(std::size_t index, const blockers::Verdict & v)
{
    Json out{{"index", index}, {"certified", v.certified}, {"probes", v.probes}};
    if (v.counterexample)
        out["counterexample"] = partial_json(*v.counterexample);
    return out;
}

std::vector<game::TupleIndex> parse_points(const std::string & text)
{
    std::vector<game::TupleIndex> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(std::stoull(item, nullptr, 0));
    if (out.empty())
        throw std::invalid_argument("--points needs at least one tuple index");
    return out;
}

std::string fixed(double value, int digits)
{
    std::ostringstream s;
    s << std::setprecision(digits) << value;
    return s.str();
}

void add_solve(CLI::App & app, Run & run, const unsigned & threads)
{
    struct Options
    {
        unsigned t = 2, n = 2;
        std::string family = "dictator", mode = "exact";
        std::uint64_t seed = 0;
        unsigned restarts = 8;
        bool allow_long = false, emit_witness = false;
    };
    auto o = std::make_shared<Options>();
    auto * cmd = app.add_subcommand("solve", "Optimal success probability p(t, n) of the hats game for a winning family");
    cmd->add_option("--t", o->t, "Players")->required()->check(CLI::Range(1u, 26u));
    cmd->add_option("--n", o->n, "Hats per player")->required()->check(CLI::Range(1u, 20u));
    cmd->add_option("--family", o->family, "dictator | intersecting | monotone (dict, int, mono)");
    cmd->add_option("--mode", o->mode, "exact, or search for a seeded best-response ascent (lower bound)")
        ->check(CLI::IsMember({"exact", "search"}));
    cmd->add_option("--seed", o->seed, "Search seed");
    cmd->add_option("--restarts", o->restarts, "Search restarts")->check(CLI::Range(1u, 1u << 20));
    cmd->add_flag("--allow-long", o->allow_long, "Permit exact runs beyond the default work budget");
    cmd->add_flag("--emit-witness", o->emit_witness, "Always include the witness tables");
    cmd->callback([&run, &threads, o] {
        run.command = "solve";
        const auto kind = game::parse_family_kind(o->family);
        run.params = Json{{"t", o->t}, {"n", o->n}, {"family", game::to_string(kind)}, {"mode", o->mode}};
        if (o->mode == "search") {
            run.params["restarts"] = o->restarts;
            run.seed = o->seed;
        }
        else {
            run.params["allow_long"] = o->allow_long;
        }
        run.action = [&run, &threads, o, kind] {
            solver::SolveResult r = o->mode == "exact"
                ? solver::exact_p(o->t, o->n, kind, {threads, o->allow_long})
                : solver::local_search_p(o->t, o->n, kind, {o->seed, o->restarts, threads});
            Json result{{"value", number_json(r.value)},
                        {"method", solver::to_string(r.method)},
                        {"lower_bound", r.method == solver::SolveMethod::local_search},
                        {"work", r.work}};
            const std::size_t entries = r.witness.tables.size() * r.witness.table_size();
            if (o->emit_witness || entries <= witness_emit_limit)
                result["witness"] = strategy_json(r.witness);
            else
                result["witness_omitted"] = true;
            run.summary = "p(" + std::to_string(o->t) + ", " + std::to_string(o->n) + ") "
                + std::string(game::to_string(kind)) + (r.method == solver::SolveMethod::local_search ? " >= " : " = ")
                + fraction_string(r.value) + " (" + fixed(to_double(r.value), 10) + ") via "
                + std::string(solver::to_string(r.method));
            return result;
        };
    });
}

void add_alpha(CLI::App & app, Run & run)
{
    struct Options
    {
        std::string graph;
        unsigned power = 1;
    };
    auto o = std::make_shared<Options>();
    auto * cmd = app.add_subcommand("alpha", "Maximum independent set and normalized independence number of a graph");
    cmd->add_option("--graph", o->graph, "kneser:N | shift:M | complete:M | edgeless:M | gnp:N:P:SEED | file:PATH")
        ->required();
    cmd->add_option("--power", o->power, "Hamming power of the graph")->check(CLI::Range(1u, 20u));
    cmd->callback([&run, o] {
        run.command = "alpha";
        run.params = Json{{"graph", o->graph}, {"power", o->power}};
        run.action = [&run, o] {
            const graph::Graph g = load_graph(o->graph, o->power);
            if (g.vcount() > graph::max_mis_vertices)
                throw UnsupportedSize("alpha: graph has " + std::to_string(g.vcount()) + " vertices, limit "
                                      + std::to_string(graph::max_mis_vertices));
            const auto mis = graph::max_independent_set(g);
            run.summary = "alpha(" + g.label() + ") = " + std::to_string(mis.size) + ", alpha_bar = "
                + fraction_string(mis.alpha_bar);
            return Json{{"graph", graph_summary(g)},
                        {"alpha", mis.size},
                        {"alpha_bar", number_json(mis.alpha_bar)},
                        {"set", mis.set.indices()},
                        {"nodes_explored", mis.nodes_explored}};
        };
    });
}

void add_blocker(CLI::App & app, Run & run, const unsigned & threads)
{
    auto * cmd = app.add_subcommand("blocker", "Blockers: point sets meeting every winning set");
    cmd->require_subcommand(1);

    {
        struct Options
        {
            unsigned n = 8;
            std::uint64_t seed = 0;
            std::string delta = "0.15";
            std::size_t max_emit = 4096;
            bool no_verify = false;
            std::string out;
        };
        auto o = std::make_shared<Options>();
        auto * sub = cmd->add_subcommand("build", "Lift the complementary pairs of B to blockers b x Y of B^2");
        sub->add_option("--n", o->n, "Hats per player")->required();
        sub->add_option("--seed", o->seed, "Partition sampling seed");
        sub->add_option("--delta", o->delta, "Stop once the tuples cover (1 - delta)/6 of B");
        sub->add_option("--max-emit", o->max_emit, "Expand the member list only up to this many blockers");
        sub->add_flag("--no-verify", o->no_verify, "Skip certification");
        sub->add_option("--out", o->out, "Also write the family document to this file");
        sub->callback([&run, &threads, o] {
            run.command = "blocker build";
            run.params = Json{{"n", o->n}, {"delta", o->delta}, {"verify", ! o->no_verify}, {"max_emit", o->max_emit}};
            run.seed = o->seed;
            run.action = [&run, &threads, o] {
                const double delta = to_double(parse_exact(o->delta));
                auto built = blockers::construct_blockers(o->n, o->seed, delta);
                const auto & family = built.family;
                const auto & report = built.report;

                bool certified = false;
                Json verification = nullptr;
                if (! o->no_verify) {
                    const auto dict = game::enumerate_family(game::FamilyKind::dictator, o->n);
                    const auto v = blockers::verify_family(family, dict, threads);
                    certified = v.failed == 0 && v.disjoint && v.uniform_size && v.beta == family.beta;
                    verification = Json{{"certified", v.certified},
                                        {"failed", v.failed},
                                        {"first_failure", v.first_failure ? Json(*v.first_failure) : Json(nullptr)},
                                        {"disjoint", v.disjoint},
                                        {"uniform_size", v.uniform_size},
                                        {"beta", fraction_string(v.beta)},
                                        {"common_reply_every_probe", v.common_reply_every_probe}};
                }
                Json doc = blocker_family_json(family, o->seed, certified, o->max_emit);
                doc["report"] = Json{{"stalled", report.stalled},
                                     {"tuples_kept", report.tuples_kept},
                                     {"proposals", report.proposals},
                                     {"rejections", report.rejections},
                                     {"stall_limit", report.stall_limit},
                                     {"target", number_json(report.target)},
                                     {"achieved", number_json(report.achieved)}};
                doc["verification"] = verification;
                if (! o->out.empty()) {
                    std::ofstream file(o->out);
                    if (! file)
                        throw std::invalid_argument("cannot write '" + o->out + "'");
                    file << doc.dump() << '\n';
                }
                run.summary = std::to_string(family.size()) + " blockers of size " + std::to_string(family.k)
                    + ", beta = " + fraction_string(family.beta) + " (" + fixed(to_double(family.beta), 8) + ")"
                    + (o->no_verify ? ", not verified" : certified ? ", all certified" : ", NOT certified")
                    + (report.stalled ? ", construction stalled" : "");
                if (report.stalled)
                    run.status = exit_stall;
                return doc;
            };
        });
    }

    {
        struct Options
        {
            std::string file, points;
            unsigned t = 1, n = 0;
            std::size_t max_emit = 4096;
        };
        auto o = std::make_shared<Options>();
        auto * sub = cmd->add_subcommand("verify", "Certify a blocker family document, or one blocker given by --points");
        auto * file_opt = sub->add_option("--file", o->file, "Blocker family JSON");
        auto * points_opt = sub->add_option("--points", o->points, "Comma-separated tuple indices of one blocker");
        file_opt->excludes(points_opt);
        sub->add_option("--t", o->t, "Players (with --points)")->check(CLI::Range(1u, 2u));
        sub->add_option("--n", o->n, "Hats per player (with --points)");
        sub->add_option("--max-emit", o->max_emit, "Per-blocker certificates listed up to this many members");
        sub->callback([&run, &threads, o] {
            run.command = "blocker verify";
            if (o->file.empty() && o->points.empty())
                throw CLI::ValidationError("blocker verify", "one of --file or --points is required");
            run.params = o->file.empty() ? Json{{"points", o->points}, {"t", o->t}, {"n", o->n}}
                                         : Json{{"file", o->file}, {"max_emit", o->max_emit}};
            run.action = [&run, &threads, o] {
                if (o->file.empty()) {
                    blockers::Blocker b{o->t, o->n, parse_points(o->points), false};
                    const auto dict = game::enumerate_family(game::FamilyKind::dictator, o->n);
                    const auto v = blockers::verify_blocker(b, dict);
                    run.summary = std::string("blocker ") + (v.certified ? "certified" : "refuted by a counterexample");
                    Json out = verdict_json(0, v);
                    if (v.counterexample) {
                        const auto full = v.counterexample->extend();
                        out["counterexample_winning_measure"] =
                            number_json(game::success_probability(full, dict));
                    }
                    return out;
                }
                std::ifstream in(o->file);
                if (! in)
                    throw std::invalid_argument("cannot open '" + o->file + "'");
                const Json doc = Json::parse(in);
                const auto family = blocker_family_from_json(doc);
                const auto dict = game::enumerate_family(game::FamilyKind::dictator, family.n);
                const auto v = blockers::verify_family(family, dict, threads);
                Json certificates = Json::array();
                if (family.size() <= o->max_emit)
                    for (std::size_t i = 0; i < family.size(); ++i)
                        certificates.push_back(verdict_json(i, blockers::verify_blocker(family.member(i), dict)));
                const bool all = v.failed == 0 && v.disjoint && v.uniform_size && v.beta == family.beta;
                run.summary = std::to_string(v.certified) + "/" + std::to_string(family.size())
                    + " blockers certified" + (all ? "" : " (family check FAILED)");
                return Json{{"count", family.size()},
                            {"certified", all},
                            {"certified_members", v.certified},
                            {"failed", v.failed},
                            {"first_failure", v.first_failure ? Json(*v.first_failure) : Json(nullptr)},
                            {"disjoint", v.disjoint},
                            {"uniform_size", v.uniform_size},
                            {"beta", fraction_string(v.beta)},
                            {"beta_matches", v.beta == family.beta},
                            {"common_reply_every_probe", v.common_reply_every_probe},
                            {"certificates", certificates}};
            };
        });
    }

    {
        struct Options
        {
            std::uint64_t k = 2;
            std::string beta = "1";
        };
        auto o = std::make_shared<Options>();
        auto * sub = cmd->add_subcommand("bound", "Guaranteed drop beta / (k 2^{2k+2}) from disjoint size-k blockers");
        sub->add_option("--k", o->k, "Blocker size")->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
        sub->add_option("--beta", o->beta, "Union measure, p/q or decimal")->required();
        sub->callback([&run, o] {
            run.command = "blocker bound";
            run.params = Json{{"k", o->k}, {"beta", o->beta}};
            run.action = [&run, o] {
                const Rational beta = parse_exact(o->beta);
                const Rational value = blockers::decrement_bound(o->k, beta);
                const Rational corollary = blockers::corollary_bound(o->k);
                run.summary = "decrement bound = " + fraction_string(value);
                return Json{{"value", number_json(value)},
                            {"corollary", number_json(corollary)},
                            {"beta_is_2_over_k", o->k > 0 && beta == ratio(2, o->k)}};
            };
        });
    }

    {
        auto d = std::make_shared<unsigned>(3);
        auto * sub = cmd->add_subcommand("kseq", "Blocker sizes k(1) = 2, k(d+1) = k(d) C(2k(d), k(d))");
        sub->add_option("--d", *d, "Level")->required()->check(CLI::Range(1u, 4u));
        sub->callback([&run, d] {
            run.command = "blocker kseq";
            run.params = Json{{"d", *d}};
            run.action = [&run, d] {
                const BigInt k = blockers::k_sequence(*d);
                const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
                Json out{{"d", *d}, {"bits", bits}};
                if (bits <= 4096) {
                    out["k"] = k.get_str();
                    run.summary = "k(" + std::to_string(*d) + ") = " + k.get_str();
                }
                else {
                    out["k"] = nullptr;
                    long exponent = 0;
                    const double mantissa = mpz_get_d_2exp(&exponent, k.get_mpz_t());
                    out["log2_k"] = static_cast<double>(exponent) + std::log2(mantissa);
                    run.summary = "k(" + std::to_string(*d) + ") has " + std::to_string(bits) + " bits";
                }
                return out;
            };
        });
    }

    {
        struct Options
        {
            unsigned n = 3;
            std::size_t max_emit = 4096;
        };
        auto o = std::make_shared<Options>();
        auto * sub = cmd->add_subcommand("base", "The complementary pairs {x, ~x}: blockers of B for the dictators");
        sub->add_option("--n", o->n, "Hats per player")->required();
        sub->add_option("--max-emit", o->max_emit, "Expand the member list only up to this many blockers");
        sub->callback([&run, &threads, o] {
            run.command = "blocker base";
            run.params = Json{{"n", o->n}, {"max_emit", o->max_emit}};
            run.action = [&run, &threads, o] {
                const auto family = blockers::base_blockers(o->n);
                const auto v = blockers::verify_family(family, game::enumerate_family(game::FamilyKind::dictator, o->n),
                                                       threads);
                const bool all = v.failed == 0 && v.disjoint && v.uniform_size;
                run.summary = std::to_string(family.size()) + " pairs" + (all ? ", all certified" : ", NOT certified");
                return blocker_family_json(family, 0, all, o->max_emit);
            };
        });
    }

    {
        struct Options
        {
            std::string graph, target = "maximum";
            unsigned power = 1;
            std::size_t cap = 200000;
        };
        auto o = std::make_shared<Options>();
        auto * sub = cmd->add_subcommand("graph", "Smallest vertex set meeting every maximum (or maximal) independent set");
        sub->add_option("--graph", o->graph, "Graph spec")->required();
        sub->add_option("--power", o->power, "Hamming power")->check(CLI::Range(1u, 20u));
        sub->add_option("--target", o->target, "maximum | maximal")->check(CLI::IsMember({"maximum", "maximal"}));
        sub->add_option("--cap", o->cap, "Limit on enumerated independent sets");
        sub->callback([&run, o] {
            run.command = "blocker graph";
            run.params = Json{{"graph", o->graph}, {"power", o->power}, {"target", o->target}, {"cap", o->cap}};
            run.action = [&run, o] {
                const graph::Graph g = load_graph(o->graph, o->power);
                const auto target = o->target == "maximum" ? blockers::GraphBlockerTarget::maximum
                                                           : blockers::GraphBlockerTarget::maximal;
                const auto b = blockers::min_graph_blocker(g, target, o->cap);
                run.summary = "smallest blocker of " + g.label() + " against " + o->target
                    + " independent sets: " + std::to_string(b.size);
                return Json{{"graph", graph_summary(g)},
                            {"target", o->target},
                            {"size", b.size},
                            {"witness", b.witness.indices()},
                            {"alpha", b.alpha},
                            {"target_sets", b.target_sets}};
            };
        });
    }
}

void add_alphastar(CLI::App & app, Run & run, const unsigned & threads)
{
    struct Options
    {
        std::string graph, mode = "exact";
        unsigned power = 1;
        std::size_t samples = 10000;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Options>();
    auto * cmd = app.add_subcommand("alphastar",
                                    "Expected normalized independence number of a uniformly random vertex subset");
    cmd->add_option("--graph", o->graph, "Graph spec")->required();
    cmd->add_option("--power", o->power, "Hamming power")->check(CLI::Range(1u, 20u));
    cmd->add_option("--mode", o->mode, "exact (up to 16 vertices) or mc")->check(CLI::IsMember({"exact", "mc"}));
    cmd->add_option("--samples", o->samples, "Monte Carlo samples")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 32));
    cmd->add_option("--seed", o->seed, "Monte Carlo seed");
    cmd->callback([&run, &threads, o] {
        run.command = "alphastar";
        run.params = Json{{"graph", o->graph}, {"power", o->power}, {"mode", o->mode}};
        if (o->mode == "mc") {
            run.params["samples"] = o->samples;
            run.seed = o->seed;
        }
        run.action = [&run, &threads, o] {
            const graph::Graph g = load_graph(o->graph, o->power);
            const auto mode = o->mode == "exact" ? random_subgraph::Mode::exact : random_subgraph::Mode::monte_carlo;
            const auto gap = random_subgraph::epsilon_gap(g, mode, o->samples, o->seed, threads);
            Json out{{"graph", graph_summary(g)}, {"mode", random_subgraph::to_string(mode)}};
            out["alpha_bar"] = number_json(gap.alpha_bar);
            if (mode == random_subgraph::Mode::exact) {
                out["value"] = number_json(gap.exact.value);
                out["gap"] = number_json(gap.exact_gap);
                run.summary = "alpha**(" + g.label() + ") = " + fraction_string(gap.exact.value) + " ("
                    + fixed(to_double(gap.exact.value), 10) + ")";
            }
            else {
                const auto & e = gap.estimate;
                out["mean"] = e.mean;
                out["stderr"] = e.stderr_;
                out["samples"] = e.samples;
                out["seed"] = e.seed;
                out["sum"] = e.sum;
                out["sum_squares"] = e.sum_squares;
                out["gap"] = gap.gap;
                out["gap_stderr"] = gap.gap_stderr;
                run.summary = "alpha**(" + g.label() + ") ~ " + fixed(e.mean, 8) + " +- " + fixed(e.stderr_, 3)
                    + " (" + std::to_string(e.samples) + " samples)";
            }
            return out;
        };
    });
}

void add_family(CLI::App & app, Run & run)
{
    struct Options
    {
        std::string kind = "dictator";
        unsigned n = 3;
    };
    auto o = std::make_shared<Options>();
    auto * cmd = app.add_subcommand("family", "List a winning family as hex bitmasks over B");
    cmd->add_option("--kind", o->kind, "dictator | intersecting | monotone")->required();
    cmd->add_option("--n", o->n, "Hats per player")->required();
    cmd->callback([&run, o] {
        run.command = "family";
        const auto kind = game::parse_family_kind(o->kind);
        run.params = Json{{"kind", game::to_string(kind)}, {"n", o->n}};
        run.action = [&run, o, kind] {
            const auto family = game::enumerate_family(kind, o->n);
            run.summary = std::to_string(family.r()) + " " + std::string(game::to_string(kind)) + " sets at n = "
                + std::to_string(o->n);
            return family_json(family);
        };
    });
}

void add_rv(CLI::App & app, Run & run, const unsigned & threads)
{
    struct Options
    {
        std::string family = "dictator", v;
        unsigned n = 3;
        std::size_t samples = 10000;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Options>();
    auto * cmd = app.add_subcommand("rv", "The random index set R_v = {i : v in W_i}: exact marginals and covariances");
    cmd->add_option("--family", o->family, "dictator | intersecting | monotone");
    cmd->add_option("--n", o->n, "Hats per player")->required();
    cmd->add_option("--samples", o->samples, "Sampling smoke-test size (0 to skip)");
    cmd->add_option("--seed", o->seed, "Sampling seed");
    cmd->add_option("--v", o->v, "Report R_v for this point (0/1 string, coordinate order)");
    cmd->callback([&run, &threads, o] {
        run.command = "rv";
        const auto kind = game::parse_family_kind(o->family);
        run.params = Json{{"family", game::to_string(kind)}, {"n", o->n}, {"samples", o->samples}};
        if (! o->v.empty())
            run.params["v"] = o->v;
        run.seed = o->seed;
        run.action = [&run, &threads, o, kind] {
            const auto family = game::enumerate_family(kind, o->n);
            const auto report = random_subgraph::check_Rv_statistics(family, o->samples, o->seed, threads);
            random_subgraph::RvSample sample;
            if (o->v.empty()) {
                sample = random_subgraph::sample_Rv(family, o->seed);
            }
            else {
                if (o->v.size() != o->n)
                    throw std::invalid_argument("--v must have n coordinates");
                sample.v = game::parse_point(o->v);
                sample.R = random_subgraph::rv_of(family, sample.v);
            }
            Json marginals = Json::array(), covariance = Json::array();
            for (const auto & m : report.marginals)
                marginals.push_back(fraction_string(m));
            for (const auto & row : report.covariance) {
                Json r = Json::array();
                for (const auto & c : row)
                    r.push_back(fraction_string(c));
                covariance.push_back(std::move(r));
            }
            run.summary = std::string("marginals ") + (report.marginals_half ? "all 1/2" : "NOT all 1/2")
                + ", pairwise covariances " + (report.covariances_nonnegative ? "all >= 0" : "NOT all >= 0");
            return Json{{"r", report.r},
                        {"marginals", marginals},
                        {"covariance", covariance},
                        {"marginals_half", report.marginals_half},
                        {"covariances_nonnegative", report.covariances_nonnegative},
                        {"min_covariance", report.r > 1 ? Json(fraction_string(report.min_covariance)) : Json(nullptr)},
                        {"samples", report.samples},
                        {"sampled_marginals", report.sampled_marginals},
                        {"sampling_consistent", report.sampling_consistent},
                        {"sample", Json{{"v", game::point_string(sample.v, o->n)}, {"R", sample.R}}}};
        };
    });
}

void add_graph(CLI::App & app, Run & run)
{
    struct Options
    {
        std::string graph, encoding = "adj", out;
        unsigned power = 1;
    };
    auto o = std::make_shared<Options>();
    auto * cmd = app.add_subcommand("graph", "Graph utilities");
    cmd->require_subcommand(1);
    auto * sub = cmd->add_subcommand("export", "Write a graph as adjacency text (adj) or HLG1 binary (hlg)");
    sub->add_option("--graph", o->graph, "Graph spec")->required();
    sub->add_option("--power", o->power, "Hamming power")->check(CLI::Range(1u, 20u));
    sub->add_option("--as", o->encoding, "adj | hlg")->check(CLI::IsMember({"adj", "hlg"}));
    sub->add_option("--out", o->out, "Output file")->required();
    sub->callback([&run, o] {
        run.command = "graph export";
        run.params = Json{{"graph", o->graph}, {"power", o->power}, {"as", o->encoding}, {"out", o->out}};
        run.action = [&run, o] {
            const graph::Graph g = load_graph(o->graph, o->power);
            std::ofstream file(o->out, std::ios::binary);
            if (! file)
                throw std::invalid_argument("cannot write '" + o->out + "'");
            if (o->encoding == "adj")
                graph::write_adjacency_text(g, file);
            else
                graph::write_binary(g, file);
            run.summary = "wrote " + g.label() + " to " + o->out;
            return Json{{"graph", graph_summary(g)}, {"path", o->out}, {"encoding", o->encoding}};
        };
    });
}

} // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"hatlab: exact and randomized solvers for the hats game, Kneser graph powers, blockers and "
                 "random-subset independence numbers",
                 "hatlab"};
    app.set_version_flag("--version", HATLAB_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = default_threads();
    std::string format = "json";
    app.add_option("--threads", threads, "Worker threads (default: HATLAB_THREADS or 1)")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    Run current;
    add_solve(app, current, threads);
    add_alpha(app, current);
    add_blocker(app, current, threads);
    add_alphastar(app, current, threads);
    add_family(app, current);
    add_rv(app, current, threads);
    add_graph(app, current);

    try {
        try {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError & e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }

        const auto start = std::chrono::steady_clock::now();
        Json result = current.action();
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        if (format == "csv") {
            out << csv_lines(result);
        }
        else {
            Json record{{"command", current.command},
                        {"version", HATLAB_VERSION},
                        {"params", current.params},
                        {"seed", current.seed ? Json(*current.seed) : Json(nullptr)},
                        {"result", std::move(result)}};
            out << record.dump() << '\n';
        }
        err << "[hatlab] " << current.command << ": " << current.summary << " [" << fixed(seconds, 4) << " s, "
            << threads << " thread" << (threads == 1 ? "" : "s") << "]\n";
        return current.status;
    }
    catch (const UnsupportedSize & e) {
        err << "hatlab: unsupported size: " << e.what() << '\n';
        if (current.command == "solve")
            err << "hatlab: try --mode search for a lower bound, or --allow-long\n";
        return exit_unsupported;
    }
    catch (const std::invalid_argument & e) {
        err << "hatlab: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const nlohmann::json::exception & e) {
        err << "hatlab: bad JSON: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e) {
        err << "hatlab: " << e.what() << '\n';
        return exit_failure;
    }
}

} // namespace hatlab::cli
