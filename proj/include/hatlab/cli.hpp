#pragma once

// Command-line front end.  Everything the `hatlab` binary does goes through
// run(), so tests can drive it in-process.

#include "hatlab/blockers.hpp"
#include "hatlab/game.hpp"
#include "hatlab/graph.hpp"
#include "hatlab/rational.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace hatlab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode
{
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_unsupported = 3,
    exit_stall = 4,
};

/// kneser:N, shift:M, complete:M, edgeless:M, gnp:N:P:SEED, file:PATH
/// (text adjacency or HLG1 binary, detected by the magic bytes).
graph::Graph parse_graph_spec(std::string_view spec);

/// "p/q", a bare integer, or a finite decimal such as 0.15 (read exactly).
Rational parse_exact(std::string_view text);

/// {"exact": "p/q", "decimal": d}
Json number_json(const Rational & value);

/// Point 2^n - 1 is the most significant hex digit.
std::string bitset_hex(const Bitset & set);

Json strategy_json(const game::Strategy & strategy);
game::Strategy strategy_from_json(const Json & doc);

Json family_json(const game::WinningFamily & family);

/// {t, n, k, beta, blockers, seed, certified, ...}.  Product families always
/// carry their factors; the expanded member list is written only when it
/// has at most `max_emit` members.
Json blocker_family_json(const blockers::BlockerFamily & family, std::uint64_t seed, bool certified,
                         std::size_t max_emit);
blockers::BlockerFamily blocker_family_from_json(const Json & doc);

/// Flattens the scalar fields of `result` (and {exact, decimal} pairs) into a
/// header line and a value line.
std::string csv_lines(const Json & result);

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

} // namespace hatlab::cli
