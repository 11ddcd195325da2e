#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qff/graph.hpp"

namespace qff {

// generator spec (cycle:N, complete:N, edgeless:N, regular:N,d[,gseed],
// dumbbell:Nhalf,d,bridges[,gseed]) or a path to an edge-list/JSON file.
// Generator randomness derives from `seed` unless the spec pins its own.
Graph resolve_graph(const std::string& spec, std::uint64_t seed);

// family keyword when spec names a generator, "" for file paths
std::string generator_family(const std::string& spec);

// geometric grid "a:b:xK" or explicit list "a,b,c"; throws on empty input
std::vector<int> parse_t_grid(const std::string& spec);

// whole front end. Exit codes: 0 run complete (any verdict), 2 config
// error, 3 internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qff
