#pragma once

#include <string>

#include "svsparse/graph.hpp"

namespace svsparse {

// Edge-list text format:
//   p <n> <m>
//   <tail> <head> <weight>   (m lines)
// Weight is a nonnegative integer or <num>/<den> with den a power of two.
// Lines starting with '#' are comments. Output is byte-stable for a given
// graph value.
WeightedDigraph parse_graph(const std::string& text);
std::string write_graph(const WeightedDigraph& G);

}  // namespace svsparse
