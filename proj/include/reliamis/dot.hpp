#pragma once

#include "reliamis/mis.hpp"

#include <string>

namespace reliamis {

// Deterministic Graphviz rendering of the chain: one node per state labeled
// by its bitstring (sink all zeros), one edge per (source, target) pair
// labeled with the contributing components and their probabilities.
// Zero-probability transitions are omitted. Byte-stable across runs.
std::string export_dot(const MisModel& m);

}  // namespace reliamis
