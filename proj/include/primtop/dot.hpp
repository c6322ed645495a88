#pragma once

#include <string>

#include "primtop/digraph.hpp"
#include "primtop/sgds.hpp"

namespace primtop {

// Hasse diagram of the specialization order on the spectrum, fibers drawn as
// single "L x T" nodes. Byte-stable: nodes and edges are emitted sorted.
std::string emit_dot(const DirectedGraph& g);

// Trivial order diagram of a finite discrete spectrum (fibers and points,
// no specialization edges).
std::string emit_dot(const SGDS& s);

}  // namespace primtop
