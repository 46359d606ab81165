#pragma once

// The standard desk-scale example rings used by the test suites and emitted
// by `peirce_tool build --seed-corpus`.

#include "peirce/peirce.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peirce {

// A unital ring together with a complete family of orthogonal idempotents.
struct UnitalExample {
  std::string name;
  FinRing ring;
  std::vector<Element> idempotents;
  Coeff modulus = 0;
};

// Matrix rings, grouped matrix rings and a few non-full families.
std::vector<UnitalExample> unital_examples();

// Morita context R = Z/n, P = Q = (Z/n)^dim with the dot product pairing.
// The resulting rank 2 ring is Mat(dim + 1, Z/n) with idempotents grouped as
// (dim | 1).
PeirceRing morita_dot_product(Coeff n, std::size_t dim);

// R = Z/2, P = Q = (Z/2)^2, pairing <q, p> = q_1 p_1. Firm but not reduced:
// p_2 (x) q_2 annihilates everything.
PeirceRing morita_degenerate();

// Mat(rank) over morita_degenerate() as a plain ring: firm, not reduced.
PeirceRing firm_not_reduced_example(std::size_t rank);
// Mat(rank) over the reduced quotient of morita_degenerate(): reduced, not
// firm.
PeirceRing reduced_not_firm_example(std::size_t rank);

struct CorpusRing {
  std::string name;
  PeirceRing ring;
};

// mat_ring(l, Z/n) for l = 1..4 and n in {2, 3, 4}, the grouped rings
// 1|23 and 1|2|3|45 of Mat(3, Z/2) and Mat(5, Z/2), and the Morita rings.
std::vector<CorpusRing> standard_corpus();

}  // namespace peirce
