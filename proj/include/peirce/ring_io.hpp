#pragma once

// Line-oriented text formats for Peirce rings and commutator data.
//
//   peirce rank=<l> modulus=<n>          commrel rank=<l> modulus=<n>
//   block i j: d1,d2,...                 module i j: d1,d2,...
//   mult i j k: (a,b) -> [v1,v2,...]     cmap i j k: (a,b) -> [v1,v2,...]
//
// Indices i, j, k and generator indices a, b are 1-based. Every block
// (module) line must be present, in row-major order; product lines are
// listed only for nonzero products, ordered by (i, j, k, a, b). `#` starts a
// comment. The writers emit exactly this canonical form, so writing a parsed
// canonical file reproduces it byte for byte.

#include "peirce/commrel.hpp"

#include <string>
#include <string_view>

namespace peirce {

// Parse errors carry "line N: ..." as witness. Associativity (A3) failures
// surface as NotAssociative from the checked constructors.
PeirceRing read_ring(std::string_view text);
std::string write_ring(const PeirceRing& r);

CommRelData read_commrel(std::string_view text);
std::string write_commrel(const CommRelData& d);

// First word of the first non-comment line ("peirce", "commrel", or empty).
std::string detect_format(std::string_view text);

}  // namespace peirce
