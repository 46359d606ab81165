#pragma once

// The group of quasi-invertible elements under x o y = xy + x + y, the
// elementary transvections of a Peirce ring and the subgroup they generate.
//
// Commutators are [x, y] = x o y o x^-1 o y^-1 and conjugation is the left
// action ^x y = x o y o x^-1, which as a ring map is (xy + y) x' + xy + y.

#include "peirce/peirce.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace peirce {

// An element of R together with its quasi-inverse.
struct QuasiUnit {
  Element value;
  Element qinv;

  friend bool operator==(const QuasiUnit& a, const QuasiUnit& b) { return a.value == b.value; }
};

// xy + x + y
Element circ_value(const FinRing& r, const Element& x, const Element& y);

// Solves y + xy = -x as a linear system and checks the answer on both sides.
// Throws Error(NotQuasiInvertible) when no solution exists.
QuasiUnit quasi_inverse(const FinRing& r, const Element& x);
QuasiUnit identity_unit(const FinRing& r);
QuasiUnit circ(const FinRing& r, const QuasiUnit& x, const QuasiUnit& y);
QuasiUnit inverse(const QuasiUnit& x);
QuasiUnit commutator(const FinRing& r, const QuasiUnit& x, const QuasiUnit& y);
// ^x y
Element act(const FinRing& r, const QuasiUnit& x, const Element& y);
// ^x y as a group element.
QuasiUnit conjugate(const FinRing& r, const QuasiUnit& x, const QuasiUnit& y);

// t_ij(a), with a given in R_ij. Throws BlockMismatch for i == j, an index
// out of range or an element of the wrong shape.
QuasiUnit transvection(const PeirceRing& r, std::size_t i, std::size_t j, const Element& a);

// ---------------------------------------------------------------------------

struct SteinbergOptions {
  // Blocks with at most this many elements are checked on every element,
  // larger ones on their generators only.
  std::uint64_t element_limit = 16;
  bool check_identities = true;
  // The group identities run over triples of sampled elements; past this
  // many triples they use one generator per block instead.
  std::uint64_t identity_limit = 1u << 16;
};

struct SteinbergReport {
  PredicateResult additive;     // t(a) o t(b) = t(a + b)
  PredicateResult commuting;    // [t_ij(a), t_kl(b)] = 0 for j != k, i != l
  PredicateResult commutator;   // [t_ij(a), t_jk(b)] = t_ik(ab) for i != k
  PredicateResult identity_l;
  PredicateResult identity_r;
  PredicateResult identity_hw;
  bool exhaustive = true;       // every block was small enough to enumerate
  bool identities_thinned = false;
  std::uint64_t relation_checks = 0;
  std::uint64_t identity_checks = 0;

  bool all_hold() const {
    return additive.holds && commuting.holds && commutator.holds && identity_l.holds &&
           identity_r.holds && identity_hw.holds;
  }
};

SteinbergReport verify_steinberg(const PeirceRing& r, const SteinbergOptions& opts = {});

// All transvections t_ij(g) for generators g of off-diagonal blocks.
std::vector<QuasiUnit> transvection_generators(const PeirceRing& r);

inline constexpr std::uint64_t kDefaultSizeBound = std::uint64_t{1} << 20;

// E(R) as a sorted list of ring elements, by breadth-first closure from the
// transvection generators. Throws Error(BoundExceeded) once more than
// `size_bound` elements have been found; the witness carries that count.
std::vector<Element> elementary_subgroup(const PeirceRing& r,
                                         std::uint64_t size_bound = kDefaultSizeBound);

// R^o by trying every element of R. Sorted; small rings only.
std::vector<Element> quasi_invertible_elements(const FinRing& r);

struct CenterReport {
  PredicateResult perfect;        // each t_ij(g) is a product of commutators
  std::uint64_t elementary_size = 0;
  std::uint64_t upper_size = 0;   // number of upper triangular products
  std::uint64_t central_upper = 0;
  PredicateResult center_trivial;  // only 0 among them is central in E(R)
  PredicateResult act_injective;  // distinct ones act differently on R
};

// Requires rank >= 3 and an idempotent decomposition (PreconditionFailed).
CenterReport perfectness_and_center(const PeirceRing& r,
                                    std::uint64_t size_bound = kDefaultSizeBound);

// ---------------------------------------------------------------------------

struct StLetter {
  std::size_t i = 0;
  std::size_t j = 0;
  Element a;
};

struct StWord {
  std::vector<StLetter> letters;
};

// The image of a Steinberg word in E(R).
QuasiUnit eval_st_word(const PeirceRing& r, const StWord& w);

}  // namespace peirce
