#pragma once

// Rebuilding a ring with a Peirce decomposition of rank >= 4 from its
// commutator data, in the firm and in the reduced setting, and comparing the
// result with a given ring.

#include "peirce/commrel.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace peirce {

struct Certificate {
  std::string name;
  bool holds = true;
  std::string witness;
};

// ---------------------------------------------------------------------------
// Associativity from the six index patterns

struct PatternCheck {
  std::string pattern;  // "abcd", "abca", ... by first occurrence
  bool hypothesis = false;
  PredicateResult result;
};

struct LemmaAssReport {
  std::vector<PatternCheck> patterns;  // all 15, hypotheses first
  PredicateResult products;            // R_ij R_jk = R_ik for i != j != k
  bool hypotheses_hold = true;
  bool all_hold = true;
  bool conclusion_idempotent = true;   // check_idempotent on the whole ring

  // The lemma as an implication on this ring.
  bool consistent() const {
    return !(hypotheses_hold && products.holds) || (all_hold && conclusion_idempotent);
  }
};

// Pattern label of an index quadruple, e.g. (2,5,2,7) -> "abac".
std::string index_pattern(std::size_t i, std::size_t j, std::size_t k, std::size_t l);
bool is_hypothesis_pattern(const std::string& p);

// Requires rank >= 4 (PreconditionFailed).
LemmaAssReport verify_lemma_ass(const PeirceRing& r);

// ---------------------------------------------------------------------------
// Firm setting

// R_ss as the sum over k != s of U_sk (x) U_ks modulo all A_sijs.
struct DiagonalPresentation {
  std::size_t s = 0;
  std::vector<std::size_t> order;       // summand position -> index k
  std::vector<TensorProduct> tensors;   // in summand order
  DirectSum sum;
  Subgroup relations;
  Quotient quotient;

  std::size_t position(std::size_t k) const;
  // The class of x (x) y taken in summand k.
  Element pure(std::size_t k, const Element& x, const Element& y) const;
};

// A_sijs inside (U_si (x) U_is) + (U_sj (x) U_js), generated by
// (x (x) yz, -(xy) (x) z) over generator triples. IndexClash unless s, i, j
// are distinct and in range.
Subgroup build_A_subgroup(const CommRelData& d, std::size_t s, std::size_t i, std::size_t j);

// ---------------------------------------------------------------------------
// Reduced setting

// R_ss inside E = prod_{k != s} End(U_ks)^op x End(U_sk). An endomorphism is
// stored by the images of the generators, so E sits in a plain direct sum.
struct EndoPresentation {
  std::size_t s = 0;
  std::size_t fixed_i = 0, fixed_j = 0;
  DirectSum ambient;
  std::vector<std::size_t> op_part;    // first part of End(U_ks)^op, by k
  std::vector<std::size_t> left_part;  // first part of End(U_sk), by k
  // Coordinates of the factor End(U_ks)^op x End(U_sk) in the ambient, by k.
  std::vector<std::pair<std::size_t, std::size_t>> factor_coords;
  std::vector<Element> generators;     // <x, y, z> for the fixed pair
  Subgroup span;
  Presentation block;                  // R_ss and its embedding into E

  // Image of generator g of U_sk under the left action of the E-element e.
  Element left_image(const Element& e, std::size_t k, std::size_t g) const;
  // Image of generator g of U_ks under the right action of e.
  Element op_image(const Element& e, std::size_t k, std::size_t g) const;
};

// <x, y, z>_ij in the ambient of `p` for x in U_si, y in U_ij, z in U_js.
Element bracket(const CommRelData& d, const EndoPresentation& p, std::size_t i, std::size_t j,
                const Element& x, const Element& y, const Element& z);

// ---------------------------------------------------------------------------

enum class CoordMode { Firm, Reduced };
std::string to_string(CoordMode m);

struct CoordinatizeOptions {
  // Firm mode: summand order for every diagonal block as a permutation of
  // positions 0..rank-2 (empty means ascending k).
  std::vector<std::size_t> summand_permutation;
};

struct CoordinatizationResult {
  PeirceRing ring;
  CoordMode mode = CoordMode::Firm;
  std::vector<DiagonalPresentation> diagonals;  // firm mode, by s
  std::vector<EndoPresentation> endos;          // reduced mode, by s
  std::vector<Certificate> certificates;
  LemmaAssReport ass;
  PeircePredicateReport predicates;

  bool certified() const;
};

// Requires rank >= 4 and K-linear firm data (PreconditionFailed). An induced
// map that fails to exist raises NotWellDefined and a failed associativity
// check NotAssociative; both indicate an internal inconsistency.
CoordinatizationResult firm_coordinatize(const CommRelData& d, const CoordinatizeOptions& opts = {});

// Requires rank >= 4 and K-linear reduced data (PreconditionFailed). A
// diagonal block that does not embed into a single factor pair raises
// InjectivityFailure.
CoordinatizationResult reduced_coordinatize(const CommRelData& d);

CoordinatizationResult coordinatize(const CommRelData& d, CoordMode mode);

// ---------------------------------------------------------------------------

struct ConnectingHom {
  std::vector<AbHom> blocks;  // built block -> original block, i * rank + j
  std::vector<bool> block_bijective;
  bool bijective = false;
};

// The block map that is the identity off the diagonal and f(x) f(y) on
// products xy. `built` and `original` must both have the modules of `d` as
// off-diagonal blocks (BlockMismatch). Throws NotWellDefined when the
// products do not determine a diagonal map and NotHomomorphism with the
// first failing generator pair.
ConnectingHom connecting_hom(const CommRelData& d, const PeirceRing& built, const PeirceRing& original);

}  // namespace peirce
