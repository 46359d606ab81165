#pragma once

// Constructions on Peirce-decomposed rings and the idempotent / firm /
// reduced predicates.

#include "peirce/exact_linalg.hpp"
#include "peirce/ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peirce {

// ---------------------------------------------------------------------------
// Tensor products over a ring

// M (x)_S N for a right S-module M and a left S-module N, as a quotient of
// M (x)_Z N by the subgroup generated by mr (x) n - m (x) rn on generators.
class BalancedTensor {
 public:
  BalancedTensor() = default;
  BalancedTensor(const BilinearMap& right_action, const BilinearMap& left_action);

  const FinAbGroup& left() const noexcept { return free_.left(); }
  const FinAbGroup& right() const noexcept { return free_.right(); }
  const TensorProduct& free() const noexcept { return free_; }
  const Quotient& quotient() const noexcept { return quotient_; }
  const FinAbGroup& group() const noexcept { return quotient_.group(); }
  BilinearSide side() const { return {&free_.group(), &quotient_}; }

  Element pure(const Element& m, const Element& n) const {
    return quotient_.project(free_.pure(m, n));
  }
  // Homomorphism m (x) n -> f(m, n); Error(NotWellDefined) if f is not
  // balanced.
  AbHom lift(const BilinearMap& f) const { return induced_map(free_.lift(f), quotient_); }

 private:
  TensorProduct free_;
  Quotient quotient_;
};

// Checks that both actions are associative with respect to `ring_mult`
// (Error InvalidArgument otherwise) and builds M (x)_S N.
BalancedTensor tensor_over_ring(const BilinearMap& right_action, const BilinearMap& ring_mult,
                                const BilinearMap& left_action);

// ---------------------------------------------------------------------------
// Predicates

struct PredicateResult {
  bool holds = true;
  std::string witness;  // empty when holds
};

struct PeircePredicateReport {
  PredicateResult idempotent;
  PredicateResult firm;
  PredicateResult reduced;
};

// R_ij (x)_{R_jj} R_jk.
BalancedTensor block_tensor(const PeirceRing& r, std::size_t i, std::size_t j, std::size_t k);
// The multiplication R_ij (x)_{R_jj} R_jk -> R_ik.
AbHom block_tensor_map(const PeirceRing& r, const BalancedTensor& t, std::size_t i, std::size_t j,
                       std::size_t k);

PredicateResult check_idempotent(const PeirceRing& r);
PredicateResult check_firm(const PeirceRing& r);
// Annihilator blocks I_ij = {x in R_ij | x R = R x = 0}.
std::vector<Subgroup> annihilator(const PeirceRing& r);
PredicateResult check_reduced(const PeirceRing& r);
PeircePredicateReport check_predicates(const PeirceRing& r);

// R e R = R for an element e of a ring, by subgroup generation.
bool is_full_idempotent(const FinRing& r, const Element& e);

// ---------------------------------------------------------------------------
// Constructions

// `modulus` 0 means the exponent of A's additive group (at least 2).
PeirceRing mat_ring(std::size_t rank, const FinRing& a, Coeff modulus = 0);

struct IdempotentDecomposition {
  PeirceRing ring;
  std::vector<AbHom> embedding;  // R_ij -> R, indexed i * rank + j
};

// Error(NotIdempotentFamily) unless the family is orthogonal, idempotent and
// sums to the unit of R.
IdempotentDecomposition peirce_decomposition(const FinRing& r, const std::vector<Element>& idems,
                                             Coeff modulus = 0);
PeirceRing peirce_from_idempotents(const FinRing& r, const std::vector<Element>& idems,
                                   Coeff modulus = 0);

// Mat(size, A) with the diagonal idempotents summed along `parts`
// (0-based matrix indices, e.g. {{0}, {1, 2}} for 1|23).
IdempotentDecomposition grouped_matrix_ring(std::size_t size, const FinRing& a,
                                            const std::vector<std::vector<std::size_t>>& parts,
                                            Coeff modulus = 0);

// Merges consecutive indices: group g collects `sizes[g]` old indices.
PeirceRing regroup(const PeirceRing& r, const std::vector<std::size_t>& sizes);
// Merges the last two indices into one (the last index of the result).
PeirceRing collapse_rank(const PeirceRing& r);

// The rank 2 ring (S P; Q R) with S = P (x)_R Q. p_action: P x R -> P,
// q_action: R x Q -> Q, pairing: Q x P -> R.
PeirceRing morita_ring(const FinRing& r, const BilinearMap& p_action, const BilinearMap& q_action,
                       const BilinearMap& pairing, Coeff modulus = 0);

// One block of R (x)_R R: the sum over k of R_ik (x) R_kj modulo the
// balancing relations.
struct UniversalBlock {
  std::vector<TensorProduct> parts;  // indexed by k
  DirectSum sum;
  Quotient quotient;

  Element pure(std::size_t k, const Element& x, const Element& y) const {
    return quotient.project(sum.inject(k, parts[k].pure(x, y)));
  }
};

struct UniversalRing {
  PeirceRing ring;
  std::vector<UniversalBlock> blocks;  // indexed i * rank + j
  std::vector<AbHom> canonical;        // new block -> old block, by multiplication
};
// R (x)_R R with blocks sum_k R_ik (x) R_kj modulo the balancing relations.
UniversalRing universal_ring(const PeirceRing& r);

struct ReducedQuotient {
  PeirceRing ring;
  std::vector<Subgroup> ideal;
  std::vector<Quotient> projection;
};
ReducedQuotient reduced_quotient(const PeirceRing& r);

// ---------------------------------------------------------------------------
// Block-preserving homomorphisms

// First generator pair (x, y) with f(xy) != f(x) f(y), 1-based indices.
std::optional<std::string> homomorphism_failure(const PeirceRing& src, const PeirceRing& dst,
                                                const std::vector<AbHom>& f);
bool blockwise_bijective(const std::vector<AbHom>& f);

// Extends given maps on off-diagonal blocks to the diagonal through
// f(xy) = f(x) f(y), using x in R_ij, y in R_ji for the smallest j != i.
// Requires rank >= 2 and an idempotent source; NotWellDefined if the
// products do not determine a map.
std::vector<AbHom> extend_from_off_diagonal(const PeirceRing& src, const PeirceRing& dst,
                                            std::vector<AbHom> f);

}  // namespace peirce
