#pragma once

// Commutator data of type A_{l-1}: a module U_ij for every root e_i - e_j and
// bilinear maps c: U_ij x U_jk -> U_ik for distinct i, j, k.

#include "peirce/peirce.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peirce {

// The root e_i - e_j, 0-based.
struct Root {
  std::size_t i = 0;
  std::size_t j = 0;

  Root operator-() const { return {j, i}; }
  friend bool operator==(const Root&, const Root&) = default;
  friend auto operator<=>(const Root&, const Root&) = default;
};

// a + b when it is a root, i.e. when the pairs chain up in either order.
std::optional<Root> root_sum(const Root& a, const Root& b);
std::vector<Root> roots(std::size_t rank);
std::string to_string(const Root& a);  // "(i,j)", 1-based

class CommRelData {
 public:
  CommRelData() = default;

  // modules[i * rank + j] is U_ij (diagonal entries are ignored and stored
  // trivial); maps[(i * rank + j) * rank + k] is c for distinct i, j, k and
  // ignored otherwise. Checks shapes (BlockMismatch) and the A3 rule
  // c(c(x, y), z) = c(x, c(y, z)) on generators (NotAssociative).
  static CommRelData create(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> modules,
                            std::vector<BilinearMap> maps);
  // Shape checks only.
  static CommRelData unchecked(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> modules,
                               std::vector<BilinearMap> maps);

  std::size_t rank() const noexcept { return rank_; }
  Coeff modulus() const noexcept { return modulus_; }
  const FinAbGroup& module(std::size_t i, std::size_t j) const { return modules_.at(i * rank_ + j); }
  const FinAbGroup& module(const Root& a) const { return module(a.i, a.j); }
  const BilinearMap& cmap(std::size_t i, std::size_t j, std::size_t k) const;
  Element c(std::size_t i, std::size_t j, std::size_t k, const Element& x, const Element& y) const {
    return cmap(i, j, k).apply(x, y);
  }
  const std::vector<FinAbGroup>& modules() const noexcept { return modules_; }
  const std::vector<BilinearMap>& maps() const noexcept { return maps_; }

  // First distinct (i,j,k,l) and generator triple breaking the A3 rule.
  std::optional<std::string> a3_failure() const;

  // Copy with c_ijk replaced by zero and no A3 check.
  CommRelData with_zero_map(std::size_t i, std::size_t j, std::size_t k) const;

  friend bool operator==(const CommRelData& a, const CommRelData& b) {
    return a.rank_ == b.rank_ && a.modulus_ == b.modulus_ && a.modules_ == b.modules_ &&
           a.maps_ == b.maps_;
  }

 private:
  CommRelData(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> modules,
              std::vector<BilinearMap> maps);

  std::size_t rank_ = 0;
  Coeff modulus_ = 2;
  std::vector<FinAbGroup> modules_;
  std::vector<BilinearMap> maps_;
};

// U_ij = R_ij and c = multiplication, for i != j.
CommRelData extract(const PeirceRing& r);

// c(U_ij, U_jk) generates U_ik for all distinct i, j, k.
PredicateResult check_idempotent_rel(const CommRelData& d);

// For every distinct (i,j,k,l): the kernel of
//   (U_ij (x) U_jl) + (U_ik (x) U_kl) -> U_il
// equals the image of the two-by-two map from
//   (U_ij (x) U_jk (x) U_kl) + (U_ik (x) U_kj (x) U_jl).
// Throws PreconditionFailed unless the data is idempotent.
PredicateResult check_firm_rel(const CommRelData& d);

// No nonzero g in U_ij with c(g, U_jk) = 0 and c(U_ki, g) = 0 for some k.
// Throws PreconditionFailed unless the data is idempotent.
PredicateResult check_reduced_rel(const CommRelData& d);

// Every module is a Z/n-module. Bilinearity then gives K-bilinearity.
PredicateResult check_K_linear(const CommRelData& d);

}  // namespace peirce
