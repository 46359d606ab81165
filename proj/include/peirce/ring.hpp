#pragma once

// Finite rings given by structure constants on additive generators, and rings
// with a Peirce decomposition R = sum of blocks R_ij over K = Z/n.
//
// Indices are 0-based throughout the library; the file format and reports
// print them 1-based.

#include "peirce/exact_linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace peirce {

// An associative, not necessarily unital ring on a finite abelian group.
class FinRing {
 public:
  FinRing() = default;

  // Throws Error(NotAssociative) naming the first failing generator triple,
  // or InvalidArgument if `unit` is not a two-sided identity.
  static FinRing create(FinAbGroup additive, BilinearMap mult, std::optional<Element> unit = {});
  // Skips all checks. Used by tests that need a deliberately broken ring.
  static FinRing unchecked(FinAbGroup additive, BilinearMap mult, std::optional<Element> unit = {});

  static FinRing cyclic(Coeff n);
  static FinRing product(const FinRing& a, const FinRing& b);
  // Mat(k, A). Generator (r, c, a) sits at index (r * k + c) * A.ngens() + a.
  static FinRing matrix_algebra(std::size_t k, const FinRing& a);
  // Upper triangular k x k matrices over A, same indexing with the strictly
  // lower entries left out.
  static FinRing upper_triangular(std::size_t k, const FinRing& a);

  const FinAbGroup& additive() const noexcept { return additive_; }
  const BilinearMap& mult() const noexcept { return mult_; }
  const std::optional<Element>& unit() const noexcept { return unit_; }
  std::size_t ngens() const noexcept { return additive_.ngens(); }

  Element multiply(const Element& x, const Element& y) const { return mult_.apply(x, y); }

  // First generator triple with (ab)c != a(bc), as "(a,b,c)".
  std::optional<std::string> associativity_failure() const;

 private:
  FinAbGroup additive_;
  BilinearMap mult_;
  std::optional<Element> unit_;
};

// ---------------------------------------------------------------------------

class PeirceRing {
 public:
  PeirceRing() = default;

  // blocks[i * rank + j] is R_ij; mults[(i * rank + j) * rank + k] is
  // R_ij x R_jk -> R_ik. Checks that every block has exponent dividing the
  // modulus and that the multiplication is associative on generator triples
  // (Error NotAssociative with the index pattern and generators).
  static PeirceRing create(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> blocks,
                           std::vector<BilinearMap> mults);
  static PeirceRing unchecked(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> blocks,
                              std::vector<BilinearMap> mults);

  std::size_t rank() const noexcept { return rank_; }
  Coeff modulus() const noexcept { return modulus_; }
  const FinAbGroup& block(std::size_t i, std::size_t j) const { return blocks_.at(i * rank_ + j); }
  const BilinearMap& mult(std::size_t i, std::size_t j, std::size_t k) const {
    return mults_.at((i * rank_ + j) * rank_ + k);
  }
  const std::vector<FinAbGroup>& blocks() const noexcept { return blocks_; }
  const std::vector<BilinearMap>& mults() const noexcept { return mults_; }

  Element multiply(std::size_t i, std::size_t j, std::size_t k, const Element& x,
                   const Element& y) const {
    return mult(i, j, k).apply(x, y);
  }

  // The whole ring as one group, blocks laid out in (i, j) row-major order.
  const DirectSum& flat() const noexcept { return flat_; }
  std::size_t flat_index(std::size_t i, std::size_t j) const { return i * rank_ + j; }
  Element embed(std::size_t i, std::size_t j, const Element& x) const {
    return flat_.inject(flat_index(i, j), x);
  }
  Element component(const Element& x, std::size_t i, std::size_t j) const {
    return flat_.component(x, flat_index(i, j));
  }
  Element multiply(const Element& x, const Element& y) const;
  Integer cardinality() const { return flat_.group().cardinality(); }

  FinRing to_fin_ring() const;

  // First failing (i,j,k,l) with generators, 1-based, or nothing.
  std::optional<std::string> associativity_failure() const;
  // Same, restricted to index quadruples accepted by `pattern`.
  template <class Pred>
  std::optional<std::string> associativity_failure_where(Pred pattern) const;

  friend bool operator==(const PeirceRing& a, const PeirceRing& b) {
    return a.rank_ == b.rank_ && a.modulus_ == b.modulus_ && a.blocks_ == b.blocks_ &&
           a.mults_ == b.mults_;
  }

 private:
  PeirceRing(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> blocks,
             std::vector<BilinearMap> mults);
  std::optional<std::string> check_quadruple(std::size_t i, std::size_t j, std::size_t k,
                                             std::size_t l) const;

  std::size_t rank_ = 0;
  Coeff modulus_ = 2;
  std::vector<FinAbGroup> blocks_;
  std::vector<BilinearMap> mults_;
  DirectSum flat_;
};

template <class Pred>
std::optional<std::string> PeirceRing::associativity_failure_where(Pred pattern) const {
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t k = 0; k < rank_; ++k)
        for (std::size_t l = 0; l < rank_; ++l) {
          if (!pattern(i, j, k, l)) continue;
          if (auto w = check_quadruple(i, j, k, l)) return w;
        }
  return std::nullopt;
}

// A bilinear map built from a function on generator index pairs.
template <class F>
BilinearMap bilinear_from(const FinAbGroup& left, const FinAbGroup& right, const FinAbGroup& target,
                          F&& f) {
  std::vector<Element> table;
  table.reserve(left.ngens() * right.ngens());
  for (std::size_t a = 0; a < left.ngens(); ++a)
    for (std::size_t b = 0; b < right.ngens(); ++b) table.push_back(f(a, b));
  return BilinearMap(left, right, target, std::move(table));
}

}  // namespace peirce
