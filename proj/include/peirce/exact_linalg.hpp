#pragma once

// Finite abelian groups, their homomorphisms, subgroups, quotients and
// tensor products over Z. Everything else in the library is built on top of
// these types.
//
// A group is presented as Z/d_0 + ... + Z/d_{n-1} with every d_i >= 2, and an
// element is its coordinate vector with 0 <= x_i < d_i. Values are immutable
// once constructed.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace peirce {

using Coeff = std::int64_t;
using Element = std::vector<Coeff>;
using Integer = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Integer>>;

std::string to_string(const Element& x);

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
  IntMatrix S;     // diagonal, s_i | s_{i+1}, s_i >= 0
  IntMatrix U;     // unimodular, rows x rows
  IntMatrix V;     // unimodular, cols x cols
  IntMatrix Vinv;  // inverse of V
};

// U * M * V = S. Exact over the integers.
SmithForm smith_normal_form(const IntMatrix& M);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
Integer determinant(const IntMatrix& m);

// ---------------------------------------------------------------------------

class FinAbGroup {
 public:
  FinAbGroup() = default;
  // Orders equal to 1 are dropped; orders < 1 are rejected.
  explicit FinAbGroup(std::vector<Coeff> orders);

  static FinAbGroup cyclic(Coeff d) { return FinAbGroup({d}); }
  static FinAbGroup direct_sum(std::span<const FinAbGroup> parts);

  std::size_t ngens() const noexcept { return orders_.size(); }
  const std::vector<Coeff>& orders() const noexcept { return orders_; }
  Coeff order(std::size_t i) const { return orders_.at(i); }
  bool is_trivial() const noexcept { return orders_.empty(); }
  Integer cardinality() const;
  Coeff exponent() const;

  Element zero() const { return Element(orders_.size(), 0); }
  Element generator(std::size_t i) const;
  // Reduces arbitrary integer coordinates into [0, d_i).
  Element reduce(Element x) const;
  bool is_element(const Element& x) const;
  bool is_zero(const Element& x) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element scale(Coeff k, const Element& a) const;
  // a + k*b
  void add_scaled(Element& a, Coeff k, const Element& b) const;
  Coeff element_order(const Element& x) const;

  // Visits every element in lexicographic order. Intended for small groups.
  void for_each_element(const std::function<void(const Element&)>& fn) const;
  std::vector<Element> elements() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

 private:
  std::vector<Coeff> orders_;
};

std::string to_string(const FinAbGroup& g);

// Bookkeeping for a direct sum of groups laid out one after another.
class DirectSum {
 public:
  DirectSum() = default;
  explicit DirectSum(std::vector<FinAbGroup> parts);

  const FinAbGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return parts_.size(); }
  const FinAbGroup& part(std::size_t k) const { return parts_.at(k); }
  std::size_t offset(std::size_t k) const { return offsets_.at(k); }

  Element inject(std::size_t k, const Element& x) const;
  Element component(const Element& x, std::size_t k) const;
  // Adds `x` (an element of part k) into the slot of `total`.
  void accumulate(Element& total, std::size_t k, const Element& x, Coeff scale = 1) const;

 private:
  std::vector<FinAbGroup> parts_;
  std::vector<std::size_t> offsets_;
  FinAbGroup group_;
};

// ---------------------------------------------------------------------------

class AbHom {
 public:
  AbHom() = default;
  // images[i] is the image of source generator i. Throws unless
  // order(g_i) * images[i] == 0 for all i.
  AbHom(FinAbGroup source, FinAbGroup target, std::vector<Element> images);

  static AbHom zero(const FinAbGroup& source, const FinAbGroup& target);
  static AbHom identity(const FinAbGroup& g);

  const FinAbGroup& source() const noexcept { return source_; }
  const FinAbGroup& target() const noexcept { return target_; }
  const std::vector<Element>& images() const noexcept { return images_; }

  Element apply(const Element& x) const;
  bool is_zero() const;

  friend bool operator==(const AbHom&, const AbHom&) = default;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  std::vector<Element> images_;
};

// g after f
AbHom compose(const AbHom& g, const AbHom& f);

// ---------------------------------------------------------------------------

// A full-rank sublattice of Z^n that contains diag(moduli), kept in upper
// triangular Hermite form. Subgroups of a finite abelian group are exactly
// such lattices.
class HermiteLattice {
 public:
  explicit HermiteLattice(std::vector<Coeff> moduli);

  void insert(Element v);
  void canonicalize();

  std::size_t dim() const noexcept { return moduli_.size(); }
  Coeff pivot(std::size_t c) const { return rows_[c][c]; }
  const Element& row(std::size_t c) const { return rows_[c]; }
  // Unique representative of v modulo the lattice with 0 <= v_c < pivot(c).
  Element reduce(Element v) const;

 private:
  std::vector<Coeff> moduli_;
  std::vector<Element> rows_;
};

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FinAbGroup ambient, std::vector<Element> generators);

  static Subgroup whole(const FinAbGroup& g);
  static Subgroup trivial(const FinAbGroup& g);

  const FinAbGroup& ambient() const noexcept { return ambient_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  // Canonical echelon basis: the nonzero rows of the Hermite form, reduced.
  // Two subgroups are equal iff their bases are equal.
  const std::vector<Element>& basis() const noexcept { return basis_; }
  const HermiteLattice& lattice() const { return *lattice_; }

  Integer cardinality() const;
  Integer index() const;
  bool is_trivial() const noexcept { return basis_.empty(); }
  bool is_whole() const;
  bool contains(const Element& x) const;
  // Lexicographically least element of the coset x + H.
  Element reduce(const Element& x) const;

  Subgroup operator+(const Subgroup& other) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b);

 private:
  FinAbGroup ambient_;
  std::vector<Element> generators_;
  std::shared_ptr<const HermiteLattice> lattice_;
  std::vector<Element> basis_;
};

bool subgroup_equal(const Subgroup& a, const Subgroup& b);

// ---------------------------------------------------------------------------

class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(Subgroup h);

  const FinAbGroup& group() const noexcept { return group_; }
  const FinAbGroup& ambient() const noexcept { return kernel_.ambient(); }
  const Subgroup& kernel() const noexcept { return kernel_; }
  const AbHom& projection() const noexcept { return proj_; }
  const std::vector<Element>& section_generators() const noexcept { return section_; }

  Element project(const Element& x) const { return proj_.apply(x); }
  // Lexicographically least representative of the coset q.
  Element section(const Element& q) const;

 private:
  Subgroup kernel_;
  FinAbGroup group_;
  AbHom proj_;
  std::vector<Element> section_;
};

Quotient quotient(const FinAbGroup& g, const Subgroup& h);

// The factorisation of f through G/H. Throws Error(NotWellDefined) naming
// the first generator of H that f does not kill.
AbHom induced_map(const AbHom& f, const Quotient& q);
AbHom induced_map(const AbHom& f, const Subgroup& h);

// Kernel and preimages of one homomorphism, sharing a single echelon form
// of its graph.
class HomSolver {
 public:
  explicit HomSolver(AbHom f);

  const AbHom& map() const noexcept { return f_; }
  const Subgroup& kernel() const noexcept { return kernel_; }
  // Lexicographically least x with f(x) = y, if any.
  std::optional<Element> preimage(const Element& y) const;

 private:
  AbHom f_;
  std::shared_ptr<HermiteLattice> graph_;
  Subgroup kernel_;
};

Subgroup kernel(const AbHom& f);
Subgroup image(const AbHom& f);
bool is_injective(const AbHom& f);
bool is_surjective(const AbHom& f);
bool is_isomorphism(const AbHom& f);

// An abstract group isomorphic to H together with its embedding.
struct Presentation {
  FinAbGroup group;
  AbHom embedding;
};
Presentation present(const Subgroup& h);

// ---------------------------------------------------------------------------

// A biadditive map L x R -> T stored on generator pairs.
class BilinearMap {
 public:
  BilinearMap() = default;
  // table is row-major: entry (a, b) at a * right.ngens() + b. Throws unless
  // gcd(ord a, ord b) kills every entry.
  BilinearMap(FinAbGroup left, FinAbGroup right, FinAbGroup target, std::vector<Element> table);

  static BilinearMap zero(const FinAbGroup& left, const FinAbGroup& right, const FinAbGroup& target);

  const FinAbGroup& left() const noexcept { return left_; }
  const FinAbGroup& right() const noexcept { return right_; }
  const FinAbGroup& target() const noexcept { return target_; }
  const std::vector<Element>& table() const noexcept { return table_; }

  const Element& on_generators(std::size_t a, std::size_t b) const {
    return table_[a * right_.ngens() + b];
  }
  Element apply(const Element& x, const Element& y) const;
  bool is_zero() const noexcept { return support_.empty(); }

  friend bool operator==(const BilinearMap& a, const BilinearMap& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.target_ == b.target_ &&
           a.table_ == b.table_;
  }

 private:
  FinAbGroup left_;
  FinAbGroup right_;
  FinAbGroup target_;
  std::vector<Element> table_;
  std::vector<std::size_t> support_;  // indices of nonzero entries
};

// A (x) B over Z: generators g_a (x) h_b of order gcd(d_a, e_b); pairs with
// coprime orders vanish.
class TensorProduct {
 public:
  TensorProduct() = default;
  TensorProduct(FinAbGroup left, FinAbGroup right);

  const FinAbGroup& group() const noexcept { return group_; }
  const FinAbGroup& left() const noexcept { return left_; }
  const FinAbGroup& right() const noexcept { return right_; }

  std::optional<std::size_t> pure_index(std::size_t a, std::size_t b) const {
    return pure_[a * right_.ngens() + b];
  }
  // The generator pair (a, b) behind tensor generator t.
  std::pair<std::size_t, std::size_t> factors(std::size_t t) const { return factors_.at(t); }
  Element pure(const Element& x, const Element& y) const;
  // The homomorphism x (x) y -> f(x, y).
  AbHom lift(const BilinearMap& f) const;
  BilinearMap universal() const;

 private:
  FinAbGroup left_;
  FinAbGroup right_;
  FinAbGroup group_;
  std::vector<std::optional<std::size_t>> pure_;
  std::vector<std::pair<std::size_t, std::size_t>> factors_;
};

TensorProduct tensor_z(const FinAbGroup& a, const FinAbGroup& b);

// One side of a bilinear map being pushed down to a quotient: either a plain
// group (quotient == nullptr) or the quotient of `ambient`.
struct BilinearSide {
  const FinAbGroup* ambient = nullptr;
  const Quotient* quotient = nullptr;
  const FinAbGroup& group() const { return quotient ? quotient->group() : *ambient; }
};

// The bilinear map on group(left) x group(right) induced by a map given on
// pairs of ambient generators. Well-definedness on each quotient is checked
// through induced_map and reported as Error(NotWellDefined).
BilinearMap induced_bilinear(const BilinearSide& left, const BilinearSide& right,
                             const FinAbGroup& target,
                             const std::function<Element(std::size_t, std::size_t)>& on_ambient);

}  // namespace peirce
