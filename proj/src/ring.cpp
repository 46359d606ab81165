#include "peirce/ring.hpp"

#include "peirce/error.hpp"

#include <sstream>

namespace peirce {

// ---------------------------------------------------------------------------
// FinRing

FinRing FinRing::unchecked(FinAbGroup additive, BilinearMap mult, std::optional<Element> unit) {
  if (!(mult.left() == additive) || !(mult.right() == additive) || !(mult.target() == additive))
    throw Error(ErrorKind::InvalidArgument, "ring multiplication must be a map R x R -> R");
  FinRing r;
  r.additive_ = std::move(additive);
  r.mult_ = std::move(mult);
  if (unit) r.unit_ = r.additive_.reduce(std::move(*unit));
  return r;
}

FinRing FinRing::create(FinAbGroup additive, BilinearMap mult, std::optional<Element> unit) {
  FinRing r = unchecked(std::move(additive), std::move(mult), std::move(unit));
  if (auto w = r.associativity_failure())
    throw Error(ErrorKind::NotAssociative, "ring multiplication is not associative", *w);
  if (r.unit_) {
    for (std::size_t a = 0; a < r.ngens(); ++a) {
      const Element g = r.additive_.generator(a);
      if (r.multiply(*r.unit_, g) != g || r.multiply(g, *r.unit_) != g)
        throw Error(ErrorKind::InvalidArgument, "claimed unit is not an identity",
                    "generator " + std::to_string(a));
    }
  }
  return r;
}

std::optional<std::string> FinRing::associativity_failure() const {
  const std::size_t n = ngens();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Element& ab = mult_.on_generators(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        const Element lhs = multiply(ab, additive_.generator(c));
        const Element rhs = multiply(additive_.generator(a), mult_.on_generators(b, c));
        if (lhs != rhs) {
          std::ostringstream w;
          w << "(" << a << "," << b << "," << c << ")";
          return w.str();
        }
      }
    }
  return std::nullopt;
}

FinRing FinRing::cyclic(Coeff n) {
  FinAbGroup g({n});
  if (g.is_trivial()) return create(g, BilinearMap::zero(g, g, g), g.zero());
  return create(g, BilinearMap(g, g, g, {{1}}), Element{1});
}

FinRing FinRing::product(const FinRing& a, const FinRing& b) {
  DirectSum sum({a.additive(), b.additive()});
  const std::size_t na = a.ngens();
  auto table = [&](std::size_t x, std::size_t y) {
    if (x < na && y < na) return sum.inject(0, a.mult().on_generators(x, y));
    if (x >= na && y >= na) return sum.inject(1, b.mult().on_generators(x - na, y - na));
    return sum.group().zero();
  };
  std::optional<Element> unit;
  if (a.unit() && b.unit()) unit = sum.group().add(sum.inject(0, *a.unit()), sum.inject(1, *b.unit()));
  return create(sum.group(), bilinear_from(sum.group(), sum.group(), sum.group(), table), unit);
}

namespace {

// Shared by the full and triangular matrix algebras: `cells` lists the
// allowed (row, col) positions.
FinRing matrix_like(std::size_t k, const FinRing& a,
                    const std::vector<std::pair<std::size_t, std::size_t>>& cells) {
  const std::size_t ng = a.ngens();
  std::vector<FinAbGroup> parts(cells.size(), a.additive());
  DirectSum sum(parts);
  std::vector<std::vector<std::ptrdiff_t>> slot(k, std::vector<std::ptrdiff_t>(k, -1));
  for (std::size_t t = 0; t < cells.size(); ++t) slot[cells[t].first][cells[t].second] = static_cast<std::ptrdiff_t>(t);
  auto table = [&](std::size_t x, std::size_t y) {
    const auto [r, c] = cells[x / ng];
    const auto [c2, d] = cells[y / ng];
    Element out = sum.group().zero();
    if (c != c2 || slot[r][d] < 0) return out;
    sum.accumulate(out, static_cast<std::size_t>(slot[r][d]), a.mult().on_generators(x % ng, y % ng));
    return out;
  };
  std::optional<Element> unit;
  if (a.unit()) {
    Element u = sum.group().zero();
    for (std::size_t r = 0; r < k; ++r)
      if (slot[r][r] >= 0) sum.accumulate(u, static_cast<std::size_t>(slot[r][r]), *a.unit());
    unit = u;
  }
  return FinRing::create(sum.group(), bilinear_from(sum.group(), sum.group(), sum.group(), table), unit);
}

}  // namespace

FinRing FinRing::matrix_algebra(std::size_t k, const FinRing& a) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) cells.emplace_back(r, c);
  return matrix_like(k, a, cells);
}

FinRing FinRing::upper_triangular(std::size_t k, const FinRing& a) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = r; c < k; ++c) cells.emplace_back(r, c);
  return matrix_like(k, a, cells);
}

// ---------------------------------------------------------------------------
// PeirceRing

PeirceRing::PeirceRing(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> blocks,
                       std::vector<BilinearMap> mults)
    : rank_(rank), modulus_(modulus), blocks_(std::move(blocks)), mults_(std::move(mults)) {
  if (rank_ < 1) throw Error(ErrorKind::InvalidArgument, "rank must be at least 1");
  if (modulus_ < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
  if (blocks_.size() != rank_ * rank_ || mults_.size() != rank_ * rank_ * rank_)
    throw Error(ErrorKind::InvalidArgument, "wrong number of blocks or multiplication maps");
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t k = 0; k < rank_; ++k) {
        const BilinearMap& m = mult(i, j, k);
        if (!(m.left() == block(i, j)) || !(m.right() == block(j, k)) || !(m.target() == block(i, k)))
          throw Error(ErrorKind::BlockMismatch, "multiplication map has the wrong blocks",
                      "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                          std::to_string(k + 1) + ")");
      }
  flat_ = DirectSum(blocks_);
}

PeirceRing PeirceRing::unchecked(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> blocks,
                                 std::vector<BilinearMap> mults) {
  return PeirceRing(rank, modulus, std::move(blocks), std::move(mults));
}

PeirceRing PeirceRing::create(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> blocks,
                              std::vector<BilinearMap> mults) {
  PeirceRing r(rank, modulus, std::move(blocks), std::move(mults));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      if (modulus % r.block(i, j).exponent() != 0)
        throw Error(ErrorKind::InvalidArgument, "block exponent does not divide the modulus",
                    "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  if (auto w = r.associativity_failure())
    throw Error(ErrorKind::NotAssociative, "Peirce multiplication is not associative", *w);
  return r;
}

Element PeirceRing::multiply(const Element& x, const Element& y) const {
  Element out = flat_.group().zero();
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) {
      const Element xij = component(x, i, j);
      if (block(i, j).is_zero(xij)) continue;
      for (std::size_t k = 0; k < rank_; ++k) {
        const Element yjk = component(y, j, k);
        if (block(j, k).is_zero(yjk)) continue;
        flat_.accumulate(out, flat_index(i, k), multiply(i, j, k, xij, yjk));
      }
    }
  return out;
}

FinRing PeirceRing::to_fin_ring() const {
  const FinAbGroup& g = flat_.group();
  // generator index -> (block, local generator)
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (std::size_t a = 0; a < blocks_[b].ngens(); ++a) where.emplace_back(b, a);
  auto table = [&](std::size_t x, std::size_t y) {
    const auto [bx, ax] = where[x];
    const auto [by, ay] = where[y];
    const std::size_t i = bx / rank_, j = bx % rank_, j2 = by / rank_, k = by % rank_;
    Element out = g.zero();
    if (j != j2) return out;
    flat_.accumulate(out, flat_index(i, k), mult(i, j, k).on_generators(ax, ay));
    return out;
  };
  return FinRing::unchecked(g, bilinear_from(g, g, g, table));
}

std::optional<std::string> PeirceRing::check_quadruple(std::size_t i, std::size_t j, std::size_t k,
                                                       std::size_t l) const {
  const BilinearMap& ijk = mult(i, j, k);
  const BilinearMap& ikl = mult(i, k, l);
  const BilinearMap& jkl = mult(j, k, l);
  const BilinearMap& ijl = mult(i, j, l);
  const FinAbGroup& A = block(i, j);
  const FinAbGroup& B = block(j, k);
  const FinAbGroup& C = block(k, l);
  for (std::size_t a = 0; a < A.ngens(); ++a)
    for (std::size_t b = 0; b < B.ngens(); ++b) {
      const Element& ab = ijk.on_generators(a, b);
      for (std::size_t c = 0; c < C.ngens(); ++c) {
        const Element lhs = ikl.apply(ab, C.generator(c));
        const Element rhs = ijl.apply(A.generator(a), jkl.on_generators(b, c));
        if (lhs != rhs) {
          std::ostringstream w;
          w << "(" << i + 1 << "," << j + 1 << "," << k + 1 << "," << l + 1 << ") generators ("
            << a << "," << b << "," << c << ")";
          return w.str();
        }
      }
    }
  return std::nullopt;
}

std::optional<std::string> PeirceRing::associativity_failure() const {
  return associativity_failure_where([](auto...) { return true; });
}

}  // namespace peirce
