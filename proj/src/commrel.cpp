#include "peirce/commrel.hpp"

#include "peirce/error.hpp"

namespace peirce {
namespace {

std::string idx(std::initializer_list<std::size_t> is) {
  std::string out = "(";
  bool first = true;
  for (std::size_t i : is) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + ")";
}

bool distinct(std::size_t i, std::size_t j, std::size_t k) { return i != j && j != k && i != k; }

}  // namespace

std::optional<Root> root_sum(const Root& a, const Root& b) {
  if (a.j == b.i && a.i != b.j) return Root{a.i, b.j};
  if (b.j == a.i && b.i != a.j) return Root{b.i, a.j};
  return std::nullopt;
}

std::vector<Root> roots(std::size_t rank) {
  std::vector<Root> out;
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

std::string to_string(const Root& a) { return idx({a.i, a.j}); }

CommRelData::CommRelData(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> modules,
                         std::vector<BilinearMap> maps)
    : rank_(rank), modulus_(modulus), modules_(std::move(modules)), maps_(std::move(maps)) {
  if (rank_ < 1) throw Error(ErrorKind::InvalidArgument, "rank must be at least 1");
  if (modulus_ < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
  if (modules_.size() != rank_ * rank_ || maps_.size() != rank_ * rank_ * rank_)
    throw Error(ErrorKind::InvalidArgument, "wrong number of modules or maps");
  for (std::size_t i = 0; i < rank_; ++i) modules_[i * rank_ + i] = FinAbGroup();
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t k = 0; k < rank_; ++k) {
        BilinearMap& m = maps_[(i * rank_ + j) * rank_ + k];
        if (!distinct(i, j, k)) {
          m = BilinearMap();
          continue;
        }
        if (m.left() != module(i, j) || m.right() != module(j, k) || m.target() != module(i, k))
          throw Error(ErrorKind::BlockMismatch, "commutator map has the wrong modules", idx({i, j, k}));
      }
}

CommRelData CommRelData::create(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> modules,
                                std::vector<BilinearMap> maps) {
  CommRelData d(rank, modulus, std::move(modules), std::move(maps));
  if (auto w = d.a3_failure())
    throw Error(ErrorKind::NotAssociative, "commutator maps violate the A3 rule", *w);
  return d;
}

CommRelData CommRelData::unchecked(std::size_t rank, Coeff modulus, std::vector<FinAbGroup> modules,
                                   std::vector<BilinearMap> maps) {
  return CommRelData(rank, modulus, std::move(modules), std::move(maps));
}

const BilinearMap& CommRelData::cmap(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= rank_ || j >= rank_ || k >= rank_ || !distinct(i, j, k))
    throw Error(ErrorKind::BlockMismatch, "commutator maps need distinct indices", idx({i, j, k}));
  return maps_[(i * rank_ + j) * rank_ + k];
}

std::optional<std::string> CommRelData::a3_failure() const {
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t k = 0; k < rank_; ++k)
        for (std::size_t l = 0; l < rank_; ++l) {
          if (!distinct(i, j, k) || l == i || l == j || l == k) continue;
          const FinAbGroup &A = module(i, j), &B = module(j, k), &C = module(k, l);
          for (std::size_t a = 0; a < A.ngens(); ++a)
            for (std::size_t b = 0; b < B.ngens(); ++b) {
              const Element ab = cmap(i, j, k).on_generators(a, b);
              for (std::size_t g = 0; g < C.ngens(); ++g) {
                const Element lhs = c(i, k, l, ab, C.generator(g));
                const Element rhs = c(i, j, l, A.generator(a), cmap(j, k, l).on_generators(b, g));
                if (lhs != rhs)
                  return idx({i, j, k, l}) + " generators " + idx({a, b, g});
              }
            }
        }
  return std::nullopt;
}

CommRelData CommRelData::with_zero_map(std::size_t i, std::size_t j, std::size_t k) const {
  std::vector<BilinearMap> maps = maps_;
  const BilinearMap& m = cmap(i, j, k);
  maps[(i * rank_ + j) * rank_ + k] = BilinearMap::zero(m.left(), m.right(), m.target());
  return unchecked(rank_, modulus_, modules_, std::move(maps));
}

CommRelData extract(const PeirceRing& r) {
  const std::size_t n = r.rank();
  std::vector<FinAbGroup> modules(n * n);
  std::vector<BilinearMap> maps(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) modules[i * n + j] = r.block(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (distinct(i, j, k)) maps[(i * n + j) * n + k] = r.mult(i, j, k);
    }
  return CommRelData::create(n, r.modulus(), std::move(modules), std::move(maps));
}

PredicateResult check_idempotent_rel(const CommRelData& d) {
  const std::size_t n = d.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!distinct(i, j, k)) continue;
        const Subgroup span(d.module(i, k), d.cmap(i, j, k).table());
        if (!span.is_whole())
          return {false, idx({i, j, k}) + ": commutators have index " + span.index().str() + " in " +
                             to_string(Root{i, k})};
      }
  return {};
}

PredicateResult check_firm_rel(const CommRelData& d) {
  if (auto idem = check_idempotent_rel(d); !idem.holds)
    throw Error(ErrorKind::PreconditionFailed, "commutator data is not idempotent", idem.witness);
  const std::size_t n = d.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          if (!distinct(i, j, k) || l == i || l == j || l == k) continue;
          const TensorProduct t1 = tensor_z(d.module(i, j), d.module(j, l));
          const TensorProduct t2 = tensor_z(d.module(i, k), d.module(k, l));
          const DirectSum sum({t1.group(), t2.group()});
          const FinAbGroup& S = sum.group();

          std::vector<Element> images = t1.lift(d.cmap(i, j, l)).images();
          const AbHom second = t2.lift(d.cmap(i, k, l));
          images.insert(images.end(), second.images().begin(), second.images().end());
          const Subgroup ker = kernel(AbHom(S, d.module(i, l), std::move(images)));

          std::vector<Element> gens;
          auto push = [&](const Element& first, const Element& second) {
            Element v = sum.inject(0, first);
            sum.accumulate(v, 1, t2.group().neg(second));
            gens.push_back(std::move(v));
          };
          const FinAbGroup &A = d.module(i, j), &B = d.module(j, k), &C = d.module(k, l);
          for (std::size_t a = 0; a < A.ngens(); ++a)
            for (std::size_t b = 0; b < B.ngens(); ++b)
              for (std::size_t g = 0; g < C.ngens(); ++g)
                push(t1.pure(A.generator(a), d.cmap(j, k, l).on_generators(b, g)),
                     t2.pure(d.cmap(i, j, k).on_generators(a, b), C.generator(g)));
          const FinAbGroup &P = d.module(i, k), &Q = d.module(k, j), &W = d.module(j, l);
          for (std::size_t a = 0; a < P.ngens(); ++a)
            for (std::size_t b = 0; b < Q.ngens(); ++b)
              for (std::size_t g = 0; g < W.ngens(); ++g)
                push(t1.pure(d.cmap(i, k, j).on_generators(a, b), W.generator(g)),
                     t2.pure(P.generator(a), d.cmap(k, j, l).on_generators(b, g)));
          const Subgroup img(S, std::move(gens));
          if (!(img == ker))
            return {false, idx({i, j, k, l}) + ": kernel of order " + ker.cardinality().str() +
                               ", image of order " + img.cardinality().str()};
        }
  return {};
}

PredicateResult check_reduced_rel(const CommRelData& d) {
  if (auto idem = check_idempotent_rel(d); !idem.holds)
    throw Error(ErrorKind::PreconditionFailed, "commutator data is not idempotent", idem.witness);
  const std::size_t n = d.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!distinct(i, j, k)) continue;
        // g -> (c(g, y) for generators y of U_jk, c(w, g) for generators w of U_ki)
        const FinAbGroup& U = d.module(i, j);
        if (U.is_trivial()) continue;
        std::vector<FinAbGroup> parts;
        const FinAbGroup &Y = d.module(j, k), &W = d.module(k, i);
        for (std::size_t b = 0; b < Y.ngens(); ++b) parts.push_back(d.module(i, k));
        for (std::size_t b = 0; b < W.ngens(); ++b) parts.push_back(d.module(k, j));
        const DirectSum target(parts);
        std::vector<Element> images;
        for (std::size_t a = 0; a < U.ngens(); ++a) {
          Element v = target.group().zero();
          for (std::size_t b = 0; b < Y.ngens(); ++b)
            target.accumulate(v, b, d.cmap(i, j, k).on_generators(a, b));
          for (std::size_t b = 0; b < W.ngens(); ++b)
            target.accumulate(v, Y.ngens() + b, d.cmap(k, i, j).on_generators(b, a));
          images.push_back(std::move(v));
        }
        const Subgroup ker = kernel(AbHom(U, target.group(), std::move(images)));
        if (!ker.is_trivial())
          return {false, to_string(Root{i, j}) + " with " + std::to_string(k + 1) + ": g = " +
                             to_string(ker.basis().front()) + " commutes with both neighbours"};
      }
  return {};
}

PredicateResult check_K_linear(const CommRelData& d) {
  for (const Root& a : roots(d.rank())) {
    const Coeff e = d.module(a).exponent();
    if (d.modulus() % e != 0)
      return {false, to_string(a) + ": exponent " + std::to_string(e) + " does not divide " +
                         std::to_string(d.modulus())};
  }
  return {};
}

}  // namespace peirce
