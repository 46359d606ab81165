#include "peirce/peirce.hpp"

#include "peirce/error.hpp"

#include <numeric>
#include <sstream>

namespace peirce {
namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream out;
  out << "(" << i + 1 << "," << j + 1 << "," << k + 1 << ")";
  return out.str();
}

std::string pair_label(std::size_t i, std::size_t j) {
  std::ostringstream out;
  out << "(" << i + 1 << "," << j + 1 << ")";
  return out.str();
}

Coeff default_modulus(Coeff requested, std::initializer_list<const FinAbGroup*> groups) {
  if (requested != 0) return requested;
  Coeff e = 1;
  for (const auto* g : groups) e = std::lcm(e, g->exponent());
  return std::max<Coeff>(e, 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// BalancedTensor

BalancedTensor::BalancedTensor(const BilinearMap& right_action, const BilinearMap& left_action)
    : free_(right_action.left(), left_action.right()) {
  const FinAbGroup& M = right_action.left();
  const FinAbGroup& S = right_action.right();
  const FinAbGroup& N = left_action.right();
  if (!(left_action.left() == S) || !(right_action.target() == M) || !(left_action.target() == N))
    throw Error(ErrorKind::InvalidArgument, "tensor over a ring: action shapes do not match");
  std::vector<Element> rels;
  for (std::size_t m = 0; m < M.ngens(); ++m)
    for (std::size_t s = 0; s < S.ngens(); ++s) {
      const Element& ms = right_action.on_generators(m, s);
      for (std::size_t n = 0; n < N.ngens(); ++n) {
        const Element& sn = left_action.on_generators(s, n);
        Element rel = free_.group().sub(free_.pure(ms, N.generator(n)), free_.pure(M.generator(m), sn));
        if (!free_.group().is_zero(rel)) rels.push_back(std::move(rel));
      }
    }
  quotient_ = Quotient(Subgroup(free_.group(), std::move(rels)));
}

BalancedTensor tensor_over_ring(const BilinearMap& right_action, const BilinearMap& ring_mult,
                                const BilinearMap& left_action) {
  const FinAbGroup& S = ring_mult.left();
  if (!(ring_mult.right() == S) || !(ring_mult.target() == S) || !(right_action.right() == S) ||
      !(left_action.left() == S))
    throw Error(ErrorKind::InvalidArgument, "tensor over a ring: ring does not match the actions");
  const FinAbGroup& M = right_action.left();
  const FinAbGroup& N = left_action.right();
  for (std::size_t s = 0; s < S.ngens(); ++s)
    for (std::size_t t = 0; t < S.ngens(); ++t) {
      const Element& st = ring_mult.on_generators(s, t);
      for (std::size_t m = 0; m < M.ngens(); ++m)
        if (right_action.apply(right_action.on_generators(m, s), S.generator(t)) !=
            right_action.apply(M.generator(m), st))
          throw Error(ErrorKind::InvalidArgument, "right action is not associative",
                      "(" + std::to_string(m) + "," + std::to_string(s) + "," + std::to_string(t) + ")");
      for (std::size_t n = 0; n < N.ngens(); ++n)
        if (left_action.apply(S.generator(s), left_action.on_generators(t, n)) !=
            left_action.apply(st, N.generator(n)))
          throw Error(ErrorKind::InvalidArgument, "left action is not associative",
                      "(" + std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(n) + ")");
    }
  return BalancedTensor(right_action, left_action);
}

// ---------------------------------------------------------------------------
// Predicates

BalancedTensor block_tensor(const PeirceRing& r, std::size_t i, std::size_t j, std::size_t k) {
  return BalancedTensor(r.mult(i, j, j), r.mult(j, j, k));
}

AbHom block_tensor_map(const PeirceRing& r, const BalancedTensor& t, std::size_t i, std::size_t j,
                       std::size_t k) {
  return t.lift(r.mult(i, j, k));
}

PredicateResult check_idempotent(const PeirceRing& r) {
  const std::size_t n = r.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Subgroup prod(r.block(i, k), r.mult(i, j, k).table());
        if (!prod.is_whole()) {
          std::ostringstream w;
          w << triple(i, j, k) << ": R_ij R_jk has index " << prod.index() << " in R_ik";
          return {false, w.str()};
        }
      }
  return {};
}

PredicateResult check_firm(const PeirceRing& r) {
  const std::size_t n = r.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        BalancedTensor t = block_tensor(r, i, j, k);
        AbHom m = block_tensor_map(r, t, i, j, k);
        if (!is_isomorphism(m)) {
          std::ostringstream w;
          w << triple(i, j, k) << ": tensor map has kernel of order " << kernel(m).cardinality()
            << " and image of index " << image(m).index();
          return {false, w.str()};
        }
      }
  return {};
}

std::vector<Subgroup> annihilator(const PeirceRing& r) {
  const std::size_t n = r.rank();
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const FinAbGroup& B = r.block(i, j);
      // x -> (x g for g in gens R_jk, g x for g in gens R_ki)
      std::vector<FinAbGroup> parts;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t g = 0; g < r.block(j, k).ngens(); ++g) parts.push_back(r.block(i, k));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t g = 0; g < r.block(k, i).ngens(); ++g) parts.push_back(r.block(k, j));
      DirectSum sum(parts);
      std::vector<Element> images;
      for (std::size_t a = 0; a < B.ngens(); ++a) {
        Element img = sum.group().zero();
        std::size_t slot = 0;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t g = 0; g < r.block(j, k).ngens(); ++g)
            sum.accumulate(img, slot++, r.mult(i, j, k).on_generators(a, g));
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t g = 0; g < r.block(k, i).ngens(); ++g)
            sum.accumulate(img, slot++, r.mult(k, i, j).on_generators(g, a));
        images.push_back(std::move(img));
      }
      out.push_back(kernel(AbHom(B, sum.group(), std::move(images))));
    }
  return out;
}

PredicateResult check_reduced(const PeirceRing& r) {
  PredicateResult idem = check_idempotent(r);
  if (!idem.holds) return {false, "not idempotent: " + idem.witness};
  const auto ann = annihilator(r);
  for (std::size_t b = 0; b < ann.size(); ++b)
    if (!ann[b].is_trivial())
      return {false, pair_label(b / r.rank(), b % r.rank()) + ": annihilated element " +
                         to_string(ann[b].basis().front())};
  return {};
}

PeircePredicateReport check_predicates(const PeirceRing& r) {
  return {check_idempotent(r), check_firm(r), check_reduced(r)};
}

bool is_full_idempotent(const FinRing& r, const Element& e) {
  const FinAbGroup& g = r.additive();
  std::vector<Element> gens;
  for (std::size_t a = 0; a < g.ngens(); ++a) {
    const Element ae = r.multiply(g.generator(a), e);
    for (std::size_t b = 0; b < g.ngens(); ++b) gens.push_back(r.multiply(ae, g.generator(b)));
  }
  return Subgroup(g, std::move(gens)).is_whole();
}

// ---------------------------------------------------------------------------
// Constructions

PeirceRing mat_ring(std::size_t rank, const FinRing& a, Coeff modulus) {
  if (rank < 1) throw Error(ErrorKind::InvalidArgument, "rank must be at least 1");
  modulus = default_modulus(modulus, {&a.additive()});
  std::vector<FinAbGroup> blocks(rank * rank, a.additive());
  std::vector<BilinearMap> mults(rank * rank * rank, a.mult());
  return PeirceRing::create(rank, modulus, std::move(blocks), std::move(mults));
}

IdempotentDecomposition peirce_decomposition(const FinRing& r, const std::vector<Element>& idems,
                                             Coeff modulus) {
  const FinAbGroup& g = r.additive();
  const std::size_t n = idems.size();
  if (n == 0) throw Error(ErrorKind::NotIdempotentFamily, "empty idempotent family");
  if (!r.unit()) throw Error(ErrorKind::NotIdempotentFamily, "ring has no identity");
  std::vector<Element> e;
  Element total = g.zero();
  for (const auto& x : idems) {
    e.push_back(g.reduce(x));
    total = g.add(total, e.back());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Element p = r.multiply(e[i], e[j]);
      if (p != (i == j ? e[i] : g.zero()))
        throw Error(ErrorKind::NotIdempotentFamily, "idempotents are not orthogonal idempotents",
                    "e" + std::to_string(i + 1) + "*e" + std::to_string(j + 1) + " = " + to_string(p));
    }
  if (total != *r.unit())
    throw Error(ErrorKind::NotIdempotentFamily, "idempotents do not sum to 1", to_string(total));
  modulus = default_modulus(modulus, {&g});

  std::vector<FinAbGroup> blocks;
  std::vector<AbHom> embedding;
  std::vector<HomSolver> solvers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Element> gens;
      for (std::size_t a = 0; a < g.ngens(); ++a)
        gens.push_back(r.multiply(r.multiply(e[i], g.generator(a)), e[j]));
      Presentation p = present(Subgroup(g, std::move(gens)));
      blocks.push_back(p.group);
      embedding.push_back(p.embedding);
      solvers.emplace_back(p.embedding);
    }
  std::vector<BilinearMap> mults;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const AbHom& ej = embedding[i * n + j];
        const AbHom& ek = embedding[j * n + k];
        const HomSolver& back = solvers[i * n + k];
        mults.push_back(bilinear_from(blocks[i * n + j], blocks[j * n + k], blocks[i * n + k],
                                      [&](std::size_t a, std::size_t b) {
                                        auto x = back.preimage(r.multiply(ej.images()[a], ek.images()[b]));
                                        if (!x) throw Error(ErrorKind::InvalidArgument,
                                                            "product left its Peirce block");
                                        return *x;
                                      }));
      }
  return {PeirceRing::create(n, modulus, std::move(blocks), std::move(mults)), std::move(embedding)};
}

PeirceRing peirce_from_idempotents(const FinRing& r, const std::vector<Element>& idems, Coeff modulus) {
  return peirce_decomposition(r, idems, modulus).ring;
}

IdempotentDecomposition grouped_matrix_ring(std::size_t size, const FinRing& a,
                                            const std::vector<std::vector<std::size_t>>& parts,
                                            Coeff modulus) {
  if (!a.unit()) throw Error(ErrorKind::InvalidArgument, "grouped matrix ring needs a unital base");
  FinRing mat = FinRing::matrix_algebra(size, a);
  const std::size_t ng = a.ngens();
  std::vector<Element> idems;
  std::vector<bool> used(size, false);
  for (const auto& part : parts) {
    Element e = mat.additive().zero();
    for (std::size_t r : part) {
      if (r >= size || used[r])
        throw Error(ErrorKind::InvalidArgument, "grouping is not a partition of the matrix indices");
      used[r] = true;
      for (std::size_t t = 0; t < ng; ++t) e[(r * size + r) * ng + t] = (*a.unit())[t];
    }
    idems.push_back(std::move(e));
  }
  return peirce_decomposition(mat, idems, modulus == 0 ? default_modulus(0, {&a.additive()}) : modulus);
}

PeirceRing regroup(const PeirceRing& r, const std::vector<std::size_t>& sizes) {
  const std::size_t n = r.rank();
  std::vector<std::vector<std::size_t>> members;
  std::size_t next = 0;
  for (std::size_t s : sizes) {
    if (s == 0) throw Error(ErrorKind::InvalidArgument, "empty index group");
    members.emplace_back();
    for (std::size_t t = 0; t < s; ++t) members.back().push_back(next++);
  }
  if (next != n) throw Error(ErrorKind::InvalidArgument, "index groups do not cover the rank");
  const std::size_t m = members.size();

  // layout of each new block: the old (i, j) pairs it collects
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pieces(m * m);
  std::vector<DirectSum> sums;
  for (std::size_t I = 0; I < m; ++I)
    for (std::size_t J = 0; J < m; ++J) {
      std::vector<FinAbGroup> parts;
      for (std::size_t i : members[I])
        for (std::size_t j : members[J]) {
          pieces[I * m + J].emplace_back(i, j);
          parts.push_back(r.block(i, j));
        }
      sums.emplace_back(std::move(parts));
    }
  auto locate = [&](std::size_t blk, std::size_t gen) {
    const DirectSum& s = sums[blk];
    std::size_t p = 0;
    while (p + 1 < s.size() && s.offset(p + 1) <= gen) ++p;
    return std::pair{p, gen - s.offset(p)};
  };
  std::vector<FinAbGroup> blocks;
  for (const auto& s : sums) blocks.push_back(s.group());
  std::vector<BilinearMap> mults;
  for (std::size_t I = 0; I < m; ++I)
    for (std::size_t J = 0; J < m; ++J)
      for (std::size_t K = 0; K < m; ++K) {
        const DirectSum& target = sums[I * m + K];
        mults.push_back(bilinear_from(blocks[I * m + J], blocks[J * m + K], blocks[I * m + K],
                                      [&](std::size_t a, std::size_t b) {
                                        Element out = target.group().zero();
                                        const auto [pa, la] = locate(I * m + J, a);
                                        const auto [pb, lb] = locate(J * m + K, b);
                                        const auto [i, j] = pieces[I * m + J][pa];
                                        const auto [j2, k] = pieces[J * m + K][pb];
                                        if (j != j2) return out;
                                        std::size_t slot = 0;
                                        while (pieces[I * m + K][slot] != std::pair{i, k}) ++slot;
                                        target.accumulate(out, slot, r.mult(i, j, k).on_generators(la, lb));
                                        return out;
                                      }));
      }
  return PeirceRing::create(m, r.modulus(), std::move(blocks), std::move(mults));
}

PeirceRing collapse_rank(const PeirceRing& r) {
  if (r.rank() < 2) throw Error(ErrorKind::RankTooSmall, "collapse_rank needs rank at least 2");
  std::vector<std::size_t> sizes(r.rank() - 1, 1);
  sizes.back() = 2;
  return regroup(r, sizes);
}

PeirceRing morita_ring(const FinRing& r, const BilinearMap& p_action, const BilinearMap& q_action,
                       const BilinearMap& pairing, Coeff modulus) {
  const FinAbGroup& R = r.additive();
  const FinAbGroup& P = p_action.left();
  const FinAbGroup& Q = q_action.right();
  if (!(p_action.right() == R) || !(p_action.target() == P) || !(q_action.left() == R) ||
      !(q_action.target() == Q) || !(pairing.left() == Q) || !(pairing.right() == P) ||
      !(pairing.target() == R))
    throw Error(ErrorKind::InvalidArgument, "Morita context: shapes do not match");

  BalancedTensor rr = tensor_over_ring(r.mult(), r.mult(), r.mult());
  if (!is_isomorphism(rr.lift(r.mult())))
    throw Error(ErrorKind::PreconditionFailed, "Morita context: base ring is not firm");
  BalancedTensor pr = tensor_over_ring(p_action, r.mult(), r.mult());
  if (!is_isomorphism(pr.lift(p_action)))
    throw Error(ErrorKind::ModuleNotFirm, "Morita context: P (x)_R R -> P is not bijective", "P");
  BalancedTensor rq = tensor_over_ring(r.mult(), r.mult(), q_action);
  if (!is_isomorphism(rq.lift(q_action)))
    throw Error(ErrorKind::ModuleNotFirm, "Morita context: R (x)_R Q -> Q is not bijective", "Q");

  for (std::size_t q = 0; q < Q.ngens(); ++q)
    for (std::size_t p = 0; p < P.ngens(); ++p)
      for (std::size_t s = 0; s < R.ngens(); ++s) {
        const Element& qp = pairing.on_generators(q, p);
        if (pairing.apply(q_action.on_generators(s, q), P.generator(p)) != r.multiply(R.generator(s), qp) ||
            pairing.apply(Q.generator(q), p_action.on_generators(p, s)) != r.multiply(qp, R.generator(s)))
          throw Error(ErrorKind::InvalidArgument, "Morita context: pairing is not R-bilinear",
                      "(" + std::to_string(q) + "," + std::to_string(p) + "," + std::to_string(s) + ")");
      }
  if (!Subgroup(R, pairing.table()).is_whole())
    throw Error(ErrorKind::PairingNotSurjective, "Morita context: pairing is not surjective",
                "<Q,P> has index " + Subgroup(R, pairing.table()).index().str() + " in R");

  BalancedTensor S = tensor_over_ring(p_action, r.mult(), q_action);
  const FinAbGroup& Sg = S.group();
  const TensorProduct& T = S.free();
  const BilinearSide s_side = S.side();
  const BilinearSide p_side{&P, nullptr}, q_side{&Q, nullptr}, r_side{&R, nullptr};

  std::vector<BilinearMap> mults(8);
  auto at = [](std::size_t i, std::size_t j, std::size_t k) { return (i * 2 + j) * 2 + k; };
  // S x S -> S: (p (x) q)(p' (x) q') = p (x) <q, p'> q'
  mults[at(0, 0, 0)] = induced_bilinear(s_side, s_side, Sg, [&](std::size_t t, std::size_t u) {
    const auto [pa, qb] = T.factors(t);
    const auto [pc, qd] = T.factors(u);
    return S.pure(P.generator(pa), q_action.apply(pairing.on_generators(qb, pc), Q.generator(qd)));
  });
  // S x P -> P: (p (x) q) p' = p <q, p'>
  mults[at(0, 0, 1)] = induced_bilinear(s_side, p_side, P, [&](std::size_t t, std::size_t c) {
    const auto [pa, qb] = T.factors(t);
    return p_action.apply(P.generator(pa), pairing.on_generators(qb, c));
  });
  mults[at(0, 1, 0)] = induced_bilinear(p_side, q_side, Sg, [&](std::size_t a, std::size_t b) {
    return S.pure(P.generator(a), Q.generator(b));
  });
  mults[at(0, 1, 1)] = p_action;
  // Q x S -> Q: q (p (x) q') = <q, p> q'
  mults[at(1, 0, 0)] = induced_bilinear(q_side, s_side, Q, [&](std::size_t b, std::size_t t) {
    const auto [pc, qd] = T.factors(t);
    return q_action.apply(pairing.on_generators(b, pc), Q.generator(qd));
  });
  mults[at(1, 0, 1)] = pairing;
  mults[at(1, 1, 0)] = q_action;
  mults[at(1, 1, 1)] = r.mult();
  (void)r_side;

  modulus = default_modulus(modulus, {&R, &P, &Q});
  return PeirceRing::create(2, modulus, {Sg, P, Q, R}, std::move(mults));
}

UniversalRing universal_ring(const PeirceRing& r) {
  if (auto w = check_idempotent(r); !w.holds)
    throw Error(ErrorKind::NotIdempotent, "universal ring needs an idempotent decomposition", w.witness);
  const std::size_t n = r.rank();
  UniversalRing out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      UniversalBlock blk;
      std::vector<FinAbGroup> groups;
      for (std::size_t k = 0; k < n; ++k) {
        blk.parts.emplace_back(r.block(i, k), r.block(k, j));
        groups.push_back(blk.parts.back().group());
      }
      blk.sum = DirectSum(groups);
      const FinAbGroup& amb = blk.sum.group();
      std::vector<Element> rels;
      // x r (x) y - x (x) r y with x in R_ik, r in R_kk', y in R_k'j
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t k2 = 0; k2 < n; ++k2) {
          const FinAbGroup& X = r.block(i, k);
          const FinAbGroup& Rk = r.block(k, k2);
          const FinAbGroup& Y = r.block(k2, j);
          for (std::size_t a = 0; a < X.ngens(); ++a)
            for (std::size_t s = 0; s < Rk.ngens(); ++s) {
              const Element& xr = r.mult(i, k, k2).on_generators(a, s);
              for (std::size_t b = 0; b < Y.ngens(); ++b) {
                Element rel = blk.sum.inject(k2, blk.parts[k2].pure(xr, Y.generator(b)));
                amb.add_scaled(rel, -1,
                               blk.sum.inject(k, blk.parts[k].pure(X.generator(a),
                                                                   r.mult(k, k2, j).on_generators(s, b))));
                if (!amb.is_zero(rel)) rels.push_back(std::move(rel));
              }
            }
        }
      blk.quotient = Quotient(Subgroup(amb, std::move(rels)));
      out.blocks.push_back(std::move(blk));
    }

  // ambient generator of block (i, j) -> (k, a, b)
  auto split = [&](const UniversalBlock& blk, std::size_t g) {
    std::size_t k = 0;
    while (k + 1 < blk.sum.size() && blk.sum.offset(k + 1) <= g) ++k;
    const auto [a, b] = blk.parts[k].factors(g - blk.sum.offset(k));
    return std::tuple{k, a, b};
  };

  std::vector<FinAbGroup> blocks;
  for (const auto& blk : out.blocks) blocks.push_back(blk.quotient.group());
  std::vector<BilinearMap> mults;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        const UniversalBlock& L = out.blocks[i * n + j];
        const UniversalBlock& Rb = out.blocks[j * n + m];
        const UniversalBlock& Tb = out.blocks[i * n + m];
        BilinearSide ls{&L.sum.group(), &L.quotient}, rs{&Rb.sum.group(), &Rb.quotient};
        // (x (x) y)(x' (x) y') = x (x) y x' y'
        mults.push_back(induced_bilinear(ls, rs, Tb.quotient.group(), [&](std::size_t g, std::size_t h) {
          const auto [k, a, b] = split(L, g);
          const auto [k2, c, d] = split(Rb, h);
          const Element yx = r.mult(k, j, k2).on_generators(b, c);
          const Element yxy = r.mult(k, k2, m).apply(yx, r.block(k2, m).generator(d));
          return Tb.pure(k, r.block(i, k).generator(a), yxy);
        }));
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const UniversalBlock& blk = out.blocks[i * n + j];
      std::vector<Element> images;
      for (std::size_t g = 0; g < blk.sum.group().ngens(); ++g) {
        const auto [k, a, b] = split(blk, g);
        images.push_back(r.mult(i, k, j).on_generators(a, b));
      }
      out.canonical.push_back(induced_map(AbHom(blk.sum.group(), r.block(i, j), std::move(images)), blk.quotient));
    }
  out.ring = PeirceRing::create(n, r.modulus(), std::move(blocks), std::move(mults));
  return out;
}

ReducedQuotient reduced_quotient(const PeirceRing& r) {
  if (auto w = check_idempotent(r); !w.holds)
    throw Error(ErrorKind::NotIdempotent, "reduced quotient needs an idempotent decomposition", w.witness);
  const std::size_t n = r.rank();
  ReducedQuotient out;
  out.ideal = annihilator(r);
  for (const auto& h : out.ideal) out.projection.emplace_back(h);
  std::vector<FinAbGroup> blocks;
  for (const auto& q : out.projection) blocks.push_back(q.group());
  std::vector<BilinearMap> mults;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Quotient& ql = out.projection[i * n + j];
        const Quotient& qr = out.projection[j * n + k];
        const Quotient& qt = out.projection[i * n + k];
        mults.push_back(induced_bilinear({&r.block(i, j), &ql}, {&r.block(j, k), &qr}, qt.group(),
                                         [&](std::size_t a, std::size_t b) {
                                           return qt.project(r.mult(i, j, k).on_generators(a, b));
                                         }));
      }
  out.ring = PeirceRing::create(n, r.modulus(), std::move(blocks), std::move(mults));
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

std::optional<std::string> homomorphism_failure(const PeirceRing& src, const PeirceRing& dst,
                                                const std::vector<AbHom>& f) {
  const std::size_t n = src.rank();
  if (dst.rank() != n || f.size() != n * n)
    throw Error(ErrorKind::InvalidArgument, "block map between rings of different rank");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const AbHom& fij = f[i * n + j];
        const AbHom& fjk = f[j * n + k];
        const AbHom& fik = f[i * n + k];
        for (std::size_t a = 0; a < src.block(i, j).ngens(); ++a)
          for (std::size_t b = 0; b < src.block(j, k).ngens(); ++b) {
            const Element lhs = fik.apply(src.mult(i, j, k).on_generators(a, b));
            const Element rhs = dst.mult(i, j, k).apply(fij.images()[a], fjk.images()[b]);
            if (lhs != rhs) {
              std::ostringstream w;
              w << triple(i, j, k) << " generators (" << a << "," << b << ")";
              return w.str();
            }
          }
      }
  return std::nullopt;
}

bool blockwise_bijective(const std::vector<AbHom>& f) {
  for (const auto& h : f)
    if (!is_isomorphism(h)) return false;
  return true;
}

std::vector<AbHom> extend_from_off_diagonal(const PeirceRing& src, const PeirceRing& dst,
                                            std::vector<AbHom> f) {
  const std::size_t n = src.rank();
  if (n < 2) throw Error(ErrorKind::PreconditionFailed, "extension from off-diagonal blocks needs rank >= 2");
  if (dst.rank() != n || f.size() != n * n)
    throw Error(ErrorKind::InvalidArgument, "block map between rings of different rank");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i == 0 ? 1 : 0;
    const FinAbGroup& X = src.block(i, j);
    const FinAbGroup& Y = src.block(j, i);
    TensorProduct t(X, Y);
    AbHom mu = t.lift(src.mult(i, j, i));
    if (!is_surjective(mu))
      throw Error(ErrorKind::PreconditionFailed, "diagonal block is not spanned by products",
                  pair_label(i, i));
    std::vector<Element> phi_images;
    for (std::size_t g = 0; g < t.group().ngens(); ++g) {
      const auto [a, b] = t.factors(g);
      phi_images.push_back(dst.mult(i, j, i).apply(f[i * n + j].images()[a], f[j * n + i].images()[b]));
    }
    AbHom phi(t.group(), dst.block(i, i), std::move(phi_images));
    HomSolver solver(mu);
    induced_map(phi, solver.kernel());  // throws NotWellDefined with a witness
    std::vector<Element> images;
    const FinAbGroup& D = src.block(i, i);
    for (std::size_t s = 0; s < D.ngens(); ++s) images.push_back(phi.apply(*solver.preimage(D.generator(s))));
    f[i * n + i] = AbHom(D, dst.block(i, i), std::move(images));
  }
  return f;
}

}  // namespace peirce
