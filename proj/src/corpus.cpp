#include "peirce/corpus.hpp"

namespace peirce {
namespace {

Element diag_idempotent(const FinRing& mat, std::size_t size, const FinRing& base,
                        const std::vector<std::pair<std::size_t, Element>>& entries) {
  Element e = mat.additive().zero();
  const std::size_t ng = base.ngens();
  for (const auto& [r, v] : entries)
    for (std::size_t t = 0; t < ng; ++t) e[(r * size + r) * ng + t] = v[t];
  return e;
}

}  // namespace

std::vector<UnitalExample> unital_examples() {
  std::vector<UnitalExample> out;
  for (Coeff n : {2, 3, 4}) {
    const FinRing k = FinRing::cyclic(n);
    for (std::size_t l = 1; l <= (n == 4 ? 3u : 4u); ++l) {
      FinRing mat = FinRing::matrix_algebra(l, k);
      std::vector<Element> idems;
      for (std::size_t r = 0; r < l; ++r) idems.push_back(diag_idempotent(mat, l, k, {{r, {1}}}));
      out.push_back({"Mat(" + std::to_string(l) + ", Z/" + std::to_string(n) + ")", mat, idems, n});
    }
  }
  const FinRing z2 = FinRing::cyclic(2);
  {
    FinRing mat = FinRing::matrix_algebra(3, z2);
    out.push_back({"Mat(3, Z/2) grouped 1|23", mat,
                   {diag_idempotent(mat, 3, z2, {{0, {1}}}),
                    diag_idempotent(mat, 3, z2, {{1, {1}}, {2, {1}}})},
                   2});
  }
  {
    FinRing mat = FinRing::matrix_algebra(5, z2);
    out.push_back({"Mat(5, Z/2) grouped 1|2|3|45", mat,
                   {diag_idempotent(mat, 5, z2, {{0, {1}}}), diag_idempotent(mat, 5, z2, {{1, {1}}}),
                    diag_idempotent(mat, 5, z2, {{2, {1}}}),
                    diag_idempotent(mat, 5, z2, {{3, {1}}, {4, {1}}})},
                   2});
  }
  {
    FinRing r = FinRing::product(z2, z2);
    out.push_back({"Z/2 x Z/2", r, {{1, 0}, {0, 1}}, 2});
  }
  {
    FinRing r = FinRing::upper_triangular(2, z2);
    // cells (0,0), (0,1), (1,1)
    out.push_back({"T(2, Z/2)", r, {{1, 0, 0}, {0, 0, 1}}, 2});
  }
  out.push_back({"Z/2 with (1, 0)", z2, {{1}, {0}}, 2});
  {
    FinRing z6 = FinRing::cyclic(6);
    out.push_back({"Z/6 with (3, 4)", z6, {{3}, {4}}, 6});
  }
  {
    FinRing base = FinRing::product(z2, z2);
    FinRing mat = FinRing::matrix_algebra(2, base);
    out.push_back({"Mat(2, Z/2 x Z/2) with e1 = diag((1,1),(1,0))", mat,
                   {diag_idempotent(mat, 2, base, {{0, {1, 1}}, {1, {1, 0}}}),
                    diag_idempotent(mat, 2, base, {{1, {0, 1}}})},
                   2});
  }
  return out;
}

PeirceRing morita_dot_product(Coeff n, std::size_t dim) {
  const FinRing k = FinRing::cyclic(n);
  const FinAbGroup& R = k.additive();
  FinAbGroup V(std::vector<Coeff>(dim, n));
  auto act = bilinear_from(V, R, V, [&](std::size_t a, std::size_t) { return V.generator(a); });
  auto lact = bilinear_from(R, V, V, [&](std::size_t, std::size_t b) { return V.generator(b); });
  auto pairing = bilinear_from(V, V, R, [&](std::size_t a, std::size_t b) {
    return a == b ? Element{1} : Element{0};
  });
  return morita_ring(k, act, lact, pairing, n);
}

PeirceRing morita_degenerate() {
  const FinRing k = FinRing::cyclic(2);
  const FinAbGroup& R = k.additive();
  FinAbGroup V({2, 2});
  auto act = bilinear_from(V, R, V, [&](std::size_t a, std::size_t) { return V.generator(a); });
  auto lact = bilinear_from(R, V, V, [&](std::size_t, std::size_t b) { return V.generator(b); });
  auto pairing = bilinear_from(V, V, R, [&](std::size_t a, std::size_t b) {
    return a == 0 && b == 0 ? Element{1} : Element{0};
  });
  return morita_ring(k, act, lact, pairing, 2);
}

PeirceRing firm_not_reduced_example(std::size_t rank) {
  return mat_ring(rank, morita_degenerate().to_fin_ring(), 2);
}

PeirceRing reduced_not_firm_example(std::size_t rank) {
  return mat_ring(rank, reduced_quotient(morita_degenerate()).ring.to_fin_ring(), 2);
}

std::vector<CorpusRing> standard_corpus() {
  std::vector<CorpusRing> out;
  for (Coeff n : {2, 3, 4})
    for (std::size_t l = 1; l <= 4; ++l)
      out.push_back({"mat" + std::to_string(l) + "_z" + std::to_string(n), mat_ring(l, FinRing::cyclic(n))});
  const FinRing z2 = FinRing::cyclic(2);
  out.push_back({"grouped3_1-23_z2", grouped_matrix_ring(3, z2, {{0}, {1, 2}}).ring});
  out.push_back({"grouped5_1-2-3-45_z2", grouped_matrix_ring(5, z2, {{0}, {1}, {2}, {3, 4}}).ring});
  out.push_back({"morita_dot2_z2", morita_dot_product(2, 2)});
  out.push_back({"morita_degenerate_z2", morita_degenerate()});
  return out;
}

}  // namespace peirce
