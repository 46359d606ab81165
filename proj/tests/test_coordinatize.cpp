#include "doctest.h"
#include "oracles.hpp"

#include "peirce/coordinatize.hpp"
#include "peirce/corpus.hpp"
#include "peirce/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

using namespace peirce;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

PeirceRing grouped5() {
  return grouped_matrix_ring(5, FinRing::cyclic(2), {{0}, {1}, {2}, {3, 4}}).ring;
}

CommRelData zero_data(std::size_t rank) {
  std::vector<FinAbGroup> modules(rank * rank);
  std::vector<BilinearMap> maps(rank * rank * rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t k = 0; k < rank; ++k)
        maps[(i * rank + j) * rank + k] = BilinearMap::zero(FinAbGroup(), FinAbGroup(), FinAbGroup());
  return CommRelData::create(rank, 2, modules, maps);
}

// Diagonal block of the firm construction from scratch: one free generator
// per pair of elements (x, y) in U_sk x U_ks, with bilinearity and the A
// relations imposed over all elements.
std::vector<Coeff> firm_block_divisors(const CommRelData& d, std::size_t s) {
  const std::size_t n = d.rank();
  std::map<std::tuple<std::size_t, Element, Element>, std::size_t> col;
  std::vector<std::size_t> ks;
  Coeff exponent = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == s) continue;
    ks.push_back(k);
    for (const auto& x : d.module(s, k).elements())
      for (const auto& y : d.module(k, s).elements()) col.emplace(std::tuple{k, x, y}, col.size());
    exponent = std::lcm(exponent, d.module(s, k).exponent());
  }
  std::vector<oracle::Relation> rels;
  auto c = [&](std::size_t k, const Element& x, const Element& y) { return col.at({k, x, y}); };
  for (std::size_t k : ks) {
    const FinAbGroup &X = d.module(s, k), &Y = d.module(k, s);
    for (const auto& x : X.elements())
      for (const auto& x2 : X.elements())
        for (const auto& y : Y.elements())
          rels.push_back({{c(k, X.add(x, x2), y), 1}, {c(k, x, y), -1}, {c(k, x2, y), -1}});
    for (const auto& x : X.elements())
      for (const auto& y : Y.elements())
        for (const auto& y2 : Y.elements())
          rels.push_back({{c(k, x, Y.add(y, y2)), 1}, {c(k, x, y), -1}, {c(k, x, y2), -1}});
  }
  for (std::size_t i : ks)
    for (std::size_t j : ks) {
      if (i == j) continue;
      for (const auto& x : d.module(s, i).elements())
        for (const auto& y : d.module(i, j).elements())
          for (const auto& z : d.module(j, s).elements())
            rels.push_back({{c(i, x, d.c(i, j, s, y, z)), 1}, {c(j, d.c(s, i, j, x, y), z), -1}});
    }
  return oracle::quotient_divisors(col.size(), rels, exponent);
}

// The bracket <x, y, z> written out as the list of its values on every
// generator of every U_sk and U_ks.
std::vector<Element> bracket_values(const CommRelData& d, std::size_t s, std::size_t i, std::size_t j,
                                    const Element& x, const Element& y, const Element& z) {
  std::vector<Element> out;
  for (std::size_t k = 0; k < d.rank(); ++k) {
    if (k == s) continue;
    const FinAbGroup &O = d.module(k, s), &L = d.module(s, k);
    for (std::size_t g = 0; g < O.ngens(); ++g) {
      const Element w = O.generator(g);
      // w <x,y,z> = ((w x) y) z, grouped so every product has distinct indices
      out.push_back(k != i ? d.c(k, i, s, d.c(k, s, i, w, x), d.c(i, j, s, y, z))
                           : d.c(i, j, s, d.c(i, s, j, w, d.c(s, i, j, x, y)), z));
    }
    for (std::size_t g = 0; g < L.ngens(); ++g) {
      const Element w = L.generator(g);
      out.push_back(k != i ? d.c(s, i, k, x, d.c(i, s, k, d.c(i, j, s, y, z), w))
                           : d.c(s, j, i, d.c(s, i, j, x, y), d.c(j, s, i, z, w)));
    }
  }
  return out;
}

// Number of distinct sums of brackets over all elements, by closure.
std::size_t bracket_span_size(const CommRelData& d, std::size_t s, std::size_t i, std::size_t j) {
  using Vec = std::vector<Element>;
  std::vector<Vec> gens;
  for (const auto& x : d.module(s, i).elements())
    for (const auto& y : d.module(i, j).elements())
      for (const auto& z : d.module(j, s).elements()) gens.push_back(bracket_values(d, s, i, j, x, y, z));
  // module of each coordinate
  std::vector<const FinAbGroup*> mod;
  for (std::size_t k = 0; k < d.rank(); ++k) {
    if (k == s) continue;
    for (std::size_t g = 0; g < d.module(k, s).ngens(); ++g) mod.push_back(&d.module(k, s));
    for (std::size_t g = 0; g < d.module(s, k).ngens(); ++g) mod.push_back(&d.module(s, k));
  }
  auto add = [&](const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t t = 0; t < a.size(); ++t) r[t] = mod[t]->add(a[t], b[t]);
    return r;
  };
  Vec zero;
  for (const auto* m : mod) zero.push_back(m->zero());
  std::vector<Vec> seen{zero};
  std::map<Vec, bool> have{{zero, true}};
  for (std::size_t t = 0; t < seen.size(); ++t)
    for (const auto& g : gens) {
      Vec v = add(seen[t], g);
      if (have.emplace(v, true).second) seen.push_back(v);
    }
  return seen.size();
}

// Random elements x, y of the whole ring with f(xy) = f(x) f(y), f applied
// blockwise.
bool multiplicative_on_samples(const PeirceRing& src, const PeirceRing& dst, const std::vector<AbHom>& f,
                               std::mt19937_64& rng, int samples) {
  const std::size_t n = src.rank();
  auto apply = [&](const Element& x) {
    Element out = dst.flat().group().zero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dst.flat().accumulate(out, dst.flat_index(i, j), f[i * n + j].apply(src.component(x, i, j)));
    return out;
  };
  for (int t = 0; t < samples; ++t) {
    const Element x = oracle::random_element(rng, src.flat().group());
    const Element y = oracle::random_element(rng, src.flat().group());
    if (apply(src.multiply(x, y)) != dst.multiply(apply(x), apply(y))) return false;
  }
  return true;
}

// The ring with an extra Z/2 in every diagonal block that multiplies to zero.
PeirceRing with_diagonal_ghost(const PeirceRing& r) {
  const std::size_t n = r.rank();
  std::vector<FinAbGroup> blocks = r.blocks();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Coeff> o = r.block(i, i).orders();
    o.push_back(2);
    blocks[i * n + i] = FinAbGroup(o);
  }
  std::vector<BilinearMap> mults;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const BilinearMap& m = r.mult(i, j, k);
        const FinAbGroup &L = blocks[i * n + j], &R = blocks[j * n + k], &T = blocks[i * n + k];
        mults.push_back(bilinear_from(L, R, T, [&](std::size_t a, std::size_t b) {
          Element e = T.zero();
          if (a < m.left().ngens() && b < m.right().ngens()) {
            const Element v = m.on_generators(a, b);
            std::copy(v.begin(), v.end(), e.begin());
          }
          return e;
        }));
      }
  return PeirceRing::create(n, r.modulus(), blocks, mults);
}

void check_roundtrip(const PeirceRing& r, CoordMode mode) {
  const CommRelData d = extract(r);
  const CoordinatizationResult res = coordinatize(d, mode);
  CHECK(res.mode == mode);
  CHECK(res.certified());
  CHECK(extract(res.ring) == d);
  const ConnectingHom h = connecting_hom(d, res.ring, r);
  CHECK(h.bijective);
  const std::size_t n = d.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) CHECK(h.blocks[i * n + j] == AbHom::identity(d.module(i, j)));
  std::mt19937_64 rng(0xC0FFEE);
  CHECK(multiplicative_on_samples(res.ring, r, h.blocks, rng, 64));
}

}  // namespace

TEST_CASE("index patterns") {
  CHECK(index_pattern(1, 4, 1, 6) == "abac");
  CHECK(index_pattern(3, 3, 3, 3) == "aaaa");
  CHECK(index_pattern(2, 0, 1, 2) == "abca");
  CHECK(index_pattern(0, 0, 1, 0) == "aaba");
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < 4; ++l) seen.push_back(index_pattern(i, j, k, l));
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  CHECK(seen.size() == 15);  // Bell number B_4
  CHECK(std::count_if(seen.begin(), seen.end(), is_hypothesis_pattern) == 6);
  CHECK_FALSE(is_hypothesis_pattern("aaaa"));
}

TEST_CASE("verify_lemma_ass") {
  const PeirceRing r = mat_ring(4, FinRing::cyclic(2));
  const LemmaAssReport rep = verify_lemma_ass(r);
  REQUIRE(rep.patterns.size() == 15);
  for (std::size_t p = 0; p < 6; ++p) CHECK(rep.patterns[p].hypothesis);
  for (const auto& p : rep.patterns) CHECK_MESSAGE(p.result.holds, p.pattern);
  CHECK(rep.hypotheses_hold);
  CHECK(rep.products.holds);
  CHECK(rep.all_hold);
  CHECK(rep.conclusion_idempotent);
  CHECK(rep.consistent());

  // zero the square of R_11: only patterns touching R_11 R_11 break
  auto mults = r.mults();
  mults[0] = BilinearMap::zero(r.block(0, 0), r.block(0, 0), r.block(0, 0));
  const PeirceRing bad = PeirceRing::unchecked(4, 2, r.blocks(), mults);
  const LemmaAssReport b = verify_lemma_ass(bad);
  CHECK_FALSE(b.all_hold);
  CHECK_FALSE(b.hypotheses_hold);  // abaa: (x_12 y_21) z_11
  CHECK(b.products.holds);
  CHECK(b.consistent());
  for (const auto& p : b.patterns)
    if (p.pattern == "abcd" || p.pattern == "abca" || p.pattern == "abcb" || p.pattern == "abac")
      CHECK_MESSAGE(p.result.holds, p.pattern);

  // zero the pairing R_12 x R_21 -> R_11: products fail
  mults = r.mults();
  const std::size_t idx = (0 * 4 + 1) * 4 + 0;
  mults[idx] = BilinearMap::zero(r.block(0, 1), r.block(1, 0), r.block(0, 0));
  const LemmaAssReport p = verify_lemma_ass(PeirceRing::unchecked(4, 2, r.blocks(), mults));
  CHECK_FALSE(p.products.holds);
  CHECK(p.products.witness.rfind("(1,2,1)", 0) == 0);
  CHECK_FALSE(p.conclusion_idempotent);

  CHECK(kind_of([] { verify_lemma_ass(mat_ring(3, FinRing::cyclic(2))); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("build_A_subgroup examples") {
  const CommRelData d2 = extract(mat_ring(4, FinRing::cyclic(2)));
  const Subgroup a2 = build_A_subgroup(d2, 0, 1, 2);
  // Z/2 (x) Z/2 twice; generated by (e, -e)
  CHECK(a2.ambient() == FinAbGroup({2, 2}));
  CHECK(a2 == Subgroup(FinAbGroup({2, 2}), {{1, 1}}));
  const CommRelData d3 = extract(mat_ring(4, FinRing::cyclic(3)));
  const Subgroup a3 = build_A_subgroup(d3, 2, 0, 3);
  CHECK(a3 == Subgroup(FinAbGroup({3, 3}), {{1, 2}}));
  CHECK(a3.cardinality() == 3);
  CHECK(build_A_subgroup(zero_data(4), 0, 1, 2).is_trivial());
  CHECK(kind_of([&] { build_A_subgroup(d2, 0, 0, 2); }) == ErrorKind::IndexClash);
  CHECK(kind_of([&] { build_A_subgroup(d2, 0, 1, 4); }) == ErrorKind::IndexClash);
}

TEST_CASE("firm diagonal blocks agree with an element-level presentation") {
  for (const PeirceRing& r : {mat_ring(4, FinRing::cyclic(2)), mat_ring(4, FinRing::cyclic(3)),
                              mat_ring(4, FinRing::cyclic(4)), grouped5()}) {
    const CommRelData d = extract(r);
    const CoordinatizationResult res = firm_coordinatize(d);
    for (std::size_t s = 0; s < 4; ++s) {
      CHECK(oracle::elementary_divisors(res.ring.block(s, s)) == firm_block_divisors(d, s));
      CHECK(res.diagonals[s].quotient.group() == res.ring.block(s, s));
    }
  }
  const CoordinatizationResult g = firm_coordinatize(extract(grouped5()));
  CHECK(g.ring.block(3, 3).cardinality() == 16);
  CHECK(g.ring.block(0, 0).cardinality() == 2);
}

TEST_CASE("reduced diagonal blocks agree with the bracket span") {
  for (const PeirceRing& r : {mat_ring(4, FinRing::cyclic(2)), mat_ring(4, FinRing::cyclic(3)), grouped5()}) {
    const CommRelData d = extract(r);
    const CoordinatizationResult res = reduced_coordinatize(d);
    for (std::size_t s = 0; s < 4; ++s) {
      const EndoPresentation& p = res.endos[s];
      CHECK(res.ring.block(s, s).cardinality() == bracket_span_size(d, s, p.fixed_i, p.fixed_j));
      CHECK(p.span.cardinality() == res.ring.block(s, s).cardinality());
      // the bracket matches its written-out form on generators
      const FinAbGroup &X = d.module(s, p.fixed_i), &Y = d.module(p.fixed_i, p.fixed_j),
                       &Z = d.module(p.fixed_j, s);
      const Element e = bracket(d, p, p.fixed_i, p.fixed_j, X.generator(0), Y.generator(0), Z.generator(0));
      const auto vals = bracket_values(d, s, p.fixed_i, p.fixed_j, X.generator(0), Y.generator(0), Z.generator(0));
      std::size_t t = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        if (k == s) continue;
        for (std::size_t g = 0; g < d.module(k, s).ngens(); ++g) CHECK(p.op_image(e, k, g) == vals[t++]);
        for (std::size_t g = 0; g < d.module(s, k).ngens(); ++g) CHECK(p.left_image(e, k, g) == vals[t++]);
      }
    }
  }
  const CoordinatizationResult g = reduced_coordinatize(extract(grouped5()));
  CHECK(g.ring.block(3, 3).cardinality() == 16);
}

TEST_CASE("roundtrips") {
  const FinRing z2 = FinRing::cyclic(2);
  for (CoordMode mode : {CoordMode::Firm, CoordMode::Reduced}) {
    for (const PeirceRing& r : {mat_ring(4, z2), mat_ring(4, FinRing::cyclic(3)), mat_ring(4, FinRing::cyclic(4)),
                                grouped5(), mat_ring(5, z2), mat_ring(4, FinRing::upper_triangular(2, z2))}) {
      CAPTURE(to_string(mode));
      check_roundtrip(r, mode);
    }
  }
  check_roundtrip(firm_not_reduced_example(4), CoordMode::Firm);
  check_roundtrip(reduced_not_firm_example(4), CoordMode::Reduced);
}

TEST_CASE("roundtrips over seeded grouped matrix rings") {
  std::mt19937_64 rng(20261016);
  int done = 0;
  for (int t = 0; t < 6; ++t) {
    const std::size_t m = 4 + rng() % 3;
    // cut 0..m-1 into 4 nonempty consecutive groups
    std::vector<std::size_t> cuts(m - 1);
    for (std::size_t q = 0; q < cuts.size(); ++q) cuts[q] = q + 1;
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(3);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::vector<std::size_t>> groups(4);
    for (std::size_t c = 0, g = 0; c < m; ++c) {
      while (g < 3 && c >= cuts[g]) ++g;
      groups[g].push_back(c);
    }
    const Coeff n = (rng() % 2) ? 2 : 3;
    const PeirceRing r = grouped_matrix_ring(m, FinRing::cyclic(n), groups).ring;
    CAPTURE(m);
    CAPTURE(n);
    for (CoordMode mode : {CoordMode::Firm, CoordMode::Reduced}) check_roundtrip(r, mode);
    ++done;
  }
  CHECK(done == 6);
}

TEST_CASE("certificates") {
  const CommRelData d = extract(mat_ring(4, FinRing::cyclic(2)));
  const CoordinatizationResult f = firm_coordinatize(d);
  CHECK(f.certificates.size() == 12);
  for (const auto& c : f.certificates) {
    CHECK(c.holds);
    CHECK(c.name.rfind("r-cons ", 0) == 0);
  }
  CHECK(f.diagonals.size() == 4);
  CHECK(f.endos.empty());

  const CoordinatizationResult r = reduced_coordinatize(d);
  std::size_t span = 0, inj = 0, closure = 0;
  for (const auto& c : r.certificates) {
    CHECK_MESSAGE(c.holds, c.name);
    span += c.name.rfind("r-gen span", 0) == 0;
    inj += c.name.rfind("r-gen injective", 0) == 0;
    closure += c.name.rfind("r-gen closure", 0) == 0;
  }
  CHECK(span == 20);
  CHECK(inj == 12);
  CHECK(closure == 4);
  CHECK(r.endos.size() == 4);
  CHECK(r.diagonals.empty());
  CHECK(to_string(CoordMode::Firm) == "firm");
  CHECK(to_string(CoordMode::Reduced) == "reduced");
}

TEST_CASE("firm and reduced constructions agree when both apply") {
  for (const PeirceRing& r : {mat_ring(4, FinRing::cyclic(4)), grouped5()}) {
    const CommRelData d = extract(r);
    const auto f = firm_coordinatize(d);
    const auto g = reduced_coordinatize(d);
    CHECK(connecting_hom(d, f.ring, g.ring).bijective);
    CHECK(connecting_hom(d, g.ring, f.ring).bijective);
  }
}

TEST_CASE("summand order does not matter") {
  const CommRelData d = extract(grouped5());
  const auto base = firm_coordinatize(d);
  for (const std::vector<std::size_t>& perm :
       {std::vector<std::size_t>{2, 0, 1}, std::vector<std::size_t>{1, 2, 0}, std::vector<std::size_t>{2, 1, 0}}) {
    CoordinatizeOptions opts;
    opts.summand_permutation = perm;
    const auto other = firm_coordinatize(d, opts);
    CHECK(other.certified());
    CHECK(other.diagonals[0].order == std::vector<std::size_t>{perm[0] + 1, perm[1] + 1, perm[2] + 1});
    const ConnectingHom h = connecting_hom(d, other.ring, base.ring);
    CHECK(h.bijective);
  }
  CoordinatizeOptions bad;
  bad.summand_permutation = {0, 0, 1};
  CHECK(kind_of([&] { firm_coordinatize(d, bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("connecting_hom") {
  const PeirceRing r = mat_ring(4, FinRing::cyclic(3));
  const CommRelData d = extract(r);
  const ConnectingHom self = connecting_hom(d, r, r);
  for (std::size_t b = 0; b < 16; ++b) CHECK(self.blocks[b] == AbHom::identity(r.blocks()[b]));
  CHECK(self.bijective);

  // an extra diagonal summand killed by everything is missed by the map
  const PeirceRing ghost = with_diagonal_ghost(mat_ring(4, FinRing::cyclic(2)));
  const CommRelData d2 = extract(ghost);
  const auto built = firm_coordinatize(d2);
  const ConnectingHom h = connecting_hom(d2, built.ring, ghost);
  CHECK_FALSE(h.bijective);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK_FALSE(h.block_bijective[i * 5]);
    CHECK(is_injective(h.blocks[i * 5]));
  }

  CHECK(kind_of([&] { connecting_hom(d, mat_ring(4, FinRing::cyclic(2)), r); }) == ErrorKind::BlockMismatch);
  CHECK(kind_of([&] { connecting_hom(d, mat_ring(3, FinRing::cyclic(3)), r); }) == ErrorKind::BlockMismatch);
}

TEST_CASE("zero data gives the zero ring") {
  for (CoordMode mode : {CoordMode::Firm, CoordMode::Reduced}) {
    const auto res = coordinatize(zero_data(4), mode);
    CHECK(res.ring.cardinality() == 1);
    CHECK(res.certified());
  }
}

TEST_CASE("preconditions") {
  const FinRing z2 = FinRing::cyclic(2);
  CHECK(kind_of([&] { firm_coordinatize(extract(mat_ring(3, z2))); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { reduced_coordinatize(extract(mat_ring(3, z2))); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { firm_coordinatize(extract(reduced_not_firm_example(4))); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { reduced_coordinatize(extract(firm_not_reduced_example(4))); }) ==
        ErrorKind::PreconditionFailed);
  const CommRelData d = extract(mat_ring(4, z2));
  CHECK(kind_of([&] { coordinatize(d.with_zero_map(0, 1, 2), CoordMode::Firm); }) == ErrorKind::PreconditionFailed);
  const CommRelData z4 = extract(mat_ring(4, FinRing::cyclic(4)));
  CHECK(kind_of([&] { firm_coordinatize(CommRelData::unchecked(4, 2, z4.modules(), z4.maps())); }) ==
        ErrorKind::PreconditionFailed);
}
