#include "doctest.h"
#include "oracles.hpp"

#include "peirce/corpus.hpp"
#include "peirce/error.hpp"
#include "peirce/quasigroup.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

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

// Steinberg words as letter lists, inverted letter by letter.
std::vector<StLetter> inv(const PeirceRing& r, std::vector<StLetter> w) {
  std::reverse(w.begin(), w.end());
  for (auto& l : w) l.a = r.block(l.i, l.j).neg(l.a);
  return w;
}

std::vector<StLetter> cat(std::initializer_list<std::vector<StLetter>> parts) {
  std::vector<StLetter> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<StLetter> comm(const PeirceRing& r, const std::vector<StLetter>& u, const std::vector<StLetter>& v) {
  return cat({u, v, inv(r, u), inv(r, v)});
}

std::vector<StLetter> conj(const PeirceRing& r, const std::vector<StLetter>& u, const std::vector<StLetter>& v) {
  return cat({u, v, inv(r, u)});
}

// Units of a unital ring by trying all pairs.
std::set<Element> brute_units(const FinRing& r) {
  std::set<Element> out;
  const auto els = r.additive().elements();
  for (const auto& u : els)
    for (const auto& v : els)
      if (r.multiply(u, v) == *r.unit() && r.multiply(v, u) == *r.unit()) {
        out.insert(u);
        break;
      }
  return out;
}

std::vector<PeirceRing> small_corpus() {
  const FinRing z2 = FinRing::cyclic(2);
  return {mat_ring(1, z2),
          mat_ring(2, z2),
          mat_ring(2, FinRing::cyclic(3)),
          mat_ring(2, FinRing::cyclic(4)),
          mat_ring(3, z2),
          grouped_matrix_ring(3, z2, {{0}, {1, 2}}).ring,
          morita_dot_product(2, 2),
          morita_degenerate()};
}

}  // namespace

TEST_CASE("quasi_inverse examples") {
  const FinRing z4 = FinRing::cyclic(4);
  CHECK(quasi_inverse(z4, {0}).qinv == Element{0});
  CHECK(quasi_inverse(z4, {2}).qinv == Element{2});
  CHECK(kind_of([&] { quasi_inverse(z4, {1}); }) == ErrorKind::NotQuasiInvertible);
  CHECK(kind_of([&] { quasi_inverse(z4, {3}); }) == ErrorKind::NotQuasiInvertible);
  CHECK(quasi_invertible_elements(z4) == std::vector<Element>{{0}, {2}});

  const QuasiUnit two = quasi_inverse(z4, {2});
  CHECK(circ(z4, two, two).value == Element{0});
  CHECK(circ(z4, two, identity_unit(z4)).value == Element{2});
  CHECK(circ(z4, two, inverse(two)).value == Element{0});
}

TEST_CASE("quasi_inverse agrees with exhaustive search") {
  std::mt19937_64 rng(41);
  std::vector<FinRing> rings;
  for (const auto& ex : unital_examples())
    if (ex.ring.additive().cardinality() <= 1024) rings.push_back(ex.ring);
  for (const auto& r : small_corpus())
    if (r.cardinality() <= 1024) rings.push_back(r.to_fin_ring());
  CHECK(rings.size() >= 12);
  std::size_t checked = 0;
  for (const auto& r : rings) {
    const FinAbGroup& g = r.additive();
    auto mul = [&](const Element& x, const Element& y) { return r.multiply(x, y); };
    std::vector<Element> xs;
    if (g.cardinality() <= 64)
      xs = g.elements();
    else
      for (int t = 0; t < 48; ++t) xs.push_back(oracle::random_element(rng, g));
    for (const auto& x : xs) {
      const auto want = oracle::brute_quasi_inverse(g, mul, x);
      ++checked;
      if (want) {
        const QuasiUnit u = quasi_inverse(r, x);
        CHECK(u.qinv == *want);
      } else {
        CHECK(kind_of([&] { quasi_inverse(r, x); }) == ErrorKind::NotQuasiInvertible);
      }
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("group axioms of the circle operation") {
  for (const auto& pr : small_corpus()) {
    const FinRing r = pr.to_fin_ring();
    if (r.additive().cardinality() > 256) continue;
    const auto units = quasi_invertible_elements(r);
    std::vector<QuasiUnit> qs;
    for (const auto& x : units) qs.push_back(quasi_inverse(r, x));
    const std::set<Element> members(units.begin(), units.end());
    const std::size_t cap = qs.size() <= 48 ? qs.size() : 24;
    for (std::size_t a = 0; a < qs.size(); ++a) {
      CHECK(circ(r, qs[a], inverse(qs[a])).value == r.additive().zero());
      CHECK(circ(r, inverse(qs[a]), qs[a]).value == r.additive().zero());
      CHECK(circ(r, qs[a], identity_unit(r)).value == qs[a].value);
      for (std::size_t b = 0; b < cap; ++b) {
        const QuasiUnit ab = circ(r, qs[a], qs[b]);
        CHECK(members.count(ab.value) == 1);
        CHECK(r.additive().is_zero(circ_value(r, ab.value, ab.qinv)));
        for (std::size_t c = 0; c < cap; ++c)
          CHECK(circ(r, ab, qs[c]).value == circ(r, qs[a], circ(r, qs[b], qs[c])).value);
      }
    }
  }
}

TEST_CASE("act is an action by ring automorphisms on E(R)") {
  for (const auto& pr : small_corpus()) {
    const FinRing r = pr.to_fin_ring();
    const FinAbGroup& g = r.additive();
    const auto e = elementary_subgroup(pr);
    std::vector<QuasiUnit> qs;
    for (const auto& x : e) qs.push_back(quasi_inverse(r, x));
    for (std::size_t s = 0; s < g.ngens(); ++s) CHECK(act(r, identity_unit(r), g.generator(s)) == g.generator(s));
    for (std::size_t a = 0; a < qs.size(); a += (qs.size() > 48 ? 7 : 1)) {
      const QuasiUnit& x = qs[a];
      CHECK(act(r, x, g.zero()) == g.zero());
      for (std::size_t s = 0; s < g.ngens(); ++s)
        for (std::size_t t = 0; t < g.ngens(); ++t) {
          const Element u = g.generator(s), v = g.generator(t);
          CHECK(act(r, x, g.add(u, v)) == g.add(act(r, x, u), act(r, x, v)));
          CHECK(act(r, x, r.multiply(u, v)) == r.multiply(act(r, x, u), act(r, x, v)));
        }
      for (std::size_t b = 0; b < qs.size(); b += (qs.size() > 48 ? 11 : 1)) {
        const QuasiUnit xy = circ(r, x, qs[b]);
        for (std::size_t s = 0; s < g.ngens(); ++s)
          CHECK(act(r, xy, g.generator(s)) == act(r, x, act(r, qs[b], g.generator(s))));
        // conjugation inside the group is the same action
        CHECK(circ(r, circ(r, x, qs[b]), inverse(x)).value == act(r, x, qs[b].value));
      }
    }
  }
}

TEST_CASE("x -> 1 + x identifies R^o with the units of unital rings") {
  for (const auto& ex : unital_examples()) {
    const FinRing& r = ex.ring;
    if (r.additive().cardinality() > 512) continue;
    const FinAbGroup& g = r.additive();
    const Element one = *r.unit();
    std::set<Element> shifted;
    for (const auto& x : quasi_invertible_elements(r)) shifted.insert(g.add(x, one));
    CHECK_MESSAGE(shifted == brute_units(r), ex.name);
    // (1 + x)(1 + y) = 1 + x o y
    const auto els = g.elements();
    for (std::size_t a = 0; a < els.size(); a += 3)
      for (std::size_t b = 0; b < els.size(); b += 5)
        CHECK(r.multiply(g.add(one, els[a]), g.add(one, els[b])) ==
              g.add(one, circ_value(r, els[a], els[b])));
  }
}

TEST_CASE("transvection examples") {
  const PeirceRing m2 = mat_ring(2, FinRing::cyclic(2));
  const FinRing f2 = m2.to_fin_ring();
  const QuasiUnit t = transvection(m2, 0, 1, {1});
  CHECK(transvection(m2, 0, 1, {0}).value == f2.additive().zero());
  CHECK(circ(f2, t, t).value == f2.additive().zero());
  CHECK(t.qinv == transvection(m2, 0, 1, {1}).value);  // -1 = 1 over Z/2

  const PeirceRing m3 = mat_ring(3, FinRing::cyclic(4));
  const QuasiUnit u = transvection(m3, 2, 0, {3});
  CHECK(u.qinv == transvection(m3, 2, 0, {1}).value);
  CHECK(kind_of([&] { transvection(m3, 1, 1, {1}); }) == ErrorKind::BlockMismatch);
  CHECK(kind_of([&] { transvection(m3, 0, 3, {1}); }) == ErrorKind::BlockMismatch);
  CHECK(kind_of([&] { transvection(m3, 0, 1, {1, 0}); }) == ErrorKind::BlockMismatch);

  // ^x y computed in the unitalization: (1 + x) y (1 + x)^-1 with x = e12, y = e21
  const QuasiUnit y = transvection(m2, 1, 0, {1});
  const Element c = act(f2, t, y.value);
  // (1 + e12) e21 (1 + e12) = e21 + e11 + e22 + e12
  Element want = f2.additive().zero();
  for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}})
    want = f2.additive().add(want, m2.embed(i, j, {1}));
  CHECK(c == want);
}

TEST_CASE("Steinberg relations and group identities") {
  SUBCASE("Mat(4, Z/2) exhaustively") {
    const auto rep = verify_steinberg(mat_ring(4, FinRing::cyclic(2)));
    CHECK(rep.all_hold());
    CHECK(rep.exhaustive);
    CHECK(rep.identity_checks == 12u * 12u * 12u * 8u);
  }
  SUBCASE("Mat(3, Z/4) on all elements") {
    const auto rep = verify_steinberg(mat_ring(3, FinRing::cyclic(4)));
    CHECK(rep.all_hold());
    CHECK(rep.exhaustive);
  }
  SUBCASE("generator sampling for large blocks") {
    SteinbergOptions opts;
    opts.element_limit = 2;
    const auto rep = verify_steinberg(mat_ring(3, FinRing::cyclic(4)), opts);
    CHECK(rep.all_hold());
    CHECK_FALSE(rep.exhaustive);
  }
  SUBCASE("identity triples past the limit use one generator per block") {
    SteinbergOptions opts;
    opts.identity_limit = 100;
    const auto rep = verify_steinberg(mat_ring(3, FinRing::cyclic(4)), opts);
    CHECK(rep.all_hold());
    CHECK(rep.identities_thinned);
    CHECK(rep.identity_checks == 6u * 6u * 6u);
    CHECK_FALSE(verify_steinberg(mat_ring(3, FinRing::cyclic(4))).identities_thinned);
  }
  SUBCASE("rank one is vacuous") {
    const auto rep = verify_steinberg(mat_ring(1, FinRing::cyclic(3)));
    CHECK(rep.all_hold());
    CHECK(rep.relation_checks == 0);
  }
  SUBCASE("grouped and Morita rings") {
    CHECK(verify_steinberg(grouped_matrix_ring(5, FinRing::cyclic(2), {{0}, {1}, {2}, {3, 4}}).ring,
                           {16, false})
              .all_hold());
    CHECK(verify_steinberg(morita_degenerate()).all_hold());
  }
  SUBCASE("a corrupted product is caught by the identities") {
    // The three relation families only see products of two off-diagonal
    // entries, so they survive any change of structure constants.
    PeirceRing m = mat_ring(3, FinRing::cyclic(2));
    auto mults = m.mults();
    const std::size_t idx = (0 * 3 + 1) * 3 + 2;
    mults[idx] = BilinearMap::zero(mults[idx].left(), mults[idx].right(), mults[idx].target());
    const PeirceRing bad = PeirceRing::unchecked(3, 2, m.blocks(), mults);
    const auto rep = verify_steinberg(bad);
    CHECK(rep.commutator.holds);
    CHECK_FALSE(rep.identity_l.holds);
    CHECK_FALSE(rep.identity_hw.holds);
    CHECK_FALSE(rep.all_hold());
  }
}

TEST_CASE("elementary subgroup sizes") {
  const FinRing z2 = FinRing::cyclic(2);
  CHECK(elementary_subgroup(mat_ring(1, z2)).size() == 1);
  CHECK(elementary_subgroup(mat_ring(2, z2)).size() == 6);
  CHECK(elementary_subgroup(mat_ring(3, z2)).size() == 168);
  CHECK(elementary_subgroup(mat_ring(2, FinRing::cyclic(3))).size() == 24);  // SL(2, 3)
  CHECK(elementary_subgroup(mat_ring(2, FinRing::cyclic(4))).size() == 48);  // SL(2, Z/4)
  const auto e = elementary_subgroup(mat_ring(2, z2));
  CHECK(std::is_sorted(e.begin(), e.end()));
  try {
    elementary_subgroup(mat_ring(3, z2), 100);
    FAIL("bound not enforced");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::BoundExceeded);
    CHECK(err.witness() == "101");
  }
}

TEST_CASE("elementary subgroup of unital rings sits inside the units") {
  for (const auto& ex : unital_examples()) {
    if (ex.ring.additive().cardinality() > 512 || ex.idempotents.size() < 2) continue;
    const PeirceRing pr = peirce_from_idempotents(ex.ring, ex.idempotents, ex.modulus);
    const FinRing r = pr.to_fin_ring();
    const auto all = quasi_invertible_elements(r);
    const std::set<Element> members(all.begin(), all.end());
    for (const auto& x : elementary_subgroup(pr)) CHECK_MESSAGE(members.count(x) == 1, ex.name);
  }
}

TEST_CASE("perfectness and center") {
  const FinRing z2 = FinRing::cyclic(2);
  SUBCASE("Mat(3, Z/2)") {
    const auto rep = perfectness_and_center(mat_ring(3, z2));
    CHECK(rep.perfect.holds);
    CHECK(rep.elementary_size == 168);
    CHECK(rep.upper_size == 8);
    CHECK(rep.central_upper == 1);
    CHECK(rep.center_trivial.holds);
    CHECK(rep.act_injective.holds);
  }
  SUBCASE("Mat(4, Z/2)") {
    const auto rep = perfectness_and_center(mat_ring(4, z2));
    CHECK(rep.perfect.holds);
    CHECK(rep.elementary_size == 20160);
    CHECK(rep.upper_size == 64);
    CHECK(rep.center_trivial.holds);
    CHECK(rep.act_injective.holds);
  }
  SUBCASE("Mat(3, Z/3)") {
    const auto rep = perfectness_and_center(mat_ring(3, FinRing::cyclic(3)));
    CHECK(rep.perfect.holds);
    CHECK(rep.elementary_size == 5616);  // |SL(3, 3)|
    CHECK(rep.center_trivial.holds);
  }
  SUBCASE("preconditions") {
    CHECK(kind_of([&] { perfectness_and_center(mat_ring(2, z2)); }) == ErrorKind::PreconditionFailed);
    CHECK(kind_of([&] { perfectness_and_center(mat_ring(3, z2), 100); }) == ErrorKind::BoundExceeded);
  }
}

TEST_CASE("Steinberg words") {
  const PeirceRing m4 = mat_ring(4, FinRing::cyclic(2));
  const FinAbGroup& g = m4.flat().group();
  CHECK(g.is_zero(eval_st_word(m4, {}).value));
  CHECK(g.is_zero(eval_st_word(m4, {{{0, 1, {1}}, {0, 1, {1}}}}).value));
  const PeirceRing m3 = mat_ring(3, FinRing::cyclic(4));
  CHECK(m3.flat().group().is_zero(eval_st_word(m3, {{{0, 2, {3}}, {0, 2, {1}}}}).value));
  CHECK(kind_of([&] { eval_st_word(m3, {{{0, 0, {1}}}}); }) == ErrorKind::BlockMismatch);

  // HW words on every triple of root generators evaluate to the identity
  std::size_t words = 0;
  for (std::size_t a = 0; a < 16; ++a)
    for (std::size_t b = 0; b < 16; ++b)
      for (std::size_t c = 0; c < 16; ++c) {
        const StLetter lx{a / 4, a % 4, {1}}, ly{b / 4, b % 4, {1}}, lz{c / 4, c % 4, {1}};
        if (lx.i == lx.j || ly.i == ly.j || lz.i == lz.j) continue;
        const std::vector<StLetter> x{lx}, y{ly}, z{lz};
        const auto w = cat({conj(m4, y, comm(m4, x, comm(m4, inv(m4, y), z))),
                            conj(m4, z, comm(m4, y, comm(m4, inv(m4, z), x))),
                            conj(m4, x, comm(m4, z, comm(m4, inv(m4, x), y)))});
        CHECK(g.is_zero(eval_st_word(m4, {w}).value));
        ++words;
      }
  CHECK(words == 1728);
}
