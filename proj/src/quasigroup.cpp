#include "peirce/quasigroup.hpp"

#include "peirce/error.hpp"

#include <deque>
#include <map>
#include <set>

namespace peirce {
namespace {

std::string root_name(std::size_t i, std::size_t j) {
  return "t_" + std::to_string(i + 1) + std::to_string(j + 1);
}

struct Root {
  std::size_t i, j;
};

std::vector<Root> roots_of(std::size_t rank) {
  std::vector<Root> out;
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

std::vector<Element> sample(const FinAbGroup& g, std::uint64_t limit, bool& exhaustive) {
  if (g.cardinality() <= Integer(limit)) return g.elements();
  exhaustive = false;
  std::vector<Element> out{g.zero()};
  for (std::size_t a = 0; a < g.ngens(); ++a) out.push_back(g.generator(a));
  return out;
}

void fail(PredicateResult& res, std::string witness) {
  if (!res.holds) return;
  res.holds = false;
  res.witness = std::move(witness);
}

}  // namespace

Element circ_value(const FinRing& r, const Element& x, const Element& y) {
  const FinAbGroup& g = r.additive();
  return g.add(g.add(r.multiply(x, y), x), y);
}

QuasiUnit quasi_inverse(const FinRing& r, const Element& x) {
  const FinAbGroup& g = r.additive();
  if (!g.is_element(x)) throw Error(ErrorKind::InvalidArgument, "not an element of the ring", to_string(x));
  // y -> y + xy, the left multiplication by 1 + x restricted to R
  std::vector<Element> images;
  images.reserve(g.ngens());
  for (std::size_t a = 0; a < g.ngens(); ++a) {
    const Element e = g.generator(a);
    images.push_back(g.add(e, r.multiply(x, e)));
  }
  HomSolver solver(AbHom(g, g, std::move(images)));
  auto y = solver.preimage(g.neg(x));
  if (!y) throw Error(ErrorKind::NotQuasiInvertible, "element is not quasi-invertible", to_string(x));
  if (!g.is_zero(circ_value(r, x, *y)) || !g.is_zero(circ_value(r, *y, x)))
    throw Error(ErrorKind::NotQuasiInvertible, "one-sided quasi-inverse only", to_string(x));
  return {x, *y};
}

QuasiUnit identity_unit(const FinRing& r) { return {r.additive().zero(), r.additive().zero()}; }

QuasiUnit circ(const FinRing& r, const QuasiUnit& x, const QuasiUnit& y) {
  return {circ_value(r, x.value, y.value), circ_value(r, y.qinv, x.qinv)};
}

QuasiUnit inverse(const QuasiUnit& x) { return {x.qinv, x.value}; }

QuasiUnit commutator(const FinRing& r, const QuasiUnit& x, const QuasiUnit& y) {
  return circ(r, circ(r, circ(r, x, y), inverse(x)), inverse(y));
}

Element act(const FinRing& r, const QuasiUnit& x, const Element& y) {
  const FinAbGroup& g = r.additive();
  const Element s = g.add(r.multiply(x.value, y), y);
  return g.add(r.multiply(s, x.qinv), s);
}

QuasiUnit conjugate(const FinRing& r, const QuasiUnit& x, const QuasiUnit& y) {
  return {act(r, x, y.value), act(r, x, y.qinv)};
}

QuasiUnit transvection(const PeirceRing& r, std::size_t i, std::size_t j, const Element& a) {
  if (i >= r.rank() || j >= r.rank() || i == j)
    throw Error(ErrorKind::BlockMismatch, "transvections need distinct indices in range",
                "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  const FinAbGroup& b = r.block(i, j);
  if (!b.is_element(a))
    throw Error(ErrorKind::BlockMismatch, "element does not lie in the block",
                root_name(i, j) + "(" + to_string(a) + ")");
  return {r.embed(i, j, a), r.embed(i, j, b.neg(a))};
}

// ---------------------------------------------------------------------------

SteinbergReport verify_steinberg(const PeirceRing& r, const SteinbergOptions& opts) {
  SteinbergReport rep;
  const FinRing flat = r.to_fin_ring();
  const auto roots = roots_of(r.rank());
  std::vector<std::vector<Element>> elems(r.rank() * r.rank());
  for (const auto& [i, j] : roots) elems[i * r.rank() + j] = sample(r.block(i, j), opts.element_limit, rep.exhaustive);
  auto els = [&](const Root& a) -> const std::vector<Element>& { return elems[a.i * r.rank() + a.j]; };
  auto t = [&](const Root& a, const Element& x) { return transvection(r, a.i, a.j, x); };
  auto label = [&](const Root& a, const Element& x) { return root_name(a.i, a.j) + "(" + to_string(x) + ")"; };
  const FinAbGroup& G = flat.additive();

  for (const Root& a : roots) {
    const FinAbGroup& B = r.block(a.i, a.j);
    for (const auto& x : els(a))
      for (const auto& y : els(a)) {
        ++rep.relation_checks;
        if (circ(flat, t(a, x), t(a, y)).value != t(a, B.add(x, y)).value)
          fail(rep.additive, label(a, x) + " o " + label(a, y));
      }
  }
  for (const Root& a : roots)
    for (const Root& b : roots) {
      const bool composable = a.j == b.i && a.i != b.j;
      const bool disjoint = a.j != b.i && a.i != b.j;
      if (!composable && !disjoint) continue;
      for (const auto& x : els(a))
        for (const auto& y : els(b)) {
          ++rep.relation_checks;
          const Element c = commutator(flat, t(a, x), t(b, y)).value;
          if (disjoint) {
            if (!G.is_zero(c)) fail(rep.commuting, "[" + label(a, x) + ", " + label(b, y) + "]");
          } else {
            const Element want = r.embed(a.i, b.j, r.multiply(a.i, a.j, b.j, x, y));
            if (c != want) fail(rep.commutator, "[" + label(a, x) + ", " + label(b, y) + "]");
          }
        }
    }

  if (!opts.check_identities) return rep;
  std::uint64_t per_root = 0;
  for (const Root& a : roots) per_root += els(a).size();
  if (per_root * per_root * per_root > opts.identity_limit) {
    rep.identities_thinned = true;
    for (const Root& a : roots) {
      const FinAbGroup& B = r.block(a.i, a.j);
      elems[a.i * r.rank() + a.j] =
          B.ngens() == 0 ? std::vector<Element>{} : std::vector<Element>{B.generator(0)};
    }
  }
  for (const Root& a : roots)
    for (const Root& b : roots)
      for (const Root& c : roots)
        for (const auto& xe : els(a))
          for (const auto& ye : els(b))
            for (const auto& ze : els(c)) {
              ++rep.identity_checks;
              const QuasiUnit x = t(a, xe), y = t(b, ye), z = t(c, ze);
              auto comm = [&](const QuasiUnit& u, const QuasiUnit& v) { return commutator(flat, u, v); };
              auto conj = [&](const QuasiUnit& u, const QuasiUnit& v) { return conjugate(flat, u, v); };
              auto mul = [&](const QuasiUnit& u, const QuasiUnit& v) { return circ(flat, u, v); };
              const std::string w = label(a, xe) + ", " + label(b, ye) + ", " + label(c, ze);
              if (comm(mul(x, y), z) != mul(conj(x, comm(y, z)), comm(x, z))) fail(rep.identity_l, w);
              if (comm(x, mul(y, z)) != mul(comm(x, y), conj(y, comm(x, z)))) fail(rep.identity_r, w);
              const QuasiUnit hw = mul(mul(conj(y, comm(x, comm(inverse(y), z))),
                                           conj(z, comm(y, comm(inverse(z), x)))),
                                       conj(x, comm(z, comm(inverse(x), y))));
              if (!G.is_zero(hw.value)) fail(rep.identity_hw, w);
            }
  return rep;
}

std::vector<QuasiUnit> transvection_generators(const PeirceRing& r) {
  std::vector<QuasiUnit> out;
  for (const auto& [i, j] : roots_of(r.rank())) {
    const FinAbGroup& b = r.block(i, j);
    for (std::size_t a = 0; a < b.ngens(); ++a) out.push_back(transvection(r, i, j, b.generator(a)));
  }
  return out;
}

std::vector<Element> elementary_subgroup(const PeirceRing& r, std::uint64_t size_bound) {
  const FinRing flat = r.to_fin_ring();
  const auto gens = transvection_generators(r);
  // A finite group is closed under products alone, so inverses are not needed.
  std::set<Element> seen{flat.additive().zero()};
  std::deque<Element> queue{flat.additive().zero()};
  while (!queue.empty()) {
    const Element x = std::move(queue.front());
    queue.pop_front();
    for (const auto& t : gens) {
      Element y = circ_value(flat, x, t.value);
      if (seen.insert(y).second) {
        if (seen.size() > size_bound)
          throw Error(ErrorKind::BoundExceeded, "elementary subgroup exceeds the size bound",
                      std::to_string(seen.size()));
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Element> quasi_invertible_elements(const FinRing& r) {
  std::vector<Element> out;
  r.additive().for_each_element([&](const Element& x) {
    try {
      quasi_inverse(r, x);
      out.push_back(x);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotQuasiInvertible) throw;
    }
  });
  return out;
}

CenterReport perfectness_and_center(const PeirceRing& r, std::uint64_t size_bound) {
  if (r.rank() < 3)
    throw Error(ErrorKind::PreconditionFailed, "rank at least 3 is required", std::to_string(r.rank()));
  if (auto idem = check_idempotent(r); !idem.holds)
    throw Error(ErrorKind::PreconditionFailed, "decomposition is not idempotent", idem.witness);

  CenterReport rep;
  const FinRing flat = r.to_fin_ring();
  const FinAbGroup& G = flat.additive();
  const auto gens = transvection_generators(r);

  // Write each generator of R_ij as sum c_p a_p b_p with a_p in R_ik, b_p in
  // R_kj and evaluate the matching product of commutators.
  for (const auto& [i, j] : roots_of(r.rank())) {
    const FinAbGroup& B = r.block(i, j);
    if (B.is_trivial()) continue;
    std::size_t k = 0;
    while (k == i || k == j) ++k;
    const FinAbGroup& L = r.block(i, k);
    const FinAbGroup& Rt = r.block(k, j);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<Element> images;
    for (std::size_t a = 0; a < L.ngens(); ++a)
      for (std::size_t b = 0; b < Rt.ngens(); ++b) {
        pairs.emplace_back(a, b);
        images.push_back(r.mult(i, k, j).on_generators(a, b));
      }
    HomSolver solver(AbHom(FinAbGroup(std::vector<Coeff>(pairs.size(), B.exponent())), B, images));
    for (std::size_t g = 0; g < B.ngens(); ++g) {
      const auto c = solver.preimage(B.generator(g));
      if (!c) {
        fail(rep.perfect, root_name(i, j) + "(" + to_string(B.generator(g)) + ") is not a product");
        continue;
      }
      QuasiUnit word = identity_unit(flat);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if ((*c)[p] == 0) continue;
        const QuasiUnit u = transvection(r, i, k, L.scale((*c)[p], L.generator(pairs[p].first)));
        const QuasiUnit v = transvection(r, k, j, Rt.generator(pairs[p].second));
        word = circ(flat, word, commutator(flat, u, v));
      }
      if (word.value != r.embed(i, j, B.generator(g)))
        fail(rep.perfect, root_name(i, j) + "(" + to_string(B.generator(g)) + ") commutator word mismatch");
    }
  }

  rep.elementary_size = elementary_subgroup(r, size_bound).size();

  // Upper triangular products, i < j in lexicographic order.
  std::vector<Root> upper;
  Integer count = 1;
  for (std::size_t i = 0; i < r.rank(); ++i)
    for (std::size_t j = i + 1; j < r.rank(); ++j) {
      upper.push_back({i, j});
      count *= r.block(i, j).cardinality();
    }
  if (count > Integer(size_bound))
    throw Error(ErrorKind::BoundExceeded, "too many upper triangular elements", count.str());
  std::vector<QuasiUnit> products{identity_unit(flat)};
  for (const Root& a : upper) {
    std::vector<QuasiUnit> next;
    for (const auto& p : products)
      r.block(a.i, a.j).for_each_element(
          [&](const Element& x) { next.push_back(circ(flat, p, transvection(r, a.i, a.j, x))); });
    products = std::move(next);
  }
  rep.upper_size = products.size();

  std::map<std::vector<Element>, Element> action_of;
  for (const auto& g : products) {
    bool central = true;
    for (const auto& t : gens)
      if (circ_value(flat, g.value, t.value) != circ_value(flat, t.value, g.value)) {
        central = false;
        break;
      }
    if (central) {
      ++rep.central_upper;
      if (!G.is_zero(g.value)) fail(rep.center_trivial, "central element " + to_string(g.value));
    }
    std::vector<Element> images;
    for (std::size_t a = 0; a < G.ngens(); ++a) images.push_back(act(flat, g, G.generator(a)));
    auto [it, fresh] = action_of.emplace(std::move(images), g.value);
    if (!fresh)
      fail(rep.act_injective, to_string(it->second) + " and " + to_string(g.value) + " act alike");
  }
  return rep;
}

QuasiUnit eval_st_word(const PeirceRing& r, const StWord& w) {
  const FinRing flat = r.to_fin_ring();
  QuasiUnit out = identity_unit(flat);
  for (const auto& l : w.letters) out = circ(flat, out, transvection(r, l.i, l.j, l.a));
  return out;
}

}  // namespace peirce
