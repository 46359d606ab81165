#include "peirce/coordinatize.hpp"

#include "peirce/error.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <tuple>

namespace peirce {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

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

// Smallest indices outside `avoid`, as many as requested.
std::vector<std::size_t> smallest_outside(std::size_t n, std::initializer_list<std::size_t> avoid,
                                          std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n && out.size() < count; ++k)
    if (std::find(avoid.begin(), avoid.end(), k) == avoid.end()) out.push_back(k);
  return out;
}

// All restricted growth strings of length 4 over a, b, c, d.
std::vector<std::string> all_patterns() {
  std::vector<std::string> out;
  std::string p = "a";
  std::function<void(char)> grow = [&](char top) {
    if (p.size() == 4) {
      out.push_back(p);
      return;
    }
    for (char c = 'a'; c <= static_cast<char>(top + 1); ++c) {
      p.push_back(c);
      grow(std::max(top, c));
      p.pop_back();
    }
  };
  grow('a');
  return out;
}

// A_sijs generators placed into positions pi (for U_si (x) U_is) and pj (for
// U_sj (x) U_js) of `sum`.
void push_a_generators(const CommRelData& d, std::size_t s, std::size_t i, std::size_t j,
                       const TensorProduct& ti, const TensorProduct& tj, const DirectSum& sum,
                       std::size_t pi, std::size_t pj, std::vector<Element>& out) {
  const FinAbGroup &X = d.module(s, i), &Y = d.module(i, j), &Z = d.module(j, s);
  for (std::size_t a = 0; a < X.ngens(); ++a)
    for (std::size_t b = 0; b < Y.ngens(); ++b) {
      const Element xy = d.cmap(s, i, j).on_generators(a, b);
      for (std::size_t c = 0; c < Z.ngens(); ++c) {
        Element v = sum.group().zero();
        sum.accumulate(v, pi, ti.pure(X.generator(a), d.cmap(i, j, s).on_generators(b, c)));
        sum.accumulate(v, pj, tj.pure(xy, Z.generator(c)), -1);
        out.push_back(std::move(v));
      }
    }
}

void require_rank(const CommRelData& d) {
  if (d.rank() < 4)
    throw Error(ErrorKind::PreconditionFailed, "coordinatization needs rank at least 4",
                std::to_string(d.rank()));
}

void require_k_linear(const CommRelData& d) {
  if (auto k = check_K_linear(d); !k.holds)
    throw Error(ErrorKind::PreconditionFailed, "commutator data is not K-linear", k.witness);
}

using BlockMult = std::function<BilinearMap(std::size_t, std::size_t)>;

// Blocks from `diag` and `d`; products by index shape.
PeirceRing assemble(const CommRelData& d, const std::vector<FinAbGroup>& diag, const BlockMult& left,
                    const BlockMult& right, const BlockMult& pairing,
                    const std::function<BilinearMap(std::size_t)>& square) {
  const std::size_t n = d.rank();
  std::vector<FinAbGroup> blocks(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) blocks[i * n + j] = i == j ? diag[i] : d.module(i, j);
  std::vector<BilinearMap> mults(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        BilinearMap& m = mults[(i * n + j) * n + k];
        if (distinct(i, j, k))
          m = d.cmap(i, j, k);
        else if (i == j && j == k)
          m = square(i);
        else if (i == j)
          m = left(i, k);
        else if (j == k)
          m = right(i, j);
        else
          m = pairing(i, j);
      }
  return PeirceRing::unchecked(n, d.modulus(), std::move(blocks), std::move(mults));
}

// Associativity, ring predicates and the final alarm shared by both modes.
void finish(CoordinatizationResult& res) {
  res.ass = verify_lemma_ass(res.ring);
  if (!res.ass.all_hold) {
    for (const auto& p : res.ass.patterns)
      if (!p.result.holds)
        throw Error(ErrorKind::NotAssociative, "coordinatized ring is not associative",
                    p.pattern + " " + p.result.witness);
  }
  res.predicates = check_predicates(res.ring);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string index_pattern(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  const std::array<std::size_t, 4> v{i, j, k, l};
  std::string out;
  for (std::size_t p = 0; p < 4; ++p) {
    std::size_t first = p;
    for (std::size_t q = 0; q < p; ++q)
      if (v[q] == v[p]) {
        first = q;
        break;
      }
    if (first == p) {
      char top = 'a' - 1;
      for (char c : out) top = std::max(top, c);
      out.push_back(static_cast<char>(top + 1));
    } else {
      out.push_back(out[first]);
    }
  }
  return out;
}

bool is_hypothesis_pattern(const std::string& p) {
  static const std::array<std::string, 6> hyp{"abcd", "abca", "abac", "abcb", "abaa", "aaba"};
  return std::find(hyp.begin(), hyp.end(), p) != hyp.end();
}

LemmaAssReport verify_lemma_ass(const PeirceRing& r) {
  const std::size_t n = r.rank();
  if (n < 4)
    throw Error(ErrorKind::PreconditionFailed, "associativity from patterns needs rank at least 4",
                std::to_string(n));
  LemmaAssReport rep;
  std::vector<std::string> order = all_patterns();
  std::stable_partition(order.begin(), order.end(), is_hypothesis_pattern);
  for (const std::string& p : order) {
    PatternCheck c{p, is_hypothesis_pattern(p), {}};
    if (auto w = r.associativity_failure_where(
            [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return index_pattern(i, j, k, l) == p; }))
      c.result = {false, *w};
    if (!c.result.holds) {
      rep.all_hold = false;
      if (c.hypothesis) rep.hypotheses_hold = false;
    }
    rep.patterns.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < n && rep.products.holds; ++i)
    for (std::size_t j = 0; j < n && rep.products.holds; ++j)
      for (std::size_t k = 0; k < n && rep.products.holds; ++k) {
        if (i == j || j == k) continue;
        const Subgroup span(r.block(i, k), r.mult(i, j, k).table());
        if (!span.is_whole())
          rep.products = {false, idx({i, j, k}) + ": products have index " + span.index().str()};
      }
  rep.conclusion_idempotent = check_idempotent(r).holds;
  return rep;
}

// ---------------------------------------------------------------------------
// Firm setting

std::size_t DiagonalPresentation::position(std::size_t k) const {
  auto it = std::find(order.begin(), order.end(), k);
  if (it == order.end())
    throw Error(ErrorKind::IndexClash, "index is not a summand of this diagonal block", idx({s, k}));
  return static_cast<std::size_t>(it - order.begin());
}

Element DiagonalPresentation::pure(std::size_t k, const Element& x, const Element& y) const {
  const std::size_t p = position(k);
  return quotient.project(sum.inject(p, tensors[p].pure(x, y)));
}

Subgroup build_A_subgroup(const CommRelData& d, std::size_t s, std::size_t i, std::size_t j) {
  const std::size_t n = d.rank();
  if (s >= n || i >= n || j >= n || !distinct(s, i, j))
    throw Error(ErrorKind::IndexClash, "A_sijs needs distinct indices in range", idx({s, i, j}));
  const TensorProduct ti = tensor_z(d.module(s, i), d.module(i, s));
  const TensorProduct tj = tensor_z(d.module(s, j), d.module(j, s));
  const DirectSum sum({ti.group(), tj.group()});
  std::vector<Element> gens;
  push_a_generators(d, s, i, j, ti, tj, sum, 0, 1, gens);
  return Subgroup(sum.group(), std::move(gens));
}

namespace {

DiagonalPresentation build_diagonal(const CommRelData& d, std::size_t s, const std::vector<std::size_t>& perm) {
  const std::size_t n = d.rank();
  DiagonalPresentation p;
  p.s = s;
  std::vector<std::size_t> ascending;
  for (std::size_t k = 0; k < n; ++k)
    if (k != s) ascending.push_back(k);
  if (perm.empty()) {
    p.order = ascending;
  } else {
    for (std::size_t q : perm) p.order.push_back(ascending.at(q));
  }
  std::vector<FinAbGroup> groups;
  for (std::size_t k : p.order) {
    p.tensors.push_back(tensor_z(d.module(s, k), d.module(k, s)));
    groups.push_back(p.tensors.back().group());
  }
  p.sum = DirectSum(std::move(groups));
  std::vector<Element> gens;
  for (std::size_t i : p.order)
    for (std::size_t j : p.order) {
      if (i == j) continue;
      const std::size_t pi = p.position(i), pj = p.position(j);
      push_a_generators(d, s, i, j, p.tensors[pi], p.tensors[pj], p.sum, pi, pj, gens);
    }
  p.relations = Subgroup(p.sum.group(), std::move(gens));
  p.quotient = Quotient(p.relations);
  return p;
}

// (U_si (x) U_is + U_sj (x) U_js) / (A_sijs + A_sjis) and its comparison with
// the full diagonal block.
struct PairIso {
  std::size_t i = 0, j = 0;
  TensorProduct ti, tj;
  DirectSum two;
  Quotient q;
  AbHom to_diag;    // q -> R_ss
  AbHom from_diag;  // R_ss -> q, valid when to_diag is bijective
  bool bijective = false;
};

PairIso build_pair(const CommRelData& d, const DiagonalPresentation& p, std::size_t i, std::size_t j) {
  PairIso pr;
  pr.i = i;
  pr.j = j;
  pr.ti = p.tensors[p.position(i)];
  pr.tj = p.tensors[p.position(j)];
  pr.two = DirectSum({pr.ti.group(), pr.tj.group()});
  std::vector<Element> gens;
  push_a_generators(d, p.s, i, j, pr.ti, pr.tj, pr.two, 0, 1, gens);
  push_a_generators(d, p.s, j, i, pr.tj, pr.ti, pr.two, 1, 0, gens);
  pr.q = Quotient(Subgroup(pr.two.group(), std::move(gens)));

  const FinAbGroup& R = p.quotient.group();
  std::vector<Element> images;
  const std::size_t ni = pr.ti.group().ngens();
  for (std::size_t g = 0; g < pr.two.group().ngens(); ++g) {
    const bool first = g < ni;
    const std::size_t k = first ? i : j;
    const FinAbGroup& T = first ? pr.ti.group() : pr.tj.group();
    const Element v = p.sum.inject(p.position(k), T.generator(first ? g : g - ni));
    images.push_back(p.quotient.project(v));
  }
  pr.to_diag = induced_map(AbHom(pr.two.group(), R, std::move(images)), pr.q);
  pr.bijective = is_isomorphism(pr.to_diag);
  if (pr.bijective) {
    const HomSolver solver(pr.to_diag);
    std::vector<Element> back;
    for (std::size_t g = 0; g < R.ngens(); ++g) back.push_back(*solver.preimage(R.generator(g)));
    pr.from_diag = AbHom(R, pr.q.group(), std::move(back));
  }
  return pr;
}

class FirmBuilder {
 public:
  FirmBuilder(const CommRelData& d, const CoordinatizeOptions& opts, CoordinatizationResult& res)
      : d_(d), n_(d.rank()), res_(res) {
    if (!opts.summand_permutation.empty()) {
      std::vector<std::size_t> sorted = opts.summand_permutation;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t q = 0; q < sorted.size(); ++q)
        if (sorted.size() != n_ - 1 || sorted[q] != q)
          throw Error(ErrorKind::InvalidArgument, "summand order is not a permutation of 0..rank-2");
    }
    for (std::size_t s = 0; s < n_; ++s) res_.diagonals.push_back(build_diagonal(d_, s, opts.summand_permutation));
    for (std::size_t s = 0; s < n_; ++s)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
          if (i == s || j == s) continue;
          const PairIso& pr = pair(s, i, j);
          res_.certificates.push_back({"r-cons " + idx({s, i, j}), pr.bijective,
                                       pr.bijective ? "" : "pair quotient of order " + pr.q.group().cardinality().str() +
                                                               " onto block of order " +
                                                               res_.diagonals[s].quotient.group().cardinality().str()});
        }
  }

  // R_ss x U_sj -> U_sj
  BilinearMap left(std::size_t s, std::size_t j) {
    const FinAbGroup &R = diag(s), &U = d_.module(s, j);
    std::vector<AbHom> cols;
    for (std::size_t b = 0; b < U.ngens(); ++b) {
      const Element w = U.generator(b);
      cols.push_back(through_pair(s, j, U, [&](std::size_t k, const Element& x, const Element& y) {
        return d_.c(s, k, j, x, d_.c(k, s, j, y, w));
      }));
    }
    return bilinear_from(R, U, U, [&](std::size_t a, std::size_t b) { return cols[b].images()[a]; });
  }

  // U_js x R_ss -> U_js
  BilinearMap right(std::size_t j, std::size_t s) {
    const FinAbGroup &R = diag(s), &U = d_.module(j, s);
    std::vector<AbHom> rows;
    for (std::size_t b = 0; b < U.ngens(); ++b) {
      const Element w = U.generator(b);
      rows.push_back(through_pair(s, j, U, [&](std::size_t k, const Element& x, const Element& y) {
        return d_.c(j, k, s, d_.c(j, s, k, w, x), y);
      }));
    }
    return bilinear_from(U, R, U, [&](std::size_t b, std::size_t a) { return rows[b].images()[a]; });
  }

  // U_si x U_is -> R_ss
  BilinearMap pairing(std::size_t s, std::size_t i) {
    const DiagonalPresentation& p = res_.diagonals[s];
    const FinAbGroup &X = d_.module(s, i), &Y = d_.module(i, s);
    return bilinear_from(X, Y, diag(s), [&](std::size_t a, std::size_t b) {
      return p.pure(i, X.generator(a), Y.generator(b));
    });
  }

  // R_ss x R_ss -> R_ss, through y r' for the right factor.
  BilinearMap square(std::size_t s) {
    const DiagonalPresentation& p = res_.diagonals[s];
    const FinAbGroup& R = diag(s);
    std::vector<BilinearMap> acts(n_);
    for (std::size_t k : p.order) acts[k] = right(k, s);
    std::vector<AbHom> cols;
    for (std::size_t b = 0; b < R.ngens(); ++b) {
      std::vector<Element> images;
      for (std::size_t pos = 0; pos < p.order.size(); ++pos) {
        const std::size_t k = p.order[pos];
        const TensorProduct& t = p.tensors[pos];
        for (std::size_t g = 0; g < t.group().ngens(); ++g) {
          const auto [a, c] = t.factors(g);
          const Element yr = acts[k].on_generators(c, b);
          images.push_back(p.pure(k, d_.module(s, k).generator(a), yr));
        }
      }
      cols.push_back(induced_map(AbHom(p.sum.group(), R, std::move(images)), p.quotient));
    }
    return bilinear_from(R, R, R, [&](std::size_t a, std::size_t b) { return cols[b].images()[a]; });
  }

  const FinAbGroup& diag(std::size_t s) const { return res_.diagonals[s].quotient.group(); }

 private:
  const PairIso& pair(std::size_t s, std::size_t i, std::size_t j) {
    const auto key = std::tuple{s, std::min(i, j), std::max(i, j)};
    auto it = pairs_.find(key);
    if (it == pairs_.end())
      it = pairs_.emplace(key, build_pair(d_, res_.diagonals[s], std::get<1>(key), std::get<2>(key))).first;
    return it->second;
  }

  // R_ss -> target from a value on x (x) y, x in U_sk and y in U_ks, for the
  // two smallest k outside {s, j}.
  AbHom through_pair(std::size_t s, std::size_t j, const FinAbGroup& target,
                     const std::function<Element(std::size_t, const Element&, const Element&)>& f) {
    const auto ks = smallest_outside(n_, {s, j}, 2);
    const PairIso& pr = pair(s, ks[0], ks[1]);
    if (!pr.bijective)
      throw Error(ErrorKind::NotWellDefined, "pair quotient does not present the diagonal block",
                  idx({s, ks[0], ks[1]}));
    std::vector<Element> images;
    for (std::size_t side = 0; side < 2; ++side) {
      const std::size_t k = side == 0 ? pr.i : pr.j;
      const TensorProduct& t = side == 0 ? pr.ti : pr.tj;
      for (std::size_t g = 0; g < t.group().ngens(); ++g) {
        const auto [a, c] = t.factors(g);
        images.push_back(f(k, d_.module(s, k).generator(a), d_.module(k, s).generator(c)));
      }
    }
    const AbHom bar = induced_map(AbHom(pr.two.group(), target, std::move(images)), pr.q);
    return compose(bar, pr.from_diag);
  }

  const CommRelData& d_;
  std::size_t n_;
  CoordinatizationResult& res_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, PairIso> pairs_;
};

}  // namespace

CoordinatizationResult firm_coordinatize(const CommRelData& d, const CoordinatizeOptions& opts) {
  require_rank(d);
  require_k_linear(d);
  if (auto f = check_firm_rel(d); !f.holds)
    throw Error(ErrorKind::PreconditionFailed, "commutator data is not firm", f.witness);

  CoordinatizationResult res;
  res.mode = CoordMode::Firm;
  FirmBuilder b(d, opts, res);
  for (const auto& c : res.certificates)
    if (!c.holds) throw Error(ErrorKind::NotWellDefined, "pair quotient is not the diagonal block", c.name);
  std::vector<FinAbGroup> diag;
  for (std::size_t s = 0; s < d.rank(); ++s) diag.push_back(b.diag(s));
  res.ring = assemble(
      d, diag, [&](std::size_t s, std::size_t j) { return b.left(s, j); },
      [&](std::size_t j, std::size_t s) { return b.right(j, s); },
      [&](std::size_t s, std::size_t i) { return b.pairing(s, i); }, [&](std::size_t s) { return b.square(s); });
  finish(res);
  return res;
}

// ---------------------------------------------------------------------------
// Reduced setting

Element EndoPresentation::left_image(const Element& e, std::size_t k, std::size_t g) const {
  return ambient.component(e, left_part.at(k) + g);
}

Element EndoPresentation::op_image(const Element& e, std::size_t k, std::size_t g) const {
  return ambient.component(e, op_part.at(k) + g);
}

Element bracket(const CommRelData& d, const EndoPresentation& p, std::size_t i, std::size_t j,
                const Element& x, const Element& y, const Element& z) {
  const std::size_t s = p.s;
  if (!distinct(s, i, j))
    throw Error(ErrorKind::IndexClash, "bracket needs distinct indices", idx({s, i, j}));
  const Element yz = d.c(i, j, s, y, z);
  const Element xy = d.c(s, i, j, x, y);
  Element e = p.ambient.group().zero();
  for (std::size_t k = 0; k < d.rank(); ++k) {
    if (k == s) continue;
    const FinAbGroup &L = d.module(s, k), &O = d.module(k, s);
    for (std::size_t g = 0; g < L.ngens(); ++g) {
      const Element w = L.generator(g);
      const Element v = k != i ? d.c(s, i, k, x, d.c(i, s, k, yz, w)) : d.c(s, j, i, xy, d.c(j, s, i, z, w));
      p.ambient.accumulate(e, p.left_part[k] + g, v);
    }
    for (std::size_t g = 0; g < O.ngens(); ++g) {
      const Element w = O.generator(g);
      const Element v = k != i ? d.c(k, i, s, d.c(k, s, i, w, x), yz) : d.c(i, j, s, d.c(i, s, j, w, xy), z);
      p.ambient.accumulate(e, p.op_part[k] + g, v);
    }
  }
  return e;
}

namespace {

EndoPresentation endo_ambient(const CommRelData& d, std::size_t s) {
  const std::size_t n = d.rank();
  EndoPresentation p;
  p.s = s;
  p.op_part.assign(n, kNone);
  p.left_part.assign(n, kNone);
  p.factor_coords.assign(n, {0, 0});
  std::vector<FinAbGroup> parts;
  std::size_t coord = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == s) continue;
    const FinAbGroup &O = d.module(k, s), &L = d.module(s, k);
    const std::size_t begin = coord;
    p.op_part[k] = parts.size();
    for (std::size_t g = 0; g < O.ngens(); ++g, coord += O.ngens()) parts.push_back(O);
    p.left_part[k] = parts.size();
    for (std::size_t g = 0; g < L.ngens(); ++g, coord += L.ngens()) parts.push_back(L);
    p.factor_coords[k] = {begin, coord};
  }
  p.ambient = DirectSum(std::move(parts));
  return p;
}

std::vector<Element> bracket_generators(const CommRelData& d, const EndoPresentation& p, std::size_t i,
                                        std::size_t j) {
  const FinAbGroup &X = d.module(p.s, i), &Y = d.module(i, j), &Z = d.module(j, p.s);
  std::vector<Element> out;
  for (std::size_t a = 0; a < X.ngens(); ++a)
    for (std::size_t b = 0; b < Y.ngens(); ++b)
      for (std::size_t c = 0; c < Z.ngens(); ++c)
        out.push_back(bracket(d, p, i, j, X.generator(a), Y.generator(b), Z.generator(c)));
  return out;
}

// The endomorphism of `g` given by generator images.
AbHom endo(const FinAbGroup& g, std::vector<Element> images) { return AbHom(g, g, std::move(images)); }

class ReducedBuilder {
 public:
  ReducedBuilder(const CommRelData& d, CoordinatizationResult& res) : d_(d), n_(d.rank()), res_(res) {
    for (std::size_t s = 0; s < n_; ++s) {
      EndoPresentation p = endo_ambient(d_, s);
      const auto fixed = smallest_outside(n_, {s}, 2);
      p.fixed_i = fixed[0];
      p.fixed_j = fixed[1];
      p.generators = bracket_generators(d_, p, p.fixed_i, p.fixed_j);
      p.span = Subgroup(p.ambient.group(), p.generators);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
          if (!distinct(s, i, j) || (i == p.fixed_i && j == p.fixed_j)) continue;
          const Subgroup other(p.ambient.group(), bracket_generators(d_, p, i, j));
          const bool same = other == p.span;
          res_.certificates.push_back({"r-gen span " + idx({s, i, j}), same,
                                       same ? "" : "span of order " + other.cardinality().str() + " against " +
                                                       p.span.cardinality().str()});
        }
      p.block = present(p.span);
      for (std::size_t k = 0; k < n_; ++k) {
        if (k == s) continue;
        const auto [begin, end] = p.factor_coords[k];
        std::vector<Coeff> orders(p.ambient.group().orders().begin() + static_cast<long>(begin),
                                  p.ambient.group().orders().begin() + static_cast<long>(end));
        const FinAbGroup factor(orders);
        std::vector<Element> images;
        for (const Element& e : p.block.embedding.images())
          images.emplace_back(e.begin() + static_cast<long>(begin), e.begin() + static_cast<long>(end));
        const bool inj = is_injective(AbHom(p.block.group, factor, std::move(images)));
        res_.certificates.push_back({"r-gen injective " + idx({s, k}), inj, ""});
        if (!inj)
          throw Error(ErrorKind::InjectivityFailure, "diagonal block does not embed into one factor pair",
                      idx({s, k}));
      }
      solvers_.emplace_back(p.block.embedding);
      res_.endos.push_back(std::move(p));
    }
  }

  const FinAbGroup& diag(std::size_t s) const { return res_.endos[s].block.group; }

  BilinearMap left(std::size_t s, std::size_t j) const {
    const EndoPresentation& p = res_.endos[s];
    const FinAbGroup& U = d_.module(s, j);
    return bilinear_from(diag(s), U, U, [&](std::size_t a, std::size_t b) {
      return p.left_image(p.block.embedding.images()[a], j, b);
    });
  }

  BilinearMap right(std::size_t j, std::size_t s) const {
    const EndoPresentation& p = res_.endos[s];
    const FinAbGroup& U = d_.module(j, s);
    return bilinear_from(U, diag(s), U, [&](std::size_t b, std::size_t a) {
      return p.op_image(p.block.embedding.images()[a], j, b);
    });
  }

  // x y for x in U_si, y in U_is: y is written as a sum of products
  // c_ijs(g, h) and x y as the matching sum of brackets.
  BilinearMap pairing(std::size_t s, std::size_t i) const {
    const EndoPresentation& p = res_.endos[s];
    const std::size_t j = smallest_outside(n_, {s, i}, 1).front();
    const FinAbGroup &X = d_.module(s, i), &Y = d_.module(i, s), &G = d_.module(i, j), &H = d_.module(j, s);
    std::vector<Coeff> orders;
    std::vector<Element> prod;
    std::vector<std::pair<std::size_t, std::size_t>> terms;
    for (std::size_t g = 0; g < G.ngens(); ++g)
      for (std::size_t h = 0; h < H.ngens(); ++h) {
        orders.push_back(Y.is_trivial() ? 1 : Y.exponent());
        prod.push_back(d_.cmap(i, j, s).on_generators(g, h));
        terms.emplace_back(g, h);
      }
    std::vector<std::size_t> keep;
    std::vector<Coeff> kept_orders;
    std::vector<Element> kept_prod;
    for (std::size_t t = 0; t < orders.size(); ++t)
      if (orders[t] > 1) {
        keep.push_back(t);
        kept_orders.push_back(orders[t]);
        kept_prod.push_back(prod[t]);
      }
    const FinAbGroup F(kept_orders);
    const HomSolver decompose(AbHom(F, Y, std::move(kept_prod)));
    const HomSolver& embed = solvers_[s];

    return bilinear_from(X, Y, diag(s), [&](std::size_t a, std::size_t b) {
      const Element x = X.generator(a), y = Y.generator(b);
      const auto coeffs = decompose.preimage(y);
      if (!coeffs)
        throw Error(ErrorKind::NotWellDefined, "U_is is not spanned by products", idx({i, j, s}));
      Element e = p.ambient.group().zero();
      for (std::size_t t = 0; t < keep.size(); ++t) {
        if ((*coeffs)[t] == 0) continue;
        const auto [g, h] = terms[keep[t]];
        p.ambient.group().add_scaled(e, (*coeffs)[t], bracket(d_, p, i, j, x, G.generator(g), H.generator(h)));
      }
      for (std::size_t k = 0; k < n_; ++k) {
        if (k == s || k == i) continue;
        for (std::size_t g = 0; g < d_.module(s, k).ngens(); ++g)
          if (p.left_image(e, k, g) != d_.c(s, i, k, x, d_.c(i, s, k, y, d_.module(s, k).generator(g))))
            throw Error(ErrorKind::NotWellDefined, "pairing disagrees with the left action", idx({s, i, k}));
        for (std::size_t g = 0; g < d_.module(k, s).ngens(); ++g)
          if (p.op_image(e, k, g) != d_.c(k, i, s, d_.c(k, s, i, d_.module(k, s).generator(g), x), y))
            throw Error(ErrorKind::NotWellDefined, "pairing disagrees with the right action", idx({s, i, k}));
      }
      const auto r = embed.preimage(e);
      if (!r) throw Error(ErrorKind::NotWellDefined, "pairing leaves the diagonal block", idx({s, i}));
      return *r;
    });
  }

  // Composition of endomorphisms; the span must be closed under it.
  BilinearMap square(std::size_t s) {
    const EndoPresentation& p = res_.endos[s];
    const FinAbGroup& R = diag(s);
    const auto& emb = p.block.embedding.images();
    // per generator of R and per k: the left endomorphism of U_sk and the
    // right one of U_ks
    std::vector<std::vector<AbHom>> L(R.ngens(), std::vector<AbHom>(n_)), O = L;
    for (std::size_t a = 0; a < R.ngens(); ++a)
      for (std::size_t k = 0; k < n_; ++k) {
        if (k == s) continue;
        std::vector<Element> li, oi;
        for (std::size_t g = 0; g < d_.module(s, k).ngens(); ++g) li.push_back(p.left_image(emb[a], k, g));
        for (std::size_t g = 0; g < d_.module(k, s).ngens(); ++g) oi.push_back(p.op_image(emb[a], k, g));
        L[a][k] = endo(d_.module(s, k), std::move(li));
        O[a][k] = endo(d_.module(k, s), std::move(oi));
      }
    bool closed = true;
    std::string witness;
    BilinearMap m = bilinear_from(R, R, R, [&](std::size_t a, std::size_t b) {
      Element e = p.ambient.group().zero();
      for (std::size_t k = 0; k < n_; ++k) {
        if (k == s) continue;
        for (std::size_t g = 0; g < d_.module(s, k).ngens(); ++g)
          p.ambient.accumulate(e, p.left_part[k] + g, L[a][k].apply(L[b][k].images()[g]));
        for (std::size_t g = 0; g < d_.module(k, s).ngens(); ++g)
          p.ambient.accumulate(e, p.op_part[k] + g, O[b][k].apply(O[a][k].images()[g]));
      }
      const auto r = solvers_[s].preimage(e);
      if (!r) {
        if (closed) witness = "generators " + idx({a, b});
        closed = false;
        return R.zero();
      }
      return *r;
    });
    res_.certificates.push_back({"r-gen closure " + idx({s}), closed, witness});
    if (!closed) throw Error(ErrorKind::NotWellDefined, "diagonal block is not closed under composition", witness);
    return m;
  }

 private:
  const CommRelData& d_;
  std::size_t n_;
  CoordinatizationResult& res_;
  std::vector<HomSolver> solvers_;
};

}  // namespace

CoordinatizationResult reduced_coordinatize(const CommRelData& d) {
  require_rank(d);
  require_k_linear(d);
  if (auto r = check_reduced_rel(d); !r.holds)
    throw Error(ErrorKind::PreconditionFailed, "commutator data is not reduced", r.witness);

  CoordinatizationResult res;
  res.mode = CoordMode::Reduced;
  ReducedBuilder b(d, res);
  for (const auto& c : res.certificates)
    if (!c.holds) throw Error(ErrorKind::NotWellDefined, "bracket spans differ between index pairs", c.name);
  std::vector<FinAbGroup> diag;
  for (std::size_t s = 0; s < d.rank(); ++s) diag.push_back(b.diag(s));
  res.ring = assemble(
      d, diag, [&](std::size_t s, std::size_t j) { return b.left(s, j); },
      [&](std::size_t j, std::size_t s) { return b.right(j, s); },
      [&](std::size_t s, std::size_t i) { return b.pairing(s, i); }, [&](std::size_t s) { return b.square(s); });
  finish(res);
  return res;
}

CoordinatizationResult coordinatize(const CommRelData& d, CoordMode mode) {
  return mode == CoordMode::Firm ? firm_coordinatize(d) : reduced_coordinatize(d);
}

std::string to_string(CoordMode m) { return m == CoordMode::Firm ? "firm" : "reduced"; }

bool CoordinatizationResult::certified() const {
  if (!std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.holds; }))
    return false;
  if (!ass.all_hold || !predicates.idempotent.holds) return false;
  return mode == CoordMode::Firm ? predicates.firm.holds : predicates.reduced.holds;
}

// ---------------------------------------------------------------------------

ConnectingHom connecting_hom(const CommRelData& d, const PeirceRing& built, const PeirceRing& original) {
  const std::size_t n = d.rank();
  if (built.rank() != n || original.rank() != n)
    throw Error(ErrorKind::BlockMismatch, "rings and commutator data differ in rank");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (built.block(i, j) != d.module(i, j) || original.block(i, j) != d.module(i, j))
        throw Error(ErrorKind::BlockMismatch, "off-diagonal block differs from the commutator data", idx({i, j}));
    }
  std::vector<AbHom> f(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      f[i * n + j] = i == j ? AbHom::zero(built.block(i, i), original.block(i, i)) : AbHom::identity(d.module(i, j));
  ConnectingHom h;
  h.blocks = extend_from_off_diagonal(built, original, std::move(f));
  if (auto w = homomorphism_failure(built, original, h.blocks))
    throw Error(ErrorKind::NotHomomorphism, "block map does not respect products", *w);
  h.bijective = true;
  for (const AbHom& b : h.blocks) {
    h.block_bijective.push_back(is_isomorphism(b));
    h.bijective = h.bijective && h.block_bijective.back();
  }
  return h;
}

}  // namespace peirce
