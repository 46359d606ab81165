#include "peirce/exact_linalg.hpp"

#include "peirce/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace peirce {
namespace {

Coeff mod(Coeff a, Coeff m) {
  Coeff r = a % m;
  return r < 0 ? r + m : r;
}

Coeff floor_div(Coeff a, Coeff b) {
  Coeff q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("peirce: coefficient overflow in lattice arithmetic");
  return r;
}

Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("peirce: coefficient overflow in lattice arithmetic");
  return r;
}

struct Bezout {
  Coeff g, a, b;
};

Bezout bezout(Coeff x, Coeff y) {
  Coeff a0 = 1, b0 = 0, a1 = 0, b1 = 1;
  while (y != 0) {
    Coeff q = x / y;
    Coeff r = x - q * y;
    x = y;
    y = r;
    Coeff t = a0 - q * a1;
    a0 = a1;
    a1 = t;
    t = b0 - q * b1;
    b0 = b1;
    b1 = t;
  }
  if (x < 0) return {-x, -a0, -b0};
  return {x, a0, b0};
}

Coeff to_coeff_mod(const Integer& v, Coeff m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return static_cast<Coeff>(r);
}

}  // namespace

std::string to_string(const Element& x) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ',';
    out << x[i];
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------
// FinAbGroup

FinAbGroup::FinAbGroup(std::vector<Coeff> orders) {
  orders_.reserve(orders.size());
  for (Coeff d : orders) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "cyclic order must be >= 1");
    if (d > 1) orders_.push_back(d);
  }
}

FinAbGroup FinAbGroup::direct_sum(std::span<const FinAbGroup> parts) {
  std::vector<Coeff> orders;
  for (const auto& p : parts) orders.insert(orders.end(), p.orders_.begin(), p.orders_.end());
  return FinAbGroup(std::move(orders));
}

Integer FinAbGroup::cardinality() const {
  Integer n = 1;
  for (Coeff d : orders_) n *= d;
  return n;
}

Coeff FinAbGroup::exponent() const {
  Coeff e = 1;
  for (Coeff d : orders_) e = std::lcm(e, d);
  return e;
}

Element FinAbGroup::generator(std::size_t i) const {
  Element x = zero();
  x.at(i) = 1;
  return x;
}

Element FinAbGroup::reduce(Element x) const {
  if (x.size() != orders_.size())
    throw Error(ErrorKind::InvalidArgument, "element has wrong length for group " + to_string(*this));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
  return x;
}

bool FinAbGroup::is_element(const Element& x) const {
  if (x.size() != orders_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= orders_[i]) return false;
  return true;
}

bool FinAbGroup::is_zero(const Element& x) const {
  return std::all_of(x.begin(), x.end(), [](Coeff c) { return c == 0; });
}

Element FinAbGroup::add(const Element& a, const Element& b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Coeff s = a[i] + b[i];
    r[i] = s >= orders_[i] ? s - orders_[i] : s;
  }
  return r;
}

Element FinAbGroup::sub(const Element& a, const Element& b) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Coeff s = a[i] - b[i];
    r[i] = s < 0 ? s + orders_[i] : s;
  }
  return r;
}

Element FinAbGroup::neg(const Element& a) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] == 0 ? 0 : orders_[i] - a[i];
  return r;
}

Element FinAbGroup::scale(Coeff k, const Element& a) const {
  Element r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod(mod(k, orders_[i]) * a[i], orders_[i]);
  return r;
}

void FinAbGroup::add_scaled(Element& a, Coeff k, const Element& b) const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0) continue;
    a[i] = mod(a[i] + mod(k, orders_[i]) * b[i], orders_[i]);
  }
}

Coeff FinAbGroup::element_order(const Element& x) const {
  Coeff e = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) e = std::lcm(e, orders_[i] / std::gcd(orders_[i], x[i]));
  return e;
}

void FinAbGroup::for_each_element(const std::function<void(const Element&)>& fn) const {
  Element x = zero();
  for (;;) {
    fn(x);
    std::size_t i = x.size();
    while (i > 0) {
      --i;
      if (++x[i] < orders_[i]) break;
      x[i] = 0;
      if (i == 0) return;
    }
    if (x.empty()) return;
  }
}

std::vector<Element> FinAbGroup::elements() const {
  std::vector<Element> out;
  for_each_element([&](const Element& x) { out.push_back(x); });
  return out;
}

std::string to_string(const FinAbGroup& g) {
  if (g.is_trivial()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < g.ngens(); ++i) {
    if (i) out << " + ";
    out << "Z/" << g.order(i);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DirectSum

DirectSum::DirectSum(std::vector<FinAbGroup> parts) : parts_(std::move(parts)) {
  std::size_t off = 0;
  for (const auto& p : parts_) {
    offsets_.push_back(off);
    off += p.ngens();
  }
  group_ = FinAbGroup::direct_sum(parts_);
}

Element DirectSum::inject(std::size_t k, const Element& x) const {
  Element out = group_.zero();
  std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(offsets_.at(k)));
  return out;
}

Element DirectSum::component(const Element& x, std::size_t k) const {
  auto first = x.begin() + static_cast<std::ptrdiff_t>(offsets_.at(k));
  return Element(first, first + static_cast<std::ptrdiff_t>(parts_[k].ngens()));
}

void DirectSum::accumulate(Element& total, std::size_t k, const Element& x, Coeff scale) const {
  const std::size_t off = offsets_.at(k);
  const auto& orders = parts_[k].orders();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    total[off + i] = mod(total[off + i] + mod(scale, orders[i]) * x[i], orders[i]);
  }
}

// ---------------------------------------------------------------------------
// AbHom

AbHom::AbHom(FinAbGroup source, FinAbGroup target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.ngens())
    throw Error(ErrorKind::InvalidArgument, "homomorphism needs one image per source generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    images_[i] = target_.reduce(std::move(images_[i]));
    if (!target_.is_zero(target_.scale(source_.order(i), images_[i])))
      throw Error(ErrorKind::InvalidArgument, "homomorphism is not well defined on generator orders",
                  "generator " + std::to_string(i) + " -> " + to_string(images_[i]));
  }
}

AbHom AbHom::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return AbHom(source, target, std::vector<Element>(source.ngens(), target.zero()));
}

AbHom AbHom::identity(const FinAbGroup& g) {
  std::vector<Element> images;
  for (std::size_t i = 0; i < g.ngens(); ++i) images.push_back(g.generator(i));
  return AbHom(g, g, std::move(images));
}

Element AbHom::apply(const Element& x) const {
  Element y = target_.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) target_.add_scaled(y, x[i], images_[i]);
  return y;
}

bool AbHom::is_zero() const {
  return std::all_of(images_.begin(), images_.end(),
                     [this](const Element& e) { return target_.is_zero(e); });
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target() == g.source()))
    throw Error(ErrorKind::InvalidArgument, "compose: target/source mismatch");
  std::vector<Element> images;
  images.reserve(f.images().size());
  for (const auto& im : f.images()) images.push_back(g.apply(im));
  return AbHom(f.source(), g.target(), std::move(images));
}

// ---------------------------------------------------------------------------
// HermiteLattice

HermiteLattice::HermiteLattice(std::vector<Coeff> moduli) : moduli_(std::move(moduli)) {
  const std::size_t n = moduli_.size();
  rows_.assign(n, Element(n, 0));
  for (std::size_t c = 0; c < n; ++c) rows_[c][c] = moduli_[c];
}

void HermiteLattice::insert(Element v) {
  const std::size_t n = moduli_.size();
  for (std::size_t j = 0; j < n; ++j) v[j] = mod(v[j], moduli_[j]);
  for (std::size_t c = 0; c < n; ++c) {
    if (v[c] == 0) continue;
    Element& row = rows_[c];
    const Coeff p = row[c];
    if (v[c] % p == 0) {
      const Coeff q = v[c] / p;
      v[c] = 0;
      for (std::size_t j = c + 1; j < n; ++j)
        if (row[j] != 0) v[j] = mod(v[j] - checked_mul(q, row[j]), moduli_[j]);
      continue;
    }
    const auto [g, a, b] = bezout(p, v[c]);
    const Coeff vg = v[c] / g, pg = p / g;
    for (std::size_t j = c + 1; j < n; ++j) {
      const Coeff r = row[j], x = v[j];
      if (r == 0 && x == 0) continue;
      row[j] = mod(checked_add(checked_mul(a, r), checked_mul(b, x)), moduli_[j]);
      v[j] = mod(checked_add(checked_mul(vg, r), -checked_mul(pg, x)), moduli_[j]);
    }
    row[c] = g;
    v[c] = 0;
  }
}

void HermiteLattice::canonicalize() {
  const std::size_t n = moduli_.size();
  for (std::size_t r = n; r-- > 0;) {
    Element& row = rows_[r];
    for (std::size_t c = r + 1; c < n; ++c) {
      const Coeff q = floor_div(row[c], rows_[c][c]);
      if (q == 0) continue;
      const Element& sub = rows_[c];
      for (std::size_t j = c; j < n; ++j)
        if (sub[j] != 0) row[j] = checked_add(row[j], -checked_mul(q, sub[j]));
    }
  }
}

Element HermiteLattice::reduce(Element v) const {
  const std::size_t n = moduli_.size();
  for (std::size_t j = 0; j < n; ++j) v[j] = mod(v[j], moduli_[j]);
  for (std::size_t c = 0; c < n; ++c) {
    const Coeff q = floor_div(v[c], rows_[c][c]);
    if (q == 0) continue;
    const Element& row = rows_[c];
    v[c] -= q * row[c];
    for (std::size_t j = c + 1; j < n; ++j)
      if (row[j] != 0) v[j] = mod(v[j] - checked_mul(q, row[j]), moduli_[j]);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(FinAbGroup ambient, std::vector<Element> generators)
    : ambient_(std::move(ambient)), generators_(std::move(generators)) {
  auto lat = std::make_shared<HermiteLattice>(ambient_.orders());
  for (auto& g : generators_) {
    g = ambient_.reduce(std::move(g));
    if (!ambient_.is_zero(g)) lat->insert(g);
  }
  lat->canonicalize();
  for (std::size_t c = 0; c < ambient_.ngens(); ++c)
    if (lat->pivot(c) < ambient_.order(c)) basis_.push_back(lat->row(c));
  lattice_ = std::move(lat);
}

Subgroup Subgroup::whole(const FinAbGroup& g) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < g.ngens(); ++i) gens.push_back(g.generator(i));
  return Subgroup(g, std::move(gens));
}

Subgroup Subgroup::trivial(const FinAbGroup& g) { return Subgroup(g, {}); }

Integer Subgroup::cardinality() const {
  Integer n = 1;
  for (std::size_t c = 0; c < ambient_.ngens(); ++c) n *= ambient_.order(c) / lattice_->pivot(c);
  return n;
}

Integer Subgroup::index() const {
  Integer n = 1;
  for (std::size_t c = 0; c < ambient_.ngens(); ++c) n *= lattice_->pivot(c);
  return n;
}

bool Subgroup::is_whole() const {
  for (std::size_t c = 0; c < ambient_.ngens(); ++c)
    if (lattice_->pivot(c) != 1) return false;
  return true;
}

bool Subgroup::contains(const Element& x) const { return ambient_.is_zero(reduce(x)); }

Element Subgroup::reduce(const Element& x) const {
  if (x.size() != ambient_.ngens())
    throw Error(ErrorKind::InvalidArgument, "element has wrong length for subgroup ambient");
  return lattice_->reduce(x);
}

Subgroup Subgroup::operator+(const Subgroup& other) const {
  if (!(ambient_ == other.ambient_))
    throw Error(ErrorKind::InvalidArgument, "subgroup sum needs a common ambient group");
  std::vector<Element> gens = basis_;
  gens.insert(gens.end(), other.basis_.begin(), other.basis_.end());
  return Subgroup(ambient_, std::move(gens));
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

bool subgroup_equal(const Subgroup& a, const Subgroup& b) { return a == b; }

// ---------------------------------------------------------------------------
// Quotient
//
// Coordinates whose pivot is 1 are eliminated by the Hermite form; the
// remaining coordinates J carry the relations p_j e_j = reduce(p_j e_j),
// an upper triangular |J| x |J| matrix whose Smith form gives the invariant
// factors of G/H.

Quotient::Quotient(Subgroup h) : kernel_(std::move(h)) {
  const FinAbGroup& g = kernel_.ambient();
  const HermiteLattice& lat = kernel_.lattice();
  const std::size_t n = g.ngens();

  std::vector<std::size_t> J;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t c = 0; c < n; ++c)
    if (lat.pivot(c) > 1) {
      slot[c] = J.size();
      J.push_back(c);
    }
  const std::size_t k = J.size();

  IntMatrix rel(k, std::vector<Integer>(k, 0));
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t c = J[t];
    Element e = g.zero();
    e[c] = lat.pivot(c) % g.order(c);
    Element r = lat.reduce(e);
    rel[t][t] = lat.pivot(c);
    for (std::size_t u = 0; u < k; ++u) rel[t][u] -= r[J[u]];
  }
  const SmithForm snf = smith_normal_form(rel);

  std::vector<std::size_t> live;
  std::vector<Coeff> orders;
  for (std::size_t t = 0; t < k; ++t) {
    if (snf.S[t][t] > 1) {
      live.push_back(t);
      orders.push_back(static_cast<Coeff>(snf.S[t][t]));
    }
  }
  group_ = FinAbGroup(orders);

  std::vector<Element> images;
  images.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    const Element xr = lat.reduce(g.generator(c));
    Element q(live.size(), 0);
    for (std::size_t s = 0; s < live.size(); ++s) {
      Integer y = 0;
      for (std::size_t u = 0; u < k; ++u)
        if (xr[J[u]] != 0) y += Integer(xr[J[u]]) * snf.V[u][live[s]];
      q[s] = to_coeff_mod(y, orders[s]);
    }
    images.push_back(std::move(q));
  }
  proj_ = AbHom(g, group_, std::move(images));

  for (std::size_t s = 0; s < live.size(); ++s) {
    Element x = g.zero();
    for (std::size_t u = 0; u < k; ++u) x[J[u]] = to_coeff_mod(snf.Vinv[live[s]][u], g.order(J[u]));
    section_.push_back(lat.reduce(std::move(x)));
  }
}

Element Quotient::section(const Element& q) const {
  const FinAbGroup& g = kernel_.ambient();
  Element x = g.zero();
  for (std::size_t t = 0; t < q.size(); ++t)
    if (q[t] != 0) g.add_scaled(x, q[t], section_[t]);
  return kernel_.reduce(x);
}

Quotient quotient(const FinAbGroup& g, const Subgroup& h) {
  if (!(h.ambient() == g))
    throw Error(ErrorKind::InvalidArgument, "quotient: subgroup lives in a different group");
  return Quotient(h);
}

AbHom induced_map(const AbHom& f, const Quotient& q) {
  if (!(f.source() == q.ambient()))
    throw Error(ErrorKind::InvalidArgument, "induced_map: source is not the quotient's ambient");
  for (const auto& h : q.kernel().generators()) {
    if (!f.target().is_zero(f.apply(h)))
      throw Error(ErrorKind::NotWellDefined, "map does not vanish on the subgroup", to_string(h));
  }
  std::vector<Element> images;
  for (const auto& s : q.section_generators()) images.push_back(f.apply(s));
  return AbHom(q.group(), f.target(), std::move(images));
}

AbHom induced_map(const AbHom& f, const Subgroup& h) { return induced_map(f, Quotient(h)); }

// ---------------------------------------------------------------------------
// HomSolver: echelon form of the graph {(f(x), x)} in target + source, with
// the target coordinates first.

HomSolver::HomSolver(AbHom f) : f_(std::move(f)) {
  const std::size_t nt = f_.target().ngens();
  const std::size_t ns = f_.source().ngens();
  std::vector<Coeff> moduli = f_.target().orders();
  moduli.insert(moduli.end(), f_.source().orders().begin(), f_.source().orders().end());
  graph_ = std::make_shared<HermiteLattice>(std::move(moduli));
  for (std::size_t i = 0; i < ns; ++i) {
    Element v(nt + ns, 0);
    std::copy(f_.images()[i].begin(), f_.images()[i].end(), v.begin());
    v[nt + i] = 1;
    graph_->insert(std::move(v));
  }
  graph_->canonicalize();
  std::vector<Element> gens;
  for (std::size_t c = nt; c < nt + ns; ++c) {
    if (graph_->pivot(c) == f_.source().order(c - nt)) continue;
    const Element& row = graph_->row(c);
    gens.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(nt), row.end());
  }
  kernel_ = Subgroup(f_.source(), std::move(gens));
}

std::optional<Element> HomSolver::preimage(const Element& y) const {
  const std::size_t nt = f_.target().ngens();
  const std::size_t ns = f_.source().ngens();
  Element v(nt + ns, 0);
  std::copy(y.begin(), y.end(), v.begin());
  v = graph_->reduce(std::move(v));
  for (std::size_t c = 0; c < nt; ++c)
    if (v[c] != 0) return std::nullopt;
  Element x(v.begin() + static_cast<std::ptrdiff_t>(nt), v.end());
  return kernel_.reduce(f_.source().neg(f_.source().reduce(std::move(x))));
}

Subgroup kernel(const AbHom& f) { return HomSolver(f).kernel(); }

Subgroup image(const AbHom& f) { return Subgroup(f.target(), f.images()); }

bool is_injective(const AbHom& f) { return kernel(f).is_trivial(); }

bool is_surjective(const AbHom& f) { return image(f).is_whole(); }

bool is_isomorphism(const AbHom& f) {
  return f.source().cardinality() == f.target().cardinality() && is_injective(f);
}

Presentation present(const Subgroup& h) {
  const FinAbGroup& g = h.ambient();
  std::vector<Coeff> orders;
  for (const auto& b : h.basis()) orders.push_back(g.element_order(b));
  FinAbGroup free(orders);
  AbHom phi(free, g, h.basis());
  Quotient q(kernel(phi));
  return {q.group(), induced_map(phi, q)};
}

// ---------------------------------------------------------------------------
// BilinearMap

BilinearMap::BilinearMap(FinAbGroup left, FinAbGroup right, FinAbGroup target,
                         std::vector<Element> table)
    : left_(std::move(left)),
      right_(std::move(right)),
      target_(std::move(target)),
      table_(std::move(table)) {
  const std::size_t nl = left_.ngens(), nr = right_.ngens();
  if (table_.size() != nl * nr)
    throw Error(ErrorKind::InvalidArgument, "bilinear map table has wrong size");
  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      Element& e = table_[a * nr + b];
      e = target_.reduce(std::move(e));
      const Coeff g = std::gcd(left_.order(a), right_.order(b));
      if (!target_.is_zero(target_.scale(g, e)))
        throw Error(ErrorKind::InvalidArgument, "bilinear map entry is not killed by gcd of orders",
                    "(" + std::to_string(a) + "," + std::to_string(b) + ") -> " + to_string(e));
      if (!target_.is_zero(e)) support_.push_back(a * nr + b);
    }
}

BilinearMap BilinearMap::zero(const FinAbGroup& left, const FinAbGroup& right,
                              const FinAbGroup& target) {
  return BilinearMap(left, right, target,
                     std::vector<Element>(left.ngens() * right.ngens(), target.zero()));
}

Element BilinearMap::apply(const Element& x, const Element& y) const {
  Element out = target_.zero();
  const std::size_t nr = right_.ngens();
  for (std::size_t idx : support_) {
    const std::size_t a = idx / nr, b = idx % nr;
    if (x[a] == 0 || y[b] == 0) continue;
    const Coeff g = std::gcd(left_.order(a), right_.order(b));
    const Coeff coef = ((x[a] % g) * (y[b] % g)) % g;
    if (coef != 0) target_.add_scaled(out, coef, table_[idx]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// TensorProduct

TensorProduct::TensorProduct(FinAbGroup left, FinAbGroup right)
    : left_(std::move(left)), right_(std::move(right)) {
  const std::size_t nl = left_.ngens(), nr = right_.ngens();
  pure_.assign(nl * nr, std::nullopt);
  std::vector<Coeff> orders;
  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      const Coeff g = std::gcd(left_.order(a), right_.order(b));
      if (g > 1) {
        pure_[a * nr + b] = orders.size();
        factors_.emplace_back(a, b);
        orders.push_back(g);
      }
    }
  group_ = FinAbGroup(std::move(orders));
}

Element TensorProduct::pure(const Element& x, const Element& y) const {
  Element out = group_.zero();
  const std::size_t nr = right_.ngens();
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (y[b] == 0) continue;
      if (auto t = pure_[a * nr + b]) out[*t] = mod(out[*t] + x[a] * y[b], group_.order(*t));
    }
  }
  return out;
}

AbHom TensorProduct::lift(const BilinearMap& f) const {
  if (!(f.left() == left_) || !(f.right() == right_))
    throw Error(ErrorKind::InvalidArgument, "lift: bilinear map has the wrong factors");
  std::vector<Element> images(group_.ngens());
  const std::size_t nr = right_.ngens();
  for (std::size_t a = 0; a < left_.ngens(); ++a)
    for (std::size_t b = 0; b < nr; ++b)
      if (auto t = pure_[a * nr + b]) images[*t] = f.on_generators(a, b);
  return AbHom(group_, f.target(), std::move(images));
}

BilinearMap TensorProduct::universal() const {
  std::vector<Element> table(left_.ngens() * right_.ngens(), group_.zero());
  for (std::size_t i = 0; i < table.size(); ++i)
    if (pure_[i]) table[i] = group_.generator(*pure_[i]);
  return BilinearMap(left_, right_, group_, std::move(table));
}

TensorProduct tensor_z(const FinAbGroup& a, const FinAbGroup& b) { return TensorProduct(a, b); }

}  // namespace peirce

namespace peirce {

BilinearMap induced_bilinear(const BilinearSide& left, const BilinearSide& right,
                             const FinAbGroup& target,
                             const std::function<Element(std::size_t, std::size_t)>& on_ambient) {
  const FinAbGroup& la = *left.ambient;
  const FinAbGroup& ra = *right.ambient;
  const FinAbGroup& lg = left.group();
  const FinAbGroup& rg = right.group();

  // columns[b][a']: image of (left quotient generator a', right ambient generator b)
  std::vector<std::vector<Element>> columns(ra.ngens());
  for (std::size_t b = 0; b < ra.ngens(); ++b) {
    std::vector<Element> images;
    images.reserve(la.ngens());
    for (std::size_t a = 0; a < la.ngens(); ++a) images.push_back(on_ambient(a, b));
    AbHom f(la, target, std::move(images));
    columns[b] = left.quotient ? induced_map(f, *left.quotient).images() : f.images();
  }
  std::vector<Element> table(lg.ngens() * rg.ngens());
  for (std::size_t a = 0; a < lg.ngens(); ++a) {
    std::vector<Element> images;
    images.reserve(ra.ngens());
    for (std::size_t b = 0; b < ra.ngens(); ++b) images.push_back(columns[b][a]);
    AbHom g(ra, target, std::move(images));
    const std::vector<Element> row = right.quotient ? induced_map(g, *right.quotient).images() : g.images();
    for (std::size_t b = 0; b < rg.ngens(); ++b) table[a * rg.ngens() + b] = row[b];
  }
  return BilinearMap(lg, rg, target, std::move(table));
}

}  // namespace peirce
