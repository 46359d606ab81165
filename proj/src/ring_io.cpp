#include "peirce/ring_io.hpp"

#include "peirce/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <tuple>

namespace peirce {
namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Non-empty lines with comments removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (!raw.empty()) out.push_back({number, raw});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& what) {
  throw Error(ErrorKind::Parse, "malformed input", "line " + std::to_string(l.number) + ": " + what);
}

// Cursor over one line.
class Scanner {
 public:
  explicit Scanner(const Line& l) : line_(l), rest_(l.text) {}

  void skip_space() {
    while (!rest_.empty() && (rest_.front() == ' ' || rest_.front() == '\t')) rest_.remove_prefix(1);
  }
  bool done() {
    skip_space();
    return rest_.empty();
  }
  void expect(std::string_view token) {
    skip_space();
    if (rest_.substr(0, token.size()) != token) fail(line_, "expected '" + std::string(token) + "'");
    rest_.remove_prefix(token.size());
  }
  bool accept(std::string_view token) {
    skip_space();
    if (rest_.substr(0, token.size()) != token) return false;
    rest_.remove_prefix(token.size());
    return true;
  }
  std::string word() {
    skip_space();
    std::size_t n = 0;
    while (n < rest_.size() && std::isalpha(static_cast<unsigned char>(rest_[n]))) ++n;
    if (n == 0) fail(line_, "expected a keyword");
    std::string w(rest_.substr(0, n));
    rest_.remove_prefix(n);
    return w;
  }
  Coeff number() {
    skip_space();
    Coeff v = 0;
    const auto [ptr, ec] = std::from_chars(rest_.data(), rest_.data() + rest_.size(), v);
    if (ec != std::errc() || ptr == rest_.data()) fail(line_, "expected a number");
    rest_.remove_prefix(static_cast<std::size_t>(ptr - rest_.data()));
    return v;
  }
  // 1-based index below `bound`, returned 0-based.
  std::size_t index(std::size_t bound, const char* what) {
    const Coeff v = number();
    if (v < 1 || static_cast<std::size_t>(v) > bound)
      fail(line_, std::string(what) + " " + std::to_string(v) + " out of range 1.." + std::to_string(bound));
    return static_cast<std::size_t>(v - 1);
  }
  // Comma-separated numbers up to the end of the line (possibly none).
  std::vector<Coeff> number_list() {
    std::vector<Coeff> out;
    if (done()) return out;
    out.push_back(number());
    while (accept(",")) out.push_back(number());
    return out;
  }
  std::vector<Coeff> bracket_list() {
    expect("[");
    std::vector<Coeff> out;
    if (accept("]")) return out;
    out.push_back(number());
    while (accept(",")) out.push_back(number());
    expect("]");
    return out;
  }

 private:
  const Line& line_;
  std::string_view rest_;
};

struct Header {
  std::size_t rank = 0;
  Coeff modulus = 0;
};

Header parse_header(const std::vector<Line>& lines, std::string_view keyword) {
  if (lines.empty())
    throw Error(ErrorKind::Parse, "malformed input", "line 1: missing '" + std::string(keyword) + "' header");
  Scanner sc(lines.front());
  if (sc.word() != keyword) fail(lines.front(), "expected '" + std::string(keyword) + "' header");
  Header h;
  sc.expect("rank=");
  const Coeff rank = sc.number();
  sc.expect("modulus=");
  h.modulus = sc.number();
  if (!sc.done()) fail(lines.front(), "trailing characters");
  if (rank < 1 || rank > 64) fail(lines.front(), "rank must be between 1 and 64");
  if (h.modulus < 2) fail(lines.front(), "modulus must be at least 2");
  h.rank = static_cast<std::size_t>(rank);
  return h;
}

struct Parsed {
  Header header;
  std::vector<FinAbGroup> groups;   // i * rank + j
  std::vector<BilinearMap> maps;    // (i * rank + j) * rank + k
};

// Group lines for every admitted (i, j) in order, then product lines. With
// `off_diagonal_only` only i != j and distinct triples are admitted.
Parsed parse(std::string_view text, std::string_view head_kw, std::string_view group_kw, std::string_view map_kw,
             bool off_diagonal_only) {
  const auto lines = content_lines(text);
  Parsed p;
  p.header = parse_header(lines, head_kw);
  const std::size_t n = p.header.rank;
  auto has_group = [&](std::size_t i, std::size_t j) { return !off_diagonal_only || i != j; };
  auto has_map = [&](std::size_t i, std::size_t j, std::size_t k) {
    return !off_diagonal_only || (i != j && j != k && i != k);
  };

  p.groups.assign(n * n, FinAbGroup());
  std::vector<bool> seen_group(n * n, false);
  std::vector<std::vector<Element>> tables(n * n * n);
  std::size_t expected_group = 0;  // canonical position of the next group line
  auto next_group = [&]() {
    while (expected_group < n * n && !has_group(expected_group / n, expected_group % n)) ++expected_group;
  };
  next_group();
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>> last_entry;

  for (std::size_t t = 1; t < lines.size(); ++t) {
    const Line& l = lines[t];
    Scanner sc(l);
    const std::string kw = sc.word();
    if (kw == group_kw) {
      const std::size_t i = sc.index(n, "index"), j = sc.index(n, "index");
      sc.expect(":");
      if (!has_group(i, j)) fail(l, "no " + std::string(group_kw) + " on the diagonal");
      if (seen_group[i * n + j]) fail(l, "duplicate " + std::string(group_kw) + " line");
      if (i * n + j != expected_group) fail(l, std::string(group_kw) + " lines out of order");
      const std::vector<Coeff> orders = sc.number_list();
      for (Coeff d : orders)
        if (d < 2) fail(l, "cyclic orders must be at least 2");
      p.groups[i * n + j] = FinAbGroup(orders);
      if (p.header.modulus % p.groups[i * n + j].exponent() != 0)
        fail(l, "exponent does not divide the modulus");
      seen_group[i * n + j] = true;
      ++expected_group;
      next_group();
    } else if (kw == map_kw) {
      if (expected_group < n * n) fail(l, std::string(map_kw) + " line before all " + std::string(group_kw) + " lines");
      const std::size_t i = sc.index(n, "index"), j = sc.index(n, "index"), k = sc.index(n, "index");
      sc.expect(":");
      if (!has_map(i, j, k)) fail(l, std::string(map_kw) + " needs distinct indices");
      const FinAbGroup &L = p.groups[i * n + j], &R = p.groups[j * n + k], &T = p.groups[i * n + k];
      sc.expect("(");
      const std::size_t a = sc.index(L.ngens(), "left generator");
      sc.expect(",");
      const std::size_t b = sc.index(R.ngens(), "right generator");
      sc.expect(")");
      sc.expect("->");
      const std::vector<Coeff> v = sc.bracket_list();
      if (!sc.done()) fail(l, "trailing characters");
      if (v.size() != T.ngens()) fail(l, "value has " + std::to_string(v.size()) + " entries, expected " +
                                             std::to_string(T.ngens()));
      for (std::size_t q = 0; q < v.size(); ++q)
        if (v[q] < 0 || v[q] >= T.order(q)) fail(l, "value entry out of range");
      const auto key = std::tuple{i, j, k, a, b};
      if (last_entry && !(*last_entry < key)) fail(l, std::string(map_kw) + " lines out of order or duplicated");
      last_entry = key;
      const std::size_t m = (i * n + j) * n + k;
      if (tables[m].empty()) {
        tables[m].assign(L.ngens() * R.ngens(), T.zero());
      }
      if (std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; })) fail(l, "zero products are omitted");
      tables[m][a * R.ngens() + b] = Element(v.begin(), v.end());
    } else {
      fail(l, "unknown keyword '" + kw + "'");
    }
  }
  if (expected_group < n * n) {
    const std::size_t i = expected_group / n, j = expected_group % n;
    throw Error(ErrorKind::Parse, "malformed input",
                "line " + std::to_string(lines.back().number) + ": missing " + std::string(group_kw) + " " +
                    std::to_string(i + 1) + " " + std::to_string(j + 1));
  }

  p.maps.resize(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (!has_map(i, j, k)) continue;
        const std::size_t m = (i * n + j) * n + k;
        const FinAbGroup &L = p.groups[i * n + j], &R = p.groups[j * n + k], &T = p.groups[i * n + k];
        if (tables[m].empty()) tables[m].assign(L.ngens() * R.ngens(), T.zero());
        try {
          p.maps[m] = BilinearMap(L, R, T, std::move(tables[m]));
        } catch (const Error& e) {
          throw Error(ErrorKind::Parse, "malformed input",
                      std::string(map_kw) + " " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
                          std::to_string(k + 1) + ": " + e.what());
        }
      }
  return p;
}

std::string orders_text(const FinAbGroup& g) {
  std::string out;
  for (std::size_t t = 0; t < g.ngens(); ++t) {
    out += t ? "," : " ";
    out += std::to_string(g.order(t));
  }
  return out;
}

void write_map(std::ostringstream& out, std::string_view kw, std::size_t i, std::size_t j, std::size_t k,
               const BilinearMap& m) {
  for (std::size_t a = 0; a < m.left().ngens(); ++a)
    for (std::size_t b = 0; b < m.right().ngens(); ++b) {
      const Element& v = m.on_generators(a, b);
      if (m.target().is_zero(v)) continue;
      out << kw << ' ' << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ": (" << a + 1 << ',' << b + 1
          << ") -> " << to_string(v) << '\n';
    }
}

}  // namespace

PeirceRing read_ring(std::string_view text) {
  Parsed p = parse(text, "peirce", "block", "mult", false);
  return PeirceRing::create(p.header.rank, p.header.modulus, std::move(p.groups), std::move(p.maps));
}

std::string write_ring(const PeirceRing& r) {
  std::ostringstream out;
  const std::size_t n = r.rank();
  out << "peirce rank=" << n << " modulus=" << r.modulus() << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out << "block " << i + 1 << ' ' << j + 1 << ':' << orders_text(r.block(i, j)) << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) write_map(out, "mult", i, j, k, r.mult(i, j, k));
  return out.str();
}

CommRelData read_commrel(std::string_view text) {
  Parsed p = parse(text, "commrel", "module", "cmap", true);
  return CommRelData::create(p.header.rank, p.header.modulus, std::move(p.groups), std::move(p.maps));
}

std::string write_commrel(const CommRelData& d) {
  std::ostringstream out;
  const std::size_t n = d.rank();
  out << "commrel rank=" << n << " modulus=" << d.modulus() << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out << "module " << i + 1 << ' ' << j + 1 << ':' << orders_text(d.module(i, j)) << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k) write_map(out, "cmap", i, j, k, d.cmap(i, j, k));
  return out.str();
}

std::string detect_format(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) return {};
  const std::string_view t = lines.front().text;
  return std::string(t.substr(0, t.find_first_of(" \t")));
}

}  // namespace peirce
