#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "peirce/coordinatize.hpp"
#include "peirce/corpus.hpp"
#include "peirce/error.hpp"
#include "peirce/quasigroup.hpp"
#include "peirce/ring_io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace peirce::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  bool json = false;
  bool no_timing = false;
  std::uint64_t size_bound = kDefaultSizeBound;
  std::string output;
  std::string mode = "firm";
};

// A stop with a known exit code.
struct Failure {
  int code;
  std::string message;
  std::string witness;
};

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return kIo;
    case ErrorKind::NotWellDefined:
    case ErrorKind::NotAssociative:
    case ErrorKind::InjectivityFailure:
    case ErrorKind::NotHomomorphism:
    case ErrorKind::BlockMismatch:
      return kInternalAlarm;
    case ErrorKind::NotQuasiInvertible:
      return kMathFailure;
    default:
      return kPrecondition;
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Failure{kInternalAlarm, "sha256 failed", ""};
  std::ostringstream out;
  for (unsigned int t = 0; t < len; ++t) out << std::hex << std::setw(2) << std::setfill('0') << int(md[t]);
  return out.str();
}

struct Outcome {
  std::string status;  // pass, fail, skip
  std::string witness;
  static Outcome pass() { return {"pass", ""}; }
  static Outcome fail(std::string w) { return {"fail", std::move(w)}; }
  static Outcome skip(std::string w) { return {"skip", std::move(w)}; }
  static Outcome of(const PredicateResult& p) { return p.holds ? pass() : fail(p.witness); }
  static Outcome of(bool holds, std::string w) { return holds ? pass() : fail(std::move(w)); }
};

struct Check {
  std::string name;
  Outcome outcome;
  double seconds = 0;
};

class Report {
 public:
  Report(std::string verb, const Options& opts) : verb_(std::move(verb)), opts_(opts) {}

  void set_input(const std::string& path, const std::string& digest) {
    input_path_ = path;
    digest_ = digest;
  }

  // Runs and records one check. Library errors inside a check become a
  // failed check; the exit code remembers the most severe one.
  template <class F>
  bool run(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const Error& e) {
      o = Outcome::fail(std::string(to_string(e.kind())) + ": " + e.what() +
                        (e.witness().empty() ? "" : " (" + e.witness() + ")"));
      error_code_ = std::max(error_code_, exit_code_for(e.kind()));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks_.push_back({name, o, secs});
    return o.status != "fail";
  }
  void record(const std::string& name, Outcome o) { checks_.push_back({name, std::move(o), 0}); }

  bool any_failed() const {
    return std::any_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.outcome.status == "fail"; });
  }
  int error_code() const { return error_code_; }

  json results = json::object();
  std::vector<std::pair<std::string, std::string>> summary;
  int exit_code = kOk;
  std::string error;
  std::string error_witness;

  void print(std::ostream& out) const {
    if (opts_.json) {
      json j;
      j["schema"] = kReportSchema;
      j["tool"] = kToolName;
      j["version"] = kToolVersion;
      j["command"] = verb_;
      if (!input_path_.empty()) j["input"] = {{"path", input_path_}, {"sha256", digest_}};
      json checks = json::array();
      for (const auto& c : checks_) {
        json e{{"name", c.name}, {"status", c.outcome.status}};
        if (!c.outcome.witness.empty()) e["witness"] = c.outcome.witness;
        if (!opts_.no_timing) e["seconds"] = c.seconds;
        checks.push_back(std::move(e));
      }
      j["checks"] = std::move(checks);
      j["results"] = results;
      j["exit_code"] = exit_code;
      if (!error.empty()) j["error"] = {{"message", error}, {"witness", error_witness}};
      out << j.dump(2) << '\n';
      return;
    }
    out << kToolName << ' ' << kToolVersion << ' ' << verb_ << '\n';
    if (!input_path_.empty()) out << "input: " << input_path_ << " sha256:" << digest_ << '\n';
    for (const auto& c : checks_) {
      out << std::left << std::setw(6) << c.outcome.status << c.name;
      if (!c.outcome.witness.empty()) out << ": " << c.outcome.witness;
      if (!opts_.no_timing) out << " (" << std::fixed << std::setprecision(3) << c.seconds << " s)";
      out << '\n';
    }
    for (const auto& [k, v] : summary) out << k << ": " << v << '\n';
    if (!error.empty()) out << "error: " << error << (error_witness.empty() ? "" : " [" + error_witness + "]") << '\n';
    out << "exit: " << exit_code << '\n';
  }

 private:
  std::string verb_;
  const Options& opts_;
  std::string input_path_, digest_;
  std::vector<Check> checks_;
  int error_code_ = kOk;
};

// ---------------------------------------------------------------------------
// Files

struct Input {
  std::string path;
  std::string text;
  std::string digest;
};

void require_readable(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Failure{kIo, "cannot read input file", path};
}

void require_writable_target(const std::string& path) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec)) throw Failure{kIo, "output directory does not exist", path};
}

Input load(const std::string& path) {
  require_readable(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIo, "cannot read input file", path};
  std::ostringstream ss;
  ss << in.rdbuf();
  Input i{path, ss.str(), ""};
  i.digest = sha256_hex(i.text);
  return i;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{kIo, "cannot write output file", path};
}

// Data goes to the -o file if given, to `out` otherwise.
void emit(const Options& opts, std::ostream& out, const std::string& text) {
  if (opts.output.empty())
    out << text;
  else
    write_text(opts.output, text);
}

PeirceRing parse_ring(const Input& in) {
  if (detect_format(in.text) != "peirce") throw Failure{kIo, "expected a ring file ('peirce' header)", in.path};
  try {
    return read_ring(in.text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotAssociative)
      throw Failure{kMathFailure, "input ring is not associative", e.witness()};
    throw Failure{kIo, e.what(), e.witness()};
  }
}

CommRelData parse_commrel(const Input& in) {
  if (detect_format(in.text) != "commrel")
    throw Failure{kIo, "expected a commutator data file ('commrel' header)", in.path};
  try {
    return read_commrel(in.text);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotAssociative)
      throw Failure{kMathFailure, "commutator maps violate the A3 rule", e.witness()};
    throw Failure{kIo, e.what(), e.witness()};
  }
}

// ---------------------------------------------------------------------------
// Shared report pieces

json group_orders(const FinAbGroup& g) { return json(g.orders()); }

json block_orders(const PeirceRing& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.rank(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r.rank(); ++j) row.push_back(group_orders(r.block(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string idx(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

CoordMode parse_mode(const std::string& m) { return m == "reduced" ? CoordMode::Reduced : CoordMode::Firm; }

void record_certificates(Report& rep, const CoordinatizationResult& res) {
  for (const auto& c : res.certificates) rep.record(c.name, Outcome::of(c.holds, c.witness));
  for (const auto& p : res.ass.patterns)
    rep.record("associativity " + p.pattern + (p.hypothesis ? " (hypothesis)" : ""), Outcome::of(p.result));
  rep.record("output idempotent", Outcome::of(res.predicates.idempotent));
  if (res.mode == CoordMode::Firm)
    rep.record("output firm", Outcome::of(res.predicates.firm));
  else
    rep.record("output reduced", Outcome::of(res.predicates.reduced));
}

// ---------------------------------------------------------------------------
// build

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s[0] == '-')
    throw Failure{kPrecondition, std::string("invalid parameter: ") + what, s};
  return v;
}

// "1|2|3|45" or "1|2,3|4" -> 0-based groups
std::vector<std::vector<std::size_t>> parse_partition(const std::string& s, std::size_t size) {
  std::vector<std::vector<std::size_t>> groups;
  std::stringstream ss(s);
  std::string part;
  std::vector<bool> used(size, false);
  while (std::getline(ss, part, '|')) {
    std::vector<std::string> items;
    if (part.find(',') != std::string::npos) {
      std::stringstream ps(part);
      std::string it;
      while (std::getline(ps, it, ',')) items.push_back(it);
    } else {
      for (char c : part) items.emplace_back(1, c);
    }
    if (items.empty()) throw Failure{kPrecondition, "invalid parameter: empty group in partition", s};
    groups.emplace_back();
    for (const auto& it : items) {
      const std::size_t v = parse_count(it, "partition entry");
      if (v < 1 || v > size || used[v - 1]) throw Failure{kPrecondition, "invalid parameter: partition", s};
      used[v - 1] = true;
      groups.back().push_back(v - 1);
    }
  }
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw Failure{kPrecondition, "invalid parameter: partition does not cover 1.." + std::to_string(size), s};
  return groups;
}

void expect_params(const std::vector<std::string>& p, std::size_t n, const char* usage) {
  if (p.size() != n) throw Failure{kPrecondition, std::string("invalid parameters, usage: build ") + usage, ""};
}

int cmd_build(const std::string& kind, const std::vector<std::string>& params, const std::string& seed_dir,
              const Options& opts, Report& rep, std::ostream& out) {
  if (!seed_dir.empty()) {
    std::error_code ec;
    fs::create_directories(seed_dir, ec);
    if (!fs::is_directory(seed_dir)) throw Failure{kIo, "cannot create corpus directory", seed_dir};
    std::vector<CorpusRing> rings = standard_corpus();
    rings.push_back({"firm_not_reduced4", firm_not_reduced_example(4)});
    rings.push_back({"reduced_not_firm4", reduced_not_firm_example(4)});
    for (const auto& c : rings) {
      const fs::path file = fs::path(seed_dir) / (c.name + ".ring");
      write_text(file.string(), write_ring(c.ring));
      rep.record("wrote " + file.filename().string(), Outcome::pass());
    }
    rep.summary.emplace_back("files", std::to_string(rings.size()));
    rep.results["files"] = rings.size();
    rep.print(out);
    return kOk;
  }

  std::string text;
  if (kind == "mat") {
    expect_params(params, 2, "mat <rank> <n>");
    const std::size_t rank = parse_count(params[0], "rank"), n = parse_count(params[1], "modulus");
    if (rank < 1 || n < 2) throw Failure{kPrecondition, "invalid parameters: need rank >= 1 and n >= 2", ""};
    text = write_ring(mat_ring(rank, FinRing::cyclic(static_cast<Coeff>(n))));
  } else if (kind == "grouped") {
    expect_params(params, 3, "grouped <size> <n> <partition>");
    const std::size_t size = parse_count(params[0], "size"), n = parse_count(params[1], "modulus");
    if (size < 1 || n < 2) throw Failure{kPrecondition, "invalid parameters: need size >= 1 and n >= 2", ""};
    const auto groups = parse_partition(params[2], size);
    text = write_ring(grouped_matrix_ring(size, FinRing::cyclic(static_cast<Coeff>(n)), groups).ring);
  } else if (kind == "morita") {
    if (params.size() == 1 && params[0] == "degenerate") {
      text = write_ring(morita_degenerate());
    } else {
      expect_params(params, 2, "morita <n> <dim> | morita degenerate");
      const std::size_t n = parse_count(params[0], "modulus"), dim = parse_count(params[1], "dim");
      if (n < 2 || dim < 1) throw Failure{kPrecondition, "invalid parameters: need n >= 2 and dim >= 1", ""};
      text = write_ring(morita_dot_product(static_cast<Coeff>(n), dim));
    }
  } else if (kind == "example") {
    expect_params(params, 2, "example firm-not-reduced|reduced-not-firm <rank>");
    const std::size_t rank = parse_count(params[1], "rank");
    if (rank < 1) throw Failure{kPrecondition, "invalid parameters: need rank >= 1", ""};
    if (params[0] == "firm-not-reduced")
      text = write_ring(firm_not_reduced_example(rank));
    else if (params[0] == "reduced-not-firm")
      text = write_ring(reduced_not_firm_example(rank));
    else
      throw Failure{kPrecondition, "invalid parameters: unknown example", params[0]};
  } else if (kind == "file") {
    expect_params(params, 1, "file <path>");
    const Input in = load(params[0]);
    rep.set_input(in.path, in.digest);
    text = detect_format(in.text) == "commrel" ? write_commrel(parse_commrel(in)) : write_ring(parse_ring(in));
  } else {
    throw Failure{kPrecondition, "invalid parameters: unknown kind (mat, grouped, morita, example, file)", kind};
  }
  emit(opts, out, text);
  if (!opts.output.empty()) {
    rep.record("build " + kind, Outcome::pass());
    rep.results["output"] = opts.output;
    rep.results["sha256"] = sha256_hex(text);
    rep.print(out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// check

void check_ring(const PeirceRing& r, Report& rep) {
  rep.results["format"] = "peirce";
  rep.results["rank"] = r.rank();
  rep.results["modulus"] = r.modulus();
  rep.results["block_orders"] = block_orders(r);
  rep.run("associative", [] { return Outcome::pass(); });
  rep.run("idempotent", [&] { return Outcome::of(check_idempotent(r)); });
  rep.run("firm", [&] { return Outcome::of(check_firm(r)); });
  rep.run("reduced", [&] { return Outcome::of(check_reduced(r)); });
}

void check_data(const CommRelData& d, Report& rep) {
  rep.results["format"] = "commrel";
  rep.results["rank"] = d.rank();
  rep.results["modulus"] = d.modulus();
  rep.run("A3 rule", [] { return Outcome::pass(); });
  rep.run("K-linear", [&] { return Outcome::of(check_K_linear(d)); });
  const bool idem = rep.run("idempotent", [&] { return Outcome::of(check_idempotent_rel(d)); });
  if (idem) {
    rep.run("firm", [&] { return Outcome::of(check_firm_rel(d)); });
    rep.run("reduced", [&] { return Outcome::of(check_reduced_rel(d)); });
  } else {
    rep.record("firm", Outcome::skip("needs idempotent data"));
    rep.record("reduced", Outcome::skip("needs idempotent data"));
  }
}

int cmd_check(const Input& in, Report& rep) {
  const std::string fmt = detect_format(in.text);
  if (fmt == "peirce")
    check_ring(parse_ring(in), rep);
  else if (fmt == "commrel")
    check_data(parse_commrel(in), rep);
  else
    throw Failure{kIo, "unrecognised file header", in.path};
  return rep.any_failed() ? kMathFailure : kOk;
}

// ---------------------------------------------------------------------------
// extract, coordinatize

int cmd_extract(const Input& in, const Options& opts, Report& rep, std::ostream& out) {
  const PeirceRing r = parse_ring(in);
  const CommRelData d = extract(r);
  emit(opts, out, write_commrel(d));
  rep.results["rank"] = d.rank();
  rep.results["modulus"] = d.modulus();
  rep.run("K-linear", [&] { return Outcome::of(check_K_linear(d)); });
  rep.run("idempotent", [&] { return Outcome::of(check_idempotent_rel(d)); });
  return kOk;
}

int cmd_coordinatize(const Input& in, const Options& opts, Report& rep, std::ostream& out) {
  const CommRelData d = parse_commrel(in);
  const CoordMode mode = parse_mode(opts.mode);
  rep.results["mode"] = to_string(mode);
  if (d.rank() < 4) throw Failure{kPrecondition, "rank >= 4 required", "rank " + std::to_string(d.rank())};
  CoordinatizationResult res;
  try {
    res = coordinatize(d, mode);
  } catch (const Error& e) {
    throw Failure{exit_code_for(e.kind()), e.what(), e.witness()};
  }
  record_certificates(rep, res);
  rep.results["block_orders"] = block_orders(res.ring);
  emit(opts, out, write_ring(res.ring));
  return res.certified() ? kOk : kInternalAlarm;
}

// ---------------------------------------------------------------------------
// roundtrip

int cmd_roundtrip(const Input& in, const Options& opts, Report& rep) {
  const PeirceRing r = parse_ring(in);
  const CoordMode mode = parse_mode(opts.mode);
  rep.results["mode"] = to_string(mode);
  rep.results["rank"] = r.rank();
  if (r.rank() < 4) throw Failure{kPrecondition, "rank >= 4 required", "rank " + std::to_string(r.rank())};

  // the input must satisfy the predicate the chosen construction rebuilds
  if (!rep.run("input idempotent", [&] { return Outcome::of(check_idempotent(r)); })) {
    rep.summary.emplace_back("isomorphic", "false");
    rep.results["isomorphic"] = false;
    return kMathFailure;
  }
  const bool pred = mode == CoordMode::Firm
                        ? rep.run("input firm", [&] { return Outcome::of(check_firm(r)); })
                        : rep.run("input reduced", [&] { return Outcome::of(check_reduced(r)); });
  if (!pred) {
    rep.summary.emplace_back("isomorphic", "false");
    rep.results["isomorphic"] = false;
    return kMathFailure;
  }

  const CommRelData d = extract(r);
  rep.run("data K-linear", [&] { return Outcome::of(check_K_linear(d)); });
  if (mode == CoordMode::Firm)
    rep.run("data firm", [&] { return Outcome::of(check_firm_rel(d)); });
  else
    rep.run("data reduced", [&] { return Outcome::of(check_reduced_rel(d)); });
  if (rep.any_failed()) {
    rep.summary.emplace_back("isomorphic", "false");
    rep.results["isomorphic"] = false;
    return std::max(rep.error_code(), static_cast<int>(kMathFailure));
  }

  CoordinatizationResult res;
  if (!rep.run("coordinatize", [&] {
        res = coordinatize(d, mode);
        return Outcome::pass();
      })) {
    rep.summary.emplace_back("isomorphic", "false");
    rep.results["isomorphic"] = false;
    return std::max(rep.error_code(), static_cast<int>(kMathFailure));
  }
  record_certificates(rep, res);

  ConnectingHom h;
  const bool ok = rep.run("connecting homomorphism", [&] {
    h = connecting_hom(d, res.ring, r);
    if (h.bijective) return Outcome::pass();
    for (std::size_t b = 0; b < h.blocks.size(); ++b)
      if (!h.block_bijective[b]) return Outcome::fail("block " + idx(b / r.rank(), b % r.rank()) + " is not bijective");
    return Outcome::fail("not bijective");
  });
  const bool iso = ok && h.bijective;
  rep.results["certified"] = res.certified();
  rep.results["isomorphic"] = iso;
  rep.results["built_block_orders"] = block_orders(res.ring);
  rep.results["input_block_orders"] = block_orders(r);
  if (!h.blocks.empty()) {
    json maps = json::array();
    for (std::size_t s = 0; s < r.rank(); ++s) {
      const AbHom& f = h.blocks[s * r.rank() + s];
      maps.push_back({{"block", idx(s, s)}, {"images", f.images()}});
    }
    rep.results["diagonal_maps"] = std::move(maps);
  }
  rep.summary.emplace_back("certified", yes_no(res.certified()));
  rep.summary.emplace_back("isomorphic", yes_no(iso));
  if (rep.error_code() != kOk) return rep.error_code();
  return iso && res.certified() && !rep.any_failed() ? kOk : kMathFailure;
}

// ---------------------------------------------------------------------------
// verify-lemmas

// The diagonal parts e_j of the identity of R, if it has one. An identity u
// satisfies u_jj x = x on row j and x u_jj = x on column j, and its
// off-diagonal parts vanish, so each e_j solves a system over R_jj alone.
std::optional<std::vector<Element>> find_unit(const PeirceRing& r) {
  const std::size_t n = r.rank();
  std::vector<Element> out;
  for (std::size_t j = 0; j < n; ++j) {
    const FinAbGroup& d = r.block(j, j);
    // (x, left) for each generator x of R_jk (left = true) and R_kj
    std::vector<std::pair<Element, std::size_t>> probes;
    std::vector<FinAbGroup> parts;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t a = 0; a < r.block(j, k).ngens(); ++a) {
        probes.emplace_back(r.block(j, k).generator(a), k);
        parts.push_back(r.block(j, k));
      }
      for (std::size_t a = 0; a < r.block(k, j).ngens(); ++a) {
        probes.emplace_back(r.block(k, j).generator(a), n + k);
        parts.push_back(r.block(k, j));
      }
    }
    const DirectSum target(std::move(parts));
    auto image = [&](const Element& e) {
      Element v = target.group().zero();
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const auto& [x, tag] = probes[p];
        target.accumulate(v, p, tag < n ? r.multiply(j, j, tag, e, x) : r.multiply(tag - n, j, j, x, e));
      }
      return v;
    };
    std::vector<Element> images;
    for (std::size_t a = 0; a < d.ngens(); ++a) images.push_back(image(d.generator(a)));
    Element want = target.group().zero();
    for (std::size_t p = 0; p < probes.size(); ++p) target.accumulate(want, p, probes[p].first);
    auto e = HomSolver(AbHom(d, target.group(), std::move(images))).preimage(want);
    if (!e) return std::nullopt;
    out.push_back(std::move(*e));
  }
  return out;
}

Outcome lemma_full_idem(const PeirceRing& r) {
  const auto unit = find_unit(r);
  if (!unit) return Outcome::skip("ring has no identity");
  const FinRing fr = r.to_fin_ring();
  bool full = true;
  for (std::size_t i = 0; i < r.rank(); ++i) full = full && is_full_idempotent(fr, r.embed(i, i, (*unit)[i]));
  const auto p = check_predicates(r);
  const bool agree = p.idempotent.holds == full && p.firm.holds == full && p.reduced.holds == full;
  return Outcome::of(agree, "full=" + yes_no(full) + " idempotent=" + yes_no(p.idempotent.holds) +
                                " firm=" + yes_no(p.firm.holds) + " reduced=" + yes_no(p.reduced.holds));
}

Outcome lemma_root_elim(const PeirceRing& r) {
  if (r.rank() < 2) return Outcome::skip("rank < 2");
  const PeirceRing c = collapse_rank(r);
  const bool idem = check_idempotent(r).holds;
  const bool firm = idem && check_firm(r).holds;
  if (idem && !check_idempotent(c).holds) return Outcome::fail("collapse is not idempotent");
  if (firm && !check_firm(c).holds) return Outcome::fail("collapse is not firm");
  return Outcome::pass();
}

Outcome lemma_morita(const PeirceRing& r) {
  if (r.rank() < 2) return Outcome::skip("rank < 2");
  const PeirceRing g = r.rank() == 2 ? r : regroup(r, {r.rank() - 1, 1});
  const FinRing corner = FinRing::create(g.block(1, 1), g.mult(1, 1, 1));
  PeirceRing m;
  try {
    m = morita_ring(corner, g.mult(0, 1, 1), g.mult(1, 1, 0), g.mult(1, 0, 1), r.modulus());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PairingNotSurjective || e.kind() == ErrorKind::ModuleNotFirm ||
        e.kind() == ErrorKind::PreconditionFailed)
      return Outcome::skip(std::string("corner context: ") + e.what());
    throw;
  }
  if (auto f = check_firm(m); !f.holds) return Outcome::fail("Morita ring is not firm: " + f.witness);
  if (check_idempotent(g).holds && check_firm(g).holds) {
    std::vector<AbHom> f(4);
    f[0] = AbHom::zero(m.block(0, 0), g.block(0, 0));
    f[1] = AbHom::identity(g.block(0, 1));
    f[2] = AbHom::identity(g.block(1, 0));
    f[3] = AbHom::zero(m.block(1, 1), g.block(1, 1));
    f = extend_from_off_diagonal(m, g, f);
    if (auto w = homomorphism_failure(m, g, f)) return Outcome::fail("comparison map: " + *w);
    if (!blockwise_bijective(f)) return Outcome::fail("Morita ring differs from the firm input");
  }
  return Outcome::pass();
}

Outcome lemma_univ_ring(const PeirceRing& r) {
  if (!check_idempotent(r).holds) return Outcome::skip("ring is not idempotent");
  const UniversalRing u = universal_ring(r);
  if (auto f = check_firm(u.ring); !f.holds) return Outcome::fail("universal ring is not firm: " + f.witness);
  if (auto w = homomorphism_failure(u.ring, r, u.canonical)) return Outcome::fail("canonical map: " + *w);
  const bool firm = check_firm(r).holds;
  if (blockwise_bijective(u.canonical) != firm) return Outcome::fail("canonical map bijectivity differs from firmness");
  if (auto red = check_reduced(reduced_quotient(r).ring); !red.holds)
    return Outcome::fail("reduced quotient is not reduced: " + red.witness);
  return Outcome::pass();
}

Outcome lemma_center_perf(const PeirceRing& r, std::uint64_t bound) {
  if (r.rank() < 3) return Outcome::skip("rank < 3");
  if (!check_idempotent(r).holds) return Outcome::skip("ring is not idempotent");
  CenterReport c;
  try {
    c = perfectness_and_center(r, bound);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BoundExceeded) return Outcome::skip("E(R) exceeds the size bound " + std::to_string(bound));
    throw;
  }
  if (!c.perfect.holds) return Outcome::fail("not perfect: " + c.perfect.witness);
  if (!c.center_trivial.holds) return Outcome::fail("central upper triangular element: " + c.center_trivial.witness);
  if (!c.act_injective.holds) return Outcome::fail("action not injective: " + c.act_injective.witness);
  return Outcome::pass();
}

Outcome lemma_gl_roots(const PeirceRing& r) {
  if (r.rank() < 3) return Outcome::skip("rank < 3");
  const CommRelData d = extract(r);
  const auto p = check_predicates(r);
  const bool idem = check_idempotent_rel(d).holds;
  if (p.idempotent.holds && !idem) return Outcome::fail("idempotent ring with non-idempotent data");
  if (!idem) return Outcome::pass();
  if (p.firm.holds && !check_firm_rel(d).holds) return Outcome::fail("firm ring with non-firm data");
  if (p.reduced.holds && !check_reduced_rel(d).holds) return Outcome::fail("reduced ring with non-reduced data");
  return Outcome::pass();
}

Outcome lemma_ass(const PeirceRing& r) {
  if (r.rank() < 4) return Outcome::skip("rank < 4");
  const LemmaAssReport a = verify_lemma_ass(r);
  for (const auto& p : a.patterns)
    if (!p.result.holds) return Outcome::fail(p.pattern + ": " + p.result.witness);
  return Outcome::of(a.consistent(), "hypotheses hold but the ring is not idempotent");
}

Outcome lemma_coordinatize(const PeirceRing& r, CoordMode mode) {
  if (r.rank() < 4) return Outcome::skip("rank < 4");
  const CommRelData d = extract(r);
  if (!check_idempotent_rel(d).holds) return Outcome::skip("data is not idempotent");
  if (mode == CoordMode::Firm && !check_firm_rel(d).holds) return Outcome::skip("data is not firm");
  if (mode == CoordMode::Reduced && !check_reduced_rel(d).holds) return Outcome::skip("data is not reduced");
  const CoordinatizationResult res = coordinatize(d, mode);
  for (const auto& c : res.certificates)
    if (!c.holds) return Outcome::fail(c.name + (c.witness.empty() ? "" : ": " + c.witness));
  return Outcome::pass();
}

int cmd_verify_lemmas(const Input& in, const Options& opts, Report& rep) {
  const PeirceRing r = parse_ring(in);
  rep.results["rank"] = r.rank();
  rep.run("full-idem", [&] { return lemma_full_idem(r); });
  rep.run("root-elim", [&] { return lemma_root_elim(r); });
  rep.run("morita", [&] { return lemma_morita(r); });
  rep.run("univ-ring", [&] { return lemma_univ_ring(r); });
  rep.run("center-perf", [&] { return lemma_center_perf(r, opts.size_bound); });
  rep.run("gl-roots", [&] { return lemma_gl_roots(r); });
  rep.run("steinberg", [&] {
    const SteinbergReport s = verify_steinberg(r);
    for (const auto* p : {&s.additive, &s.commuting, &s.commutator, &s.identity_l, &s.identity_r, &s.identity_hw})
      if (!p->holds) return Outcome::fail(p->witness);
    return Outcome::pass();
  });
  rep.run("ass", [&] { return lemma_ass(r); });
  rep.run("r-cons", [&] { return lemma_coordinatize(r, CoordMode::Firm); });
  rep.run("r-gen", [&] { return lemma_coordinatize(r, CoordMode::Reduced); });
  if (rep.error_code() != kOk) return rep.error_code();
  return rep.any_failed() ? kMathFailure : kOk;
}

}  // namespace

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rings with Peirce decompositions, their commutator data and coordinatization", kToolName};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_flag("--json", opts.json, "Print the report as JSON");
  app.add_flag("--no-timing", opts.no_timing, "Leave wall times out of the report");
  app.add_option("--size-bound", opts.size_bound, "Largest group enumerated by closure")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", opts.output, "Output file for ring or data text");
  app.add_option("--mode", opts.mode, "Coordinatization mode")->check(CLI::IsMember({"firm", "reduced"}));
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  std::string kind, seed_dir, input;
  std::vector<std::string> params;
  auto* build = app.add_subcommand("build", "Write a ring file: mat, grouped, morita, example or file");
  build->add_option("kind", kind, "mat | grouped | morita | example | file");
  build->add_option("params", params, "Parameters of the kind");
  build->add_option("--seed-corpus", seed_dir, "Write the standard corpus into this directory");
  auto* check = app.add_subcommand("check", "Predicates of a ring or commutator data file");
  auto* extract_cmd = app.add_subcommand("extract", "Commutator data of a ring file");
  auto* coord = app.add_subcommand("coordinatize", "Rebuild a ring from a commutator data file");
  auto* roundtrip = app.add_subcommand("roundtrip", "Extract, coordinatize and compare with the input ring");
  auto* lemmas = app.add_subcommand("verify-lemmas", "Run the lemma suites on a ring file");
  for (auto* sc : {check, extract_cmd, coord, roundtrip, lemmas})
    sc->add_option("input", input, "Input file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolName << ' ' << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kPrecondition;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  Report rep(verb, opts);
  // data commands print their data to stdout unless -o is given
  const bool data_verb = verb == "build" || verb == "extract" || verb == "coordinatize";
  const bool quiet = data_verb && opts.output.empty() && seed_dir.empty();
  int code = kOk;
  try {
    require_writable_target(opts.output);
    if (verb == "build") {
      if (kind.empty() && seed_dir.empty()) throw Failure{kPrecondition, "build needs a kind or --seed-corpus", ""};
      code = cmd_build(kind, params, seed_dir, opts, rep, out);
      if (!quiet) return code;  // printed its own report
    } else {
      const Input in = load(input);
      rep.set_input(in.path, in.digest);
      if (verb == "check")
        code = cmd_check(in, rep);
      else if (verb == "extract")
        code = cmd_extract(in, opts, rep, out);
      else if (verb == "coordinatize")
        code = cmd_coordinatize(in, opts, rep, out);
      else if (verb == "roundtrip")
        code = cmd_roundtrip(in, opts, rep);
      else
        code = cmd_verify_lemmas(in, opts, rep);
    }
  } catch (const Failure& f) {
    code = f.code;
    rep.error = f.message;
    rep.error_witness = f.witness;
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    rep.error = std::string(to_string(e.kind())) + ": " + e.what();
    rep.error_witness = e.witness();
  } catch (const std::exception& e) {
    code = kInternalAlarm;
    rep.error = e.what();
  }
  rep.exit_code = code;
  if (quiet) {
    if (code != kOk) {
      err << kToolName << ": " << rep.error << (rep.error_witness.empty() ? "" : " [" + rep.error_witness + "]")
          << '\n';
    }
  } else {
    rep.print(out);
  }
  return code;
}

}  // namespace peirce::cli
