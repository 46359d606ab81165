#include "doctest.h"

#include "peirce/corpus.hpp"
#include "peirce/error.hpp"
#include "peirce/ring_io.hpp"

#include <functional>

using namespace peirce;

namespace {

std::string parse_witness(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.witness();
  }
  FAIL("no error thrown");
  return {};
}

const char* kMat2 =
    "peirce rank=2 modulus=2\n"
    "block 1 1: 2\n"
    "block 1 2: 2\n"
    "block 2 1: 2\n"
    "block 2 2: 2\n"
    "mult 1 1 1: (1,1) -> [1]\n"
    "mult 1 1 2: (1,1) -> [1]\n"
    "mult 1 2 1: (1,1) -> [1]\n"
    "mult 1 2 2: (1,1) -> [1]\n"
    "mult 2 1 1: (1,1) -> [1]\n"
    "mult 2 1 2: (1,1) -> [1]\n"
    "mult 2 2 1: (1,1) -> [1]\n"
    "mult 2 2 2: (1,1) -> [1]\n";

}  // namespace

TEST_CASE("ring file of Mat(2, Z/2) written by hand") {
  const PeirceRing r = mat_ring(2, FinRing::cyclic(2));
  CHECK(write_ring(r) == kMat2);
  CHECK(read_ring(kMat2) == r);
  CHECK(detect_format(kMat2) == "peirce");
}

TEST_CASE("ring files round trip byte for byte") {
  std::vector<PeirceRing> rings;
  for (const auto& c : standard_corpus()) rings.push_back(c.ring);
  rings.push_back(firm_not_reduced_example(3));
  rings.push_back(reduced_not_firm_example(3));
  const FinRing z2 = FinRing::cyclic(2);
  const FinRing t4 = FinRing::upper_triangular(3, z2);
  // zero blocks below the diagonal produce empty block lines
  std::vector<Element> idems;
  for (std::size_t g : {0u, 3u, 5u}) {
    Element e = t4.additive().zero();
    e[g] = 1;
    idems.push_back(e);
  }
  rings.push_back(peirce_from_idempotents(t4, idems, 2));
  for (const PeirceRing& r : rings) {
    const std::string text = write_ring(r);
    const PeirceRing back = read_ring(text);
    CHECK(back == r);
    CHECK(write_ring(back) == text);
  }
  CHECK(write_ring(rings.back()).find("block 2 1:\n") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text = "# a ring\n\n";
  text += kMat2;
  text.insert(text.find("block 1 2"), "   # indented comment\n");
  CHECK(read_ring(text) == mat_ring(2, FinRing::cyclic(2)));
}

TEST_CASE("ring parse errors name the line") {
  CHECK(parse_witness([] { read_ring(""); }) == "line 1: missing 'peirce' header");
  CHECK(parse_witness([] { read_ring("ring rank=2 modulus=2\n"); }) == "line 1: expected 'peirce' header");
  CHECK(parse_witness([] { read_ring("peirce rank=0 modulus=2\n"); }) == "line 1: rank must be between 1 and 64");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 2\nmult 1 1 1: (1,2) -> [1]\n"); }) ==
        "line 3: right generator 2 out of range 1..1");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 2\nmult 1 1 1: (1,1) -> [1,0]\n"); }) ==
        "line 3: value has 2 entries, expected 1");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 4\n"); }) ==
        "line 2: exponent does not divide the modulus");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 1\n"); }) ==
        "line 2: cyclic orders must be at least 2");
  CHECK(parse_witness([] { read_ring("peirce rank=2 modulus=2\nblock 1 1: 2\nblock 2 1: 2\n"); }) ==
        "line 3: block lines out of order");
  CHECK(parse_witness([] { read_ring("peirce rank=2 modulus=2\nblock 1 1: 2\n"); }) == "line 2: missing block 1 2");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 2\nmult 1 1 1: (1,1) -> [0]\n"); }) ==
        "line 3: zero products are omitted");
  CHECK(parse_witness([] {
          read_ring("peirce rank=1 modulus=2\nblock 1 1: 2\nmult 1 1 1: (1,1) -> [1]\nmult 1 1 1: (1,1) -> [1]\n");
        }) == "line 4: mult lines out of order or duplicated");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 2\nfoo\n"); }) ==
        "line 3: unknown keyword 'foo'");
  CHECK(parse_witness([] { read_ring("peirce rank=1 modulus=2\nblock 1 1: 2\nmult 1 1 1: (1,1) -> [3]\n"); }) ==
        "line 3: value entry out of range");
  // generators of order 2 cannot multiply to an element of order 4
  const std::string w = parse_witness([] {
    read_ring("peirce rank=1 modulus=4\nblock 1 1: 4,2\nmult 1 1 1: (2,2) -> [1,0]\n");
  });
  CHECK(w.rfind("mult 1 1 1: ", 0) == 0);
}

TEST_CASE("non-associative ring files are rejected") {
  // e_11 e_11 = 0 while e_11 e_12 = e_12
  std::string bad = kMat2;
  bad.erase(bad.find("mult 1 1 1"), std::string("mult 1 1 1: (1,1) -> [1]\n").size());
  try {
    read_ring(bad);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAssociative);
  }
}

TEST_CASE("commrel files") {
  const CommRelData d = extract(mat_ring(4, FinRing::cyclic(3)));
  const std::string text = write_commrel(d);
  CHECK(text.rfind("commrel rank=4 modulus=3\nmodule 1 2: 3\n", 0) == 0);
  CHECK(text.find("cmap 1 2 3: (1,1) -> [1]\n") != std::string::npos);
  CHECK(detect_format(text) == "commrel");
  const CommRelData back = read_commrel(text);
  CHECK(back == d);
  CHECK(write_commrel(back) == text);
  const CommRelData g = extract(grouped_matrix_ring(5, FinRing::cyclic(2), {{0}, {1}, {2}, {3, 4}}).ring);
  CHECK(read_commrel(write_commrel(g)) == g);

  CHECK(parse_witness([] { read_commrel("commrel rank=2 modulus=2\nmodule 1 1: 2\n"); }) ==
        "line 2: no module on the diagonal");
  CHECK(parse_witness([] {
          read_commrel("commrel rank=3 modulus=2\nmodule 1 2: 2\nmodule 1 3: 2\nmodule 2 1: 2\nmodule 2 3: 2\n"
                       "module 3 1: 2\nmodule 3 2: 2\ncmap 1 2 1: (1,1) -> [1]\n");
        }) == "line 8: cmap needs distinct indices");

  // one corrupted cmap breaks the A3 rule
  std::string bad = write_commrel(extract(mat_ring(4, FinRing::cyclic(2))));
  bad.erase(bad.find("cmap 1 2 3"), std::string("cmap 1 2 3: (1,1) -> [1]\n").size());
  try {
    read_commrel(bad);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAssociative);
  }
}
