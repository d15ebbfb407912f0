#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rado/error.hpp>
#include <rado/json_io.hpp>
#include <rado/regularity.hpp>

using namespace rado;
using nlohmann::json;

TEST_CASE("ring descriptors round-trip") {
  std::vector<Ring> rings = {
      Ring::integers(),
      Ring::rationals(),
      Ring::prime_field(5),
      Ring::mod_ring(4),
      Ring::poly(Ring::integers()),
      Ring::poly(Ring::poly(Ring::integers())),
      Ring::poly(Ring::prime_field(3)),
      Ring::fraction_field_of(Ring::poly(Ring::prime_field(3))),
      Ring::product_mod(4, {Multiplicity::inf()}),
      Ring::product_mod(12, {Multiplicity::inf(), Multiplicity::finite(3)}),
  };
  for (const Ring& r : rings) {
    CAPTURE(ring_descriptor(r));
    CHECK(ring_from_descriptor(ring_descriptor(r)) == r);
  }
  CHECK(ring_descriptor(Ring::poly(Ring::poly(Ring::integers()))) == "Z[x][y]");
  CHECK_THROWS_AS(ring_from_descriptor("Z[y]"), Error);
  CHECK_THROWS_AS(ring_from_descriptor("bogus"), Error);
  CHECK_THROWS_AS(ring_from_descriptor("fp:abc"), Error);
}

TEST_CASE("scalar json round-trips") {
  Ring Z = Ring::integers();
  Ring Q = Ring::rationals();
  Ring F5 = Ring::prime_field(5);
  Ring Zx = Ring::poly(Z);
  Ring P = Ring::product_mod(4, {Multiplicity::inf(), Multiplicity::finite(2)});
  std::vector<Scalar> samples = {
      Scalar::from_int(Z, -7),
      Scalar::rational(mpq_class(3, 4)),
      Scalar::from_int(F5, 3),
      Scalar::poly(Zx, {Scalar::from_int(Z, 1), Scalar::from_int(Z, 0), Scalar::from_int(Z, -2)}),
      Scalar::product(P, {1, 3}),
  };
  for (const Scalar& s : samples) {
    json j = scalar_to_json(s);
    CAPTURE(j.dump());
    CHECK(scalar_from_json(s.ring(), j) == s);
  }
  CHECK(scalar_to_json(Scalar::from_int(Z, -7)) == json("-7"));
  CHECK(scalar_to_json(Scalar::rational(mpq_class(3, 4))) == json("3/4"));
  // integers accepted directly
  CHECK(scalar_from_json(Z, json(5)) == Scalar::from_int(Z, 5));
  CHECK(scalar_from_json(Q, json("7")) == Scalar::rational(7));
  CHECK(scalar_from_json(Zx, json(3)) == Scalar::poly(Zx, {Scalar::from_int(Z, 3)}));
  CHECK_THROWS_AS(scalar_from_json(Z, json("x")), Error);
  CHECK_THROWS_AS(scalar_from_json(Q, json("1/0")), Error);
}

TEST_CASE("matrix json round-trips with pointer errors") {
  Matrix A = Matrix::from_ints(Ring::integers(), {{1, 1, -3}, {0, 2, 5}});
  json j = matrix_to_json(A);
  Matrix back = matrix_from_json(j);
  CHECK(back.ring() == A.ring());
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) CHECK(back.at(r, c) == A.at(r, c));

  json ragged = {{"ring", "Z"}, {"rows", {{1, 2}, {3}}}};
  try {
    matrix_from_json(ragged);
    FAIL("expected");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/rows/1") != std::string::npos);
  }
  json nomatrix = {{"ring", "Z"}};
  try {
    matrix_from_json(nomatrix);
    FAIL("expected");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/rows") != std::string::npos);
  }
}

TEST_CASE("witness and verdict json") {
  Matrix A = Matrix::from_ints(Ring::integers(), {{1, 1, -1}});
  auto w = columns_condition(A);
  REQUIRE(w.has_value());
  Verdict v;
  v.status = Verdict::Status::PR;
  v.ring = A.ring();
  v.matrix_hash = matrix_hash(A);
  v.witness = *w;
  json j = verdict_to_json(v);
  CHECK(j["status"] == "PR-with-witness");
  CHECK(j["ring"] == "Z");
  PartitionWitness back = witness_from_json(A.ring(), j["witness"]);
  std::string why;
  CHECK(verify_witness(A, back, &why));
}

TEST_CASE("colouring json round-trips") {
  Ring Z = Ring::integers();
  std::vector<Colouring> cs = {
      Colouring::cp(Z, 5),
      Colouring::m_zxy(Ring::poly(Ring::poly(Z)), 3, MOrder::xyp),
      Colouring::m_fpx(Ring::poly(Ring::prime_field(3))),
      Colouring::residue(Z, Scalar::from_int(Z, 4)),
      Colouring::constant(Z, 2, 3),
      Colouring::devissage(2, Colouring::cp(Z, 3),
                           Colouring::constant(Ring::mod_ring(2), 0, 1)),
  };
  for (const Colouring& c : cs) {
    json j = colouring_to_json(c);
    CAPTURE(j.dump());
    Colouring back = colouring_from_json(j);
    CHECK(back.kind() == c.kind());
    CHECK(back.domain() == c.domain());
    CHECK(back.colour_count() == c.colour_count());
    for (long x : {1L, 2L, 7L, 12L, 90L})
      if (c.domain().kind() == RingKind::Integers) CHECK(back.eval_i64(x) == c.eval_i64(x));
  }
}

TEST_CASE("certificate json replays") {
  Matrix A = Matrix::from_ints(Ring::integers(), {{1, 1, -3}});
  auto cert = refute(A);
  REQUIRE(cert.has_value());
  json j = certificate_to_json(*cert);
  CHECK(j["prime"] == "5");
  RefutationCertificate back = certificate_from_json(j);
  std::string why;
  CHECK(validate_certificate(A, back, &why));
  CHECK(back.matrix_hash == cert->matrix_hash);
}

TEST_CASE("search report json") {
  Matrix A = Matrix::from_ints(Ring::integers(), {{1, 1, -1}});
  Colouring chi = Colouring::cp(Ring::integers(), 2);
  SearchWindow w = SearchWindow::integers(20, true);
  SearchReport r = run_search(A, chi, w);
  json j = search_report_to_json(r, chi);
  CHECK(j["found"] == true);
  CHECK(j["solution"].size() == 3);
  CHECK(j["colouring"]["kind"] == "cp");
  SearchWindow back = window_from_json(j["window"]);
  CHECK(back.bound == 20);
  CHECK(back.positive_only);
}

TEST_CASE("algebra json round-trips") {
  for (const FiniteAlgebra& alg : {obstruction_algebra(2), truncated_cover_algebra(3)}) {
    json j = algebra_to_json(alg);
    FiniteAlgebra back = algebra_from_json(j);
    CHECK(back.p() == alg.p());
    CHECK(back.dim() == alg.dim());
    CHECK(back.ideal_dim() == alg.ideal_dim());
    CHECK(back.module_dim() == alg.module_dim());
    HModuleReport h1 = compute_H(alg);
    HModuleReport h2 = compute_H(back);
    CHECK(h1.dim_h == h2.dim_h);
    CHECK(h1.dim_z == h2.dim_z);
  }
  json h = hmodule_report_to_json(compute_H(obstruction_algebra(2)));
  CHECK(h["dim_h"] == 2);
  CHECK(h["representative"].size() == 7);
}

TEST_CASE("product scalars accept the plain-integer diagonal shorthand") {
  Ring pm = ring_from_descriptor("prodmod:4:inf,2");
  Scalar s = scalar_from_json(pm, json(7), "");
  CHECK(s == Scalar::from_int(pm, 7));
  CHECK(s.values() == std::vector<mpz_class>{3, 3});
  Scalar t = scalar_from_json(pm, json("-1"), "");
  CHECK(t.values() == std::vector<mpz_class>{3, 3});
  Matrix A = matrix_from_json(json{{"ring", "prodmod:4:inf"}, {"rows", {{1, 1, -1}, {0, 2, 0}}}});
  CHECK(A.at(1, 1) == Scalar::from_int(A.ring(), 2));
}
