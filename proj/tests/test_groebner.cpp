#include <catch2/catch_amalgamated.hpp>

#include "locparam/groebner.hpp"

using namespace locparam;

TEST_CASE("twisted cubic", "[groebner]") {
  auto Q = Field::rationals();
  auto R = make_ring(Q, {"z", "y", "x"}, MonomialOrder::lex());
  auto z = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1),
       x = Polynomial::variable(R, 2);
  Ideal I(R, {y - x * x, z - x * x * x});
  CHECK(I.dimension() == 1);
  CHECK(I.contains(z * z - y * y * y));
  CHECK_FALSE(I.contains(z - y));

  Ideal E = eliminate(I, {0, 1});
  REQUIRE_FALSE(E.gens().empty());
  CHECK(E.contains(z * z - y * y * y));
  for (auto& g : E.gens()) CHECK(I.contains(g));
}

TEST_CASE("dimension conventions", "[groebner]") {
  auto Q = Field::rationals();
  auto R = make_ring(Q, {"z", "y", "x"});
  Ideal U(R, {Polynomial::constant(R, 2)});
  CHECK(U.dimension() == -1);
  CHECK(U.is_unit_ideal());
  Ideal Z(R, {});
  CHECK(Z.dimension() == 3);
}

TEST_CASE("radical membership", "[groebner]") {
  auto Q = Field::rationals();
  auto R = make_ring(Q, {"x"});
  auto x = Polynomial::variable(R, 0);
  Ideal J(R, {x * x});
  CHECK(radical_member(J, x));
  CHECK_FALSE(radical_member(J, x + Polynomial::constant(R, 1)));
}

TEST_CASE("ideal intersection", "[groebner]") {
  auto Q = Field::rationals();
  auto R = make_ring(Q, {"x", "y"});
  auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
  Ideal A(R, {x}), B(R, {y});
  Ideal AB = intersect(A, B);
  CHECK(AB.contains(x * y));
  CHECK_FALSE(AB.contains(x));
  CHECK_FALSE(AB.contains(y));
}

TEST_CASE("groebner over finite fields", "[groebner]") {
  auto F5 = Field::prime(5);
  auto R5 = make_ring(F5, {"x", "y"});
  auto x = Polynomial::variable(R5, 0), y = Polynomial::variable(R5, 1);
  Ideal I(R5, {x * x + y, x * y + Polynomial::constant(R5, 3)});
  CHECK(I.dimension() == 0);
  // x^3 = -xy = -3 = 2, so x^3 - 2 lies in the ideal
  CHECK(I.contains(x * x * x - Polynomial::constant(R5, 2)));
}

TEST_CASE("normal form is linear and idempotent", "[groebner]") {
  auto Q = Field::rationals();
  auto R = make_ring(Q, {"x", "y"});
  auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
  Ideal I(R, {x * x - y});
  auto gb = I.groebner();
  auto f = x * x * x + y * x + Polynomial::constant(R, 7);
  auto n1 = normal_form(f, gb, R);
  auto n2 = normal_form(n1, gb, R);
  CHECK(n1 == n2);
  auto g = y * y - x;
  auto sum = normal_form(f + g, gb, R);
  CHECK(sum == n1 + normal_form(g, gb, R));
}
