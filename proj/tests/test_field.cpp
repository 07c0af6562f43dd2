#include <catch2/catch_amalgamated.hpp>

#include "locparam/field.hpp"

using namespace locparam;

TEST_CASE("rational arithmetic", "[field]") {
  auto Q = Field::rationals();
  auto a = Field::from_mpq(Q, mpq_class(1, 3));
  auto b = Field::from_mpq(Q, mpq_class(2, 5));
  CHECK((a + b).str() == "11/15");
  CHECK((a * b).str() == "2/15");
  CHECK((a - a).is_zero());
  CHECK(a.inverse().str() == "3");
  CHECK(Field::from_long(Q, -4).str() == "-4");
}

TEST_CASE("prime fields", "[field]") {
  auto F7 = Field::prime(7);
  auto x = Field::from_long(F7, 3);
  CHECK(x.inverse().str() == "5");
  CHECK((x + Field::from_long(F7, 4)).is_zero());
  CHECK(x.pow(6).is_one());
  CHECK_FALSE(F7->char_zero());
  CHECK(F7->p == 7);
}

TEST_CASE("prime field extensions", "[field]") {
  auto F4 = Field::prime_ext(2, {1, 1, 1});
  auto g = Field::generator(F4);
  CHECK((g * g).str() == "a+1");
  CHECK((g * g * g).is_one());
  CHECK(F4->deg == 2);
  // every nonzero element inverts
  auto e = g + Field::one(F4);
  CHECK((e * e.inverse()).is_one());
}

TEST_CASE("cyclotomic fields and roots of unity", "[field]") {
  auto C3 = cyclotomic_field(3);
  auto w = root_of_unity(C3, 3);
  CHECK((w * w * w).is_one());
  CHECK_FALSE(w.is_one());
  CHECK((w * w + w + Field::one(C3)).is_zero());

  auto F25 = prime_field_with_root_order(5, 3);
  auto r = root_of_unity(F25, 3);
  CHECK(r.pow(3).is_one());
  CHECK_FALSE(r.is_one());
}

TEST_CASE("rational extension field", "[field]") {
  auto K = Field::rational_ext({mpq_class(-2), mpq_class(0), mpq_class(1)});
  auto s = Field::generator(K);
  CHECK((s * s).str() == "2");
  CHECK(s.inverse().str() == "1/2*a");
}

TEST_CASE("cyclotomic polynomial coefficients", "[field]") {
  auto phi12 = cyclotomic_coeffs(12);
  std::vector<long> got;
  for (auto& c : phi12) got.push_back(c.get_si());
  CHECK(got == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_coeffs(1) == std::vector<mpz_class>{-1, 1});
  CHECK(cyclotomic_coeffs(2) == std::vector<mpz_class>{1, 1});
  auto phi6 = cyclotomic_coeffs(6);
  CHECK(phi6 == std::vector<mpz_class>{1, -1, 1});
}
