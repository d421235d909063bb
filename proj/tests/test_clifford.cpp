#include <doctest.h>

#include <random>

#include "torsionlab/clifford.hpp"

using namespace torsionlab;

namespace {
ExteriorElement basis_element(const Algebra& alg, std::uint32_t word) {
  ExteriorElement x(alg);
  x.coeffs[word] = Rational(1);
  return x;
}
}  // namespace

TEST_CASE("left Clifford multiplication on the rank-one algebra") {
  Algebra alg({1, 0});
  const auto c = clifford_left(alg, GeneratorKind::Base, 1);
  // c(e^1) 1 = e^1
  auto y = c.apply(basis_element(alg, 0));
  CHECK(y.coeffs.size() == 1);
  CHECK(y.coeffs.at(1) == Rational(1));
  // c(e^1) e^1 = -1
  y = c.apply(basis_element(alg, 1));
  CHECK(y.coeffs.size() == 1);
  CHECK(y.coeffs.at(0) == Rational(-1));
  // squares to -identity
  CHECK(c * c == ExteriorOperator::identity(alg).scaled(Rational(-1)));
}

TEST_CASE("generator relations") {
  Algebra alg({2, 1});
  const auto id = ExteriorOperator::identity(alg);
  const auto c1 = clifford_left(alg, GeneratorKind::Base, 1);
  const auto c2 = clifford_left(alg, GeneratorKind::Base, 2);
  const auto h1 = clifford_right(alg, GeneratorKind::Base, 1);
  const auto hf = clifford_right(alg, GeneratorKind::Fiber, 1);
  CHECK((c1 * c2 + c2 * c1).is_zero());
  CHECK(h1 * h1 == id);
  CHECK((c1 * hf + hf * c1).is_zero());
  CHECK((c1 * h1 + h1 * c1).is_zero());
  CHECK_THROWS_AS(clifford_left(alg, GeneratorKind::Base, 3), std::invalid_argument);
  CHECK_THROWS_AS(clifford_left(alg, GeneratorKind::Fiber, 0), std::invalid_argument);
}

TEST_CASE("number operators") {
  Algebra alg({1, 2});
  const auto nm = number_operator(alg, NumberKind::Base);
  const auto ny = number_operator(alg, NumberKind::Fiber);
  const auto n = number_operator(alg, NumberKind::Total);
  CHECK(n == nm + ny);
  // word f^1 ^ f^2: N_Y eigenvalue 2, N_M eigenvalue 0
  const std::uint32_t w = (1u << alg.f_bit(1)) | (1u << alg.f_bit(2));
  CHECK(ny.entry(w, w) == Rational(2));
  CHECK(nm.entry(w, w) == Rational(0));
  // word e^1 on (2,1)
  Algebra alg21({2, 1});
  CHECK(number_operator(alg21, NumberKind::Total).entry(1, 1) == Rational(1));
}

TEST_CASE("N_M = n/2 + (1/2) sum c(e^i) hat-c(e^i), 2x2 evaluation") {
  Algebra alg({1, 0});
  const auto lhs = number_operator(alg, NumberKind::Total) -
                   ExteriorOperator::identity(alg).scaled(Rational(1, 2)) -
                   (clifford_left(alg, GeneratorKind::Base, 1) *
                    clifford_right(alg, GeneratorKind::Base, 1))
                       .scaled(Rational(1, 2));
  CHECK(lhs.is_zero());
}

TEST_CASE("supertrace of Clifford words") {
  Algebra alg({1, 2});
  CHECK(supertrace(ExteriorOperator::identity(alg)) == Rational(0));
  // full top word: (-1)^{(n+k)(n+k+1)/2} 2^{n+k} = +8 for n+k = 3
  const auto top = clifford_word_left(alg, 0b1, 0b11) * clifford_word_right(alg, 0b1, 0b11);
  CHECK(supertrace(top) == Rational(8));
  CHECK(top_supertrace_constant({1, 2}) == 8);
  CHECK(top_supertrace_constant({0, 1}) == -2);
  // proper sub-word vanishes
  const auto sub = clifford_word_left(alg, 0b1, 0) * clifford_word_right(alg, 0b1, 0);
  CHECK(supertrace(sub) == Rational(0));
}

TEST_CASE("Berezin integral basics") {
  Algebra dbl({1, 2}, true);
  CHECK(berezin_integral(basis_element(dbl, dbl.top_word())) == Rational(1));
  CHECK(berezin_integral(basis_element(dbl, 0b101)) == Rational(0));
}

TEST_CASE("supertrace equals the Berezin integral of the associated form") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const AlgebraShape shape = trial % 2 == 0 ? AlgebraShape{1, 2} : AlgebraShape{2, 2};
    std::uniform_int_distribution<int> mask_e(0, (1 << shape.n) - 1);
    std::uniform_int_distribution<int> mask_f(0, (1 << shape.k) - 1);
    std::uniform_int_distribution<int> coeff(-9, 9), nterms(2, 6);
    std::vector<CliffordTerm> terms;
    for (int i = 0, n = nterms(rng); i < n; ++i) {
      CliffordTerm t;
      t.e_set = mask_e(rng);
      t.f_set = mask_f(rng);
      t.e_hat_set = mask_e(rng);
      t.f_hat_set = mask_f(rng);
      t.coeff = Rational(coeff(rng) == 0 ? 1 : coeff(rng));
      terms.push_back(t);
    }
    const Rational lhs = supertrace(operator_from_terms(shape, terms));
    const Rational rhs =
        Rational(top_supertrace_constant(shape)) * berezin_integral(form_from_terms(shape, terms));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("parity of Clifford words") {
  Algebra alg({2, 2});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> mask(0, 3);
  for (int i = 0; i < 20; ++i) {
    const std::uint32_t ie = mask(rng), jf = mask(rng), ie2 = mask(rng), jf2 = mask(rng);
    const auto w = clifford_word_left(alg, ie, jf) * clifford_word_right(alg, ie2, jf2);
    const int expected =
        (Algebra::degree(ie) + Algebra::degree(jf) + Algebra::degree(ie2) + Algebra::degree(jf2)) & 1;
    CHECK(w.parity() == expected);
  }
}

TEST_CASE("scaled Hodge star") {
  SUBCASE("flat star on the rank-one algebra") {
    const auto star = hodge_star_scaled({1, 0}, Rational(1), Rational(1));
    CHECK(star.entry(1, 0) == Rational(1));  // *(1) = e^1
    CHECK(star.entry(0, 1) == Rational(1));  // *(e^1) = 1 under the fixed sign convention
  }
  SUBCASE("scale monomial on a base word") {
    // (n,k) = (1,2), t = 2, T = 3, word e^1: p = 1, q = 0 -> t^{-1} T^{-2} = 1/18
    Algebra alg({1, 2});
    const auto star = hodge_star_scaled({1, 2}, Rational(2), Rational(3));
    const std::uint32_t w = 1u << alg.e_bit(1);
    const std::uint32_t wc = alg.top_word() & ~w;
    CHECK(abs(star.entry(wc, w)) == Rational(1, 18));
  }
  SUBCASE("nonpositive scales rejected") {
    CHECK_THROWS_AS(hodge_star_scaled({1, 1}, Rational(0), Rational(1)), std::domain_error);
    CHECK_THROWS_AS(hodge_star_scaled({1, 1}, Rational(1), Rational(-2)), std::domain_error);
  }
  SUBCASE("scaling identities, exponent arithmetic") {
    const AlgebraShape shape{1, 2};
    Algebra alg(shape);
    const auto id = ExteriorOperator::identity(alg);
    const Rational t(7, 3), T(2, 5);
    const auto inv = hodge_star_scaled_inverse(shape, t, T);
    const auto lhs_t = inv * hodge_star_scaled_dt(shape, t, T);
    CHECK(lhs_t ==
          (number_operator(alg, NumberKind::Total).scaled(Rational(2)) - id.scaled(Rational(3)))
              .scaled(Rational(1) / t));
    const auto lhs_T = inv * hodge_star_scaled_dT(shape, t, T);
    CHECK(lhs_T ==
          (number_operator(alg, NumberKind::Fiber).scaled(Rational(2)) - id.scaled(Rational(2)))
              .scaled(Rational(1) / T));
  }
}

TEST_CASE("coordinate-list debug serialization") {
  Algebra alg({1, 1});
  const auto c = clifford_left(alg, GeneratorKind::Fiber, 1);
  const std::string text = c.to_coordinate_text();
  CHECK(text.find("f1 1 1") != std::string::npos);
  CHECK(alg.word_name(0) == "1");
  CHECK(alg.word_name(3) == "e1^f1");
}

TEST_CASE("shape limits") {
  CHECK_THROWS_AS(Algebra({10, 5}), std::invalid_argument);
  CHECK_THROWS_AS(Algebra({4, 4}, true), std::invalid_argument);
  CHECK_NOTHROW(Algebra({3, 4}, true));
}
