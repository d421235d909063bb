#pragma once

#include <boost/rational.hpp>

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace torsionlab {

// Exact coefficients for the algebra layer; floating point enters only when
// operators are embedded into numerical pipelines.
using Rational = boost::rational<long long>;

Rational rational_pow(const Rational& x, int e);

enum class GeneratorKind { Base, Fiber };
enum class NumberKind { Total, Base, Fiber };

struct AlgebraShape {
  int n = 0;  // base rank, e-generators
  int k = 0;  // fiber rank, f-generators
};

// Basis words are bitmasks over the generators in the fixed order
// e^1..e^n, f^1..f^k (then the hatted copies when doubled). Degree is the
// popcount; signs of wedge/contraction come from counting transpositions.
class Algebra {
 public:
  Algebra(AlgebraShape shape, bool doubled = false);

  const AlgebraShape& shape() const { return shape_; }
  bool doubled() const { return doubled_; }
  int generators() const { return gens_; }
  std::uint32_t dimension() const { return std::uint32_t{1} << gens_; }

  int e_bit(int i) const;      // 1-based generator index -> bit position
  int f_bit(int i) const;
  int e_hat_bit(int i) const;  // doubled only
  int f_hat_bit(int i) const;

  std::uint32_t top_word() const { return dimension() - 1; }
  static int degree(std::uint32_t word);

  std::string word_name(std::uint32_t word) const;

  bool operator==(const Algebra& o) const {
    return shape_.n == o.shape_.n && shape_.k == o.shape_.k && doubled_ == o.doubled_;
  }

 private:
  AlgebraShape shape_;
  bool doubled_;
  int gens_;
};

// Element of the exterior algebra: word -> coefficient.
struct ExteriorElement {
  Algebra algebra;
  std::map<std::uint32_t, Rational> coeffs;

  explicit ExteriorElement(const Algebra& alg) : algebra(alg) {}
};

// Sparse exact linear map on the span of basis words.
class ExteriorOperator {
 public:
  explicit ExteriorOperator(const Algebra& alg) : alg_(alg) {}

  static ExteriorOperator identity(const Algebra& alg);

  const Algebra& algebra() const { return alg_; }

  void add_entry(std::uint32_t row, std::uint32_t col, const Rational& v);
  Rational entry(std::uint32_t row, std::uint32_t col) const;
  const std::map<std::uint32_t, std::map<std::uint32_t, Rational>>& rows() const { return rows_; }

  ExteriorOperator operator*(const ExteriorOperator& rhs) const;
  ExteriorOperator operator+(const ExteriorOperator& rhs) const;
  ExteriorOperator operator-(const ExteriorOperator& rhs) const;
  ExteriorOperator scaled(const Rational& c) const;

  ExteriorElement apply(const ExteriorElement& x) const;

  bool is_zero() const;
  bool operator==(const ExteriorOperator& rhs) const { return (*this - rhs).is_zero(); }

  // Trace weighted by (-1)^degree of each basis word.
  Rational supertrace() const;

  // Every Clifford word maps forms of fixed parity to one fixed parity; returns
  // the degree shift mod 2, or -1 if the operator mixes parities.
  int parity() const;

  Eigen::MatrixXd to_dense() const;

  // Debug serialization: one `row_word col_word coefficient` line per entry.
  std::string to_coordinate_text() const;

 private:
  Algebra alg_;
  std::map<std::uint32_t, std::map<std::uint32_t, Rational>> rows_;
};

// Left Clifford multiplication c(xi^i) = xi^i /\ - iota_{xi_i}. Squares to -Id.
ExteriorOperator clifford_left(const Algebra& alg, GeneratorKind kind, int index);

// Right Clifford multiplication. On the plain algebra: hat c(xi^i) = xi^i /\ + iota.
// On the doubled algebra it acts on the hatted copy. Squares to +Id and
// anticommutes with every clifford_left.
ExteriorOperator clifford_right(const Algebra& alg, GeneratorKind kind, int index);

// Diagonal degree-counting operator (plain algebra only).
ExteriorOperator number_operator(const Algebra& alg, NumberKind kind);

Rational supertrace(const ExteriorOperator& op);

// Coefficient of the full top word e^{1..n} f^{1..k} ehat^{1..n} fhat^{1..k}.
Rational berezin_integral(const ExteriorElement& a);

// (-1)^{(n+k)(n+k+1)/2} 2^{n+k}
long long top_supertrace_constant(const AlgebraShape& shape);

// Clifford word c(e^I f^J): product over ascending indices. Masks are 1-based
// index sets packed as bits (bit i-1 set <=> index i present).
ExteriorOperator clifford_word_left(const Algebra& alg, std::uint32_t e_set, std::uint32_t f_set);
ExteriorOperator clifford_word_right(const Algebra& alg, std::uint32_t e_set, std::uint32_t f_set);

// One term a_{I,J,I',J'} c(e^I f^J) hat-c(e^{I'} f^{J'}).
struct CliffordTerm {
  std::uint32_t e_set = 0;
  std::uint32_t f_set = 0;
  std::uint32_t e_hat_set = 0;
  std::uint32_t f_hat_set = 0;
  Rational coeff = Rational(0);
};

// The operator sum on the plain algebra Lambda*E.
ExteriorOperator operator_from_terms(const AlgebraShape& shape, const std::vector<CliffordTerm>& terms);

// The associated form a' = sum a e^I /\ f^J /\ ehat^{I'} /\ fhat^{J'} in the
// doubled algebra.
ExteriorElement form_from_terms(const AlgebraShape& shape, const std::vector<CliffordTerm>& terms);

// Hodge star of g~_{t,T}: flat star times t^{2(p+q)-(n+k)} T^{2q-k} on a word
// with p base and q fiber factors. Sign convention: *(xi^I) = sign(I, I^c) xi^{I^c}
// with sign the permutation sign sending (I, I^c) to (1..n+k).
ExteriorOperator hodge_star_scaled(const AlgebraShape& shape, const Rational& t, const Rational& T);

// Entrywise derivative of the star in the scale parameters (exponent arithmetic).
ExteriorOperator hodge_star_scaled_dt(const AlgebraShape& shape, const Rational& t, const Rational& T);
ExteriorOperator hodge_star_scaled_dT(const AlgebraShape& shape, const Rational& t, const Rational& T);
ExteriorOperator hodge_star_scaled_inverse(const AlgebraShape& shape, const Rational& t, const Rational& T);

}  // namespace torsionlab
