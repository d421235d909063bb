#include "torsionlab/clifford.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace torsionlab {

Rational rational_pow(const Rational& x, int e) {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (x == Rational(0)) throw std::domain_error("rational_pow: zero base with negative exponent");
    return rational_pow(Rational(x.denominator(), x.numerator()), -e);
  }
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Algebra::Algebra(AlgebraShape shape, bool doubled) : shape_(shape), doubled_(doubled) {
  if (shape.n < 0 || shape.k < 0) throw std::invalid_argument("Algebra: ranks must be nonnegative");
  const int nk = shape.n + shape.k;
  if (!doubled && nk > 14) throw std::invalid_argument("Algebra: n + k must stay <= 14");
  if (doubled && nk > 7) throw std::invalid_argument("Algebra: doubled algebra needs n + k <= 7");
  gens_ = doubled ? 2 * nk : nk;
}

int Algebra::e_bit(int i) const {
  if (i < 1 || i > shape_.n) throw std::invalid_argument("invalid base generator index");
  return i - 1;
}

int Algebra::f_bit(int i) const {
  if (i < 1 || i > shape_.k) throw std::invalid_argument("invalid fiber generator index");
  return shape_.n + i - 1;
}

int Algebra::e_hat_bit(int i) const {
  if (!doubled_) throw std::logic_error("hatted generators need the doubled algebra");
  if (i < 1 || i > shape_.n) throw std::invalid_argument("invalid base generator index");
  return shape_.n + shape_.k + i - 1;
}

int Algebra::f_hat_bit(int i) const {
  if (!doubled_) throw std::logic_error("hatted generators need the doubled algebra");
  if (i < 1 || i > shape_.k) throw std::invalid_argument("invalid fiber generator index");
  return 2 * shape_.n + shape_.k + i - 1;
}

int Algebra::degree(std::uint32_t word) { return std::popcount(word); }

std::string Algebra::word_name(std::uint32_t word) const {
  if (word == 0) return "1";
  std::ostringstream os;
  bool first = true;
  const int n = shape_.n, k = shape_.k;
  for (int b = 0; b < gens_; ++b) {
    if (!(word & (std::uint32_t{1} << b))) continue;
    if (!first) os << '^';
    first = false;
    if (b < n)
      os << 'e' << b + 1;
    else if (b < n + k)
      os << 'f' << b - n + 1;
    else if (b < 2 * n + k)
      os << "eh" << b - n - k + 1;
    else
      os << "fh" << b - 2 * n - k + 1;
  }
  return os.str();
}

ExteriorOperator ExteriorOperator::identity(const Algebra& alg) {
  ExteriorOperator id(alg);
  for (std::uint32_t w = 0; w < alg.dimension(); ++w) id.add_entry(w, w, Rational(1));
  return id;
}

void ExteriorOperator::add_entry(std::uint32_t row, std::uint32_t col, const Rational& v) {
  if (v == Rational(0)) return;
  auto& r = rows_[row];
  auto it = r.find(col);
  if (it == r.end()) {
    r.emplace(col, v);
  } else {
    it->second += v;
    if (it->second == Rational(0)) {
      r.erase(it);
      if (r.empty()) rows_.erase(row);
    }
  }
}

Rational ExteriorOperator::entry(std::uint32_t row, std::uint32_t col) const {
  auto it = rows_.find(row);
  if (it == rows_.end()) return Rational(0);
  auto jt = it->second.find(col);
  return jt == it->second.end() ? Rational(0) : jt->second;
}

ExteriorOperator ExteriorOperator::operator*(const ExteriorOperator& rhs) const {
  if (!(alg_ == rhs.alg_)) throw std::invalid_argument("operator shapes differ");
  ExteriorOperator out(alg_);
  for (const auto& [r, row] : rows_)
    for (const auto& [m, a] : row) {
      auto it = rhs.rows_.find(m);
      if (it == rhs.rows_.end()) continue;
      for (const auto& [c, b] : it->second) out.add_entry(r, c, a * b);
    }
  return out;
}

ExteriorOperator ExteriorOperator::operator+(const ExteriorOperator& rhs) const {
  if (!(alg_ == rhs.alg_)) throw std::invalid_argument("operator shapes differ");
  ExteriorOperator out = *this;
  for (const auto& [r, row] : rhs.rows_)
    for (const auto& [c, v] : row) out.add_entry(r, c, v);
  return out;
}

ExteriorOperator ExteriorOperator::operator-(const ExteriorOperator& rhs) const {
  return *this + rhs.scaled(Rational(-1));
}

ExteriorOperator ExteriorOperator::scaled(const Rational& c) const {
  ExteriorOperator out(alg_);
  if (c == Rational(0)) return out;
  for (const auto& [r, row] : rows_)
    for (const auto& [col, v] : row) out.add_entry(r, col, c * v);
  return out;
}

ExteriorElement ExteriorOperator::apply(const ExteriorElement& x) const {
  if (!(alg_ == x.algebra)) throw std::invalid_argument("operator/element shapes differ");
  ExteriorElement out(alg_);
  for (const auto& [r, row] : rows_)
    for (const auto& [c, v] : row) {
      auto it = x.coeffs.find(c);
      if (it == x.coeffs.end()) continue;
      auto& acc = out.coeffs[r];
      acc += v * it->second;
      if (acc == Rational(0)) out.coeffs.erase(r);
    }
  return out;
}

bool ExteriorOperator::is_zero() const {
  for (const auto& [r, row] : rows_)
    for (const auto& [c, v] : row)
      if (v != Rational(0)) return false;
  return true;
}

Rational ExteriorOperator::supertrace() const {
  Rational s(0);
  for (const auto& [r, row] : rows_) {
    auto it = row.find(r);
    if (it == row.end()) continue;
    s += (Algebra::degree(r) % 2 == 0) ? it->second : -it->second;
  }
  return s;
}

int ExteriorOperator::parity() const {
  int p = -1;
  for (const auto& [r, row] : rows_)
    for (const auto& [c, v] : row) {
      if (v == Rational(0)) continue;
      int shift = (Algebra::degree(r) - Algebra::degree(c)) & 1;
      if (p == -1)
        p = shift;
      else if (p != shift)
        return -1;
    }
  return p == -1 ? 0 : p;
}

Eigen::MatrixXd ExteriorOperator::to_dense() const {
  const auto d = alg_.dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& [r, row] : rows_)
    for (const auto& [c, v] : row) m(r, c) = boost::rational_cast<double>(v);
  return m;
}

std::string ExteriorOperator::to_coordinate_text() const {
  std::ostringstream os;
  for (const auto& [r, row] : rows_)
    for (const auto& [c, v] : row) {
      os << alg_.word_name(r) << ' ' << alg_.word_name(c) << ' ' << v.numerator();
      if (v.denominator() != 1) os << '/' << v.denominator();
      os << '\n';
    }
  return os.str();
}

namespace {

// Sign for moving xi^b past the factors of `word` below bit b.
int crossing_sign(std::uint32_t word, int bit) {
  const std::uint32_t below = word & ((std::uint32_t{1} << bit) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

ExteriorOperator wedge_op(const Algebra& alg, int bit) {
  ExteriorOperator op(alg);
  const std::uint32_t mask = std::uint32_t{1} << bit;
  for (std::uint32_t w = 0; w < alg.dimension(); ++w) {
    if (w & mask) continue;
    op.add_entry(w | mask, w, Rational(crossing_sign(w, bit)));
  }
  return op;
}

ExteriorOperator contract_op(const Algebra& alg, int bit) {
  ExteriorOperator op(alg);
  const std::uint32_t mask = std::uint32_t{1} << bit;
  for (std::uint32_t w = 0; w < alg.dimension(); ++w) {
    if (!(w & mask)) continue;
    op.add_entry(w & ~mask, w, Rational(crossing_sign(w, bit)));
  }
  return op;
}

int generator_bit(const Algebra& alg, GeneratorKind kind, int index, bool hatted) {
  if (hatted) return kind == GeneratorKind::Base ? alg.e_hat_bit(index) : alg.f_hat_bit(index);
  return kind == GeneratorKind::Base ? alg.e_bit(index) : alg.f_bit(index);
}

}  // namespace

ExteriorOperator clifford_left(const Algebra& alg, GeneratorKind kind, int index) {
  const int bit = generator_bit(alg, kind, index, false);
  return wedge_op(alg, bit) - contract_op(alg, bit);
}

ExteriorOperator clifford_right(const Algebra& alg, GeneratorKind kind, int index) {
  const int bit = generator_bit(alg, kind, index, alg.doubled());
  return wedge_op(alg, bit) + contract_op(alg, bit);
}

ExteriorOperator number_operator(const Algebra& alg, NumberKind kind) {
  if (alg.doubled()) throw std::logic_error("number operators are defined on the plain algebra");
  const int n = alg.shape().n, k = alg.shape().k;
  std::uint32_t mask = 0;
  if (kind == NumberKind::Total || kind == NumberKind::Base)
    for (int i = 1; i <= n; ++i) mask |= std::uint32_t{1} << alg.e_bit(i);
  if (kind == NumberKind::Total || kind == NumberKind::Fiber)
    for (int i = 1; i <= k; ++i) mask |= std::uint32_t{1} << alg.f_bit(i);
  ExteriorOperator op(alg);
  for (std::uint32_t w = 0; w < alg.dimension(); ++w)
    op.add_entry(w, w, Rational(std::popcount(w & mask)));
  return op;
}

Rational supertrace(const ExteriorOperator& op) { return op.supertrace(); }

Rational berezin_integral(const ExteriorElement& a) {
  if (!a.algebra.doubled()) throw std::invalid_argument("Berezin integral needs the doubled algebra");
  auto it = a.coeffs.find(a.algebra.top_word());
  return it == a.coeffs.end() ? Rational(0) : it->second;
}

long long top_supertrace_constant(const AlgebraShape& shape) {
  const int nk = shape.n + shape.k;
  const long long mag = 1LL << nk;
  return (nk * (nk + 1) / 2) % 2 == 0 ? mag : -mag;
}

namespace {

ExteriorOperator word_product(const Algebra& alg, std::uint32_t e_set, std::uint32_t f_set,
                              bool right_kind) {
  ExteriorOperator acc = ExteriorOperator::identity(alg);
  // descending so the ascending-ordered word multiplies left-to-right
  for (int i = alg.shape().k; i >= 1; --i)
    if (f_set & (std::uint32_t{1} << (i - 1)))
      acc = (right_kind ? clifford_right(alg, GeneratorKind::Fiber, i)
                        : clifford_left(alg, GeneratorKind::Fiber, i)) *
            acc;
  for (int i = alg.shape().n; i >= 1; --i)
    if (e_set & (std::uint32_t{1} << (i - 1)))
      acc = (right_kind ? clifford_right(alg, GeneratorKind::Base, i)
                        : clifford_left(alg, GeneratorKind::Base, i)) *
            acc;
  return acc;
}

}  // namespace

ExteriorOperator clifford_word_left(const Algebra& alg, std::uint32_t e_set, std::uint32_t f_set) {
  return word_product(alg, e_set, f_set, false);
}

ExteriorOperator clifford_word_right(const Algebra& alg, std::uint32_t e_set, std::uint32_t f_set) {
  return word_product(alg, e_set, f_set, true);
}

ExteriorOperator operator_from_terms(const AlgebraShape& shape, const std::vector<CliffordTerm>& terms) {
  Algebra alg(shape, false);
  ExteriorOperator acc(alg);
  for (const auto& t : terms) {
    auto w = clifford_word_left(alg, t.e_set, t.f_set) * clifford_word_right(alg, t.e_hat_set, t.f_hat_set);
    acc = acc + w.scaled(t.coeff);
  }
  return acc;
}

ExteriorElement form_from_terms(const AlgebraShape& shape, const std::vector<CliffordTerm>& terms) {
  Algebra alg(shape, true);
  ExteriorElement a(alg);
  const int n = shape.n, k = shape.k;
  for (const auto& t : terms) {
    // e^I f^J ehat^{I'} fhat^{J'} is already in the canonical bit order.
    std::uint32_t word = std::uint32_t(t.e_set) | (std::uint32_t(t.f_set) << n) |
                         (std::uint32_t(t.e_hat_set) << (n + k)) |
                         (std::uint32_t(t.f_hat_set) << (2 * n + k));
    auto& c = a.coeffs[word];
    c += t.coeff;
    if (c == Rational(0)) a.coeffs.erase(word);
  }
  return a;
}

namespace {

int complement_sign(std::uint32_t word, int gens) {
  // permutation sign sending (I, I^c) to (1..gens): count inversions
  int inv = 0;
  for (int i = 0; i < gens; ++i) {
    if (!(word & (std::uint32_t{1} << i))) continue;
    for (int j = 0; j < i; ++j)
      if (!(word & (std::uint32_t{1} << j))) ++inv;
  }
  return inv % 2 == 0 ? 1 : -1;
}

enum class StarMode { Value, DtDerivative, DTDerivative, Inverse };

ExteriorOperator star_impl(const AlgebraShape& shape, const Rational& t, const Rational& T,
                           StarMode mode) {
  if (t <= Rational(0) || T <= Rational(0)) throw std::domain_error("hodge star: scales must be positive");
  Algebra alg(shape, false);
  const int n = shape.n, k = shape.k;
  std::uint32_t f_mask = 0;
  for (int i = 1; i <= k; ++i) f_mask |= std::uint32_t{1} << alg.f_bit(i);
  ExteriorOperator op(alg);
  for (std::uint32_t w = 0; w < alg.dimension(); ++w) {
    const int pq = std::popcount(w);
    const int q = std::popcount(w & f_mask);
    const int a = 2 * pq - (n + k);
    const int b = 2 * q - k;
    const std::uint32_t wc = alg.top_word() & ~w;
    const Rational sign(complement_sign(w, n + k));
    switch (mode) {
      case StarMode::Value:
        op.add_entry(wc, w, sign * rational_pow(t, a) * rational_pow(T, b));
        break;
      case StarMode::DtDerivative:
        op.add_entry(wc, w, sign * Rational(a) * rational_pow(t, a - 1) * rational_pow(T, b));
        break;
      case StarMode::DTDerivative:
        op.add_entry(wc, w, sign * Rational(b) * rational_pow(t, a) * rational_pow(T, b - 1));
        break;
      case StarMode::Inverse:
        // star(w) = s t^a T^b w^c  =>  star^{-1}(w^c) = s^{-1} t^{-a} T^{-b} w
        op.add_entry(w, wc, rational_pow(t, -a) * rational_pow(T, -b) / sign);
        break;
    }
  }
  return op;
}

}  // namespace

ExteriorOperator hodge_star_scaled(const AlgebraShape& shape, const Rational& t, const Rational& T) {
  return star_impl(shape, t, T, StarMode::Value);
}

ExteriorOperator hodge_star_scaled_dt(const AlgebraShape& shape, const Rational& t, const Rational& T) {
  return star_impl(shape, t, T, StarMode::DtDerivative);
}

ExteriorOperator hodge_star_scaled_dT(const AlgebraShape& shape, const Rational& t, const Rational& T) {
  return star_impl(shape, t, T, StarMode::DTDerivative);
}

ExteriorOperator hodge_star_scaled_inverse(const AlgebraShape& shape, const Rational& t, const Rational& T) {
  return star_impl(shape, t, T, StarMode::Inverse);
}

}  // namespace torsionlab
