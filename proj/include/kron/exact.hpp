#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kron {

// Element of Q(i). Both parts are kept canonical by GMP.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
  // Accepts "a", "a/b", "a/b+c/d i", "c/d i", "i", "-i"; spaces are ignored.
  static GaussianRational parse(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational inverse() const;
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Lexicographic on (re, im); used wherever a total order is needed.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using Qi = GaussianRational;

// Dense univariate polynomial over Q(i), coefficients low degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Qi> coeffs);
  static Poly constant(const Qi& c);
  static Poly monomial(const Qi& c, int degree);
  // (t - r)
  static Poly linear_root(const Qi& r);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Qi>& coeffs() const { return c_; }
  Qi coeff(int k) const;
  const Qi& lead() const { return c_.back(); }

  Poly monic() const;
  Poly derivative() const;
  Qi eval(const Qi& x) const;
  // Multiplicity of t^k dividing this polynomial (0 for the zero polynomial).
  int low_order() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Qi& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Euclidean division; throws on division by zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  static Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Qi> c_;
};

// Homogeneous polynomial sum_j coeffs[j] mu^(d-j) lambda^j. An empty coefficient list is ZERO.
class BinaryForm {
 public:
  BinaryForm() = default;  // ZERO
  explicit BinaryForm(std::vector<Qi> coeffs);
  static BinaryForm zero() { return {}; }
  static BinaryForm one() { return BinaryForm({Qi(1)}); }
  // mu^k * homogenisation of p(lambda); p must be non-zero.
  static BinaryForm from_poly(int mu_power, const Poly& p);
  // x*mu + lambda
  static BinaryForm linear(const Qi& x);
  static BinaryForm mu();

  bool is_zero() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Qi>& coeffs() const { return c_; }

  // Exponent of mu dividing the form; the remaining factor is finite_part() homogenised.
  int mu_power() const;
  // Dehomogenisation at mu = 1.
  Poly finite_part() const;
  // Scaled so that the finite part is monic (so mu^k prod(x_i mu + lambda) has unit coefficients).
  BinaryForm normalized() const;
  bool is_constant() const { return !is_zero() && degree() == 0; }

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);  // equal degrees or ZERO
  friend BinaryForm operator*(const Qi& s, const BinaryForm& a);
  // Equality of coefficient lists (ZERO equals only ZERO).
  friend bool operator==(const BinaryForm& a, const BinaryForm& b);

  // Exact division; returns nullopt if b does not divide a.
  static std::optional<BinaryForm> divide(const BinaryForm& a, const BinaryForm& b);
  bool divides(const BinaryForm& other) const { return divide(other, *this).has_value(); }

  std::string to_string() const;

 private:
  std::vector<Qi> c_;
};

// Finite value or the point at infinity.
class Eigenvalue {
 public:
  Eigenvalue() = default;
  Eigenvalue(const Qi& x) : v_(x) {}  // NOLINT(google-explicit-constructor)
  static Eigenvalue infinity() { return Eigenvalue(std::nullopt); }
  static Eigenvalue parse(const std::string& text);  // scalar or "inf"

  bool is_infinite() const { return !v_.has_value(); }
  const Qi& value() const { return *v_; }

  // Finite values by (re, im), infinity last.
  friend std::strong_ordering operator<=>(const Eigenvalue& a, const Eigenvalue& b);
  friend bool operator==(const Eigenvalue& a, const Eigenvalue& b) { return a.v_ == b.v_; }
  std::string to_string() const;

 private:
  explicit Eigenvalue(std::optional<Qi> v) : v_(std::move(v)) {}
  std::optional<Qi> v_{Qi(0)};
};

BinaryForm form_gcd(const BinaryForm& f, const BinaryForm& g);

struct FormFactorization {
  Qi scalar{1};
  int mu_power = 0;
  std::vector<std::pair<Qi, int>> roots;  // (x, multiplicity) for the factor (x mu + lambda)
  BinaryForm residual = BinaryForm::one();  // monic, no mu factor, no root in Q(i)

  bool splits() const { return residual.degree() == 0; }
  BinaryForm product() const;
};

FormFactorization factor_form(const BinaryForm& f);

// Distinct roots of p lying in Q(i), sorted; p non-zero.
std::vector<Qi> gaussian_rational_roots(const Poly& p);

}  // namespace kron
