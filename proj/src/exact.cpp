#include "kron/exact.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "kron/errors.hpp"

namespace kron {

// ---------------------------------------------------------------- scalars

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

namespace {

mpq_class parse_rational(const std::string& s, const std::string& whole) {
  if (s.empty()) fail(ErrorKind::Parse, "empty rational in '" + whole + "'");
  auto slash = s.find('/');
  auto parse_int = [&](const std::string& t) {
    std::string body = (!t.empty() && (t[0] == '+' || t[0] == '-')) ? t.substr(1) : t;
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      fail(ErrorKind::Parse, "malformed scalar '" + whole + "'");
    return mpz_class(t[0] == '+' ? body : t, 10);
  };
  if (slash == std::string::npos) return mpq_class(parse_int(s));
  mpz_class num = parse_int(s.substr(0, slash));
  mpz_class den = parse_int(s.substr(slash + 1));
  if (den <= 0) fail(ErrorKind::Parse, "non-positive denominator in '" + whole + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

GaussianRational GaussianRational::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty()) fail(ErrorKind::Parse, "empty scalar");
  if (s.back() != 'i') return {parse_rational(s, text), 0};
  s.pop_back();
  // split at the last sign that is not the leading one
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;)
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  mpq_class re = re_part.empty() ? mpq_class(0) : parse_rational(re_part, text);
  return {re, parse_rational(im_part, text)};
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  mpq_class a = abs(im_);
  return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + a.get_str() + " i";
}

// ---------------------------------------------------------------- univariate polynomials

Poly::Poly(std::vector<Qi> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Qi& c) { return Poly({c}); }

Poly Poly::monomial(const Qi& c, int degree) {
  std::vector<Qi> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Qi& r) { return Poly({-r, Qi(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Qi Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return Qi(0);
  return c_[static_cast<size_t>(k)];
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Qi inv = lead().inverse();
  Poly r = *this;
  for (auto& x : r.c_) x *= inv;
  return r;
}

Poly Poly::derivative() const {
  std::vector<Qi> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Qi(static_cast<long>(k)));
  return Poly(std::move(d));
}

Qi Poly::eval(const Qi& x) const {
  Qi acc;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

int Poly::low_order() const {
  int k = 0;
  while (k <= degree() && c_[static_cast<size_t>(k)].is_zero()) ++k;
  return is_zero() ? 0 : k;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Qi> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Qi> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

Poly operator*(const Qi& s, const Poly& a) {
  Poly r = a;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Qi> rem = a.c_;
  std::vector<Qi> quo(static_cast<size_t>(a.degree() - b.degree()) + 1);
  Qi inv = b.lead().inverse();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const Qi& top = rem[static_cast<size_t>(k)];
    if (top.is_zero()) continue;
    Qi f = top * inv;
    quo[static_cast<size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= f * b.c_[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Qi& c = c_[static_cast<size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty()) out += c.to_string();
    else if (c.is_one()) out += mono;
    else out += "(" + c.to_string() + ")" + mono;
  }
  return out;
}

// ---------------------------------------------------------------- binary forms

BinaryForm::BinaryForm(std::vector<Qi> coeffs) : c_(std::move(coeffs)) {
  if (std::all_of(c_.begin(), c_.end(), [](const Qi& x) { return x.is_zero(); })) c_.clear();
}

BinaryForm BinaryForm::from_poly(int mu_power, const Poly& p) {
  if (p.is_zero()) return zero();
  std::vector<Qi> v(static_cast<size_t>(mu_power + p.degree()) + 1);
  for (int j = 0; j <= p.degree(); ++j) v[static_cast<size_t>(j)] = p.coeffs()[static_cast<size_t>(j)];
  return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::linear(const Qi& x) { return BinaryForm({x, Qi(1)}); }

BinaryForm BinaryForm::mu() { return BinaryForm({Qi(1), Qi(0)}); }

bool BinaryForm::is_zero() const { return c_.empty(); }

int BinaryForm::mu_power() const {
  if (is_zero()) return 0;
  int top = degree();
  while (c_[static_cast<size_t>(top)].is_zero()) --top;
  return degree() - top;
}

Poly BinaryForm::finite_part() const { return Poly(c_); }

BinaryForm BinaryForm::normalized() const {
  if (is_zero()) return *this;
  Poly p = finite_part();
  Qi inv = p.lead().inverse();
  BinaryForm r = *this;
  for (auto& x : r.c_) x *= inv;
  return r;
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Qi> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return BinaryForm(std::move(v));
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() != b.degree()) throw std::invalid_argument("adding binary forms of different degree");
  std::vector<Qi> v = a.c_;
  for (size_t k = 0; k < v.size(); ++k) v[k] += b.c_[k];
  return BinaryForm(std::move(v));
}

BinaryForm operator*(const Qi& s, const BinaryForm& a) {
  std::vector<Qi> v = a.c_;
  for (auto& x : v) x *= s;
  return BinaryForm(std::move(v));
}

bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c_ == b.c_; }

std::optional<BinaryForm> BinaryForm::divide(const BinaryForm& a, const BinaryForm& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return zero();
  int ka = a.mu_power(), kb = b.mu_power();
  if (kb > ka) return std::nullopt;
  auto [q, r] = Poly::divmod(a.finite_part(), b.finite_part());
  if (!r.is_zero()) return std::nullopt;
  return from_poly(ka - kb, q);
}

std::string BinaryForm::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  const int d = degree();
  for (int j = 0; j <= d; ++j) {
    const Qi& c = c_[static_cast<size_t>(j)];
    if (c.is_zero()) continue;
    std::string mono;
    auto power = [](const char* v, int e) {
      return e == 0 ? std::string() : (e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e));
    };
    std::string mu = power("mu", d - j), la = power("lambda", j);
    mono = mu.empty() ? la : (la.empty() ? mu : mu + " " + la);
    if (!out.empty()) out += " + ";
    if (mono.empty()) out += c.to_string();
    else if (c.is_one()) out += mono;
    else out += "(" + c.to_string() + ") " + mono;
  }
  return out;
}

// ---------------------------------------------------------------- eigenvalues

Eigenvalue Eigenvalue::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "\xe2\x88\x9e") return infinity();
  return Eigenvalue(Qi::parse(text));
}

std::strong_ordering operator<=>(const Eigenvalue& a, const Eigenvalue& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.value() <=> b.value();
}

std::string Eigenvalue::to_string() const { return is_infinite() ? "inf" : value().to_string(); }

// ---------------------------------------------------------------- gcd and factorisation

BinaryForm form_gcd(const BinaryForm& f, const BinaryForm& g) {
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  int k = std::min(f.mu_power(), g.mu_power());
  return BinaryForm::from_poly(k, Poly::gcd(f.finite_part(), g.finite_part()));
}

namespace {

using Cld = std::complex<long double>;

Cld to_cld(const Qi& x) { return {static_cast<long double>(x.re().get_d()), static_cast<long double>(x.im().get_d())}; }

// Simultaneous (Aberth) iteration for all roots of a monic polynomial given numerically.
std::vector<Cld> approximate_roots(const std::vector<Cld>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  long double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[static_cast<size_t>(k)]));
  bound += 1;
  auto eval = [&](Cld z, Cld& dp) {
    Cld p = a[static_cast<size_t>(n)];
    dp = 0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + a[static_cast<size_t>(k)];
    }
    return p;
  };
  std::vector<Cld> z(static_cast<size_t>(n));
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < n; ++k)
    z[static_cast<size_t>(k)] = std::polar(bound * 0.5L + 0.1L, 2 * pi * k / n + 0.4L);
  for (int it = 0; it < 2000; ++it) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      Cld dp;
      Cld p = eval(z[static_cast<size_t>(k)], dp);
      if (p == Cld(0)) continue;
      Cld ratio = dp == Cld(0) ? Cld(1e-3L) : p / dp;
      Cld sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += Cld(1) / (z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)]);
      Cld w = ratio / (Cld(1) - ratio * sum);
      z[static_cast<size_t>(k)] -= w;
      worst = std::max(worst, std::abs(w) / (1 + std::abs(z[static_cast<size_t>(k)])));
    }
    if (worst < 1e-18L) break;
  }
  for (auto& r : z)
    for (int it = 0; it < 4; ++it) {
      Cld dp;
      Cld p = eval(r, dp);
      if (dp == Cld(0)) break;
      r -= p / dp;
    }
  return z;
}

}  // namespace

std::vector<Qi> gaussian_rational_roots(const Poly& p_in) {
  if (p_in.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  Poly p = Poly::divmod(p_in, Poly::gcd(p_in, p_in.derivative())).first.monic();
  std::vector<Qi> roots;
  if (p.degree() < 1) return roots;
  if (p.degree() == 1) return {-p.coeff(0)};

  // Any root x in Q(i) of a Z[i]-polynomial with leading coefficient c has c*x in Z[i].
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) {
    den = lcm(den, c.re().get_den());
    den = lcm(den, c.im().get_den());
  }
  const Cld scale(static_cast<long double>(den.get_d()), 0);

  std::vector<Cld> a;
  for (const auto& c : p.coeffs()) a.push_back(to_cld(c));
  std::vector<Cld> approx = approximate_roots(a);

  for (const Cld& z : approx) {
    Cld y = z * scale;
    if (std::abs(y) > 1e15L) continue;
    const long long yr = std::llround(static_cast<double>(y.real()));
    const long long yi = std::llround(static_cast<double>(y.imag()));
    static const int offs[5][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& o : offs) {
      Qi cand(mpq_class(mpz_class(static_cast<long>(yr + o[0])), den),
              mpq_class(mpz_class(static_cast<long>(yi + o[1])), den));
      if (std::find(roots.begin(), roots.end(), cand) != roots.end()) break;
      if (p.eval(cand).is_zero()) {
        roots.push_back(cand);
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

BinaryForm FormFactorization::product() const {
  BinaryForm f = BinaryForm({scalar});
  for (int k = 0; k < mu_power; ++k) f = f * BinaryForm::mu();
  for (const auto& [x, mult] : roots)
    for (int k = 0; k < mult; ++k) f = f * BinaryForm::linear(x);
  return f * residual;
}

FormFactorization factor_form(const BinaryForm& f) {
  if (f.is_zero()) throw std::invalid_argument("factor_form of the zero form");
  FormFactorization out;
  out.mu_power = f.mu_power();
  Poly p = f.finite_part();
  out.scalar = p.lead();
  p = p.monic();
  for (const Qi& r : gaussian_rational_roots(p)) {
    // root lambda = r of the dehomogenisation is the factor (lambda - r) = (x mu + lambda) with x = -r
    Poly lin = Poly::linear_root(r);
    int mult = 0;
    for (;;) {
      auto [q, rem] = Poly::divmod(p, lin);
      if (!rem.is_zero()) break;
      p = q;
      ++mult;
    }
    out.roots.emplace_back(-r, mult);
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.residual = BinaryForm::from_poly(0, p);
  return out;
}

}  // namespace kron
