#include <cctype>

#include "mqg/error.hpp"
#include "mqg/scalar.hpp"

namespace mqg {

namespace {

bool has_omega(const Poly& p) { return p.has_var(Var::omega()); }

// omega^2 = -omega - 1, so omega^3 = 1
Poly reduce_omega(const Poly& p) {
  if (!has_omega(p)) return p;
  const Var w = Var::omega();
  std::vector<Poly::Term> out;
  for (auto& t : p.terms()) {
    int e = t.m.exp(w);
    Mono rest;
    for (auto& f : t.m.f)
      if (f.first != w) {
        rest.f.push_back(f);
        rest.deg += f.second;
      }
    switch (e % 3) {
      case 0:
        out.push_back({rest, t.c});
        break;
      case 1:
        out.push_back({mono_mul(rest, Poly::var(w).lead().m), t.c});
        break;
      case 2:
        out.push_back({mono_mul(rest, Poly::var(w).lead().m), -t.c});
        out.push_back({rest, -t.c});
        break;
    }
  }
  return Poly::from_terms(std::move(out));
}

// d0 + d1*omega  ->  d0 + d1*omega^2 = (d0 - d1) - d1*omega
Poly omega_conjugate(const Poly& p) {
  auto c = p.coeffs_in(Var::omega());
  c.resize(2);
  return (c[0] - c[1]) - c[1] * Poly::var(Var::omega());
}

}  // namespace

Scalar Scalar::frac(const Poly& n0, const Poly& d0) {
  if (d0.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  if (n0.is_zero()) return Scalar();
  Poly n = n0, d = d0;
  Poly g;
  if (has_omega(n) || has_omega(d)) {
    n = reduce_omega(n);
    d = reduce_omega(d);
    if (has_omega(d)) {
      Poly c = omega_conjugate(d);
      n = reduce_omega(n * c);
      d = reduce_omega(d * c);
    }
    if (n.is_zero()) return Scalar();
    auto parts = n.coeffs_in(Var::omega());
    g = d;
    for (auto& part : parts)
      if (!part.is_zero()) g = gcd(g, part);
  } else {
    if (d.is_const()) {
      mpq_class u = d.const_value();
      return raw(n.scaled(1 / u), Poly(1));
    }
    g = gcd(n, d);
  }
  if (!g.is_one()) {
    n = *n.div_exact(g);
    d = *d.div_exact(g);
  }
  mpq_class u;
  d = primitive_part(d, &u);
  if (u != 1) n = n.scaled(1 / u);
  return raw(std::move(n), std::move(d));
}

mpq_class Scalar::rational() const {
  if (!is_rational()) fail(ErrorKind::InvalidParams, "not a rational constant: " + str());
  return num_.const_value() / den_.const_value();
}

Scalar Scalar::operator-() const { return raw(-num_, den_); }

Scalar Scalar::operator+(const Scalar& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  bool w = has_omega(num_) || has_omega(o.num_);
  if (den_.is_one() && o.den_.is_one()) {
    Poly s = num_ + o.num_;
    return w ? frac(s, Poly(1)) : raw(std::move(s), Poly(1));
  }
  if (den_ == o.den_) return frac(num_ + o.num_, den_);
  if (den_.is_one()) return w ? frac(num_ * o.den_ + o.num_, o.den_) : raw(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return w ? frac(num_ + o.num_ * den_, den_) : raw(num_ + o.num_ * den_, den_);
  Poly g = gcd(den_, o.den_);
  Poly d1 = *den_.div_exact(g), d2 = *o.den_.div_exact(g);
  return frac(num_ * d2 + o.num_ * d1, den_ * d2);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (o.is_rational()) {
    mpq_class c = o.rational();
    return c == 1 ? *this : raw(num_.scaled(c), den_);
  }
  if (is_rational()) return o * *this;
  if (has_omega(num_) || has_omega(o.num_)) return frac(num_ * o.num_, den_ * o.den_);
  // cross-cancel: operands are already reduced
  Poly g1 = o.den_.is_one() ? Poly(1) : gcd(num_, o.den_);
  Poly g2 = den_.is_one() ? Poly(1) : gcd(o.num_, den_);
  Poly n1 = g1.is_one() ? num_ : *num_.div_exact(g1);
  Poly d2 = g1.is_one() ? o.den_ : *o.den_.div_exact(g1);
  Poly n2 = g2.is_one() ? o.num_ : *o.num_.div_exact(g2);
  Poly d1 = g2.is_one() ? den_ : *den_.div_exact(g2);
  Poly n = n1 * n2, d = d1 * d2;
  mpq_class u;
  d = primitive_part(d, &u);
  if (u != 1) n = n.scaled(1 / u);
  return raw(std::move(n), std::move(d));
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  return frac(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
  return *this * o.inv();
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

std::vector<Var> Scalar::vars() const {
  auto v = num_.vars();
  auto w = den_.vars();
  v.insert(v.end(), w.begin(), w.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string Scalar::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---- parsing

namespace {

struct Parser {
  std::string_view s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::ParseError, what + " at offset " + std::to_string(i) + " in '" + std::string(s) + "'");
  }

  Scalar expr() {
    Scalar x = term();
    while (true) {
      if (eat('+')) {
        x += term();
      } else if (eat('-')) {
        x -= term();
      } else {
        return x;
      }
    }
  }
  Scalar term() {
    Scalar x = unary();
    while (true) {
      if (eat('*')) {
        x *= unary();
      } else if (eat('/')) {
        Scalar y = unary();
        if (y.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero in '" + std::string(s) + "'");
        x /= y;
      } else {
        return x;
      }
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  long integer() {
    ws();
    bool neg = false;
    bool paren = eat('(');
    if (eat('-')) neg = true;
    ws();
    size_t st = i;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) error("expected integer exponent");
    long v = std::stol(std::string(s.substr(st, i - st)));
    if (paren && !eat(')')) error("expected )");
    return neg ? -v : v;
  }
  Scalar power() {
    Scalar x = atom();
    if (eat('^')) x = x.pow(static_cast<int>(integer()));
    return x;
  }
  Scalar atom() {
    ws();
    if (i >= s.size()) error("unexpected end");
    if (eat('(')) {
      Scalar x = expr();
      if (!eat(')')) error("expected )");
      return x;
    }
    if (isdigit(static_cast<unsigned char>(s[i]))) {
      size_t st = i;
      while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
      return Scalar(mpq_class(mpz_class(std::string(s.substr(st, i - st)))));
    }
    if (isalpha(static_cast<unsigned char>(s[i]))) {
      size_t st = i;
      while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string_view id = s.substr(st, i - st);
      // q21 means the inverse of q12
      if (id.size() == 3 && id[0] == 'q' && isdigit(id[1]) && isdigit(id[2]) && id[1] > id[2] && id[2] > '0')
        return Scalar(Var::q(id[2] - '0', id[1] - '0')).inv();
      return Scalar(Var::parse(id));
    }
    error("unexpected character");
  }
};

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  Parser p{text};
  Scalar x = p.expr();
  p.ws();
  if (p.i != text.size()) p.error("trailing input");
  return x;
}

// ---- specialization

void validate_assignment(const ParamAssignment& asg) {
  for (auto& [v, x] : asg)
    if (v.kind() == Var::Kind::Q && x.is_zero())
      fail(ErrorKind::InvalidParams, v.name() + " must be nonzero");
}

namespace {

Scalar subst_poly(const Poly& p, const ParamAssignment& asg) {
  // fast path: all substituted values rational
  Scalar acc;
  std::vector<Poly::Term> kept;
  for (auto& t : p.terms()) {
    Scalar coef(t.c);
    Mono rest;
    for (auto& [v, e] : t.m.f) {
      auto it = asg.find(v);
      if (it == asg.end()) {
        rest.f.emplace_back(v, e);
        rest.deg += e;
      } else {
        coef *= it->second.pow(e);
      }
    }
    if (coef.is_rational()) {
      kept.push_back({rest, coef.rational()});
    } else {
      acc += coef * Scalar::frac(Poly::term(rest, 1), Poly(1));
    }
  }
  return acc + Scalar::frac(Poly::from_terms(std::move(kept)), Poly(1));
}

}  // namespace

Scalar specialize(const Scalar& x, const ParamAssignment& asg) {
  validate_assignment(asg);
  Scalar n = subst_poly(x.num(), asg);
  Scalar d = subst_poly(x.den(), asg);
  if (d.is_zero()) fail(ErrorKind::DenominatorVanishes, "denominator " + x.den().str() + " vanishes");
  return n / d;
}

ParamAssignment parse_assignment(std::string_view text) {
  ParamAssignment out;
  size_t i = 0;
  while (i < text.size()) {
    size_t comma = text.find(',', i);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(i, comma - i);
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::ParseError, "expected name=value in '" + std::string(item) + "'");
    auto trim = [](std::string_view v) {
      while (!v.empty() && isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
      while (!v.empty() && isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
      return v;
    };
    out[Var::parse(trim(item.substr(0, eq)))] = Scalar::parse(trim(item.substr(eq + 1)));
    i = comma + 1;
  }
  validate_assignment(out);
  return out;
}

// ---- truncated series

TruncSeries::TruncSeries(Var v, int order) : var_(v), order_(order), c_(order + 1) {
  if (order < 0 || order > kMaxOrder) fail(ErrorKind::OrderMismatch, "series order must be 0..2");
}

TruncSeries::TruncSeries(Var v, int order, std::vector<Scalar> coeffs) : TruncSeries(v, order) {
  for (size_t k = 0; k < coeffs.size() && k <= static_cast<size_t>(order); ++k) c_[k] = std::move(coeffs[k]);
}

void TruncSeries::check(const TruncSeries& o) const {
  if (var_ != o.var_ || order_ != o.order_) fail(ErrorKind::OrderMismatch, "series variable or order differs");
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  check(o);
  TruncSeries r(var_, order_);
  for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
  check(o);
  TruncSeries r(var_, order_);
  for (int k = 0; k <= order_; ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(var_, order_);
  for (int k = 0; k <= order_; ++k) r.c_[k] = -c_[k];
  return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  check(o);
  TruncSeries r(var_, order_);
  for (int i = 0; i <= order_; ++i)
    for (int j = 0; i + j <= order_; ++j) r.c_[i + j] += c_[i] * o.c_[j];
  return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
  return var_ == o.var_ && order_ == o.order_ && c_ == o.c_;
}

TruncSeries TruncSeries::expand(const Scalar& x, Var v, int order) {
  auto nc = x.num().coeffs_in(v);
  auto dc = x.den().coeffs_in(v);
  if (dc.empty() || dc[0].is_zero())
    fail(ErrorKind::NotExpandable, "pole at " + v.name() + "=0 in " + x.str());
  auto at = [](const std::vector<Poly>& c, int k) { return k < static_cast<int>(c.size()) ? c[k] : Poly(); };
  TruncSeries r(v, order);
  Scalar d0 = Scalar::frac(dc[0], Poly(1));
  // power series division n/d
  for (int k = 0; k <= order; ++k) {
    Scalar s = Scalar::frac(at(nc, k), Poly(1));
    for (int j = 1; j <= k; ++j) s -= Scalar::frac(at(dc, j), Poly(1)) * r.c_[k - j];
    r.c_[k] = s / d0;
  }
  return r;
}

Scalar coeff_of(const Scalar& x, Var v, int k) {
  if (x.den().has_var(v)) fail(ErrorKind::NotExpandable, "denominator depends on " + v.name());
  auto c = x.num().coeffs_in(v);
  if (k < 0 || k >= static_cast<int>(c.size())) return Scalar();
  return Scalar::frac(c[k], x.den());
}

}  // namespace mqg
