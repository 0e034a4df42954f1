#include <algorithm>
#include <functional>
#include <sstream>

#include "mqg/error.hpp"
#include "mqg/scalar.hpp"

namespace mqg {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NotExpandable: return "NotExpandable";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::PivotPole: return "PivotPole";
    case ErrorKind::NotASubspace: return "NotASubspace";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::RequiresCubeRoot: return "RequiresCubeRoot";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::IncompatibleStructures: return "IncompatibleStructures";
    case ErrorKind::SplitFails: return "SplitFails";
    case ErrorKind::NotIsomorphic: return "NotIsomorphic";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InputError: return "InputError";
  }
  return "Error";
}

// ---- Var

Var Var::q(int i, int j) {
  if (i < 1 || j <= i || j > 255) fail(ErrorKind::BadIndices, "q needs 1<=i<j");
  return Var(make(Kind::Q, static_cast<uint64_t>(i) << 8 | j));
}

Var Var::p(int i, int j) {
  if (i < 1 || j <= i || j > 255) fail(ErrorKind::BadIndices, "p needs 1<=i<j");
  return Var(make(Kind::P, static_cast<uint64_t>(i) << 8 | j));
}

Var Var::named(std::string_view s) {
  if (s.empty() || s.size() > 7) fail(ErrorKind::ParseError, "bad symbol name '" + std::string(s) + "'");
  uint64_t payload = 0;
  for (size_t k = 0; k < 7; ++k) {
    payload <<= 8;
    if (k < s.size()) payload |= static_cast<unsigned char>(s[k]);
  }
  return Var(make(Kind::Free, payload));
}

static bool parse_pair(std::string_view s, int& i, int& j) {
  if (!s.empty() && s[0] == '_') s.remove_prefix(1);
  if (s.size() != 2 || !isdigit(s[0]) || !isdigit(s[1])) return false;
  i = s[0] - '0';
  j = s[1] - '0';
  return true;
}

Var Var::parse(std::string_view s) {
  if (s == "a") return a();
  if (s == "h") return h();
  if (s == "eps") return eps();
  if (s == "omega") return omega();
  int i, j;
  if ((s[0] == 'q' || s[0] == 'p') && s.size() > 1 && parse_pair(s.substr(1), i, j)) {
    if (i >= j || i < 1) fail(ErrorKind::ParseError, "index pair must be increasing: " + std::string(s));
    return s[0] == 'q' ? q(i, j) : p(i, j);
  }
  for (char c : s)
    if (!isalnum(static_cast<unsigned char>(c)) && c != '_')
      fail(ErrorKind::ParseError, "bad symbol '" + std::string(s) + "'");
  if (!isalpha(static_cast<unsigned char>(s[0]))) fail(ErrorKind::ParseError, "bad symbol '" + std::string(s) + "'");
  return named(s);
}

std::pair<int, int> Var::index() const {
  uint64_t pl = key_ & ((uint64_t(1) << 56) - 1);
  return {static_cast<int>(pl >> 8), static_cast<int>(pl & 255)};
}

std::string Var::name() const {
  switch (kind()) {
    case Kind::A: return "a";
    case Kind::H: return "h";
    case Kind::Eps: return "eps";
    case Kind::Omega: return "omega";
    case Kind::Q:
    case Kind::P: {
      auto [i, j] = index();
      return std::string(kind() == Kind::Q ? "q" : "p") + std::to_string(i) + std::to_string(j);
    }
    case Kind::Free: {
      std::string out;
      for (int k = 6; k >= 0; --k) {
        char c = static_cast<char>((key_ >> (8 * k)) & 255);
        if (c) out.push_back(c);
      }
      return out;
    }
  }
  return "?";
}

// ---- Mono

int Mono::exp(Var v) const {
  for (auto& [w, e] : f)
    if (w == v) return e;
  return 0;
}

std::string Mono::str() const {
  std::string out;
  for (auto& [v, e] : f) {
    if (!out.empty()) out += "*";
    out += v.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

int mono_cmp(const Mono& x, const Mono& y) {
  if (x.deg != y.deg) return x.deg < y.deg ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < x.f.size() && j < y.f.size()) {
    const auto& a = x.f[i];
    const auto& b = y.f[j];
    if (a.first != b.first) return a.first < b.first ? 1 : -1;
    if (a.second != b.second) return a.second > b.second ? 1 : -1;
    ++i, ++j;
  }
  if (i < x.f.size()) return 1;
  if (j < y.f.size()) return -1;
  return 0;
}

Mono mono_mul(const Mono& x, const Mono& y) {
  Mono r;
  r.deg = x.deg + y.deg;
  size_t i = 0, j = 0;
  while (i < x.f.size() || j < y.f.size()) {
    if (j == y.f.size() || (i < x.f.size() && x.f[i].first < y.f[j].first)) {
      r.f.push_back(x.f[i++]);
    } else if (i == x.f.size() || y.f[j].first < x.f[i].first) {
      r.f.push_back(y.f[j++]);
    } else {
      r.f.emplace_back(x.f[i].first, x.f[i].second + y.f[j].second);
      ++i, ++j;
    }
  }
  return r;
}

bool mono_divides(const Mono& d, const Mono& m) {
  if (d.deg > m.deg) return false;
  size_t j = 0;
  for (auto& [v, e] : d.f) {
    while (j < m.f.size() && m.f[j].first < v) ++j;
    if (j == m.f.size() || m.f[j].first != v || m.f[j].second < e) return false;
  }
  return true;
}

Mono mono_div(const Mono& m, const Mono& d) {
  Mono r;
  r.deg = m.deg - d.deg;
  size_t j = 0;
  for (auto& [v, e] : m.f) {
    int sub = 0;
    if (j < d.f.size() && d.f[j].first == v) sub = d.f[j++].second;
    if (e - sub) r.f.emplace_back(v, e - sub);
  }
  return r;
}

Mono mono_min(const Mono& x, const Mono& y) {
  Mono r;
  size_t i = 0, j = 0;
  while (i < x.f.size() && j < y.f.size()) {
    if (x.f[i].first < y.f[j].first) {
      ++i;
    } else if (y.f[j].first < x.f[i].first) {
      ++j;
    } else {
      int e = std::min(x.f[i].second, y.f[j].second);
      r.f.emplace_back(x.f[i].first, e);
      r.deg += e;
      ++i, ++j;
    }
  }
  return r;
}

// ---- Poly

Poly::Poly(long c) {
  if (c) t_.push_back({Mono{}, mpq_class(c)});
}

Poly::Poly(const mpq_class& c) {
  if (sgn(c)) t_.push_back({Mono{}, c});
}

Poly Poly::var(Var v, int e) {
  Mono m;
  if (e) {
    m.f.emplace_back(v, e);
    m.deg = e;
  }
  return term(std::move(m), 1);
}

Poly Poly::term(Mono m, mpq_class c) {
  Poly p;
  if (sgn(c)) p.t_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_sorted(std::vector<Term> t) {
  Poly p;
  p.t_ = std::move(t);
  return p;
}

Poly Poly::from_terms(std::vector<Term> t) {
  std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return mono_cmp(x.m, y.m) > 0; });
  Poly p;
  for (auto& term : t) {
    if (!p.t_.empty() && p.t_.back().m == term.m) {
      p.t_.back().c += term.c;
    } else {
      if (!p.t_.empty() && sgn(p.t_.back().c) == 0) p.t_.pop_back();
      p.t_.push_back(std::move(term));
    }
  }
  if (!p.t_.empty() && sgn(p.t_.back().c) == 0) p.t_.pop_back();
  return p;
}

bool Poly::is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c == 1; }

mpq_class Poly::const_value() const { return t_.empty() ? mpq_class(0) : t_[0].c; }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

static Poly merge(const Poly& x, const Poly& y, bool subtract) {
  std::vector<Poly::Term> out;
  out.reserve(x.size() + y.size());
  auto& a = x.terms();
  auto& b = y.terms();
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = (i == a.size()) ? -1 : (j == b.size()) ? 1 : mono_cmp(a[i].m, b[j].m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j]);
      if (subtract) out.back().c = -out.back().c;
      ++j;
    } else {
      mpq_class s = subtract ? mpq_class(a[i].c - b[j].c) : mpq_class(a[i].c + b[j].c);
      if (sgn(s)) out.push_back({a[i].m, std::move(s)});
      ++i, ++j;
    }
  }
  return Poly::from_sorted(std::move(out));
}

Poly Poly::operator+(const Poly& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return merge(*this, o, false);
}

Poly Poly::operator-(const Poly& o) const {
  if (o.is_zero()) return *this;
  return merge(*this, o, true);
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (o.is_const()) return scaled(o.t_[0].c);
  if (is_const()) return o.scaled(t_[0].c);
  if (o.size() == 1) return mul_mono(o.t_[0].m).scaled(o.t_[0].c);
  if (size() == 1) return o.mul_mono(t_[0].m).scaled(t_[0].c);
  std::vector<Term> out;
  out.reserve(size() * o.size());
  for (auto& x : t_)
    for (auto& y : o.t_) out.push_back({mono_mul(x.m, y.m), x.c * y.c});
  return from_terms(std::move(out));
}

Poly Poly::scaled(const mpq_class& c) const {
  if (sgn(c) == 0) return Poly();
  Poly r = *this;
  if (c == 1) return r;
  for (auto& t : r.t_) t.c *= c;
  return r;
}

Poly Poly::mul_mono(const Mono& m) const {
  if (m.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.t_) t.m = mono_mul(t.m, m);
  return r;
}

std::optional<Poly> Poly::div_exact(const Poly& d) const {
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (is_zero()) return Poly();
  if (d.is_const()) return scaled(1 / d.t_[0].c);
  if (d.size() == 1) {
    Poly r;
    for (auto& t : t_) {
      if (!mono_divides(d.t_[0].m, t.m)) return std::nullopt;
      r.t_.push_back({mono_div(t.m, d.t_[0].m), t.c / d.t_[0].c});
    }
    return r;
  }
  if (total_degree() < d.total_degree()) return std::nullopt;
  for (auto& [v, e] : d.lead().m.f)
    if (degree_in(v) < e) return std::nullopt;
  std::vector<Term> q;
  Poly rem = *this;
  const Term& ld = d.lead();
  while (!rem.is_zero()) {
    const Term& lr = rem.lead();
    if (!mono_divides(ld.m, lr.m)) return std::nullopt;
    Term t{mono_div(lr.m, ld.m), lr.c / ld.c};
    Poly sub = d.mul_mono(t.m).scaled(t.c);
    q.push_back(std::move(t));
    rem = rem - sub;
  }
  Poly r;
  r.t_ = std::move(q);  // generated in descending order
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
  return true;
}

bool Poly::has_var(Var v) const {
  for (auto& t : t_)
    for (auto& [w, e] : t.m.f)
      if (w == v) return true;
  return false;
}

std::vector<Var> Poly::vars() const {
  std::vector<Var> out;
  for (auto& t : t_)
    for (auto& [w, e] : t.m.f) out.push_back(w);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Poly::degree_in(Var v) const {
  int d = 0;
  for (auto& t : t_) d = std::max(d, t.m.exp(v));
  return d;
}

int Poly::total_degree() const { return t_.empty() ? 0 : t_.front().m.deg; }

Mono Poly::mono_content() const {
  if (t_.empty()) return Mono{};
  Mono m = t_[0].m;
  for (size_t i = 1; i < t_.size() && !m.is_one(); ++i) m = mono_min(m, t_[i].m);
  return m;
}

std::vector<Poly> Poly::coeffs_in(Var v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (auto& t : t_) {
    int e = 0;
    Mono rest;
    rest.deg = t.m.deg;
    for (auto& fe : t.m.f) {
      if (fe.first == v) {
        e = fe.second;
        rest.deg -= e;
      } else {
        rest.f.push_back(fe);
      }
    }
    buckets[e].push_back({std::move(rest), t.c});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coeffs(Var v, const std::vector<Poly>& c) {
  std::vector<Term> out;
  for (size_t k = 0; k < c.size(); ++k) {
    Mono vk;
    if (k) {
      vk.f.emplace_back(v, static_cast<int>(k));
      vk.deg = static_cast<int>(k);
    }
    for (auto& t : c[k].terms()) out.push_back({mono_mul(t.m, vk), t.c});
  }
  return from_terms(std::move(out));
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : t_) {
    mpq_class c = t.c;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (t.m.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += t.m.str();
    }
  }
  return out;
}

size_t Poly::hash() const {
  size_t h = 1469598103934665603ull;
  auto mix = [&](size_t x) { h = (h ^ x) * 1099511628211ull; };
  for (auto& t : t_) {
    for (auto& [v, e] : t.m.f) {
      mix(std::hash<uint64_t>()(v.key()));
      mix(static_cast<size_t>(e));
    }
    mix(std::hash<std::string>()(t.c.get_str()));
  }
  return h;
}

// ---- gcd

Poly primitive_part(const Poly& p, mpq_class* unit) {
  if (p.is_zero()) {
    if (unit) *unit = 1;
    return p;
  }
  mpz_class l = 1, g = 0;
  for (auto& t : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  }
  mpq_class u(g, l);
  u.canonicalize();
  if (sgn(p.lead().c) < 0) u = -u;
  if (unit) *unit = u;
  if (u == 1) return p;
  return p.scaled(1 / u);
}

namespace {

using UPoly = std::vector<Poly>;  // coefficients in the main variable

void trim(UPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

Poly content_of(const UPoly& f) {
  Poly g;
  for (auto& c : f) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_const()) return Poly(1);
  }
  return g;
}

UPoly divide_all(const UPoly& f, const Poly& c) {
  if (c.is_one()) return f;
  UPoly r;
  r.reserve(f.size());
  for (auto& x : f) r.push_back(*x.div_exact(c));
  return r;
}

// pseudo-remainder of f by g in the main variable
UPoly prem(UPoly f, const UPoly& g) {
  const Poly& lg = g.back();
  size_t dg = g.size() - 1;
  trim(f);
  while (!f.empty() && f.size() - 1 >= dg) {
    size_t df = f.size() - 1;
    Poly lf = f.back();
    for (size_t k = 0; k < f.size(); ++k) f[k] = f[k] * lg;
    for (size_t k = 0; k <= dg; ++k) f[k + df - dg] = f[k + df - dg] - lf * g[k];
    trim(f);
  }
  return f;
}

Poly gcd_prs(const Poly& x, const Poly& y, Var v) {
  UPoly f = x.coeffs_in(v), g = y.coeffs_in(v);
  if (f.size() < g.size()) std::swap(f, g);
  Poly cf = content_of(f), cg = content_of(g);
  Poly c = gcd(cf, cg);
  f = divide_all(f, cf);
  g = divide_all(g, cg);
  while (true) {
    UPoly r = prem(f, g);
    if (r.empty()) break;
    if (r.size() == 1) {
      g = {Poly(1)};
      break;
    }
    r = divide_all(r, content_of(r));
    f = std::move(g);
    g = std::move(r);
  }
  Poly pp = g.size() == 1 ? Poly(1) : Poly::from_coeffs(v, divide_all(g, content_of(g)));
  return primitive_part(pp * c);
}

}  // namespace

namespace {

mpz_class int_content(const Poly& p) {
  mpz_class g = 0;
  for (auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  return g;
}

mpz_class max_norm(const Poly& p) {
  mpz_class m = 0;
  for (auto& t : p.terms()) {
    mpz_class a = abs(t.c.get_num());
    if (a > m) m = a;
  }
  return m;
}

Poly eval_at(const Poly& p, Var v, const mpz_class& x) {
  std::vector<Poly::Term> out;
  out.reserve(p.size());
  for (auto& t : p.terms()) {
    int e = 0;
    Mono rest;
    for (auto& f : t.m.f) {
      if (f.first == v) {
        e = f.second;
      } else {
        rest.f.push_back(f);
        rest.deg += f.second;
      }
    }
    mpz_class xe;
    mpz_pow_ui(xe.get_mpz_t(), x.get_mpz_t(), e);
    out.push_back({std::move(rest), t.c * mpq_class(xe)});
  }
  return Poly::from_terms(std::move(out));
}

// x-adic reconstruction with symmetric residues
Poly interpolate(Poly h, Var v, const mpz_class& x) {
  std::vector<Poly::Term> out;
  mpz_class half = x / 2;
  int k = 0;
  while (!h.is_zero()) {
    std::vector<Poly::Term> digit;
    for (auto& t : h.terms()) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), t.c.get_num_mpz_t(), x.get_mpz_t());
      if (r > half) r -= x;
      if (r != 0) digit.push_back({t.m, mpq_class(r)});
    }
    Poly g = Poly::from_sorted(digit);
    Mono vk;
    if (k) {
      vk.f.emplace_back(v, k);
      vk.deg = k;
    }
    for (auto& t : g.terms()) out.push_back({mono_mul(t.m, vk), t.c});
    h = (h - g).scaled(mpq_class(1) / mpq_class(x));
    ++k;
    if (k > 100000) break;
  }
  return Poly::from_terms(std::move(out));
}

bool divides(const Poly& d, const Poly& p) {
  for (Var v : d.vars())
    if (d.degree_in(v) > p.degree_in(v)) return false;
  return p.div_exact(d).has_value();
}

std::vector<Var> union_vars(const Poly& f, const Poly& g) {
  auto a = f.vars(), b = g.vars();
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// heuristic gcd of integer polynomials (evaluation at a large integer, recursive,
// then x-adic interpolation and trial division). nullopt when it gives up.
std::optional<Poly> heu_gcd(const Poly& f0, const Poly& g0, int depth) {
  if (f0.is_zero()) return g0;
  if (g0.is_zero()) return f0;
  if (depth > 12) return std::nullopt;
  mpz_class cf = int_content(f0), cg = int_content(g0), c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (f0.is_const() || g0.is_const()) return Poly(mpq_class(c));
  Poly f = f0.scaled(mpq_class(1) / mpq_class(cf));
  Poly g = g0.scaled(mpq_class(1) / mpq_class(cg));
  auto vs = union_vars(f, g);
  Var v = vs[0];
  mpz_class fn = max_norm(f), gn = max_norm(g);
  mpz_class B = 2 * std::min(fn, gn) + 29;
  mpz_class sb = sqrt(B);
  mpz_class lf = abs(f.lead().c.get_num()), lg = abs(g.lead().c.get_num());
  mpz_class sb99 = 99 * sb;
  mpz_class t1 = std::min(B, sb99);
  mpz_class t2 = 2 * std::min(mpz_class(fn / lf), mpz_class(gn / lg)) + 2;
  mpz_class x = std::max(t1, t2);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Poly ff = eval_at(f, v, x), gg = eval_at(g, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto h = heu_gcd(ff, gg, depth + 1);
      if (h) {
        Poly H = interpolate(*h, v, x);
        if (!H.is_zero()) {
          H = primitive_part(H);
          if (divides(H, f) && divides(H, g)) return H.scaled(mpq_class(c));
        }
      }
    }
    mpz_class sx = sqrt(sqrt(x));
    x = 73794 * x * sx / 27011;
  }
  return std::nullopt;
}

}  // namespace

Poly gcd(const Poly& x0, const Poly& y0) {
  if (x0.is_zero()) return primitive_part(y0);
  if (y0.is_zero()) return primitive_part(x0);
  if (x0.is_const() || y0.is_const()) return Poly(1);
  Mono mx = x0.mono_content(), my = y0.mono_content();
  Mono mg = mono_min(mx, my);
  Poly x = primitive_part(mx.is_one() ? x0 : *x0.div_exact(Poly::term(mx, 1)));
  Poly y = primitive_part(my.is_one() ? y0 : *y0.div_exact(Poly::term(my, 1)));
  Poly mpart = Poly::term(mg, 1);
  if (x.is_const() || y.is_const()) return mpart;
  if (x.size() == 1 || y.size() == 1) return mpart;
  if (x == y) return primitive_part(x * mpart);

  auto vx = x.vars(), vy = y.vars();
  // a variable present in only one argument: reduce to its content in that variable
  for (int side = 0; side < 2; ++side) {
    const Poly& p = side ? y : x;
    const Poly& o = side ? x : y;
    const auto& vp = side ? vy : vx;
    const auto& vo = side ? vx : vy;
    for (Var v : vp) {
      if (std::binary_search(vo.begin(), vo.end(), v)) continue;
      Poly g = o;
      for (auto& c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_const()) break;
      }
      return primitive_part(g * mpart);
    }
  }
  if (auto h = heu_gcd(x, y, 0)) return primitive_part(*h * mpart);
  Var best = vx[0];
  int bd = 1 << 30;
  for (Var v : vx) {
    int d = std::min(x.degree_in(v), y.degree_in(v));
    if (d < bd) {
      bd = d;
      best = v;
    }
  }
  return primitive_part(gcd_prs(x, y, best) * mpart);
}

}  // namespace mqg
