#include "mqg/quantum.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "mqg/error.hpp"
#include "mqg/linalg.hpp"

namespace mqg {

// ---- QData

QData QData::symbolic(int n) {
  QData d;
  d.n = n;
  d.a = Scalar(Var::a());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) d.qs[{i, j}] = Scalar(Var::q(i, j));
  return d;
}

void QData::validate() const {
  if (n < 1 || n > 9) fail(ErrorKind::InvalidParams, "dimension must be between 1 and 9");
  if (a.is_zero()) fail(ErrorKind::InvalidParams, "a = 0");
  if ((a + Scalar(1)).is_zero()) fail(ErrorKind::InvalidParams, "a = -1");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      auto it = qs.find({i, j});
      if (it == qs.end()) fail(ErrorKind::InvalidParams, "missing q" + std::to_string(i) + std::to_string(j));
      if (it->second.is_zero()) fail(ErrorKind::InvalidParams, "q" + std::to_string(i) + std::to_string(j) + " = 0");
    }
}

Scalar QData::q(int i, int j) const {
  if (i == j) return Scalar(1);
  if (i < j) return qs.at({i, j});
  return qs.at({j, i}).inv();
}

Scalar QData::qhat(int i, int j) const { return i < j ? q(i, j) : q(i, j) / a; }

Scalar QData::r(int i, int j) const {
  if (i == j) return Scalar(1);
  return i < j ? a * q(i, j) : q(i, j) / a;
}

QData QData::specialized(const ParamAssignment& asg) const {
  QData d = *this;
  d.a = specialize(a, asg);
  for (auto& [k, v] : d.qs) v = specialize(v, asg);
  return d;
}

std::string QData::digest() const {
  std::string s = "n=" + std::to_string(n) + " a=" + a.str();
  for (auto& [k, v] : qs) s += " q" + std::to_string(k.first) + std::to_string(k.second) + "=" + v.str();
  return s;
}

// ---- words and NCPoly

std::string letter_name(Letter l) {
  switch (letter_gen(l)) {
    case Gen::X:
      return "x" + std::to_string(letter_i(l));
    case Gen::Theta:
      return "th" + std::to_string(letter_i(l));
    case Gen::T:
      return "T" + std::to_string(letter_i(l)) + std::to_string(letter_j(l));
  }
  return "?";
}

bool WordLess::operator()(const Word& x, const Word& y) const {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

NCPoly NCPoly::word(Word w, const Scalar& c) {
  NCPoly p;
  p.add(w, c);
  return p;
}

void NCPoly::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  NCPoly r = *this;
  for (auto& [w, c] : o.t_) r.add(w, c);
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
  NCPoly r = *this;
  for (auto& [w, c] : o.t_) r.add(w, -c);
  return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  NCPoly r;
  for (auto& [w1, c1] : t_)
    for (auto& [w2, c2] : o.t_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      r.add(w, c1 * c2);
    }
  return r;
}

NCPoly NCPoly::scaled(const Scalar& s) const {
  NCPoly r;
  if (s.is_zero()) return r;
  for (auto& [w, c] : t_) r.t_.emplace(w, c * s);
  return r;
}

NCPoly NCPoly::specialized(const ParamAssignment& asg) const {
  NCPoly r;
  for (auto& [w, c] : t_) r.add(w, specialize(c, asg));
  return r;
}

namespace {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) s += "*";
    s += letter_name(w[k]);
  }
  return s;
}

bool compound(const std::string& s) {
  for (size_t k = 1; k < s.size(); ++k)
    if (s[k] == '+' || s[k] == '-' || s[k] == '/' || s[k] == ' ') return true;
  return false;
}

}  // namespace

std::string NCPoly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const Scalar& c = it->second;
    bool neg = false;
    Scalar mag = c;
    // a leading minus on a single-term coefficient is pulled out
    if (c.den().is_one() && c.num().size() == 1 && sgn(c.num().lead().c) < 0) {
      neg = true;
      mag = -c;
    }
    std::string w = word_str(it->first);
    std::string term;
    if (mag.is_one()) {
      term = w;
    } else {
      std::string cs = mag.str();
      if (compound(cs)) cs = "(" + cs + ")";
      term = it->first.empty() ? cs : cs + "*" + w;
    }
    if (first) {
      out = (neg ? "-" : "") + term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

NCPoly NCPoly::parse(std::string_view text) {
  std::string s(text);
  // split at top-level + and - that are binary operators
  std::vector<std::pair<int, std::string>> terms;
  int depth = 0, sign = 1;
  std::string cur;
  auto flush = [&]() {
    bool blank = std::all_of(cur.begin(), cur.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
    if (!blank) terms.emplace_back(sign, cur);
    cur.clear();
  };
  char prev = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-') && prev != '^' && prev != '*' && prev != '/' && prev != '(') {
      bool blank = std::all_of(cur.begin(), cur.end(), [](char c2) { return std::isspace(static_cast<unsigned char>(c2)); });
      if (!blank) {
        flush();
        sign = ch == '-' ? -1 : 1;
      } else {
        sign *= ch == '-' ? -1 : 1;
      }
    } else {
      cur += ch;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) prev = ch;
  }
  flush();
  if (depth != 0) fail(ErrorKind::ParseError, "unbalanced parentheses");
  NCPoly out;
  for (auto& [sg, t] : terms) {
    Word w;
    Scalar coef(sg);
    size_t pos = 0;
    depth = 0;
    std::string factor;
    auto take = [&](const std::string& f0) {
      std::string f;
      for (char ch : f0)
        if (!std::isspace(static_cast<unsigned char>(ch))) f += ch;
      if (f.empty()) fail(ErrorKind::ParseError, "empty factor");
      auto digits = [&](size_t from) {
        for (size_t k = from; k < f.size(); ++k)
          if (!std::isdigit(static_cast<unsigned char>(f[k]))) return false;
        return f.size() > from;
      };
      if (f[0] == 'x' && f.size() == 2 && digits(1)) {
        w.push_back(lx(f[1] - '0'));
      } else if (f.rfind("th", 0) == 0 && f.size() == 3 && digits(2)) {
        w.push_back(lth(f[2] - '0'));
      } else if (f[0] == 'T' && f.size() == 3 && digits(1)) {
        w.push_back(lT(f[1] - '0', f[2] - '0'));
      } else {
        if (!w.empty()) fail(ErrorKind::ParseError, "coefficient after generators in '" + t + "'");
        coef *= Scalar::parse(f);
      }
    };
    for (; pos < t.size(); ++pos) {
      char ch = t[pos];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == '*' && depth == 0) {
        take(factor);
        factor.clear();
      } else {
        factor += ch;
      }
    }
    take(factor);
    out.add(w, coef);
  }
  return out;
}

// ---- standard P

LinOp standard_P(const QData& qd) {
  qd.validate();
  int n = qd.n;
  LinOp p(n, 2);
  for (int i = 1; i <= n; ++i) p.set({i, i}, {i, i}, Scalar(1));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      // unknowns: u0 = P^{ij}_{ij}, u1 = P^{ij}_{ji}, u2 = P^{ji}_{ij}, u3 = P^{ji}_{ji}.
      // Row r of xx(P-1) on the block is (P^r_{ij} - d) x^ix^j + (P^r_{ji} - d') x^jx^i; with
      // x^jx^i = q^{ji} x^ix^j it vanishes iff (P^r_{ij} - d) + q^{ji} (P^r_{ji} - d') = 0.
      // Row r of tt(P+a), with t^jt^i = -r^{ji} t^it^j: (P^r_{ij} + a d) - r^{ji} (P^r_{ji} + a d') = 0.
      ExactMatrix m(4, 4);
      Vec rhs(4);
      Scalar qji = qd.q(j, i), rji = qd.r(j, i);
      for (int row = 0; row < 2; ++row) {
        int c0 = 2 * row;
        Scalar d = row == 0 ? Scalar(1) : Scalar(0);   // delta(r, ij)
        Scalar dp = row == 1 ? Scalar(1) : Scalar(0);  // delta(r, ji)
        m.set(2 * row, c0, Scalar(1));
        m.set(2 * row, c0 + 1, qji);
        rhs[2 * row] = d + qji * dp;
        m.set(2 * row + 1, c0, Scalar(1));
        m.set(2 * row + 1, c0 + 1, -rji);
        rhs[2 * row + 1] = -qd.a * d + rji * qd.a * dp;
      }
      if (rank(m) != 4) fail(ErrorKind::InvalidParams, "block constraints are degenerate");
      auto u = solve(m, rhs);
      if (!u) fail(ErrorKind::InvalidParams, "block constraints are inconsistent");
      p.set({i, j}, {i, j}, (*u)[0]);
      p.set({i, j}, {j, i}, (*u)[1]);
      p.set({j, i}, {i, j}, (*u)[2]);
      p.set({j, i}, {j, i}, (*u)[3]);
    }
  }
  auto h = hecke_check(p, qd.a);
  if (!h.pass) fail(ErrorKind::InvalidParams, "constructed block violates the Hecke condition");
  return p;
}

CheckReport hecke_check(const LinOp& p, const Scalar& a) {
  if (p.legs() != 2) fail(ErrorKind::ShapeMismatch, "hecke_check needs an operator on V(x)V");
  LinOp one = LinOp::identity(p.dim_v(), 2);
  LinOp d = compose(p - one, p + one.scaled(a));
  CheckReport r;
  r.check = "hecke";
  r.pass = d.is_zero();
  if (!r.pass) r.defect = d;
  r.context = "n=" + std::to_string(p.dim_v()) + " a=" + a.str();
  return r;
}

LinOp braid_defect(const LinOp& p) {
  if (p.legs() != 2) fail(ErrorKind::ShapeMismatch, "braid_defect needs an operator on V(x)V");
  LinOp p12 = lift(p, 1, 3), p23 = lift(p, 2, 3);
  return compose(compose(p12, p23), p12) - compose(compose(p23, p12), p23);
}

CheckReport ideal_stability_check(const LinOp& p, const Scalar& a) {
  LinOp b = braid_defect(p);
  LinOp p12 = lift(p, 1, 3);
  LinOp one = LinOp::identity(p.dim_v(), 3);
  LinOp c1 = compose(b, p12 - one);
  LinOp c2 = compose(b, p12 + one.scaled(a));
  CheckReport r;
  r.check = "ideal_stability";
  r.pass = c1.is_zero() && c2.is_zero();
  if (!c1.is_zero()) {
    r.defect = c1;
  } else if (!c2.is_zero()) {
    r.defect = c2;
  }
  r.details = {{"plane", c1.is_zero() ? "pass" : "fail"}, {"antiplane", c2.is_zero() ? "pass" : "fail"}};
  r.context = "n=" + std::to_string(p.dim_v()) + " a=" + a.str();
  return r;
}

// ---- FRT

std::vector<NCPoly> canonical_relations(const std::vector<NCPoly>& rels) {
  std::map<Word, size_t, WordLess> seen;
  for (auto& r : rels)
    for (auto& [w, c] : r.terms()) seen.emplace(w, 0);
  // column 0 is the greatest word so that pivots land on leading words
  std::vector<Word> words;
  for (auto it = seen.rbegin(); it != seen.rend(); ++it) words.push_back(it->first);
  for (size_t k = 0; k < words.size(); ++k) seen[words[k]] = k;
  ExactMatrix m(rels.size(), words.size());
  for (size_t i = 0; i < rels.size(); ++i)
    for (auto& [w, c] : rels[i].terms()) m.set(i, seen[w], c);
  std::vector<NCPoly> out;
  for (auto& row : rref(m)) {
    NCPoly p;
    for (auto& [j, c] : row) p.add(words[j], c);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<NCPoly> frt_relations(const LinOp& p) {
  if (p.legs() != 2) fail(ErrorKind::ShapeMismatch, "frt_relations needs an operator on V(x)V");
  int n = p.dim_v();
  auto ent = p.entries();
  // P by rows and by columns
  std::vector<std::vector<std::pair<uint32_t, Scalar>>> by_row(p.dim()), by_col(p.dim());
  for (auto& [r, c, v] : ent) {
    by_row[r].emplace_back(c, v);
    by_col[c].emplace_back(r, v);
  }
  std::vector<NCPoly> rels;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k)
      for (int m = 1; m <= n; ++m)
        for (int nn = 1; nn <= n; ++nn) {
          NCPoly rel;
          // sum_{jl} T_i^j T_k^l P[(m,n),(j,l)]
          for (auto& [c, v] : by_row[p.encode({m, nn})]) {
            MultiIndex jl = p.decode(c);
            rel.add({lT(i, jl[0]), lT(k, jl[1])}, v);
          }
          // - sum_{jl} P[(j,l),(i,k)] T_j^m T_l^n
          for (auto& [r, v] : by_col[p.encode({i, k})]) {
            MultiIndex jl = p.decode(r);
            rel.add({lT(jl[0], m), lT(jl[1], nn)}, -v);
          }
          if (!rel.is_zero()) rels.push_back(std::move(rel));
        }
  return canonical_relations(rels);
}

// ---- R-matrix invariants

RInvariants rmatrix_invariants(const LinOp& r) {
  if (r.legs() != 2) fail(ErrorKind::ShapeMismatch, "rmatrix_invariants needs an operator on V(x)V");
  int n = r.dim_v();
  RInvariants out;
  out.trivial = r == LinOp::identity(n, 2);
  LinOp r21 = flip_legs(r, {2, 1});
  out.unitarity_defect = compose(r, r21) - LinOp::identity(n, 2);
  out.unitary = out.unitarity_defect.is_zero();
  LinOp r12 = lift(r, 1, 3), r23 = lift(r, 2, 3);
  LinOp r13 = flip_legs(r12, {1, 3, 2});
  out.yb_defect = compose(compose(r12, r13), r23) - compose(compose(r23, r13), r12);
  out.yang_baxter = out.yb_defect.is_zero();
  return out;
}

// ---- gl(2)

namespace {

LinOp block4(const Scalar& m00, const Scalar& m01, const Scalar& m10, const Scalar& m11) {
  LinOp o(2, 2);
  o.set(0, 0, Scalar(1));
  o.set(3, 3, Scalar(1));
  o.set(1, 1, m00);
  o.set(1, 2, m01);
  o.set(2, 1, m10);
  o.set(2, 2, m11);
  return o;
}

struct M2 {
  Scalar a, b, c, d;
  M2 operator*(const M2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Scalar det() const { return a * d - b * c; }
  M2 inv() const {
    Scalar dt = det();
    if (dt.is_zero()) fail(ErrorKind::InvalidParams, "singular twist block");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  LinOp op() const { return block4(a, b, c, d); }
};

M2 n_block(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B) {
  return M2{q + qp, q - qp, Scalar(0), Scalar(2) * q * qp} * M2{A, B, B, A};
}

M2 nt_block(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B) {
  return M2{A, B, B, A} * M2{Scalar(2) * q * qp, qp - q, Scalar(0), q + qp};
}

// symbol for a degree-two monomial in the matrix entries a,b,c,d (a commuting placeholder)
Var mono2v(Letter x, Letter y) {
  static const char* names[2][2] = {{"a", "b"}, {"c", "d"}};
  auto nm = [&](Letter l) { return std::string(names[letter_i(l) - 1][letter_j(l) - 1]); };
  return Var::named("m_" + nm(x) + nm(y));
}

Scalar mono2(Letter x, Letter y) { return Scalar(mono2v(x, y)); }

}  // namespace

LinOp gl2_P(const Scalar& q, const Scalar& qp) { return block4(Scalar(1) - qp / q, qp, q.inv(), Scalar(0)); }

LinOp gl2_R(const Scalar& q, const Scalar& qp) {
  return block4(q.inv(), (q - qp) / q, Scalar(0), qp);
}

LinOp gl2_N(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B) {
  return n_block(q, qp, A, B).op();
}

LinOp gl2_Ntilde(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B) {
  return nt_block(q, qp, A, B).op();
}

TwistReport gl2_twist_suite(const Scalar& q, const Scalar& qp, const Scalar& A, const Scalar& B) {
  if ((A * A - B * B).is_zero()) fail(ErrorKind::InvalidParams, "A^2 - B^2 = 0");
  if (q.is_zero() || qp.is_zero()) fail(ErrorKind::InvalidParams, "q and q' must be nonzero");
  if ((q + qp).is_zero()) fail(ErrorKind::InvalidParams, "q + q' = 0");
  TwistReport rep;

  // (i) the star products T_i^j * T_k^l reduced by the FRT relations of P, then twisted
  auto rels = frt_relations(gl2_P(q, qp));
  std::map<Word, NCPoly, WordLess> rule;
  for (auto& r : rels) {
    Word lw = r.leading();
    rule[lw] = NCPoly::word(lw) - r;  // leading coefficient is 1
  }
  LinOp s(2, 2);
  for (uint32_t row = 0; row < 4; ++row)
    for (uint32_t col = 0; col < 4; ++col) {
      MultiIndex ik = s.decode(row), jl = s.decode(col);
      Word w = {lT(ik[0], jl[0]), lT(ik[1], jl[1])};
      auto it = rule.find(w);
      NCPoly red = it == rule.end() ? NCPoly::word(w) : it->second;
      Scalar v;
      for (auto& [nw, c] : red.terms()) v += c * mono2(nw[0], nw[1]);
      s.set(row, col, v);
    }
  LinOp tt = compose(compose(gl2_Ntilde(q, qp, A, B), s), gl2_N(q, qp, A, B));
  rep.abelian = tt == flip_legs(tt, {2, 1});

  // (ii) N N'^{-1} with equal second factors
  M2 nb = n_block(q, qp, A, B);
  M2 np = n_block(q.inv(), qp.inv(), A, B);
  M2 x = nb * np.inv();
  M2 rb{q.inv(), (q - qp) / q, Scalar(0), qp};
  rep.lambda = x.a / rb.a;
  rep.block_proportional = x.b == rep.lambda * rb.b && x.c.is_zero() && x.d == rep.lambda * rb.d;
  M2 np2 = n_block(q.inv(), qp.inv(), rep.lambda * A, rep.lambda * B);
  rep.renormalized_equal = (nb * np2.inv()).op() == gl2_R(q, qp);

  // (iii) T*T = N~^{-1} TT N^{-1} with TT commutative, A = A~ = 1/(q+q'), B = B~ = 0
  Scalar a0 = (q + qp).inv();
  LinOp tc(2, 2);
  for (uint32_t row = 0; row < 4; ++row)
    for (uint32_t col = 0; col < 4; ++col) {
      MultiIndex ik = tc.decode(row), jl = tc.decode(col);
      Letter x1 = lT(ik[0], jl[0]), x2 = lT(ik[1], jl[1]);
      tc.set(row, col, x1 <= x2 ? mono2(x1, x2) : mono2(x2, x1));
    }
  LinOp star = compose(compose(nt_block(q, qp, a0, Scalar(0)).inv().op(), tc), n_block(q, qp, a0, Scalar(0)).inv().op());
  auto entry = [&](int i, int j, int k, int l) { return star.at({i, k}, {j, l}); };
  Scalar ab = mono2(lT(1, 1), lT(1, 2)), ac = mono2(lT(1, 1), lT(2, 1)), bc = mono2(lT(1, 2), lT(2, 1));
  Scalar ad = mono2(lT(1, 1), lT(2, 2));
  rep.simple_products = entry(1, 1, 1, 2) == ab && entry(2, 1, 1, 1) == ac && entry(2, 1, 1, 2) == bc;
  Scalar a_d = entry(1, 1, 2, 2);
  rep.ad_scale = coeff_of(a_d, mono2v(lT(1, 1), lT(2, 2)), 1);
  if (!rep.ad_scale.is_zero()) {
    rep.ad_correction = coeff_of(a_d, mono2v(lT(1, 2), lT(2, 1)), 1) / rep.ad_scale;
    bool shape = a_d == rep.ad_scale * (ad + rep.ad_correction * bc);
    rep.ad_correction_matches = shape && rep.ad_correction == (q - qp) / (q + qp);
  }
  return rep;
}

// ---- normal form on the quantum plane and antiplane

NCPoly qplane_normal_form(const NCPoly& p, const QData& qd) {
  qd.validate();
  LinOp cross;  // theta^i x^j = sum (P + a - 1)^{ij}_{kl} x^k theta^l
  bool have_cross = false;
  auto cross_op = [&]() -> const LinOp& {
    if (!have_cross) {
      LinOp pp = standard_P(qd);
      cross = pp + LinOp::identity(qd.n, 2).scaled(qd.a - Scalar(1));
      have_cross = true;
    }
    return cross;
  };
  auto in_range = [&](Letter l) { return letter_i(l) >= 1 && letter_i(l) <= qd.n; };
  // one rewrite of an adjacent pair, or nullopt when the pair is ordered
  auto rewrite = [&](Letter u, Letter v) -> std::optional<std::vector<std::pair<Word, Scalar>>> {
    Gen gu = letter_gen(u), gv = letter_gen(v);
    if (gu == Gen::T || gv == Gen::T) return std::nullopt;
    if (!in_range(u) || !in_range(v)) fail(ErrorKind::BadIndices, "generator index out of range");
    int i = letter_i(u), j = letter_i(v);
    if (gu == Gen::X && gv == Gen::X) {
      if (i <= j) return std::nullopt;
      return std::vector<std::pair<Word, Scalar>>{{{v, u}, qd.q(i, j)}};
    }
    if (gu == Gen::Theta && gv == Gen::Theta) {
      if (i < j) return std::nullopt;
      if (i == j) return std::vector<std::pair<Word, Scalar>>{};
      return std::vector<std::pair<Word, Scalar>>{{{v, u}, -qd.r(i, j)}};
    }
    if (gu == Gen::Theta && gv == Gen::X) {
      const LinOp& c = cross_op();
      std::vector<std::pair<Word, Scalar>> out;
      for (int k = 1; k <= qd.n; ++k)
        for (int l = 1; l <= qd.n; ++l) {
          Scalar v2 = c.at({i, j}, {k, l});
          if (!v2.is_zero()) out.push_back({{lx(k), lth(l)}, v2});
        }
      return out;
    }
    return std::nullopt;
  };
  NCPoly result;
  std::map<Word, Scalar, WordLess> pending(p.terms().begin(), p.terms().end());
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    Word w = it->first;
    Scalar c = it->second;
    pending.erase(it);
    if (c.is_zero()) continue;
    bool done = true;
    for (size_t k = 0; k + 1 < w.size(); ++k) {
      auto rw = rewrite(w[k], w[k + 1]);
      if (!rw) continue;
      done = false;
      for (auto& [pair, coef] : *rw) {
        Word nw(w.begin(), w.begin() + static_cast<long>(k));
        nw.insert(nw.end(), pair.begin(), pair.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 2, w.end());
        auto jt = pending.find(nw);
        if (jt == pending.end()) {
          pending.emplace(nw, c * coef);
        } else {
          jt->second += c * coef;
        }
      }
      break;
    }
    if (done) result.add(w, c);
  }
  return result;
}

}  // namespace mqg
