#include "mqg/deform.hpp"

#include <algorithm>
#include <functional>

#include "mqg/error.hpp"

namespace mqg {

namespace {

void require_a_not_one(const QData& qd, ErrorKind kind) {
  if ((qd.a - Scalar(1)).is_zero()) fail(kind, "a = 1 is a separate case and is not handled");
}

LinOp unit(int n, uint32_t r, uint32_t c) {
  LinOp e(n, 2);
  e.set(r, c, Scalar(1));
  return e;
}

// Taylor coefficient at v = 0
Scalar taylor(const Scalar& x, Var v, int k) { return TruncSeries::expand(x, v, k).coeff(k); }

LinOp first_order_part(const LinOp& x) {
  return x.map([](const Scalar& s) { return taylor(s, Var::eps(), 1); });
}

}  // namespace

LinOp trivial_def_basis_change(const std::vector<std::vector<Scalar>>& A, const QData& qd) {
  int n = qd.n;
  if (static_cast<int>(A.size()) != n) fail(ErrorKind::ShapeMismatch, "A must be N x N");
  for (auto& row : A)
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::ShapeMismatch, "A must be N x N");
  LinOp z(n, 2);
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) {
      const Scalar& v = A[i - 1][k - 1];
      if (v.is_zero()) continue;
      for (int j = 1; j <= n; ++j) {
        z.add(z.encode({i, j}), z.encode({k, j}), v);
        z.add(z.encode({j, i}), z.encode({j, k}), v);
      }
    }
  LinOp p = standard_P(qd);
  return compose(p, z) - compose(z, p);
}

LinOp trivial_def_q_variation(const std::map<std::pair<int, int>, Scalar>& dq, const QData& qd) {
  QData moved = qd;
  bool any = false;
  for (auto& [k, v] : dq) {
    if (k.first >= k.second || !qd.qs.count(k)) fail(ErrorKind::BadIndices, "dq keys must be pairs i<j");
    if (v.is_zero()) continue;
    moved.qs[k] = moved.qs[k] + Scalar(Var::eps()) * v;
    any = true;
  }
  if (!any) return LinOp(qd.n, 2);
  return first_order_part(standard_P(moved));
}

LinOp a_variation(const QData& qd) {
  QData moved = qd;
  moved.a = qd.a + Scalar(Var::eps());
  return first_order_part(standard_P(moved));
}

Vec flatten(const LinOp& x) {
  Vec v(static_cast<size_t>(x.dim()) * x.dim());
  for (auto& [r, c, s] : x.entries()) v[static_cast<size_t>(r) * x.dim() + c] = s;
  return v;
}

LinOp unflatten(const Vec& v, int n) {
  LinOp x(n, 2);
  size_t d = x.dim();
  if (v.size() != d * d) fail(ErrorKind::ShapeMismatch, "vector length is not N^4");
  for (size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) x.set(static_cast<uint32_t>(k / d), static_cast<uint32_t>(k % d), v[k]);
  return x;
}

namespace {

// columns are the unknown entries of X; rows are the entries of the image
ExactMatrix system_from(int n, uint32_t out_dim, const std::function<LinOp(const LinOp&)>& f) {
  uint32_t d = static_cast<uint32_t>(n * n);
  std::map<uint64_t, std::map<size_t, Scalar>> rows;
  for (uint32_t r = 0; r < d; ++r)
    for (uint32_t c = 0; c < d; ++c) {
      LinOp img = f(unit(n, r, c));
      size_t col = static_cast<size_t>(r) * d + c;
      for (auto& [rr, cc, v] : img.entries()) rows[static_cast<uint64_t>(rr) * out_dim + cc].emplace(col, v);
    }
  ExactMatrix m(0, static_cast<size_t>(d) * d);
  for (auto& [k, row] : rows) m.append_row(row);
  return m;
}

}  // namespace

ExactMatrix linear_hecke_system(const LinOp& p, const Scalar& a) {
  Scalar am1 = a - Scalar(1);
  return system_from(p.dim_v(), p.dim(),
                     [&](const LinOp& x) { return compose(p, x) + compose(x, p) + x.scaled(am1); });
}

LinOp linear_braid(const LinOp& p, const LinOp& x) {
  LinOp p12 = lift(p, 1, 3), p23 = lift(p, 2, 3);
  LinOp x12 = lift(x, 1, 3), x23 = lift(x, 2, 3);
  LinOp p12p23 = compose(p12, p23), p23p12 = compose(p23, p12);
  return compose(x12, p23p12) + compose(compose(p12, x23), p12) + compose(p12p23, x12) - compose(x23, p12p23) -
         compose(compose(p23, x12), p23) - compose(p23p12, x23);
}

ExactMatrix linear_braid_system(const LinOp& p) {
  int n = p.dim_v();
  LinOp p12 = lift(p, 1, 3), p23 = lift(p, 2, 3);
  LinOp p12p23 = compose(p12, p23), p23p12 = compose(p23, p12);
  uint32_t out = static_cast<uint32_t>(n * n * n);
  return system_from(n, out, [&](const LinOp& x) {
    LinOp x12 = lift(x, 1, 3), x23 = lift(x, 2, 3);
    return compose(x12, p23p12) + compose(compose(p12, x23), p12) + compose(p12p23, x12) - compose(x23, p12p23) -
           compose(compose(p23, x12), p23) - compose(p23p12, x23);
  });
}

std::vector<LinOp> trivial_generators(const QData& qd) {
  std::vector<LinOp> out;
  int n = qd.n;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::vector<std::vector<Scalar>> A(n, std::vector<Scalar>(n));
      A[i][k] = Scalar(1);
      out.push_back(trivial_def_basis_change(A, qd));
    }
  for (auto& [key, v] : qd.qs) out.push_back(trivial_def_q_variation({{key, Scalar(1)}}, qd));
  return out;
}

namespace {

ExactMatrix stack(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix m(0, a.cols());
  for (size_t i = 0; i < a.rows(); ++i) m.append_row(a.row(i));
  for (size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
  return m;
}

// greedy selection of vectors independent from a base family
std::vector<Vec> complement(const std::vector<Vec>& base, const std::vector<Vec>& candidates) {
  std::vector<Vec> acc = base, out;
  size_t r = span_rank(acc);
  for (auto& v : candidates) {
    acc.push_back(v);
    size_t r2 = span_rank(acc);
    if (r2 > r) {
      out.push_back(v);
      r = r2;
    } else {
      acc.pop_back();
    }
  }
  return out;
}

QData prepare(const QData& qd, const std::optional<ParamAssignment>& asg) {
  QData d = asg ? qd.specialized(*asg) : qd;
  d.validate();
  return d;
}

}  // namespace

FirstOrderSpace first_order_space(const QData& qd0, const std::optional<ParamAssignment>& asg) {
  QData qd = prepare(qd0, asg);
  require_a_not_one(qd, ErrorKind::Unsupported);
  LinOp p = standard_P(qd);
  ExactMatrix sys = stack(linear_hecke_system(p, qd.a), linear_braid_system(p));
  auto ker = kernel_basis(sys);
  FirstOrderSpace out;
  out.dim_total = ker.size();
  // trivial generators are computed symbolically, then specialized, so that q variations are
  // taken before the assignment freezes the parameters
  std::vector<Vec> triv;
  for (auto& t : trivial_generators(qd0)) {
    LinOp tt = asg ? t.map([&](const Scalar& s) { return specialize(s, *asg); }) : t;
    triv.push_back(flatten(tt));
  }
  out.dim_trivial = span_rank(triv);
  size_t q = quotient_dim(ker, triv);  // NotASubspace if a trivial generator is not a solution
  out.dim_essential = q;
  for (auto& v : complement(triv, ker)) out.basis.push_back(unflatten(v, qd.n));
  for (auto& v : ker) out.solutions.push_back(unflatten(v, qd.n));
  return out;
}

// ---- elementary deformations

namespace {

Scalar apow(const Scalar& a, int x) { return a.pow(x); }

void check_range(int n, std::initializer_list<int> idx) {
  for (int v : idx)
    if (v < 1 || v > n) fail(ErrorKind::BadIndices, "index out of range 1..N");
}

}  // namespace

FirstOrderDef elementary_principal(int i, int j, int which_case, const QData& qd) {
  qd.validate();
  int k, l;
  if (which_case == 1) {
    k = i - 1;
    l = j + 1;
  } else if (which_case == 2) {
    k = i + 1;
    l = j - 1;
  } else {
    fail(ErrorKind::BadIndices, "case must be 1 or 2");
  }
  check_range(qd.n, {i, j, k, l});
  if (which_case == 1 && !(i <= j)) fail(ErrorKind::BadIndices, "case 1 needs k+1 = i <= j = l-1");
  if (which_case == 2 && !(k <= l)) fail(ErrorKind::BadIndices, "case 2 needs i+1 = k <= l = j-1");
  if ((qd.a - Scalar(1)).is_zero() || (qd.a + Scalar(1)).is_zero())
    fail(ErrorKind::InvalidParams, "the elementary series need a != 1, -1");
  FirstOrderDef d;
  d.base = standard_P(qd);
  d.direction = LinOp(qd.n, 2);
  d.direction.set({j, i}, {k, l}, Scalar(1));
  d.direction.set({i, j}, {l, k}, -qd.a * qd.qhat(i, j) * qd.q(k, l));
  for (int m = 1; m <= qd.n; ++m) {
    int x = (m == i) - (m == j);
    Scalar lhs = qd.q(i, m) * qd.q(j, m) * qd.q(m, k) * qd.q(m, l);
    d.conditions.push_back(lhs - apow(qd.a, which_case == 1 ? x : -x));
  }
  d.label = "principal case " + std::to_string(which_case) + " (i,j,k,l)=(" + std::to_string(i) + "," +
            std::to_string(j) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
  return d;
}

FirstOrderDef elementary_exceptional(int i, int j, int k, ExceptionalVariant v, const QData& qd) {
  qd.validate();
  check_range(qd.n, {i, j, k});
  if (j != i + 1) fail(ErrorKind::BadIndices, "exceptional series needs j = i+1");
  if (k != i - 1 && k != j + 1) fail(ErrorKind::BadIndices, "k must be i-1 or j+1");
  Scalar a = qd.a;
  if (!(a.pow(3) - Scalar(1)).is_zero() || (a - Scalar(1)).is_zero())
    fail(ErrorKind::RequiresCubeRoot, "exceptional series needs a^3 = 1, a != 1 (set a = omega)");
  FirstOrderDef d;
  d.base = standard_P(qd);
  d.direction = LinOp(qd.n, 2);
  if (v == ExceptionalVariant::Upper) {
    d.direction.set({j, i}, {k, k}, Scalar(1));
    d.direction.set({i, j}, {k, k}, -a * qd.q(i, j));
  } else {
    d.direction.set({k, k}, {i, j}, Scalar(1));
    d.direction.set({k, k}, {j, i}, -qd.q(i, j));
  }
  for (int m = 1; m <= qd.n; ++m) {
    int x;
    if (v == ExceptionalVariant::Upper) {
      x = (m == i) - (m == j);
    } else if (k == i - 1) {
      x = (m == k) - (m == i);
    } else {
      x = (m == j) - (m == k);
    }
    Scalar lhs = qd.q(k, m).pow(2) * qd.q(m, j) * qd.q(m, i);
    d.conditions.push_back(lhs - apow(a, x));
  }
  d.label = std::string("exceptional ") + (v == ExceptionalVariant::Upper ? "upper" : "lower") + " (i,j,k)=(" +
            std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
  return d;
}

// ---- normal form

LinOp normal_form(const LinOp& p1, const QData& qd) {
  qd.validate();
  require_a_not_one(qd, ErrorKind::NotReducible);
  int n = qd.n;
  if (p1.dim_v() != n || p1.legs() != 2) fail(ErrorKind::ShapeMismatch, "P1 must act on V(x)V");
  auto gens = trivial_generators(qd);
  // entries whose four indices take at most two distinct values
  std::vector<std::pair<uint32_t, uint32_t>> low;
  for (uint32_t r = 0; r < p1.dim(); ++r)
    for (uint32_t c = 0; c < p1.dim(); ++c) {
      MultiIndex a = p1.decode(r), b = p1.decode(c);
      std::vector<int> all = {a[0], a[1], b[0], b[1]};
      std::sort(all.begin(), all.end());
      if (std::unique(all.begin(), all.end()) - all.begin() <= 2) low.emplace_back(r, c);
    }
  ExactMatrix m(low.size(), gens.size());
  Vec rhs(low.size());
  for (size_t e = 0; e < low.size(); ++e) {
    for (size_t t = 0; t < gens.size(); ++t) m.set(e, t, gens[t].get(low[e].first, low[e].second));
    rhs[e] = p1.get(low[e].first, low[e].second);
  }
  auto c = solve(m, rhs);
  if (!c) fail(ErrorKind::NotReducible, "no trivial deformation clears the entries with two or fewer indices");
  LinOp out = p1;
  for (size_t t = 0; t < gens.size(); ++t)
    if (!(*c)[t].is_zero()) out = out - gens[t].scaled((*c)[t]);
  return out;
}

// ---- probe

ProbeReport hecke_preservation_probe(const QData& qd0, const std::optional<ParamAssignment>& asg) {
  QData qd = prepare(qd0, asg);
  require_a_not_one(qd, ErrorKind::Unsupported);
  LinOp p = standard_P(qd);
  ExactMatrix hs = linear_hecke_system(p, qd.a), bs = linear_braid_system(p);
  auto braid_only = kernel_basis(bs);
  auto joint = kernel_basis(stack(hs, bs));
  ProbeReport rep;
  rep.dim_braid = braid_only.size();
  rep.dim_hecke_braid = joint.size();
  auto inside = [&](std::vector<Vec> base) {
    size_t r = span_rank(base);
    base.insert(base.end(), braid_only.begin(), braid_only.end());
    return span_rank(base) == r;
  };
  rep.strict = inside(joint);
  LinOp da = a_variation(qd0);
  if (asg) da = da.map([&](const Scalar& s) { return specialize(s, *asg); });
  std::vector<Vec> relaxed = joint;
  relaxed.push_back(flatten(p));
  relaxed.push_back(flatten(da));
  rep.pass = inside(relaxed);
  return rep;
}

// ---- surfaces

std::optional<ParamAssignment> solve_surface(const std::vector<Scalar>& conditions, const std::vector<Var>& prefer) {
  ParamAssignment sub;
  for (auto& c0 : conditions) {
    Scalar c = specialize(c0, sub);
    if (c.is_zero()) continue;
    const Poly& num = c.num();
    std::vector<Var> order = prefer;
    for (Var v : num.vars()) {
      bool usable = v.kind() == Var::Kind::Q || v.kind() == Var::Kind::P;
      if (usable && std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    }
    bool solved = false;
    for (Var v : order) {
      if (num.degree_in(v) != 1) continue;
      auto cs = num.coeffs_in(v);
      Scalar val = -Scalar::frac(cs[0], Poly(1)) / Scalar::frac(cs[1], Poly(1));
      // substitute the new value into the earlier ones
      ParamAssignment one{{v, val}};
      for (auto& [k, x] : sub) x = specialize(x, one);
      sub[v] = val;
      solved = true;
      break;
    }
    if (!solved) return std::nullopt;
  }
  return sub;
}

QData on_surface(const QData& qd, const ParamAssignment& sub) { return qd.specialized(sub); }

// ---- classical limit

ParamAssignment classical_substitution(int n) {
  ParamAssignment s;
  Scalar h(Var::h());
  s[Var::a()] = Scalar(1) + h;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) s[Var::q(i, j)] = Scalar(1) + h * Scalar(Var::p(i, j));
  return s;
}

ClassicalRMatrix classical_limit(int n, const std::optional<LinOp>& p1) {
  QData qd = QData::symbolic(n);
  ParamAssignment sub = classical_substitution(n);
  LinOp p = standard_P(qd).map([&](const Scalar& s) { return specialize(s, sub); });
  LinOp r = flip_col_legs(p, {2, 1});
  ClassicalRMatrix out;
  out.n = n;
  LinOp zero_order = r.map([](const Scalar& s) { return taylor(s, Var::h(), 0); });
  if (zero_order != LinOp::identity(n, 2)) fail(ErrorKind::NotExpandable, "R does not reduce to 1 at h = 0");
  out.r = r.map([](const Scalar& s) { return -taylor(s, Var::h(), 1); });
  if (p1) {
    LinOp d = flip_col_legs(p1->map([&](const Scalar& s) { return specialize(s, sub); }), {2, 1});
    LinOp lead = d.map([](const Scalar& s) { return taylor(s, Var::h(), 0); });
    if (lead.is_zero()) lead = d.map([](const Scalar& s) { return taylor(s, Var::h(), 1); });
    out.delta_r = lead;
  }
  return out;
}

// ---- Belavin-Drinfeld invariance

namespace {

Scalar p_at(const std::map<std::pair<int, int>, Scalar>& p, int i, int j) {
  if (i == j) return Scalar();
  if (i < j) {
    auto it = p.find({i, j});
    return it == p.end() ? Scalar() : it->second;
  }
  return -p_at(p, j, i);
}

}  // namespace

BDReport bd_invariance_check(int n, const std::map<std::pair<int, int>, Scalar>& p, std::pair<int, int> alpha_ik,
                             std::pair<int, int> tau_lj, BDSlots slots) {
  auto [i, k] = alpha_ik;
  auto [l, j] = tau_lj;
  check_range(n, {i, k, l, j});
  // r0 coefficients c[a][b] of M_a^a (x) M_b^b
  std::vector<std::vector<Scalar>> c(n + 1, std::vector<Scalar>(n + 1));
  for (int x = 1; x <= n; ++x)
    for (int y = x + 1; y <= n; ++y) {
      Scalar pxy = p_at(p, x, y);
      c[y][x] += pxy;
      c[x][y] -= Scalar(1) + pxy;
    }
  // root values on the diagonal: M_k^i (row k, column i) has alpha(M_m^m) = delta_mk - delta_mi
  // likewise tau alpha = M_j^l gives delta_mj - delta_ml
  std::function<Scalar(int)> alpha = [&](int m) { return Scalar((m == k) - (m == i)); };
  std::function<Scalar(int)> tau = [&](int m) { return Scalar((m == j) - (m == l)); };
  BDReport rep;
  rep.pass = true;
  rep.matches_components = true;
  for (int m = 1; m <= n; ++m) {
    Scalar comp;
    const auto& first = slots == BDSlots::Literal ? tau : alpha;
    const auto& second = slots == BDSlots::Literal ? alpha : tau;
    // (f (x) 1) H(x)H' = f(H) H' gives sum_a c[a][m] f(a); (1 (x) g) gives sum_b c[m][b] g(b)
    for (int a = 1; a <= n; ++a) comp += c[a][m] * first(a);
    for (int b = 1; b <= n; ++b) comp += c[m][b] * second(b);
    rep.components.push_back(comp);
    if (!comp.is_zero()) {
      rep.pass = false;
      rep.violated.push_back(m);
    }
    Scalar e = p_at(p, l, m) + p_at(p, k, m) + p_at(p, m, i) + p_at(p, m, j) - Scalar((m == j) - (m == i));
    rep.residuals.push_back(e);
    if (comp != e && comp != -e) rep.matches_components = false;
  }
  return rep;
}

std::vector<Scalar> first_order_conditions(const std::vector<Scalar>& conditions, int n) {
  ParamAssignment sub = classical_substitution(n);
  std::vector<Scalar> out;
  for (auto& c : conditions) {
    Scalar s = specialize(c, sub);
    if (!taylor(s, Var::h(), 0).is_zero()) fail(ErrorKind::NotExpandable, "condition does not vanish at h = 0");
    out.push_back(taylor(s, Var::h(), 1));
  }
  return out;
}

CheckReport sl_restriction_check(const QData& qd) {
  CheckReport rep;
  rep.check = "sl_restriction";
  rep.pass = true;
  for (int j = 1; j <= qd.n; ++j) {
    Scalar prod(1);
    for (int i = 1; i <= qd.n; ++i) prod *= qd.q(i, j);
    Scalar lhs = prod.pow(2) * qd.a.pow(2 * j);
    Scalar rhs = qd.a.pow(qd.n + 1);
    bool ok = lhs == rhs;
    rep.details.emplace_back("j=" + std::to_string(j), ok ? "pass" : "fail: " + (lhs - rhs).str());
    rep.pass = rep.pass && ok;
  }
  rep.context = qd.digest();
  return rep;
}

}  // namespace mqg
