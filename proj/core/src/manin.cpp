#include "mqg/manin.hpp"

#include "mqg/error.hpp"

namespace mqg {

namespace {

void add_to(SVec& v, int k, const Scalar& s) {
  if (s.is_zero()) return;
  auto it = v.find(k);
  if (it == v.end()) {
    v.emplace(k, s);
  } else {
    it->second += s;
    if (it->second.is_zero()) v.erase(it);
  }
}

Scalar get(const SVec& v, int k) {
  auto it = v.find(k);
  return it == v.end() ? Scalar() : it->second;
}

SVec unit(int k) { return {{k, Scalar(1)}}; }

std::string sv_str(const SVec& v, const std::vector<std::string>& labels) {
  std::string s;
  for (auto& [k, c] : v) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")" + labels[k];
  }
  return s.empty() ? "0" : s;
}

std::map<size_t, Scalar> as_row(const SVec& v) {
  std::map<size_t, Scalar> m;
  for (auto& [k, c] : v) m[static_cast<size_t>(k)] = c;
  return m;
}

Mat zero_mat(int r, int c) { return Mat(r, std::vector<Scalar>(c)); }

// R[i][j] with (r b)^i = R[i][j] b_j
Mat r_matrix(const GTensor& r, int n, bool row) {
  Mat m = zero_mat(n, n);
  for (auto& [idx, v] : r.c) {
    if (row)
      m[idx[0]][idx[1]] = v;
    else
      m[idx[1]][idx[0]] = v;
  }
  return m;
}

Mat sym_k(const GTensor& r, int n) {
  Mat m = r_matrix(r, n, true);
  Mat t = r_matrix(r, n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] += t[i][j];
  return m;
}

// (M b, b) for b = G^j
SVec graph_vec(const Mat& M, int n, int j) {
  SVec v;
  for (int i = 0; i < n; ++i) add_to(v, i, M[i][j]);
  add_to(v, n + j, Scalar(1));
  return v;
}

// empty when w lies on {v = M b}
std::string off_graph(const Mat& M, int n, const SVec& w) {
  for (int i = 0; i < n; ++i) {
    Scalar want;
    for (int j = 0; j < n; ++j) want += M[i][j] * get(w, n + j);
    Scalar d = get(w, i) - want;
    if (!d.is_zero()) return "component " + std::to_string(i) + " off by " + d.str();
  }
  return {};
}

std::string ideal_defect(const DoubleAlgebra& d, const Mat& M) {
  for (int j = 0; j < d.n; ++j) {
    SVec s = graph_vec(M, d.n, j);
    for (int x = 0; x < 2 * d.n; ++x) {
      std::string e = off_graph(M, d.n, d.bracket(unit(x), s));
      if (!e.empty()) return "[" + d.labels[x] + ", s_" + std::to_string(j) + "]: " + e;
    }
  }
  return {};
}

Mat plus(const Mat& a, const Mat& b, const Scalar& k) {
  Mat m = a;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j) m[i][j] += k * b[i][j];
  return m;
}

CheckReport report(const std::string& name, const std::string& defect) {
  CheckReport r;
  r.check = name;
  r.pass = defect.empty();
  if (!r.pass) r.details.emplace_back("defect", defect);
  return r;
}

Mat inverse_of(const Mat& m) {
  size_t n = m.size();
  ExactMatrix a = ExactMatrix::from_dense(m);
  Mat out = zero_mat(static_cast<int>(n), static_cast<int>(n));
  for (size_t c = 0; c < n; ++c) {
    Vec e(n);
    e[c] = Scalar(1);
    auto x = solve(a, e);
    if (!x) fail(ErrorKind::NotInvertible, "r + r^t is degenerate");
    for (size_t r = 0; r < n; ++r) out[r][c] = (*x)[r];
  }
  return out;
}

}  // namespace

std::string jacobi_defect(const Structure& s) {
  int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        SVec a = unit(i), b = unit(j), c = unit(k);
        SVec t = sv_bracket(s, a, sv_bracket(s, b, c));
        for (auto& [m, v] : sv_bracket(s, b, sv_bracket(s, c, a))) add_to(t, m, v);
        for (auto& [m, v] : sv_bracket(s, c, sv_bracket(s, a, b))) add_to(t, m, v);
        if (!t.empty())
          return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ") component " +
                 std::to_string(t.begin()->first) + " = " + t.begin()->second.str();
      }
  return {};
}

DoubleAlgebra build_double(const LieAlgebra& g, const Structure& f) {
  int n = g.dim;
  if (static_cast<int>(f.size()) != n) fail(ErrorKind::ShapeMismatch, "dual structure has the wrong size");
  CheckReport c = compatibility_check(g.eps, f);
  if (!c.pass) {
    std::string why = "df != 0";
    for (auto& [k, v] : c.details)
      if (k == "defect") why = v;
    fail(ErrorKind::IncompatibleStructures, why);
  }
  DoubleAlgebra d;
  d.n = n;
  d.base = g;
  d.f = f;
  d.labels = g.labels;
  for (auto& l : g.labels) d.labels.push_back(l + "*");
  d.table.assign(2 * n, std::vector<SVec>(2 * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d.table[i][j] = g.eps[i][j];
      for (auto& [k, v] : f[i][j]) d.table[n + i][n + j][n + k] = v;
      SVec m;
      for (int l = 0; l < n; ++l) {
        add_to(m, l, -get(f[i][l], j));
        add_to(m, n + l, get(g.eps[j][l], i));
      }
      d.table[n + i][j] = m;
      SVec neg;
      for (auto& [k, v] : m) neg[k] = -v;
      d.table[j][n + i] = neg;
    }
  std::string jd = jacobi_defect(d.table);
  if (!jd.empty()) fail(ErrorKind::IncompatibleStructures, "Jacobi fails on the double: " + jd);
  return d;
}

CheckReport shear_block_check(const DoubleAlgebra& d, const GTensor& r) {
  std::string first;
  for (bool row : {true, false}) {
    Mat R = r_matrix(r, d.n, row);
    std::string e;
    for (int k = 0; k < d.n && e.empty(); ++k)
      for (int j = 0; j < d.n && e.empty(); ++j) {
        std::string o = off_graph(R, d.n, d.bracket(unit(k), graph_vec(R, d.n, j)));
        if (!o.empty()) e = "ad " + d.labels[k] + " on (r b, b) at " + d.labels[d.n + j] + ": " + o;
      }
    if (e.empty()) {
      CheckReport rep = report("shear_block", "");
      rep.details.emplace_back("orientation", row ? "row" : "column");
      return rep;
    }
    if (first.empty()) first = e;
  }
  return report("shear_block", first);
}

CheckReport pairing_check(const DoubleAlgebra& d, const GTensor& r) {
  int n = d.n;
  auto pair = [&](const SVec& x, const SVec& y) {
    Scalar s;
    for (auto& [k, v] : x) {
      if (k < n)
        s += v * get(y, n + k);
      else
        s += v * get(y, k - n);
    }
    return s;
  };
  std::string e;
  for (int x = 0; x < 2 * n && e.empty(); ++x)
    for (int y = 0; y < 2 * n && e.empty(); ++y)
      for (int z = 0; z < 2 * n && e.empty(); ++z) {
        Scalar l = pair(d.bracket(unit(x), unit(y)), unit(z));
        Scalar rr = pair(unit(x), d.bracket(unit(y), unit(z)));
        if (l != rr) e = "<[x,y],z> - <x,[y,z]> = " + (l - rr).str();
      }
  Mat R = r_matrix(r, n, true), K = sym_k(r, n);
  for (int i = 0; i < n && e.empty(); ++i)
    for (int j = 0; j < n && e.empty(); ++j) {
      Scalar p = pair(graph_vec(R, n, i), graph_vec(R, n, j));
      if (p != K[i][j]) e = "pairing on the graph of r differs from K at (" + std::to_string(i) + "," +
                            std::to_string(j) + "): " + (p - K[i][j]).str();
    }
  return report("pairing", e);
}

SplitResult split_double(const DoubleAlgebra& d, const GTensor& r) {
  int n = d.n;
  Mat K = sym_k(r, n);
  std::string first;
  for (bool row : {true, false}) {
    Mat R = r_matrix(r, n, row);
    std::string e0 = ideal_defect(d, R);
    if (!e0.empty()) {
      if (first.empty()) first = "S0 is not invariant: " + e0;
      continue;
    }
    for (int kappa : {1, -1}) {
      Mat M1 = plus(R, K, Scalar(kappa));
      std::string e1 = ideal_defect(d, M1);
      if (!e1.empty()) {
        if (first.empty()) first = "S1 (kappa " + std::to_string(kappa) + ") is not invariant: " + e1;
        continue;
      }
      SplitResult s;
      s.row_orientation = row;
      s.kappa1 = kappa;
      for (int j = 0; j < n; ++j) {
        s.S0.push_back(graph_vec(R, n, j));
        s.S1.push_back(graph_vec(M1, n, j));
      }
      s.certificates.push_back(report("s0_subalgebra", ""));
      s.certificates.push_back(report("s1_subalgebra", ""));
      std::string ec;
      for (int i = 0; i < n && ec.empty(); ++i)
        for (int j = 0; j < n && ec.empty(); ++j) {
          SVec b = d.bracket(s.S0[i], s.S1[j]);
          if (!b.empty()) ec = "[s0_" + std::to_string(i) + ", s1_" + std::to_string(j) + "] = " + sv_str(b, d.labels);
        }
      s.certificates.push_back(report("commute", ec));
      ExactMatrix all(0, 2 * n);
      for (auto* part : {&s.S0, &s.S1})
        for (auto& v : *part) all.append_row(as_row(v));
      size_t rk = rank(all);
      CheckReport span = report("span", rk == static_cast<size_t>(2 * n) ? "" : "rank " + std::to_string(rk));
      span.details.emplace_back("dim_s0", std::to_string(n));
      span.details.emplace_back("dim_s1", std::to_string(n));
      span.details.emplace_back("rank", std::to_string(rk));
      s.certificates.push_back(span);
      // induced action on b: (U - A - eps(a) rho) b, rho = r on S0 and -r^t on S1
      for (int part = 0; part < 2; ++part) {
        const Mat& M = part == 0 ? R : M1;
        std::string ea;
        for (int x = 0; x < 2 * n && ea.empty(); ++x)
          for (int j = 0; j < n && ea.empty(); ++j) {
            SVec w = d.bracket(unit(x), graph_vec(M, n, j));
            for (int m = 0; m < n && ea.empty(); ++m) {
              Scalar want;
              if (x < n) {
                want = get(d.base.eps[m][x], j);  // U^j_m = eps^j_{m x}
              } else {
                int a = x - n;
                want = -get(d.f[j][a], m);  // A^j_m = f^{j a}_m
                for (int l = 0; l < n; ++l) want -= get(d.base.eps[m][l], a) * M[l][j];
              }
              Scalar got = get(w, n + m);
              if (got != want)
                ea = d.labels[x] + " on s_" + std::to_string(j) + ", " + d.labels[n + m] + ": " + (got - want).str();
            }
          }
        s.certificates.push_back(report(part == 0 ? "action_s0" : "action_s1", ea));
      }
      return s;
    }
  }
  fail(ErrorKind::SplitFails, first);
}

IsoReport isomorphism_certificate(const DoubleAlgebra& d, const SplitResult& s, const GTensor& r) {
  int n = d.n;
  IsoReport out;
  out.report.check = "isomorphism";
  bool abelian = true;
  for (auto& row : d.table)
    for (auto& v : row)
      if (!v.empty()) abelian = false;
  if (abelian) {
    out.report.pass = true;
    out.report.details.emplace_back("vacuous", "abelian double");
    out.c0 = out.c1 = Scalar(1);
    return out;
  }
  Mat K = sym_k(r, n);
  Mat Kinv = inverse_of(K);
  Mat R = r_matrix(r, n, s.row_orientation);
  Mat M1 = plus(R, K, Scalar(s.kappa1));
  for (int part = 0; part < 2; ++part) {
    const Mat& M = part == 0 ? R : M1;
    Scalar sign(part == 0 ? 1 : -1);
    // phi(L_j) = (M (sign a), sign a), a = K^{-1} L_j
    std::vector<SVec> phi(n);
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < n; ++b) {
        Scalar a = sign * Kinv[b][j];
        if (a.is_zero()) continue;
        for (int i = 0; i < n; ++i) add_to(phi[j], i, M[i][b] * a);
        add_to(phi[j], n + b, a);
      }
    auto image = [&](const SVec& x) {
      SVec y;
      for (auto& [k, c] : x)
        for (auto& [m, v] : phi[k]) add_to(y, m, c * v);
      return y;
    };
    Scalar c;
    bool found = false;
    for (int i = 0; i < n && !found; ++i)
      for (int j = 0; j < n && !found; ++j) {
        SVec want = image(d.base.eps[i][j]);
        if (want.empty()) continue;
        SVec got = d.bracket(phi[i], phi[j]);
        int k = want.begin()->first;
        c = get(got, k) / want.begin()->second;
        found = true;
      }
    if (!found) c = Scalar(1);
    std::string e;
    if (c.is_zero()) e = "brackets of the generators vanish";
    for (int i = 0; i < n && e.empty(); ++i)
      for (int j = 0; j < n && e.empty(); ++j) {
        SVec got = d.bracket(phi[i], phi[j]);
        SVec want = image(d.base.eps[i][j]);
        for (auto& [k, v] : want) v *= c;
        if (got != want) e = "[phi " + d.labels[i] + ", phi " + d.labels[j] + "] != c phi[..]";
      }
    ExactMatrix img(0, 2 * n);
    for (auto& v : phi) img.append_row(as_row(v));
    if (e.empty() && rank(img) != static_cast<size_t>(n)) e = "images are dependent";
    // lands in the summand
    for (int j = 0; j < n && e.empty(); ++j) {
      std::string o = off_graph(M, n, phi[j]);
      if (!o.empty()) e = "phi " + d.labels[j] + " leaves S" + std::to_string(part) + ": " + o;
    }
    Mat cols = zero_mat(2 * n, n);
    if (!c.is_zero())
      for (int j = 0; j < n; ++j)
        for (auto& [k, v] : phi[j]) cols[k][j] = v / c;
    (part == 0 ? out.c0 : out.c1) = c;
    (part == 0 ? out.m0 : out.m1) = cols;
    std::string tag = part == 0 ? "s0" : "s1";
    out.report.details.emplace_back("c_" + tag, c.str());
    if (!e.empty()) fail(ErrorKind::NotIsomorphic, tag + ": " + e);
  }
  out.report.pass = true;
  return out;
}

}  // namespace mqg
