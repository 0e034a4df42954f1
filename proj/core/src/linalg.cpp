#include "mqg/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "mqg/error.hpp"

namespace mqg {

// ---- ExactMatrix

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) fail(ErrorKind::ShapeMismatch, "ragged dense matrix");
    for (size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<Vec>& cols, size_t nrows) {
  ExactMatrix m(nrows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != nrows) fail(ErrorKind::ShapeMismatch, "column length");
    for (size_t i = 0; i < nrows; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

Scalar ExactMatrix::get(size_t i, size_t j) const {
  auto& r = rows_.at(i);
  auto it = r.find(j);
  return it == r.end() ? Scalar() : it->second;
}

void ExactMatrix::set(size_t i, size_t j, const Scalar& v) {
  if (i >= rows_.size() || j >= cols_) fail(ErrorKind::ShapeMismatch, "matrix index out of range");
  if (v.is_zero()) {
    rows_[i].erase(j);
  } else {
    rows_[i][j] = v;
  }
}

void ExactMatrix::add(size_t i, size_t j, const Scalar& v) {
  if (v.is_zero()) return;
  if (i >= rows_.size() || j >= cols_) fail(ErrorKind::ShapeMismatch, "matrix index out of range");
  auto& r = rows_[i];
  auto it = r.find(j);
  if (it == r.end()) {
    r.emplace(j, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) r.erase(it);
  }
}

size_t ExactMatrix::append_row(std::map<size_t, Scalar> r) {
  for (auto it = r.begin(); it != r.end();) {
    if (it->first >= cols_) fail(ErrorKind::ShapeMismatch, "row entry out of range");
    if (it->second.is_zero()) {
      it = r.erase(it);
    } else {
      ++it;
    }
  }
  rows_.push_back(std::move(r));
  return rows_.size() - 1;
}

size_t ExactMatrix::nnz() const {
  size_t n = 0;
  for (auto& r : rows_) n += r.size();
  return n;
}

ExactMatrix ExactMatrix::specialized(const ParamAssignment& asg) const {
  ExactMatrix out(rows_.size(), cols_);
  for (size_t i = 0; i < rows_.size(); ++i) {
    for (auto& [j, v] : rows_[i]) {
      try {
        out.set(i, j, specialize(v, asg));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DenominatorVanishes)
          fail(ErrorKind::PivotPole, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") " + v.str() +
                                         " has a pole at the assignment");
        throw;
      }
    }
  }
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i)
    for (auto& [j, v] : rows_[i]) t.set(j, i, v);
  return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows()) fail(ErrorKind::ShapeMismatch, "matrix product");
  ExactMatrix out(rows_.size(), o.cols());
  for (size_t i = 0; i < rows_.size(); ++i) {
    std::map<size_t, Scalar> acc;
    for (auto& [k, x] : rows_[i])
      for (auto& [j, y] : o.rows_[k]) acc[j] += x * y;
    for (auto it = acc.begin(); it != acc.end();)
      it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    out.rows_[i] = std::move(acc);
  }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (cols_ != o.cols_ || rows_.size() != o.rows_.size()) fail(ErrorKind::ShapeMismatch, "matrix sum");
  ExactMatrix out = *this;
  for (size_t i = 0; i < rows_.size(); ++i)
    for (auto& [j, v] : o.rows_[i]) out.add(i, j, v);
  return out;
}

ExactMatrix ExactMatrix::scaled(const Scalar& s) const {
  ExactMatrix out(rows_.size(), cols_);
  if (s.is_zero()) return out;
  for (size_t i = 0; i < rows_.size(); ++i)
    for (auto& [j, v] : rows_[i]) out.rows_[i][j] = v * s;
  return out;
}

bool ExactMatrix::is_zero() const {
  for (auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

Vec ExactMatrix::apply(const Vec& v) const {
  if (v.size() != cols_) fail(ErrorKind::ShapeMismatch, "vector length");
  Vec out(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar s;
    for (auto& [j, x] : rows_[i])
      if (!v[j].is_zero()) s += x * v[j];
    out[i] = s;
  }
  return out;
}

ExactMatrix as_matrix(const LinOp& a) {
  ExactMatrix m(a.dim(), a.dim());
  for (auto& [r, c, v] : a.entries()) m.set(r, c, v);
  return m;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

namespace {

using SRow = std::map<size_t, Scalar>;
using PRow = std::map<size_t, Poly>;

// ---- connected components over columns

struct Component {
  std::vector<size_t> cols;  // ascending, global ids
  std::vector<size_t> rows;  // global row ids
};

std::vector<Component> components(const ExactMatrix& m) {
  size_t n = m.cols();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < m.rows(); ++i) {
    auto& r = m.row(i);
    if (r.empty()) continue;
    size_t first = find(r.begin()->first);
    for (auto& [j, v] : r) {
      size_t f = find(j);
      if (f != first) parent[std::max(f, first)] = std::min(f, first);
      first = find(first);
    }
  }
  std::map<size_t, Component> by_root;
  for (size_t j = 0; j < n; ++j) by_root[find(j)].cols.push_back(j);
  for (size_t i = 0; i < m.rows(); ++i) {
    auto& r = m.row(i);
    if (!r.empty()) by_root[find(r.begin()->first)].rows.push_back(i);
  }
  std::vector<Component> out;
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  return out;
}

// ---- rational elimination (exact over Q)

struct QResult {
  std::vector<size_t> pivot_rows;  // local row ids, in pivot order
  std::vector<size_t> pivot_cols;  // local col ids
  std::vector<std::map<size_t, mpq_class>> rref;  // pivot rows reduced (pivot entry 1), by pivot order
};

// Markowitz pivoting with a column priority class (lower class first)
QResult rational_eliminate(std::vector<std::map<size_t, mpq_class>> rows, size_t ncols,
                           const std::vector<int>& col_class) {
  QResult res;
  std::vector<bool> row_done(rows.size(), false), col_done(ncols, false);
  std::vector<size_t> col_count(ncols, 0);
  for (auto& r : rows)
    for (auto& [j, v] : r) ++col_count[j];
  while (true) {
    long best = -1;
    size_t br = 0, bc = 0;
    int bclass = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (row_done[i]) continue;
      long rc = static_cast<long>(rows[i].size()) - 1;
      for (auto& [j, v] : rows[i]) {
        int cl = col_class.empty() ? 0 : col_class[j];
        long score = rc * (static_cast<long>(col_count[j]) - 1);
        if (best < 0 || cl < bclass || (cl == bclass && score < best)) {
          best = score;
          br = i;
          bc = j;
          bclass = cl;
        }
      }
    }
    if (best < 0) break;
    row_done[br] = true;
    col_done[bc] = true;
    mpq_class inv = 1 / rows[br][bc];
    for (auto& [j, v] : rows[br]) v *= inv;
    const auto prow = rows[br];
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == br) continue;
      auto it = rows[i].find(bc);
      if (it == rows[i].end()) continue;
      mpq_class f = it->second;
      for (auto& [j, v] : prow) {
        auto jt = rows[i].find(j);
        if (jt == rows[i].end()) {
          rows[i].emplace(j, -f * v);
          ++col_count[j];
        } else {
          jt->second -= f * v;
          if (sgn(jt->second) == 0) {
            rows[i].erase(jt);
            --col_count[j];
          }
        }
      }
    }
    for (auto& [j, v] : prow) --col_count[j];
    res.pivot_rows.push_back(br);
    res.pivot_cols.push_back(bc);
  }
  for (size_t r : res.pivot_rows) res.rref.push_back(rows[r]);
  return res;
}

struct QResult_S {
  std::vector<size_t> pivot_cols;
  std::vector<SRow> rref;
};

// ---- fraction-free Bareiss on polynomial rows

struct BareissResult {
  std::vector<size_t> pivot_rows, pivot_cols;
  std::vector<PRow> rows;  // final state of every row
};

PRow clear_denominators(const SRow& r) {
  Poly l(1);
  for (auto& [j, v] : r) {
    if (v.den().is_one()) continue;
    Poly g = gcd(l, v.den());
    l = *(l * v.den()).div_exact(g);
  }
  PRow out;
  Poly content;
  for (auto& [j, v] : r) {
    Poly e = *(v.num() * l).div_exact(v.den());
    content = gcd(content, e);
    out.emplace(j, std::move(e));
  }
  if (!out.empty() && !content.is_one()) {
    for (auto& [j, e] : out) e = *e.div_exact(content);
  }
  return out;
}

BareissResult bareiss(std::vector<PRow> rows, size_t ncols, const std::vector<int>& col_class,
                      const std::vector<size_t>& forced_cols = {}) {
  BareissResult res;
  std::vector<bool> row_done(rows.size(), false), col_done(ncols, false);
  Poly prev(1);
  size_t forced_pos = 0;
  while (true) {
    std::vector<size_t> col_count(ncols, 0);
    for (size_t i = 0; i < rows.size(); ++i)
      if (!row_done[i])
        for (auto& [j, v] : rows[i])
          if (!col_done[j]) ++col_count[j];
    long best = -1;
    size_t br = 0, bc = 0, bsize = 0;
    int bclass = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (row_done[i]) continue;
      long rc = 0;
      for (auto& [j, v] : rows[i])
        if (!col_done[j]) ++rc;
      for (auto& [j, v] : rows[i]) {
        if (col_done[j]) continue;
        if (forced_pos < forced_cols.size() && j != forced_cols[forced_pos]) continue;
        int cl = col_class.empty() ? 0 : col_class[j];
        long score = (rc - 1) * (static_cast<long>(col_count[j]) - 1);
        size_t sz = v.size();
        bool better = best < 0 || cl < bclass || (cl == bclass && score < best) ||
                      (cl == bclass && score == best && sz < bsize);
        if (better) {
          best = score;
          br = i;
          bc = j;
          bclass = cl;
          bsize = sz;
        }
      }
    }
    if (best < 0) break;
    ++forced_pos;
    row_done[br] = true;
    col_done[bc] = true;
    const PRow prow = rows[br];
    const Poly p = prow.at(bc);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (row_done[i]) continue;
      auto& r = rows[i];
      auto it = r.find(bc);
      PRow nr;
      if (it == r.end()) {
        for (auto& [j, v] : r) nr.emplace(j, *(v * p).div_exact(prev));
      } else {
        Poly a = it->second;
        std::vector<size_t> cols;
        for (auto& [j, v] : r) cols.push_back(j);
        for (auto& [j, v] : prow) cols.push_back(j);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        for (size_t j : cols) {
          if (j == bc) continue;
          auto x = r.find(j);
          auto y = prow.find(j);
          Poly e = (x == r.end() ? Poly() : x->second * p) - (y == prow.end() ? Poly() : a * y->second);
          if (e.is_zero()) continue;
          auto q = e.div_exact(prev);
          if (!q) fail(ErrorKind::NotASubspace, "internal: inexact Bareiss division");
          nr.emplace(j, std::move(*q));
        }
      }
      r = std::move(nr);
    }
    prev = p;
    res.pivot_rows.push_back(br);
    res.pivot_cols.push_back(bc);
  }
  res.rows = std::move(rows);
  return res;
}

// kernel vectors from an echelon system: one per free column
std::vector<Vec> back_substitute(const std::vector<PRow>& prow_by_pivot, const std::vector<size_t>& pivot_cols,
                                 const std::vector<size_t>& free_cols, size_t ncols) {
  std::vector<Vec> out;
  for (size_t f : free_cols) {
    Vec x(ncols);
    x[f] = Scalar(1);
    for (size_t k = pivot_cols.size(); k-- > 0;) {
      const PRow& r = prow_by_pivot[k];
      Scalar s;
      for (auto& [j, v] : r) {
        if (j == pivot_cols[k] || x[j].is_zero()) continue;
        s += Scalar::frac(v, Poly(1)) * x[j];
      }
      if (!s.is_zero()) x[pivot_cols[k]] = -s / Scalar::frac(r.at(pivot_cols[k]), Poly(1));
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Gauss-Jordan over the fraction field, for entries in Q(omega)(params) where
// polynomial arithmetic would not reduce omega^2
QResult_S scalar_eliminate(std::vector<SRow> rows, size_t ncols, const std::vector<int>& col_class) {
  QResult_S res;
  std::vector<size_t> pivot_rows;
  std::vector<bool> row_done(rows.size(), false);
  while (true) {
    std::vector<size_t> col_count(ncols, 0);
    for (size_t i = 0; i < rows.size(); ++i)
      if (!row_done[i])
        for (auto& [j, v] : rows[i]) ++col_count[j];
    long best = -1;
    size_t br = 0, bc = 0;
    int bclass = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (row_done[i]) continue;
      long rc = static_cast<long>(rows[i].size()) - 1;
      for (auto& [j, v] : rows[i]) {
        int cl = col_class.empty() ? 0 : col_class[j];
        long score = rc * (static_cast<long>(col_count[j]) - 1);
        if (best < 0 || cl < bclass || (cl == bclass && score < best)) {
          best = score;
          br = i;
          bc = j;
          bclass = cl;
        }
      }
    }
    if (best < 0) break;
    row_done[br] = true;
    Scalar inv = rows[br][bc].inv();
    for (auto& [j, v] : rows[br]) v *= inv;
    const SRow prow = rows[br];
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == br) continue;
      auto it = rows[i].find(bc);
      if (it == rows[i].end()) continue;
      Scalar f = it->second;
      for (auto& [j, v] : prow) {
        auto jt = rows[i].find(j);
        if (jt == rows[i].end()) {
          rows[i].emplace(j, -f * v);
        } else {
          jt->second -= f * v;
          if (jt->second.is_zero()) rows[i].erase(jt);
        }
      }
    }
    res.pivot_cols.push_back(bc);
    pivot_rows.push_back(br);
  }
  for (size_t r : pivot_rows) res.rref.push_back(rows[r]);
  return res;
}

std::vector<Var> vars_of(const std::vector<const SRow*>& rows) {
  std::vector<Var> vs;
  for (auto* r : rows)
    for (auto& [j, v] : *r) {
      auto w = v.vars();
      vs.insert(vs.end(), w.begin(), w.end());
    }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

struct LocalResult {
  size_t rank = 0;
  std::vector<size_t> pivot_cols;  // local
  std::vector<Vec> kernel;         // local length
  bool fallback = false;
};

bool has_omega(const std::vector<Var>& vs) {
  return std::binary_search(vs.begin(), vs.end(), Var::omega());
}

// the elimination for one component; local column ids 0..nc-1
LocalResult eliminate_local(const std::vector<SRow>& rows, size_t nc, const std::vector<int>& col_class,
                            bool want_kernel) {
  LocalResult out;
  std::vector<const SRow*> ptrs;
  for (auto& r : rows) ptrs.push_back(&r);
  auto vs = vars_of(ptrs);

  if (vs.empty()) {
    std::vector<std::map<size_t, mpq_class>> q(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (auto& [j, v] : rows[i]) q[i].emplace(j, v.rational());
    QResult qr = rational_eliminate(std::move(q), nc, col_class);
    out.rank = qr.pivot_cols.size();
    out.pivot_cols = qr.pivot_cols;
    if (want_kernel) {
      std::vector<bool> is_piv(nc, false);
      for (size_t c : qr.pivot_cols) is_piv[c] = true;
      for (size_t f = 0; f < nc; ++f) {
        if (is_piv[f]) continue;
        Vec x(nc);
        x[f] = Scalar(1);
        for (size_t k = 0; k < qr.pivot_cols.size(); ++k) {
          auto it = qr.rref[k].find(f);
          if (it != qr.rref[k].end()) x[qr.pivot_cols[k]] = Scalar(mpq_class(-it->second));
        }
        out.kernel.push_back(std::move(x));
      }
    }
    return out;
  }

  if (has_omega(vs)) {
    QResult_S sr = scalar_eliminate(rows, nc, col_class);
    out.rank = sr.pivot_cols.size();
    out.pivot_cols = sr.pivot_cols;
    if (want_kernel) {
      std::vector<bool> is_piv(nc, false);
      for (size_t c : sr.pivot_cols) is_piv[c] = true;
      for (size_t f = 0; f < nc; ++f) {
        if (is_piv[f]) continue;
        Vec x(nc);
        x[f] = Scalar(1);
        for (size_t k = 0; k < sr.pivot_cols.size(); ++k) {
          auto it = sr.rref[k].find(f);
          if (it != sr.rref[k].end()) x[sr.pivot_cols[k]] = -it->second;
        }
        out.kernel.push_back(std::move(x));
      }
    }
    return out;
  }

  {
    std::mt19937_64 rng(0x5eedULL + rows.size() * 131 + nc);
    for (int attempt = 0; attempt < 3; ++attempt) {
      ParamAssignment pt;
      for (Var v : vs) {
        long num = static_cast<long>(rng() % 193) - 96;
        if (num == 0) num = 101;
        long den = 1 + static_cast<long>(rng() % 37);
        mpq_class tmp(num, den);
        tmp.canonicalize();
        pt[v] = Scalar(tmp);
      }
      std::vector<std::map<size_t, mpq_class>> q(rows.size());
      bool pole = false;
      for (size_t i = 0; i < rows.size() && !pole; ++i) {
        for (auto& [j, v] : rows[i]) {
          try {
            Scalar s = specialize(v, pt);
            if (!s.is_zero()) q[i].emplace(j, s.rational());
          } catch (const Error&) {
            pole = true;
            break;
          }
        }
      }
      if (pole) continue;
      QResult qr = rational_eliminate(std::move(q), nc, col_class);
      size_t r = qr.pivot_cols.size();
      // symbolic Bareiss on the selected rows only, same pivot columns
      std::vector<PRow> sel;
      for (size_t pr : qr.pivot_rows) sel.push_back(clear_denominators(rows[pr]));
      BareissResult br = bareiss(sel, nc, col_class, qr.pivot_cols);
      if (br.pivot_cols.size() != r) continue;
      std::vector<bool> is_piv(nc, false);
      for (size_t c : br.pivot_cols) is_piv[c] = true;
      std::vector<size_t> free_cols;
      for (size_t f = 0; f < nc; ++f)
        if (!is_piv[f]) free_cols.push_back(f);
      std::vector<PRow> by_pivot;
      for (size_t pr : br.pivot_rows) by_pivot.push_back(br.rows[pr]);
      auto kern = back_substitute(by_pivot, br.pivot_cols, free_cols, nc);
      // certify against every row of the component
      bool ok = true;
      for (auto& v : kern) {
        for (auto& row : rows) {
          Scalar s;
          for (auto& [j, x] : row)
            if (!v[j].is_zero()) s += x * v[j];
          if (!s.is_zero()) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) continue;
      out.rank = r;
      out.pivot_cols = br.pivot_cols;
      out.kernel = std::move(kern);
      return out;
    }
  }

  // full Bareiss over all rows
  std::vector<PRow> all;
  for (auto& r : rows) all.push_back(clear_denominators(r));
  BareissResult br = bareiss(all, nc, col_class);
  out.fallback = true;
  out.rank = br.pivot_cols.size();
  out.pivot_cols = br.pivot_cols;
  if (want_kernel) {
    std::vector<bool> is_piv(nc, false);
    for (size_t c : br.pivot_cols) is_piv[c] = true;
    std::vector<size_t> free_cols;
    for (size_t f = 0; f < nc; ++f)
      if (!is_piv[f]) free_cols.push_back(f);
    std::vector<PRow> by_pivot;
    for (size_t pr : br.pivot_rows) by_pivot.push_back(br.rows[pr]);
    out.kernel = back_substitute(by_pivot, br.pivot_cols, free_cols, nc);
  }
  return out;
}

struct GlobalResult {
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
  std::vector<Vec> kernel;
  bool fallback = false;
};

GlobalResult eliminate(const ExactMatrix& m, bool want_kernel, const std::vector<int>& col_class = {}) {
  GlobalResult g;
  for (auto& comp : components(m)) {
    std::map<size_t, size_t> local;
    for (size_t k = 0; k < comp.cols.size(); ++k) local[comp.cols[k]] = k;
    std::vector<SRow> rows;
    for (size_t i : comp.rows) {
      SRow r;
      for (auto& [j, v] : m.row(i)) r.emplace(local[j], v);
      rows.push_back(std::move(r));
    }
    std::vector<int> cls;
    if (!col_class.empty())
      for (size_t c : comp.cols) cls.push_back(col_class[c]);
    LocalResult lr;
    if (rows.empty()) {
      if (want_kernel)
        for (size_t k = 0; k < comp.cols.size(); ++k) {
          Vec x(comp.cols.size());
          x[k] = Scalar(1);
          lr.kernel.push_back(std::move(x));
        }
    } else {
      lr = eliminate_local(rows, comp.cols.size(), cls, want_kernel);
    }
    g.rank += lr.rank;
    g.fallback = g.fallback || lr.fallback;
    for (size_t c : lr.pivot_cols) g.pivot_cols.push_back(comp.cols[c]);
    for (auto& v : lr.kernel) {
      Vec x(m.cols());
      for (size_t k = 0; k < v.size(); ++k) x[comp.cols[k]] = v[k];
      g.kernel.push_back(std::move(x));
    }
  }
  // order kernel vectors by their free column (the first position holding an exact 1 among free columns)
  return g;
}

}  // namespace

size_t rank(const ExactMatrix& m, const std::optional<ParamAssignment>& asg) {
  if (asg) return eliminate(m.specialized(*asg), false).rank;
  return eliminate(m, false).rank;
}

std::vector<Vec> kernel_basis(const ExactMatrix& m) {
  auto g = eliminate(m, true);
  return g.kernel;
}

EchelonInfo echelon_info(const ExactMatrix& m) {
  auto g = eliminate(m, false);
  EchelonInfo e;
  e.rank = g.rank;
  e.pivot_cols = g.pivot_cols;
  e.used_fallback = g.fallback;
  return e;
}

size_t rank_bareiss(const ExactMatrix& m) {
  std::vector<PRow> rows;
  for (size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) rows.push_back(clear_denominators(m.row(i)));
  return bareiss(rows, m.cols(), {}).pivot_cols.size();
}

std::optional<Vec> solve(const ExactMatrix& m, const Vec& b) {
  if (b.size() != m.rows()) fail(ErrorKind::ShapeMismatch, "right-hand side length");
  ExactMatrix aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (auto& [j, v] : m.row(i)) aug.set(i, j, v);
    aug.set(i, m.cols(), b[i]);
  }
  std::vector<int> cls(m.cols() + 1, 0);
  cls[m.cols()] = 1;  // the right-hand side is pivoted only when forced
  auto g = eliminate(aug, true, cls);
  for (size_t c : g.pivot_cols)
    if (c == m.cols()) return std::nullopt;
  for (auto& v : g.kernel) {
    if (v[m.cols()].is_one()) {
      Vec x(v.begin(), v.end() - 1);
      for (auto& s : x) s = -s;
      // free columns other than b were set to zero by construction
      return x;
    }
  }
  if (is_zero_vec(b)) return Vec(m.cols());
  return std::nullopt;
}

std::vector<std::map<size_t, Scalar>> rref(const ExactMatrix& m) {
  std::vector<SRow> rows;
  for (size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) rows.push_back(m.row(i));
  std::vector<SRow> done;
  for (size_t c = 0; c < m.cols() && !rows.empty(); ++c) {
    // among rows with an entry in c, take the sparsest
    size_t best = rows.size();
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i].count(c) && (best == rows.size() || rows[i].size() < rows[best].size())) best = i;
    if (best == rows.size()) continue;
    SRow p = std::move(rows[best]);
    rows.erase(rows.begin() + static_cast<long>(best));
    Scalar inv = p.at(c).inv();
    for (auto& [j, v] : p) v *= inv;
    auto eliminate_in = [&](SRow& r) {
      auto it = r.find(c);
      if (it == r.end()) return;
      Scalar f = it->second;
      for (auto& [j, v] : p) {
        auto jt = r.find(j);
        if (jt == r.end()) {
          r.emplace(j, -f * v);
        } else {
          jt->second -= f * v;
          if (jt->second.is_zero()) r.erase(jt);
        }
      }
    };
    for (auto& r : rows) eliminate_in(r);
    for (auto& r : done) eliminate_in(r);
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const SRow& r) { return r.empty(); }), rows.end());
    done.push_back(std::move(p));
  }
  return done;
}

size_t span_rank(const std::vector<Vec>& vs) {
  if (vs.empty()) return 0;
  ExactMatrix m(vs.size(), vs[0].size());
  for (size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != vs[0].size()) fail(ErrorKind::ShapeMismatch, "vectors of different length");
    for (size_t j = 0; j < vs[i].size(); ++j) m.set(i, j, vs[i][j]);
  }
  return rank(m);
}

size_t quotient_dim(const std::vector<Vec>& z, const std::vector<Vec>& b) {
  size_t rz = span_rank(z);
  std::vector<Vec> both = z;
  both.insert(both.end(), b.begin(), b.end());
  size_t rzb = span_rank(both);
  if (rzb != rz) fail(ErrorKind::NotASubspace, "span(B) is not contained in span(Z)");
  return rz - span_rank(b);
}

}  // namespace mqg
