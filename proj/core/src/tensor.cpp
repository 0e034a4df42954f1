#include "mqg/tensor.hpp"

#include <algorithm>

#include "mqg/error.hpp"

namespace mqg {

namespace {

uint32_t ipow(int n, int k) {
  uint64_t d = 1;
  for (int i = 0; i < k; ++i) {
    d *= static_cast<uint64_t>(n);
    if (d > (1u << 24)) fail(ErrorKind::DimensionOverflow, "tensor space too large");
  }
  return static_cast<uint32_t>(d);
}

uint32_t encode_idx(const MultiIndex& m, int n, int k) {
  if (static_cast<int>(m.size()) != k) fail(ErrorKind::ShapeMismatch, "multi-index length");
  uint32_t r = 0;
  for (int v : m) {
    if (v < 1 || v > n) fail(ErrorKind::ShapeMismatch, "index out of range");
    r = r * n + (v - 1);
  }
  return r;
}

MultiIndex decode_idx(uint32_t idx, int n, int k) {
  MultiIndex m(k);
  for (int t = k - 1; t >= 0; --t) {
    m[t] = static_cast<int>(idx % n) + 1;
    idx /= n;
  }
  return m;
}

}  // namespace

std::string index_str(const MultiIndex& m) {
  std::string s;
  for (int v : m) s += std::to_string(v);
  return s;
}

LinOp::LinOp(int n, int legs) : n_(n), k_(legs) {
  if (n < 1 || legs < 1) fail(ErrorKind::ShapeMismatch, "dimension and legs must be positive");
  dim_ = ipow(n, legs);
}

LinOp LinOp::identity(int n, int legs) {
  LinOp r(n, legs);
  for (uint32_t i = 0; i < r.dim_; ++i) r.e_[r.key(i, i)] = Scalar(1);
  return r;
}

LinOp LinOp::flip(int n) {
  LinOp r(n, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) r.set({i, j}, {j, i}, Scalar(1));
  return r;
}

LinOp LinOp::from_dense(int n, int legs, const std::vector<std::vector<Scalar>>& rows) {
  LinOp r(n, legs);
  if (rows.size() != r.dim_) fail(ErrorKind::ShapeMismatch, "dense row count");
  for (uint32_t i = 0; i < r.dim_; ++i) {
    if (rows[i].size() != r.dim_) fail(ErrorKind::ShapeMismatch, "dense column count");
    for (uint32_t j = 0; j < r.dim_; ++j) r.set(i, j, rows[i][j]);
  }
  return r;
}

uint32_t LinOp::encode(const MultiIndex& m) const { return encode_idx(m, n_, k_); }
MultiIndex LinOp::decode(uint32_t idx) const { return decode_idx(idx, n_, k_); }

Scalar LinOp::get(uint32_t r, uint32_t c) const {
  auto it = e_.find(key(r, c));
  return it == e_.end() ? Scalar() : it->second;
}

void LinOp::set(uint32_t r, uint32_t c, const Scalar& v) {
  if (r >= dim_ || c >= dim_) fail(ErrorKind::ShapeMismatch, "entry out of range");
  if (v.is_zero()) {
    e_.erase(key(r, c));
  } else {
    e_[key(r, c)] = v;
  }
}

void LinOp::add(uint32_t r, uint32_t c, const Scalar& v) {
  if (v.is_zero()) return;
  auto k = key(r, c);
  auto it = e_.find(k);
  if (it == e_.end()) {
    e_.emplace(k, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) e_.erase(it);
  }
}

std::vector<std::tuple<uint32_t, uint32_t, Scalar>> LinOp::entries() const {
  std::vector<std::tuple<uint32_t, uint32_t, Scalar>> out;
  out.reserve(e_.size());
  for (auto& [k, v] : e_) out.emplace_back(static_cast<uint32_t>(k / dim_), static_cast<uint32_t>(k % dim_), v);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  return out;
}

void LinOp::check_same(const LinOp& o) const {
  if (n_ != o.n_ || k_ != o.k_) fail(ErrorKind::ShapeMismatch, "operators on different spaces");
}

LinOp LinOp::operator+(const LinOp& o) const {
  check_same(o);
  LinOp r = *this;
  for (auto& [k, v] : o.e_) {
    auto it = r.e_.find(k);
    if (it == r.e_.end()) {
      r.e_.emplace(k, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) r.e_.erase(it);
    }
  }
  return r;
}

LinOp LinOp::operator-() const {
  LinOp r = *this;
  for (auto& [k, v] : r.e_) v = -v;
  return r;
}

LinOp LinOp::operator-(const LinOp& o) const { return *this + (-o); }

LinOp LinOp::scaled(const Scalar& s) const {
  if (s.is_zero()) return LinOp(n_, k_);
  LinOp r = *this;
  for (auto& [k, v] : r.e_) v *= s;
  return r;
}

LinOp LinOp::transpose() const {
  LinOp r(n_, k_);
  for (auto& [k, v] : e_) r.e_.emplace(r.key(static_cast<uint32_t>(k % dim_), static_cast<uint32_t>(k / dim_)), v);
  return r;
}

LinOp LinOp::map(const std::function<Scalar(const Scalar&)>& f) const {
  LinOp r(n_, k_);
  for (auto& [k, v] : e_) {
    Scalar w = f(v);
    if (!w.is_zero()) r.e_.emplace(k, std::move(w));
  }
  return r;
}

bool LinOp::operator==(const LinOp& o) const {
  if (n_ != o.n_ || k_ != o.k_ || e_.size() != o.e_.size()) return false;
  for (auto& [k, v] : e_) {
    auto it = o.e_.find(k);
    if (it == o.e_.end() || it->second != v) return false;
  }
  return true;
}

LinOp compose(const LinOp& a, const LinOp& b) {
  if (a.dim_v() != b.dim_v() || a.legs() != b.legs()) fail(ErrorKind::ShapeMismatch, "compose shapes differ");
  uint32_t d = a.dim();
  std::vector<std::vector<std::pair<uint32_t, Scalar>>> brows(d);
  for (auto& [r, c, v] : b.entries()) brows[r].emplace_back(c, v);
  std::vector<std::vector<std::pair<uint32_t, Scalar>>> arows(d);
  for (auto& [r, c, v] : a.entries()) arows[r].emplace_back(c, v);
  LinOp out(a.dim_v(), a.legs());
  std::vector<std::vector<Scalar>> terms(d);
  for (uint32_t r = 0; r < d; ++r) {
    if (arows[r].empty()) continue;
    std::vector<uint32_t> touched;
    for (auto& [m, av] : arows[r]) {
      for (auto& [c, bv] : brows[m]) {
        if (terms[c].empty()) touched.push_back(c);
        terms[c].push_back(av * bv);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (uint32_t c : touched) {
      Scalar s;
      for (auto& t : terms[c]) s += t;
      terms[c].clear();
      out.set(r, c, s);
    }
  }
  return out;
}

LinOp lift(const LinOp& a, int i, int k) {
  if (a.legs() != 2 || i < 1 || i >= k) fail(ErrorKind::ShapeMismatch, "lift needs a two-leg operator and 1<=i<k");
  int n = a.dim_v();
  LinOp out(n, k);
  uint32_t rest = 1;
  for (int t = 0; t < k - 2; ++t) rest *= n;
  auto ents = a.entries();
  for (uint32_t o = 0; o < rest; ++o) {
    MultiIndex other = decode_idx(o, n, k - 2);
    for (auto& [r, c, v] : ents) {
      MultiIndex rr = a.decode(r), cc = a.decode(c);
      MultiIndex R, C;
      int pos = 0;
      for (int t = 1; t <= k; ++t) {
        if (t == i) {
          R.push_back(rr[0]);
          C.push_back(cc[0]);
        } else if (t == i + 1) {
          R.push_back(rr[1]);
          C.push_back(cc[1]);
        } else {
          R.push_back(other[pos]);
          C.push_back(other[pos]);
          ++pos;
        }
      }
      out.set(R, C, v);
    }
  }
  return out;
}

static MultiIndex permute(const MultiIndex& m, const std::vector<int>& perm) {
  MultiIndex out(m.size());
  for (size_t t = 0; t < m.size(); ++t) out[perm[t] - 1] = m[t];
  return out;
}

static void check_perm(const std::vector<int>& perm, int k) {
  if (static_cast<int>(perm.size()) != k) fail(ErrorKind::ShapeMismatch, "permutation length");
  std::vector<int> s = perm;
  std::sort(s.begin(), s.end());
  for (int t = 0; t < k; ++t)
    if (s[t] != t + 1) fail(ErrorKind::ShapeMismatch, "not a permutation");
}

LinOp flip_legs(const LinOp& a, const std::vector<int>& perm) {
  check_perm(perm, a.legs());
  LinOp out(a.dim_v(), a.legs());
  for (auto& [r, c, v] : a.entries()) out.set(permute(a.decode(r), perm), permute(a.decode(c), perm), v);
  return out;
}

LinOp flip_col_legs(const LinOp& a, const std::vector<int>& perm) {
  check_perm(perm, a.legs());
  LinOp out(a.dim_v(), a.legs());
  for (auto& [r, c, v] : a.entries()) out.set(a.decode(r), permute(a.decode(c), perm), v);
  return out;
}

// ---- CoTensor

CoTensor::CoTensor(int n, int legs) : n_(n), k_(legs) {
  if (n < 1 || legs < 1) fail(ErrorKind::ShapeMismatch, "dimension and legs must be positive");
  dim_ = ipow(n, legs);
}

uint32_t CoTensor::encode(const MultiIndex& m) const { return encode_idx(m, n_, k_); }
MultiIndex CoTensor::decode(uint32_t idx) const { return decode_idx(idx, n_, k_); }

Scalar CoTensor::get(uint32_t i) const {
  auto it = e_.find(i);
  return it == e_.end() ? Scalar() : it->second;
}

Scalar CoTensor::at(const MultiIndex& m) const { return get(encode(m)); }

void CoTensor::set(uint32_t i, const Scalar& v) {
  if (i >= dim_) fail(ErrorKind::ShapeMismatch, "entry out of range");
  if (v.is_zero()) {
    e_.erase(i);
  } else {
    e_[i] = v;
  }
}

void CoTensor::set(const MultiIndex& m, const Scalar& v) { set(encode(m), v); }

std::vector<std::pair<uint32_t, Scalar>> CoTensor::entries() const {
  std::vector<std::pair<uint32_t, Scalar>> out(e_.begin(), e_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

bool CoTensor::operator==(const CoTensor& o) const {
  if (n_ != o.n_ || k_ != o.k_ || e_.size() != o.e_.size()) return false;
  for (auto& [k, v] : e_) {
    auto it = o.e_.find(k);
    if (it == o.e_.end() || it->second != v) return false;
  }
  return true;
}

CoTensor CoTensor::words(int n, int legs, char letter) {
  CoTensor t(n, legs);
  for (uint32_t i = 0; i < t.dim_; ++i) {
    std::string name;
    for (int v : t.decode(i)) name += std::string(1, letter) + std::to_string(v);
    t.set(i, Scalar(Var::named(name)));
  }
  return t;
}

CoTensor act_row(const CoTensor& x, const LinOp& a) {
  if (x.dim_v() != a.dim_v() || x.legs() != a.legs()) fail(ErrorKind::ShapeMismatch, "act_row shapes differ");
  CoTensor out(x.dim_v(), x.legs());
  std::vector<Scalar> acc(x.dim());
  for (auto& [r, c, v] : a.entries()) {
    Scalar xc = x.get(c);
    if (!xc.is_zero()) acc[r] += v * xc;
  }
  for (uint32_t r = 0; r < x.dim(); ++r) out.set(r, acc[r]);
  return out;
}

}  // namespace mqg
