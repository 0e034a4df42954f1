#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "mqg/deform.hpp"
#include "mqg/error.hpp"
#include "mqg/manin.hpp"
#include "mqg/quantum.hpp"

namespace mqg::cli {

using json = nlohmann::json;

namespace {

// ---- serialization

json j_index(const MultiIndex& m) {
  json a = json::array();
  for (int i : m) a.push_back(i);
  return a;
}

json j_linop(const LinOp& op) {
  json e = json::array();
  for (auto& [r, c, v] : op.entries())
    e.push_back({{"row", j_index(op.decode(r))}, {"col", j_index(op.decode(c))}, {"value", v.str()}});
  return {{"n", op.dim_v()}, {"legs", op.legs()}, {"entries", e}};
}

json j_scalars(const std::vector<Scalar>& v) {
  json a = json::array();
  for (auto& s : v) a.push_back(s.str());
  return a;
}

json j_mat(const Mat& m) {
  json a = json::array();
  for (auto& row : m) a.push_back(j_scalars(row));
  return a;
}

json j_gtensor(const GTensor& t, const std::vector<std::string>& labels) {
  json a = json::array();
  for (auto& [idx, v] : t.c) {
    json l = json::array();
    for (int i : idx) l.push_back(labels[i]);
    a.push_back({{"index", l}, {"value", v.str()}});
  }
  return a;
}

json j_svec(const SVec& v, const std::vector<std::string>& labels) {
  json a = json::array();
  for (auto& [k, c] : v) a.push_back({{"basis", labels[k]}, {"value", c.str()}});
  return a;
}

json j_check(const CheckReport& r) {
  json d = json::object();
  for (auto& [k, v] : r.details) d[k] = v;
  json out = {{"check", r.check}, {"pass", r.pass}, {"details", d}};
  if (!r.context.empty()) out["context"] = r.context;
  if (r.defect) out["defect"] = j_linop(*r.defect);
  return out;
}

CheckReport make_check(const std::string& name, bool pass, const std::string& defect = "") {
  CheckReport r;
  r.check = name;
  r.pass = pass;
  if (!pass && !defect.empty()) r.details.emplace_back("defect", defect);
  return r;
}

CheckReport linop_zero_check(const std::string& name, const LinOp& d) {
  CheckReport r = make_check(name, d.is_zero());
  if (!r.pass) r.defect = d;
  return r;
}

std::string first_nonzero(const GTensor& t, const std::vector<std::string>& labels) {
  if (t.c.empty()) return "";
  auto& [idx, v] = *t.c.begin();
  std::string s;
  for (int i : idx) s += (s.empty() ? "" : ",") + labels[i];
  return "component (" + s + ") = " + v.str();
}

[[noreturn]] void input_error(const std::string& msg) { fail(ErrorKind::InputError, msg); }

// ---- inputs

struct Common {
  std::string params_path, specialize, out;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) input_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    input_error(path + ": " + e.what());
  }
}

ParamAssignment assignment_from(const json& j) {
  if (j.is_string()) return parse_assignment(j.get<std::string>());
  if (!j.is_object()) input_error("assignment must be a string or an object");
  ParamAssignment a;
  for (auto& [k, v] : j.items()) {
    if (!v.is_string()) input_error("assignment value for " + k + " must be a string");
    a[Var::parse(k)] = Scalar::parse(v.get<std::string>());
  }
  validate_assignment(a);
  return a;
}

struct QInput {
  QData qd;
  json echo;
};

QInput load_q(int n_opt, const Common& c) {
  json params = c.params_path.empty() ? json::object() : read_json_file(c.params_path);
  int n = n_opt;
  if (params.contains("n")) {
    if (!params["n"].is_number_integer()) input_error("n must be an integer");
    int pn = params["n"].get<int>();
    if (n > 0 && n != pn) input_error("--n disagrees with the params file");
    n = pn;
  }
  if (n < 2 || n > 4) input_error("n must be 2, 3 or 4");
  QInput out;
  out.qd = QData::symbolic(n);
  out.echo = {{"n", n}};
  if (params.contains("a")) {
    if (!params["a"].is_string()) input_error("a must be a string");
    out.qd.a = Scalar::parse(params["a"].get<std::string>());
    out.echo["a"] = out.qd.a.str();
  }
  if (params.contains("assign")) {
    ParamAssignment sub = assignment_from(params["assign"]);
    out.qd = on_surface(out.qd, sub);
    json e = json::object();
    for (auto& [v, s] : sub) e[v.name()] = s.str();
    out.echo["assign"] = e;
  }
  if (!c.specialize.empty()) {
    ParamAssignment sp = parse_assignment(c.specialize);
    out.qd = out.qd.specialized(sp);
    json e = json::object();
    for (auto& [v, s] : sp) e[v.name()] = s.str();
    out.echo["specialize"] = e;
  }
  out.qd.validate();
  return out;
}

std::pair<int, int> parse_pair(const std::string& s) {
  int a = 0, b = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> a >> comma >> b) || comma != ',') input_error("expected i,j in '" + s + "'");
  return {a, b};
}

struct AlgebraInput {
  LieAlgebra g;
  std::optional<SlData> sl;
  GTensor r;
  bool has_r = false;
  Mat r0_hat;
  json echo;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

// "12=1/6,13=t" on 1-based Cartan indices; the antisymmetric partner is filled in
Mat parse_r0(const std::string& text, int rank) {
  if (text == "symbolic") return symbolic_r0_hat(rank);
  Mat m(rank, std::vector<Scalar>(rank));
  for (auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq != 2 || !isdigit(item[0]) || !isdigit(item[1])) input_error("expected ij=value in '" + item + "'");
    int i = item[0] - '1', j = item[1] - '1';
    if (i < 0 || j < 0 || i >= rank || j >= rank || i == j) input_error("r0 index out of range in '" + item + "'");
    Scalar v = Scalar::parse(item.substr(eq + 1));
    m[i][j] = v;
    m[j][i] = -v;
  }
  return m;
}

AlgebraInput load_algebra(const std::string& spec, const std::string& r0_text, const Common& c) {
  AlgebraInput in;
  json j;
  if (spec.rfind("sl", 0) == 0 && spec.size() == 3 && isdigit(spec[2])) {
    j = {{"type", "sl"}, {"n", spec[2] - '0'}};
  } else {
    j = read_json_file(spec);
  }
  if (j.value("type", std::string()) == "sl") {
    if (!j.contains("n") || !j["n"].is_number_integer()) input_error("sl algebra needs an integer n");
    int n = j["n"].get<int>();
    if (n < 2 || n > 5) input_error("sl(n) is supported for n = 2..5");
    in.sl = build_sl(n);
    in.g = in.sl->g;
    std::string r0 = r0_text;
    if (r0.empty() && j.contains("r0_hat")) r0 = j["r0_hat"].get<std::string>();
    in.r0_hat = parse_r0(r0, n - 1);
    if (!c.specialize.empty()) {
      ParamAssignment sp = parse_assignment(c.specialize);
      for (auto& row : in.r0_hat)
        for (auto& x : row) x = specialize(x, sp);
    }
    in.r = standard_r(*in.sl, in.r0_hat);
    in.has_r = true;
    in.echo = {{"type", "sl"}, {"n", n}, {"r0_hat", j_mat(in.r0_hat)}};
    return in;
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) input_error("explicit algebra needs an integer dim");
  int dim = j["dim"].get<int>();
  if (dim < 1 || dim > 16) input_error("dim must be 1..16");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  } else {
    for (int i = 1; i <= dim; ++i) labels.push_back("L" + std::to_string(i));
  }
  Structure eps(dim, std::vector<SVec>(dim));
  auto idx = [&](const json& e, const char* key) {
    if (!e.contains(key) || !e[key].is_number_integer()) input_error(std::string("entry needs integer ") + key);
    int v = e[key].get<int>();
    if (v < 1 || v > dim) input_error(std::string(key) + " out of range");
    return v - 1;
  };
  for (auto& e : j.value("eps", json::array())) {
    int a = idx(e, "i"), b = idx(e, "j"), k = idx(e, "k");
    Scalar v = Scalar::parse(e.value("v", std::string("1")));
    if (a == b) input_error("[L_i, L_i] must vanish");
    eps[a][b][k] = v;
    eps[b][a][k] = -v;
  }
  std::optional<Mat> form;
  if (j.contains("form")) {
    Mat f;
    for (auto& row : j["form"]) {
      std::vector<Scalar> r;
      for (auto& x : row) r.push_back(Scalar::parse(x.get<std::string>()));
      f.push_back(r);
    }
    form = f;
  }
  in.g = LieAlgebra::from_structure(labels, eps, form);
  in.r.rank = 2;
  if (j.contains("r")) {
    for (auto& e : j["r"]) in.r.add({idx(e, "i"), idx(e, "j")}, Scalar::parse(e.value("v", std::string("1"))));
    in.has_r = true;
  }
  in.echo = {{"dim", dim}, {"labels", labels}};
  return in;
}

const SlData& need_sl(const AlgebraInput& in) {
  if (!in.sl) input_error("this command needs an sl(n) algebra");
  return *in.sl;
}

const GTensor& need_r(const AlgebraInput& in) {
  if (!in.has_r) input_error("no r given for this algebra");
  return in.r;
}

std::vector<std::string> dual_labels(const LieAlgebra& g) {
  std::vector<std::string> l;
  for (auto& s : g.labels) l.push_back(s + "*");
  return l;
}

// ---- reports

struct Report {
  json input = json::object();
  json result = json::object();
  std::vector<CheckReport> checks;
  std::optional<json> error;
};

LinOp with_eps(const FirstOrderDef& d) { return d.base + d.direction.scaled(Scalar(Var::eps())); }

bool all_zero(const std::vector<Scalar>& v) {
  for (auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

// ---- quantum

void cmd_check_quantum(Report& rep, int n, const std::string& suite, const Common& c) {
  QInput q = load_q(n, c);
  rep.input = q.echo;
  rep.input["suite"] = suite;
  LinOp P = standard_P(q.qd);
  rep.result["P"] = j_linop(P);
  for (auto& s : split(suite, ',')) {
    if (s == "hecke") {
      rep.checks.push_back(hecke_check(P, q.qd.a));
    } else if (s == "braid") {
      rep.checks.push_back(linop_zero_check("braid", braid_defect(P)));
    } else if (s == "ideal") {
      rep.checks.push_back(ideal_stability_check(P, q.qd.a));
    } else if (s == "frt") {
      auto rels = frt_relations(P);
      json a = json::array();
      for (auto& r : rels) a.push_back(r.str());
      rep.result["frt_relations"] = a;
      auto canon = canonical_relations(rels);
      std::string d;
      for (size_t i = 0; i < std::max(canon.size(), rels.size()) && d.empty(); ++i)
        if (i >= canon.size() || i >= rels.size() || canon[i] != rels[i])
          d = "relation " + std::to_string(i) + " is not in canonical form";
      CheckReport cr = make_check("frt", d.empty(), d);
      cr.details.emplace_back("count", std::to_string(rels.size()));
      rep.checks.push_back(cr);
    } else if (s == "invariants") {
      LinOp R = flip_col_legs(P.transpose(), {2, 1});
      RInvariants inv = rmatrix_invariants(R);
      CheckReport cr = linop_zero_check("yang_baxter", inv.yb_defect);
      cr.pass = inv.yang_baxter;
      cr.details.emplace_back("trivial", inv.trivial ? "true" : "false");
      cr.details.emplace_back("unitary", inv.unitary ? "true" : "false");
      rep.checks.push_back(cr);
    } else {
      input_error("unknown suite item '" + s + "'");
    }
  }
}

// ---- deformations

struct ElemArgs {
  int i = 0, j = 0, k = 0, which = 0;
  std::string variant;
};

FirstOrderDef make_elementary(const ElemArgs& e, const QData& qd) {
  if (!e.variant.empty()) {
    ExceptionalVariant v = ExceptionalVariant::Upper;
    if (e.variant == "lower")
      v = ExceptionalVariant::Lower;
    else if (e.variant != "upper")
      input_error("variant must be upper or lower");
    return elementary_exceptional(e.i, e.j, e.k, v, qd);
  }
  if (e.which != 1 && e.which != 2) input_error("--case must be 1 or 2 (or give --variant)");
  return elementary_principal(e.i, e.j, e.which, qd);
}

json elem_echo(const ElemArgs& e) {
  json j = {{"i", e.i}, {"j", e.j}};
  if (e.variant.empty()) {
    j["case"] = e.which;
  } else {
    j["k"] = e.k;
    j["variant"] = e.variant;
  }
  return j;
}

void cmd_deform_space(Report& rep, int n, const Common& c) {
  QInput q = load_q(n, c);
  rep.input = q.echo;
  FirstOrderSpace fs = first_order_space(q.qd);
  rep.result["dim_total"] = fs.dim_total;
  rep.result["dim_trivial"] = fs.dim_trivial;
  rep.result["dim_essential"] = fs.dim_essential;
  json b = json::array();
  for (auto& x : fs.basis) b.push_back(j_linop(x));
  rep.result["basis"] = b;
  rep.checks.push_back(make_check("trivial_in_solutions", fs.dim_trivial <= fs.dim_total,
                                  "dim_trivial " + std::to_string(fs.dim_trivial) + " > dim_total " +
                                      std::to_string(fs.dim_total)));
}

void cmd_deform_elementary(Report& rep, int n, const ElemArgs& e, const Common& c) {
  QInput q = load_q(n, c);
  rep.input = q.echo;
  rep.input["direction"] = elem_echo(e);
  FirstOrderDef d = make_elementary(e, q.qd);
  rep.result["label"] = d.label;
  rep.result["direction"] = j_linop(d.direction);
  rep.result["conditions"] = j_scalars(d.conditions);
  QData on = q.qd;
  if (all_zero(d.conditions)) {
    rep.result["surface"] = "given";
  } else {
    auto sub = solve_surface(d.conditions);
    if (!sub) {
      // nothing to verify without a surface; the conditions themselves are the report
      rep.result["surface"] = "unsolved";
      return;
    }
    json s = json::object();
    for (auto& [v, x] : *sub) s[v.name()] = x.str();
    rep.result["surface"] = s;
    on = on_surface(q.qd, *sub);
    d = make_elementary(e, on);
  }
  LinOp full = with_eps(d);
  rep.checks.push_back(linop_zero_check("linear_braid", linear_braid(d.base, d.direction)));
  rep.checks.push_back(linop_zero_check("full_braid", braid_defect(full)));
  CheckReport h = hecke_check(full, on.a);
  h.check = "full_hecke";
  rep.checks.push_back(h);
}

void cmd_deform_normal_form(Report& rep, int n, const ElemArgs& e, const Common& c) {
  QInput q = load_q(n, c);
  rep.input = q.echo;
  rep.input["direction"] = elem_echo(e);
  FirstOrderDef d = make_elementary(e, q.qd);
  LinOp nf = normal_form(d.direction, q.qd);
  rep.result["direction"] = j_linop(d.direction);
  rep.result["normal_form"] = j_linop(nf);
  rep.checks.push_back(linop_zero_check("fixed_by_normal_form", nf - d.direction));
}

void cmd_deform_probe(Report& rep, int n, const Common& c) {
  QInput q = load_q(n, c);
  rep.input = q.echo;
  ProbeReport p = hecke_preservation_probe(q.qd);
  rep.result["dim_braid"] = p.dim_braid;
  rep.result["dim_hecke_braid"] = p.dim_hecke_braid;
  rep.result["strict"] = p.strict;
  rep.checks.push_back(make_check("probe_hecke", p.pass,
                                  "braid-only solutions exceed Hecke + braid solutions plus span{P, dP/da}: " +
                                      std::to_string(p.dim_braid) + " vs " + std::to_string(p.dim_hecke_braid)));
}

void cmd_deform_classical(Report& rep, int n, const ElemArgs& e) {
  if (n < 2 || n > 4) input_error("n must be 2, 3 or 4");
  rep.input = {{"n", n}};
  std::optional<LinOp> p1;
  if (e.i > 0) {
    FirstOrderDef d = make_elementary(e, QData::symbolic(n));
    p1 = d.direction;
    rep.input["direction"] = elem_echo(e);
  }
  ClassicalRMatrix cl = classical_limit(n, p1);
  rep.result["r"] = j_linop(cl.r);
  if (cl.delta_r) rep.result["delta_r"] = j_linop(*cl.delta_r);
  // r + r21 = sigma - 1: the split Casimir of gl(N) minus the identity
  LinOp want = LinOp::flip(n) - LinOp::identity(n, 2);
  rep.checks.push_back(linop_zero_check("symmetric_part", cl.r + flip_legs(cl.r, {2, 1}) - want));
}

void cmd_deform_bd(Report& rep, int n, const std::string& alpha, const std::string& tau, const std::string& p_text,
                   const std::string& slots) {
  if (n < 2 || n > 4) input_error("n must be 2, 3 or 4");
  if (slots != "literal" && slots != "swapped") input_error("slots must be literal or swapped");
  std::map<std::pair<int, int>, Scalar> p;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) p[{i, j}] = Scalar(Var::p(i, j));
  for (auto& item : split(p_text, ',')) {
    auto eq = item.find('=');
    if (eq != 2) input_error("expected ij=value in '" + item + "'");
    std::pair<int, int> key{item[0] - '0', item[1] - '0'};
    if (!p.count(key)) input_error("p index out of range in '" + item + "'");
    p[key] = Scalar::parse(item.substr(3));
  }
  auto a = parse_pair(alpha), t = parse_pair(tau);
  BDReport r = bd_invariance_check(n, p, a, t, slots == "literal" ? BDSlots::Literal : BDSlots::Swapped);
  json pin = json::object();
  for (auto& [k, v] : p) pin[std::to_string(k.first) + std::to_string(k.second)] = v.str();
  rep.input = {{"n", n}, {"alpha", alpha}, {"tau", tau}, {"slots", slots}, {"p", pin}};
  rep.result["components"] = j_scalars(r.components);
  rep.result["component_residuals"] = j_scalars(r.residuals);
  rep.result["matches_linear_system"] = r.matches_components;
  json v = json::array();
  for (int m : r.violated) v.push_back(m);
  rep.result["violated"] = v;
  std::string d;
  for (size_t m = 0; m < r.components.size() && d.empty(); ++m)
    if (!r.components[m].is_zero()) d = "component m=" + std::to_string(m + 1) + " = " + r.components[m].str();
  rep.checks.push_back(make_check("bd_invariance", r.pass, d));
}

void cmd_deform_sl(Report& rep, int n, const Common& c) {
  QInput q = load_q(n, c);
  rep.input = q.echo;
  rep.checks.push_back(sl_restriction_check(q.qd));
}

// ---- lie

void cmd_lie_build(Report& rep, const AlgebraInput& in) {
  rep.input = in.echo;
  const LieAlgebra& g = in.g;
  rep.result["dim"] = g.dim;
  rep.result["labels"] = g.labels;
  rep.result["killing"] = j_mat(g.killing);
  rep.result["casimir"] = j_mat(g.casimir);
  std::string jd = jacobi_defect(g.eps);
  rep.checks.push_back(make_check("jacobi", jd.empty(), jd));
  if (in.sl) {
    json roots = json::array();
    for (auto& r : in.sl->roots.positive) roots.push_back(RootSystem::label(r));
    rep.result["positive_roots"] = roots;
    rep.result["K0"] = j_mat(in.sl->roots.K0);
    rep.checks.push_back(make_check("weyl_relations", weyl_relations_hold(*in.sl), "Weyl basis relations fail"));
  }
}

void cmd_lie_r(Report& rep, const AlgebraInput& in) {
  rep.input = in.echo;
  const GTensor& r = need_r(in);
  rep.result["r"] = j_gtensor(r, in.g.labels);
  GTensor d = r + r.transposed() - casimir_tensor(in.g);
  rep.checks.push_back(make_check("symmetric_part_is_K", d.is_zero(), first_nonzero(d, in.g.labels)));
}

void cmd_lie_cobracket(Report& rep, const AlgebraInput& in) {
  rep.input = in.echo;
  Structure f = dual_bracket(in.g, need_r(in));
  auto dl = dual_labels(in.g);
  json a = json::array();
  for (int i = 0; i < in.g.dim; ++i)
    for (int j = i + 1; j < in.g.dim; ++j)
      if (!f[i][j].empty()) a.push_back({{"a", dl[i]}, {"b", dl[j]}, {"bracket", j_svec(f[i][j], dl)}});
  rep.result["dual_brackets"] = a;
  std::string jd = jacobi_defect(f);
  rep.checks.push_back(make_check("dual_jacobi", jd.empty(), jd));
  if (in.sl) {
    DualStructure ds = cobracket(*in.sl, in.r);
    const RootSystem& rs = in.sl->roots;
    json w = json::array();
    for (auto& [key, v] : ds.weights) {
      Root root = rs.positive[key.second >= 0 ? key.second : -key.second - 1];
      if (key.second < 0)
        for (auto& x : root) x = -x;
      w.push_back({{"cartan", key.first + 1}, {"root", RootSystem::label(root)}, {"weight", v.str()}});
    }
    rep.result["weights"] = w;
    rep.checks.push_back(make_check("cartan_primitive", ds.cartan_primitive, "Delta(h_i) != 0"));
    rep.checks.push_back(make_check("dual_relations", ds.dual_relations, "dual root relations fail"));
  }
}

void cmd_lie_compat(Report& rep, const AlgebraInput& in) {
  rep.input = in.echo;
  rep.checks.push_back(compatibility_check(in.g.eps, dual_bracket(in.g, need_r(in))));
}

void cmd_lie_cybe(Report& rep, const AlgebraInput& in) {
  rep.input = in.echo;
  const GTensor& r = need_r(in);
  GTensor s = schouten(in.g.eps, r);
  rep.result["schouten"] = j_gtensor(s, in.g.labels);
  rep.checks.push_back(make_check("cybe", s.is_zero(), first_nonzero(s, in.g.labels)));
  Identity322 id = check_identities_322(in.g, r, dual_bracket(in.g, r));
  rep.checks.push_back(make_check("identity_rU", id.first, id.detail));
  rep.checks.push_back(make_check("identity_rA", id.second, id.detail));
}

void cmd_lie_h2(Report& rep, const AlgebraInput& in) {
  rep.input = in.echo;
  const SlData& s = need_sl(in);
  H2Report h = h2_dual(s, in.r0_hat);
  json sig = json::array();
  for (auto& p : h.sigma) sig.push_back({RootSystem::label(p.alpha), RootSystem::label(p.beta)});
  rep.result["sigma"] = sig;
  rep.result["dim_z2"] = h.dim_z2;
  rep.result["dim_b2"] = h.dim_b2;
  rep.result["dim_h2"] = h.dim_h2;
  rep.result["dim_essential"] = h.dim_essential;
  rep.result["surface_equations"] = j_scalars(h.surface_equations);
  json b = json::array();
  for (auto& t : h.basis) b.push_back(j_gtensor(t, s.g.labels));
  rep.result["basis"] = b;
  rep.checks.push_back(make_check("sigma_agrees_with_r0_form", h.r0_form_agrees,
                                  "sigma from weights differs from the r0 condition"));
}

GTensor parse_r1(const std::string& text, const LieAlgebra& g) {
  GTensor r1;
  r1.rank = 2;
  for (auto& item : split(text, ',')) {
    auto eq = item.find('=');
    std::string lhs = eq == std::string::npos ? item : item.substr(0, eq);
    Scalar v = eq == std::string::npos ? Scalar(1) : Scalar::parse(item.substr(eq + 1));
    auto hat = lhs.find('^');
    if (hat == std::string::npos) input_error("expected A^B[=v] in '" + item + "'");
    int a = g.index_of(lhs.substr(0, hat)), b = g.index_of(lhs.substr(hat + 1));
    if (a < 0 || b < 0) input_error("unknown basis label in '" + item + "'");
    r1 = r1 + wedge2(g.dim, a, b, v);
  }
  return r1;
}

void cmd_lie_obstruct(Report& rep, const AlgebraInput& in, const std::string& r1_text) {
  rep.input = in.echo;
  rep.input["r1"] = r1_text;
  const SlData& s = need_sl(in);
  SecondOrderResult res = second_order_step(s, in.r, parse_r1(r1_text, s.g));
  rep.result["r1_closed"] = res.r1_closed;
  rep.result["yb_r1"] = j_gtensor(res.yb, s.g.labels);
  if (res.r2) {
    rep.result["r2"] = j_gtensor(*res.r2, s.g.labels);
    json fc = json::array();
    for (auto& [a, b] : res.free_components) fc.push_back({s.g.labels[a], s.g.labels[b]});
    rep.result["free_components"] = fc;
  }
  rep.checks.push_back(make_check("first_order_closed", res.r1_closed, "r1 is not a cocycle for this r"));
  CheckReport cr = make_check("second_order", res.r2.has_value());
  if (res.obstruction) {
    rep.result["obstruction"] = {{"monomial", res.obstruction->label}, {"value", res.obstruction->value.str()}};
    cr.details.emplace_back("defect", res.obstruction->label + " = " + res.obstruction->value.str());
  }
  rep.checks.push_back(cr);
}

void cmd_lie_bd(Report& rep, const AlgebraInput& in, const std::string& gamma, const std::string& tau) {
  rep.input = in.echo;
  rep.input["gamma1"] = gamma;
  rep.input["tau"] = tau;
  const SlData& s = need_sl(in);
  BDInput bi;
  for (auto& g : split(gamma, ',')) bi.gamma1.push_back(std::stoi(g));
  for (auto& t : split(tau, ',')) {
    auto colon = t.find(':');
    if (colon == std::string::npos) input_error("expected i:j in '" + t + "'");
    bi.tau[std::stoi(t.substr(0, colon))] = std::stoi(t.substr(colon + 1));
  }
  rep.checks.push_back(bd_admissibility_check(s, in.r0_hat, bi));
}

// ---- manin

void cmd_manin(Report& rep, const AlgebraInput& in, const std::string& stage) {
  rep.input = in.echo;
  const GTensor& r = need_r(in);
  DoubleAlgebra d = build_double(in.g, dual_bracket(in.g, r));
  rep.result["dim"] = 2 * d.n;
  rep.result["labels"] = d.labels;
  rep.checks.push_back(make_check("double_jacobi", true));
  if (stage == "build") {
    json t = json::array();
    for (int i = 0; i < 2 * d.n; ++i)
      for (int j = i + 1; j < 2 * d.n; ++j)
        if (!d.table[i][j].empty())
          t.push_back({{"a", d.labels[i]}, {"b", d.labels[j]}, {"bracket", j_svec(d.table[i][j], d.labels)}});
    rep.result["table"] = t;
    rep.checks.push_back(shear_block_check(d, r));
    rep.checks.push_back(pairing_check(d, r));
    return;
  }
  SplitResult sp = split_double(d, r);
  auto basis = [&](const std::vector<SVec>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(j_svec(x, d.labels));
    return a;
  };
  rep.result["S0"] = basis(sp.S0);
  rep.result["S1"] = basis(sp.S1);
  rep.result["orientation"] = sp.row_orientation ? "row" : "column";
  rep.result["kappa1"] = sp.kappa1;
  for (auto& c : sp.certificates) rep.checks.push_back(c);
  if (stage == "iso") {
    IsoReport iso = isomorphism_certificate(d, sp, r);
    rep.result["c0"] = iso.c0.str();
    rep.result["c1"] = iso.c1.str();
    rep.result["map0"] = j_mat(iso.m0);
    rep.result["map1"] = j_mat(iso.m1);
    rep.checks.push_back(iso.report);
  }
}

// ---- twist

void cmd_twist(Report& rep, const std::string& q, const std::string& qp, const std::string& A, const std::string& B) {
  rep.input = {{"q", q}, {"qp", qp}, {"A", A}, {"B", B}};
  Scalar sq = Scalar::parse(q), sqp = Scalar::parse(qp);
  TwistReport t = gl2_twist_suite(sq, sqp, Scalar::parse(A), Scalar::parse(B));
  rep.result["lambda"] = t.lambda.str();
  rep.result["ad_scale"] = t.ad_scale.str();
  rep.result["ad_correction"] = t.ad_correction.str();
  Scalar want = (sq - sqp) / (sq + sqp);
  rep.checks.push_back(make_check("abelian", t.abelian, "twisted product is not commutative"));
  rep.checks.push_back(make_check("block_proportional", t.block_proportional, "N N'^{-1} is not 1 + lambda R + 1"));
  rep.checks.push_back(make_check("renormalized_equal", t.renormalized_equal, "rescaled N N'^{-1} differs from R"));
  rep.checks.push_back(make_check("simple_products", t.simple_products, "a*b, c*a or c*b carries a correction"));
  rep.checks.push_back(make_check("ad_correction", t.ad_correction_matches,
                                  "ad_correction - (q-q')/(q+q') = " + (t.ad_correction - want).str()));
}

std::string render(const std::string& command, const Report& rep, bool pass) {
  json out;
  out["schema"] = "1";
  out["command"] = command;
  out["input"] = rep.input;
  out["result"] = rep.result;
  json checks = json::array();
  for (auto& c : rep.checks) checks.push_back(j_check(c));
  out["checks"] = checks;
  if (rep.error) out["error"] = *rep.error;
  out["pass"] = pass;
  return out.dump(2) + "\n";
}

bool is_check_failure(ErrorKind k) {
  return k == ErrorKind::IncompatibleStructures || k == ErrorKind::SplitFails || k == ErrorKind::NotIsomorphic;
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  Result res;
  CLI::App app{"exact checks for multiparameter quantum gl(N) and Lie bialgebras", "mqg"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--params", common.params_path, "parameter JSON file");
    s->add_option("--specialize", common.specialize, "k=v,... applied on top of the params file");
    s->add_option("--out", common.out, "report path (default stdout)");
  };
  std::string command;
  std::function<void(Report&)> action;
  int n = 0;
  ElemArgs el;
  std::string suite = "hecke,braid,ideal,frt,invariants";
  std::string algebra = "sl2", r0, r1, gamma, tau_map;
  std::string alpha, tau, p_text, slots = "swapped";
  std::string tq = "q", tqp = "qp", tA = "1/(q+qp)", tB = "0";

  auto* check = app.add_subcommand("check", "quantum operator checks");
  check->require_subcommand(1);
  auto* cq = check->add_subcommand("quantum", "Hecke, braid, ideal, FRT and R-matrix checks of the standard P");
  cq->add_option("--n", n, "dimension N");
  cq->add_option("--suite", suite, "comma list of hecke,braid,ideal,frt,invariants");
  add_common(cq);
  cq->callback([&] {
    command = "check quantum";
    action = [&](Report& r) { cmd_check_quantum(r, n, suite, common); };
  });

  auto* deform = app.add_subcommand("deform", "first order deformations");
  deform->require_subcommand(1);
  auto deform_leaf = [&](const char* name, const char* help, std::function<void(Report&)> fn, bool elem) {
    auto* s = deform->add_subcommand(name, help);
    s->add_option("--n", n, "dimension N");
    add_common(s);
    if (elem) {
      s->add_option("--i", el.i);
      s->add_option("--j", el.j);
      s->add_option("--k", el.k, "third index of an exceptional direction");
      s->add_option("--case", el.which, "principal case 1 or 2");
      s->add_option("--variant", el.variant, "upper or lower (exceptional)");
    }
    std::string full = std::string("deform ") + name;
    s->callback([&command, &action, full, fn] {
      command = full;
      action = fn;
    });
    return s;
  };
  deform_leaf("space", "dimensions of the first order space", [&](Report& r) { cmd_deform_space(r, n, common); }, false);
  deform_leaf("elementary", "an elementary direction, its conditions and exactness on the solved surface",
              [&](Report& r) { cmd_deform_elementary(r, n, el, common); }, true);
  deform_leaf("normal-form", "normal form of an elementary direction",
              [&](Report& r) { cmd_deform_normal_form(r, n, el, common); }, true);
  deform_leaf("probe-hecke", "braid-only solutions against Hecke + braid solutions",
              [&](Report& r) { cmd_deform_probe(r, n, common); }, false);
  deform_leaf("classical", "classical r-matrix and the perturbation of a direction",
              [&](Report& r) { cmd_deform_classical(r, n, el); }, true);
  auto* bd = deform_leaf("bd-invariance", "invariance of r0 under alpha (x) 1 + 1 (x) tau alpha",
                         [&](Report& r) { cmd_deform_bd(r, n, alpha, tau, p_text, slots); }, false);
  bd->add_option("--alpha", alpha, "i,k for M_k^i")->required();
  bd->add_option("--tau", tau, "l,j for M_j^l")->required();
  bd->add_option("--p", p_text, "ij=value,... (default symbolic p_ij)");
  bd->add_option("--slots", slots, "swapped or literal");
  deform_leaf("sl-restriction", "the squared sl(N) restriction identity",
              [&](Report& r) { cmd_deform_sl(r, n, common); }, false);

  using LieFn = std::function<void(Report&, const AlgebraInput&)>;
  auto* lie = app.add_subcommand("lie", "Lie bialgebra structures");
  lie->require_subcommand(1);
  auto algebra_leaf = [&](CLI::App* parent, const std::string& prefix, const char* name, const char* help, LieFn fn) {
    auto* s = parent->add_subcommand(name, help);
    s->add_option("--algebra", algebra, "sl2..sl5 or a JSON file");
    s->add_option("--r0", r0, "ij=value,... on Cartan indices, or 'symbolic'");
    add_common(s);
    std::string full = prefix + " " + name;
    s->callback([&, full, fn] {
      command = full;
      action = [&, fn](Report& r) { fn(r, load_algebra(algebra, r0, common)); };
    });
    return s;
  };
  algebra_leaf(lie, "lie", "build", "structure constants, forms and checks", cmd_lie_build);
  algebra_leaf(lie, "lie", "r", "the classical r", cmd_lie_r);
  algebra_leaf(lie, "lie", "cobracket", "brackets of g* and root weights", cmd_lie_cobracket);
  algebra_leaf(lie, "lie", "compat", "df = 0 and the bicomplex sample", cmd_lie_compat);
  algebra_leaf(lie, "lie", "cybe", "classical Yang-Baxter and the r U / r A identities", cmd_lie_cybe);
  algebra_leaf(lie, "lie", "h2", "second cohomology of g*", cmd_lie_h2);
  auto* ob = algebra_leaf(lie, "lie", "obstruct", "second order step for r + h r1",
                          [&](Report& r, const AlgebraInput& in) { cmd_lie_obstruct(r, in, r1); });
  ob->add_option("--r1", r1, "A^B=v,... on basis labels")->required();
  auto* bda = algebra_leaf(lie, "lie", "bd-admissible", "admissibility of (Gamma1, tau)",
                           [&](Report& r, const AlgebraInput& in) { cmd_lie_bd(r, in, gamma, tau_map); });
  bda->add_option("--gamma1", gamma, "simple roots, 1-based");
  bda->add_option("--tau", tau_map, "i:j,...");

  auto* manin = app.add_subcommand("manin", "the double g + g*");
  manin->require_subcommand(1);
  std::vector<std::pair<std::string, std::string>> stages = {
      {"build", "the double and its Jacobi, shear and pairing checks"},
      {"split", "the double and its splitting into two commuting ideals"},
      {"iso", "splitting plus isomorphisms of both ideals with g"}};
  for (auto& [st, help] : stages)
    algebra_leaf(manin, "manin", st.c_str(), help.c_str(),
                 [st](Report& r, const AlgebraInput& in) { cmd_manin(r, in, st); });

  auto* twist = app.add_subcommand("twist", "gl(2) twist");
  twist->require_subcommand(1);
  auto* gl2 = twist->add_subcommand("gl2", "twisted product identities");
  gl2->add_option("--q", tq);
  gl2->add_option("--qp", tqp);
  gl2->add_option("--A", tA);
  gl2->add_option("--B", tB);
  add_common(gl2);
  gl2->callback([&] {
    command = "twist gl2";
    action = [&](Report& r) { cmd_twist(r, tq, tqp, tA, tB); };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    res.diagnostic = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = 2;
    res.diagnostic = e.what();
    return res;
  }
  res.out_path = common.out;
  Report rep;
  try {
    action(rep);
  } catch (const Error& e) {
    if (!is_check_failure(e.kind())) {
      res.code = 2;
      res.diagnostic = e.what();
      return res;
    }
    rep.error = json{{"kind", error_name(e.kind())}, {"message", e.what()}};
  } catch (const json::exception& e) {
    res.code = 2;
    res.diagnostic = e.what();
    return res;
  } catch (const std::logic_error& e) {
    res.code = 2;
    res.diagnostic = std::string("bad input: ") + e.what();
    return res;
  }
  bool pass = !rep.error;
  for (auto& c : rep.checks) pass = pass && c.pass;
  res.report = render(command, rep, pass);
  res.code = pass ? 0 : 1;
  return res;
}

}  // namespace mqg::cli
