#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "padic_tate/balls.hpp"
#include "padic_tate/errors.hpp"
#include "padic_tate/field.hpp"
#include "padic_tate/lattice.hpp"
#include "padic_tate/lattice_io.hpp"
#include "padic_tate/parse.hpp"
#include "padic_tate/relations.hpp"
#include "padic_tate/rv.hpp"
#include "padic_tate/series.hpp"
#include "padic_tate/series_io.hpp"
#include "padic_tate/tate.hpp"
#include "padic_tate/weierstrass.hpp"

namespace padic_tate::cli {

using json = nlohmann::ordered_json;

std::string assertion_record(const Assertion& a) {
  json r;
  r["suite"] = a.suite;
  r["assertion"] = a.name;
  if (a.trial >= 0) r["trial"] = a.trial;
  r["ok"] = a.ok;
  if (!a.residual.empty()) r["residual_valuation"] = a.residual;
  if (a.prec) r["prec"] = a.prec;
  if (!a.outcome.empty()) r["outcome"] = a.outcome;
  if (!a.detail.empty()) r["detail"] = a.detail;
  return r.dump();
}

namespace {

struct Options {
  RunConfig cfg;
  std::string format = "text";
  // subcommand arguments
  std::string x, y, q, u, u1, u2, x1, y1, x2, y2, lambda = "0", C, g, f, matrix, lattice, V, S, T, dims, z, us;
  std::string suite = "all";
  long height = -1;
  long trials = 20;
  int active = 0;
  bool doubled = false;
};

class Emitter {
 public:
  Emitter(bool structured, std::ostream& os) : structured_(structured), os_(os) {}
  void emit(const json& record, const std::string& text) {
    if (structured_) {
      os_ << record.dump() << '\n';
    } else {
      os_ << text << '\n';
    }
  }

 private:
  bool structured_;
  std::ostream& os_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string read_source(const std::string& arg, const char* what) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw Error(ErrorKind::InvalidArgument, std::string("cannot read ") + what + " file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long digits_of(const Element& d) { return d.is_zero() ? d.abs_prec() : d.shift(); }

long ram_index(const Field& F) { return F->ramified_layout() ? F->e() : 1; }

std::string valuation_string(long digits, const Field& F) { return Rational(digits, ram_index(F)).to_string(); }

json vectors_json(const std::vector<std::vector<long>>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v);
  return a;
}

std::string vectors_text(const std::vector<std::vector<long>>& vs) {
  if (vs.empty()) return "none";
  std::string s;
  for (const auto& v : vs) {
    s += s.empty() ? "(" : " (";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    s += ")";
  }
  return s;
}

class Runner {
 public:
  Runner(const Options& o, Emitter& out) : o_(o), out_(out), F_(make_field(o.cfg.p, o.cfg.ext)) {}

  Element elt(const std::string& literal) const { return parse_element(literal, F_, o_.cfg.prec); }
  std::vector<Element> elts(const std::string& list) const {
    std::vector<Element> v;
    for (const auto& s : split_list(list)) v.push_back(elt(s));
    return v;
  }
  long target() const { return o_.cfg.prec - o_.cfg.slack; }
  json base(const std::string& cmd) const {
    json r;
    r["cmd"] = cmd;
    r["p"] = o_.cfg.p;
    r["ext"] = o_.cfg.ext;
    return r;
  }

  int exp_or_log(bool is_exp) {
    const Element x = elt(o_.x);
    const Element v = is_exp ? p_exp(x) : p_log(x);
    json r = base(is_exp ? "exp" : "log");
    r["x"] = x.to_string();
    r["value"] = v.to_string();
    r["valuation"] = v.valuation().to_string();
    r["prec"] = v.abs_prec();
    out_.emit(r, v.to_string());
    return kOk;
  }

  TateCurve curve() const {
    const std::string ql = o_.q.empty() ? std::to_string(o_.cfg.p) + "^2" : o_.q;
    return curve_coefficients(elt(ql), o_.cfg.slack);
  }

  int tate_invariants() {
    const TateCurve C = curve();
    const CurveInvariants I = curve_invariants(C);
    json r = base("tate invariants");
    r["q"] = C.q.to_string();
    std::string text;
    for (const auto& [k, v] : std::vector<std::pair<std::string, const Element*>>{
             {"a4", &C.a4}, {"a6", &C.a6}, {"b2", &I.b2}, {"b4", &I.b4}, {"b6", &I.b6}, {"b8", &I.b8},
             {"c4", &I.c4}, {"delta", &I.delta}, {"j", &I.j}}) {
      r[k] = v->to_string();
      text += k + " = " + v->to_string() + "\n";
    }
    r["v_j"] = I.j.valuation().to_string();
    r["prec"] = C.prec;
    text += "v(j) = " + I.j.valuation().to_string();
    out_.emit(r, text);
    return kOk;
  }

  void put_hom(json& r, const HomomorphismCheck& h) const {
    r["ok"] = h.ok;
    r["residual_valuation"] = h.both_identity          ? "inf"
                              : h.residual_digits < 0 ? "-inf"
                                                      : valuation_string(h.residual_digits, F_);
    r["prec"] = target();
    r["working_prec"] = h.working_prec;
  }

  static std::string point_text(const TatePoint& P) {
    return P.is_identity() ? "O" : "(" + P.x.to_string() + ", " + P.y.to_string() + ")";
  }
  static void put_point(json& r, const std::string& key, const TatePoint& P) {
    if (P.is_identity()) {
      r[key] = "O";
    } else {
      r[key] = {{"x", P.x.to_string()}, {"y", P.y.to_string()}};
    }
  }

  int tate_map() {
    const TateCurve C = curve();
    const Element u = elt(o_.u);
    const auto [ur, n] = reduce_to_fundamental(C.q, u);
    const TatePoint P = phi(C, u);
    json r = base("tate map");
    r["u"] = u.to_string();
    r["n"] = n;
    put_point(r, "point", P);
    bool ok = true;
    if (!P.is_identity()) {
      const Element res = curve_residual(C, P);
      ok = digits_of(res) >= target();
      r["ok"] = ok;
      r["residual_valuation"] = res.valuation().to_string();
      r["prec"] = target();
    } else {
      r["ok"] = true;
    }
    out_.emit(r, point_text(P));
    return ok ? kOk : kVerificationFailed;
  }

  TatePoint point_arg(const TateCurve& C, const std::string& u, const std::string& x, const std::string& y,
                      const char* which) const {
    if (!u.empty()) return phi(C, elt(u));
    if (x == "O" || (x.empty() && y == "O")) return TatePoint::identity();
    if (x.empty() || y.empty()) {
      throw Error(ErrorKind::InvalidArgument, std::string("point ") + which + " needs --u" + which + " or --x" +
                                                  which + " and --y" + which);
    }
    return TatePoint::affine(elt(x), elt(y));
  }

  int tate_add() {
    const TateCurve C = curve();
    const TatePoint P = point_arg(C, o_.u1, o_.x1, o_.y1, "1");
    const TatePoint Q = point_arg(C, o_.u2, o_.x2, o_.y2, "2");
    const TatePoint R = curve_add(C, P, Q);
    json r = base("tate add");
    put_point(r, "sum", R);
    int status = kOk;
    if (!o_.u1.empty() && !o_.u2.empty()) {
      const HomomorphismCheck h =
          verify_homomorphism(C.q, elt(o_.u1), elt(o_.u2), o_.cfg.prec, target(), o_.cfg.slack);
      put_hom(r, h);
      status = h.ok ? kOk : kVerificationFailed;
    }
    out_.emit(r, point_text(R));
    return status;
  }

  int tate_j() {
    const TateCurve C = curve();
    const Element j = j_invariant(C);
    const ValuationResult vj = j.valuation();
    const bool ok = vj.is_exact() && vj.value == -C.q.valuation().value;
    json r = base("tate j");
    r["q"] = C.q.to_string();
    r["j"] = j.to_string();
    r["v_j"] = vj.to_string();
    r["ok"] = ok;
    r["prec"] = j.abs_prec();
    out_.emit(r, "j = " + j.to_string() + "\nv(j) = " + vj.to_string());
    return ok ? kOk : kVerificationFailed;
  }

  int tate_verify_hom() {
    const TateCurve C = curve();
    bool all = true;
    for (long t = 0; t < o_.trials; ++t) {
      Rng rng(o_.cfg.seed, "verify-hom", static_cast<std::uint64_t>(t));
      const Element u1 = random_fundamental_point(C.q, o_.cfg.prec, rng);
      const Element u2 = random_fundamental_point(C.q, o_.cfg.prec, rng);
      const HomomorphismCheck h = verify_homomorphism(C.q, u1, u2, o_.cfg.prec, target(), o_.cfg.slack);
      all = all && h.ok;
      json r = base("tate verify-hom");
      r["trial"] = t;
      r["u1"] = u1.to_string();
      r["u2"] = u2.to_string();
      put_hom(r, h);
      out_.emit(r, "trial " + std::to_string(t) + ": " + (h.ok ? "pass" : "FAIL") + " residual " +
                       r["residual_valuation"].get<std::string>());
    }
    return all ? kOk : kVerificationFailed;
  }

  int tate_verify_ode() {
    const TateCurve C = curve();
    std::vector<Element> points;
    if (!o_.u.empty()) {
      points.push_back(elt(o_.u));
    } else {
      for (long t = 0; t < o_.trials; ++t) {
        Rng rng(o_.cfg.seed, "verify-ode", static_cast<std::uint64_t>(t));
        points.push_back(random_fundamental_point(C.q, o_.cfg.prec, rng));
      }
    }
    bool all = true;
    const Rational need(target(), ram_index(F_));
    for (std::size_t t = 0; t < points.size(); ++t) {
      const Element ur = reduce_to_fundamental(C.q, points[t]).first;
      const ValuationResult ode = verify_ode(C, ur);
      const ValuationResult rel = verify_derivative_relation(C, ur);
      const bool ok = ode.value >= need && rel.value >= need;
      all = all && ok;
      const ValuationResult& worst = ode.value <= rel.value ? ode : rel;
      json r = base("tate verify-ode");
      r["trial"] = t;
      r["u"] = points[t].to_string();
      r["ok"] = ok;
      r["residual_valuation"] = worst.to_string();
      r["ode_residual_valuation"] = ode.to_string();
      r["relation_residual_valuation"] = rel.to_string();
      r["prec"] = target();
      out_.emit(r, "u = " + points[t].to_string() + ": " + (ok ? "pass" : "FAIL") + " ode " + ode.to_string() +
                       ", uX'=X+2Y " + rel.to_string());
    }
    return all ? kOk : kVerificationFailed;
  }

  int wdiv() {
    const StrictSeries g = series_from_json(read_source(o_.g, "series"), F_, o_.cfg.prec);
    const StrictSeries f = series_from_json(read_source(o_.f, "series"), F_, o_.cfg.prec);
    const int active = o_.active ? o_.active : f.nvars();
    const DivisionResult res = weierstrass_divide(g, f, active);
    const StrictSeries resid = g - res.q * f - res.r;
    long worst = o_.cfg.prec;
    for (const auto& [e, c] : resid.terms()) worst = std::min(worst, digits_of(c));
    const bool ok = worst >= o_.cfg.prec;
    json r = base("wdiv");
    r["d"] = res.d;
    r["gamma"] = res.gamma.to_string();
    r["iterations"] = res.history.size();
    r["q"] = json::parse(series_to_json(res.q));
    r["r"] = json::parse(series_to_json(res.r));
    r["ok"] = ok;
    r["residual_valuation"] = ">=" + valuation_string(worst, F_);
    r["prec"] = o_.cfg.prec;
    out_.emit(r, "q = " + res.q.to_string() + "\nr = " + res.r.to_string());
    return ok ? kOk : kVerificationFailed;
  }

  int balls_next() {
    const Ball b = ball_next(elts(o_.C), Rational::parse(o_.lambda), elt(o_.x));
    json r = base("balls next");
    r["center"] = b.center.to_string();
    r["radius"] = b.radius.to_string();
    r["ball"] = b.to_string();
    out_.emit(r, b.to_string());
    return kOk;
  }

  int balls_same() {
    const bool same = same_ball(elts(o_.C), Rational::parse(o_.lambda), elt(o_.x), elt(o_.y));
    json r = base("balls same");
    r["same"] = same;
    out_.emit(r, same ? "true" : "false");
    return kOk;
  }

  int rv() {
    const Rational lambda = Rational::parse(o_.lambda);
    const RVClass k = rv_class(elt(o_.x), lambda);
    json r = base("rv");
    r["valuation"] = k.valuation.to_string();
    r["lambda"] = k.lambda.to_string();
    r["digits"] = k.leading_digits;
    std::string text = "v = " + k.valuation.to_string() + ", leading digits " + json(k.leading_digits).dump();
    if (!o_.y.empty()) {
      const bool same = rv_class(elt(o_.y), lambda) == k;
      r["same"] = same;
      text += same ? "\nsame class" : "\ndifferent class";
    }
    out_.emit(r, text);
    return kOk;
  }

  int lattice_smith() {
    const IntMatrix M = matrix_from_json(read_source(o_.matrix, "matrix"));
    const SmithForm S = smith_normal_form(M);
    json r = base("lattice smith");
    r["U"] = json::parse(matrix_to_json(S.U));
    r["D"] = json::parse(matrix_to_json(S.D));
    r["V"] = json::parse(matrix_to_json(S.V));
    r["rank"] = S.rank;
    json inv = json::array();
    for (const auto& d : S.invariants) inv.push_back(d.get_str());
    r["invariants"] = inv;
    out_.emit(r, "D = " + S.D.to_string() + "\nrank = " + std::to_string(S.rank));
    return kOk;
  }

  int lattice_kernel() {
    const IntMatrix K = kernel_lattice(matrix_from_json(read_source(o_.matrix, "matrix")));
    json r = base("lattice kernel");
    r["kernel"] = json::parse(matrix_to_json(K));
    out_.emit(r, "kernel basis (columns) = " + K.to_string());
    return kOk;
  }

  int geom_rotund() {
    const SubgroupLattice V = lattice_from_json(read_source(o_.lattice, "lattice"));
    const long H = o_.height >= 0 ? o_.height : 2;
    const RotundVerdict v = rotund_check(V, H);
    json r = base("geom rotund");
    r["verdict"] = v.refuted ? "refuted" : "verified_up_to";
    r["height"] = H;
    r["checked"] = v.matrices_checked;
    if (v.witness) {
      r["witness"] = json::parse(matrix_to_json(*v.witness));
      r["dim_image"] = dim_image(*v.witness, V);
      r["rank"] = rank(*v.witness);
    }
    out_.emit(r, v.refuted ? "refuted by M = " + v.witness->to_string()
                           : "verified up to height " + std::to_string(H));
    return kOk;
  }

  int geom_plikely() {
    const SubgroupLattice V = lattice_from_json(read_source(o_.V, "lattice"));
    const SubgroupLattice S = lattice_from_json(read_source(o_.S, "lattice"));
    const auto Ts = lattice_list_from_json(read_source(o_.T, "lattice list"));
    const LikelyVerdict v = persistently_likely(V, S, Ts);
    json r = base("geom plikely");
    r["persistently_likely"] = v.persistently_likely;
    json checks = json::array();
    std::string text;
    for (std::size_t i = 0; i < v.checks.size(); ++i) {
      const LikelyCheck& c = v.checks[i];
      checks.push_back({{"dim_psi_V", c.dim_psi_V}, {"dim_psi_S", c.dim_psi_S}, {"required", c.required},
                        {"holds", c.holds}});
      text += "T[" + std::to_string(i) + "]: " + std::to_string(c.dim_psi_V) + " + " + std::to_string(c.dim_psi_S) +
              " >= " + std::to_string(c.required) + (c.holds ? " holds\n" : " fails\n");
    }
    r["checks"] = checks;
    if (v.failing) {
      r["failing"] = *v.failing;
    } else {
      r["failing"] = nullptr;
    }
    out_.emit(r, text + (v.persistently_likely ? "persistently likely" : "not persistently likely"));
    return kOk;
  }

  int geom_atypical() {
    const auto parts = split_list(o_.dims);
    if (parts.size() != 4) throw Error(ErrorKind::InvalidArgument, "--dims needs dimX,dimV,dimW,dimZ");
    long d[4];
    for (int i = 0; i < 4; ++i) {
      try {
        d[i] = std::stol(parts[static_cast<std::size_t>(i)]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "'" + parts[static_cast<std::size_t>(i)] + "' is not an integer");
      }
    }
    const bool a = atypical(d[0], d[1], d[2], d[3]);
    json r = base("geom atypical");
    r["dims"] = {d[0], d[1], d[2], d[3]};
    r["atypical"] = a;
    out_.emit(r, a ? "atypical" : "typical");
    return kOk;
  }

  void relation_record(json& r, const RelationReport& rep) {
    r["relations"] = vectors_json(rep.relations);
    r["candidates"] = rep.candidates;
    r["precision"] = rep.precision;
    std::ostringstream b;
    b << rep.false_positive_bound;
    r["false_positive_bound"] = b.str();
  }

  int relations_search() {
    const RelationReport rep = relation_search(elts(o_.z), o_.height >= 0 ? o_.height : 10, o_.cfg.slack);
    json r = base("relations search");
    relation_record(r, rep);
    out_.emit(r, vectors_text(rep.relations) + " (mod pi^" + std::to_string(rep.precision) + ")");
    return kOk;
  }

  int relations_mult() {
    const std::string ql = o_.q.empty() ? std::to_string(o_.cfg.p) + "^2" : o_.q;
    const RelationReport rep =
        mult_dependence_mod_kernel(elt(ql), elts(o_.us), o_.height >= 0 ? o_.height : 5, o_.cfg.slack);
    json r = base("relations mult");
    relation_record(r, rep);
    out_.emit(r, vectors_text(rep.relations) + " (mod pi^" + std::to_string(rep.precision) + ")");
    return kOk;
  }

  int harness() {
    std::vector<std::string> suites;
    if (o_.suite == "all") {
      suites = suite_names();
    } else {
      suites = split_list(o_.suite);
      for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
          throw Error(ErrorKind::InvalidArgument, "unknown suite '" + s + "'");
        }
    }
    bool all = true;
    for (const auto& s : suites) {
      const SuiteReport rep = o_.doubled ? doubled_precision_check(s, o_.cfg) : run_suite(s, o_.cfg);
      for (const Assertion& a : rep.assertions) {
        std::string text = std::string(a.ok ? "PASS " : "FAIL ") + a.suite + " " + a.name;
        if (a.trial >= 0) text += " [" + std::to_string(a.trial) + "]";
        if (!a.residual.empty()) text += " residual " + a.residual;
        if (!a.detail.empty()) text += " (" + a.detail + ")";
        out_.emit(json::parse(assertion_record(a)), text);
      }
      json summary;
      summary["suite"] = s;
      summary["assertions"] = rep.assertions.size();
      summary["failures"] = rep.failures();
      summary["ok"] = rep.ok();
      out_.emit(summary, "suite " + s + ": " + std::to_string(rep.assertions.size() - rep.failures()) + "/" +
                             std::to_string(rep.assertions.size()) + " passed");
      all = all && rep.ok();
    }
    return all ? kOk : kVerificationFailed;
  }

 private:
  const Options& o_;
  Emitter& out_;
  Field F_;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"p-adic analysis, Tate curves and lattice calculus", "padic-tate"};
  app.require_subcommand(1);
  app.add_option("--p", o.cfg.p, "prime")->capture_default_str();
  app.add_option("--prec", o.cfg.prec, "absolute precision in pi-digits")->capture_default_str();
  app.add_option("--ext", o.cfg.ext, "base | eisenstein:e:c | unramified:a0,...,a_{f-1},1")->capture_default_str();
  app.add_option("--seed", o.cfg.seed, "master seed (PADIC_TATE_SEED overrides)")->capture_default_str();
  CLI::Option* slack_opt =
      app.add_option("--slack", o.cfg.slack, "tolerated precision loss in pi-digits")->capture_default_str();
  app.add_option("--format", o.format, "text | structured")
      ->check(CLI::IsMember({"text", "structured", "json"}))
      ->capture_default_str();

  std::vector<CLI::App*> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    leaves.push_back(s);
    return s;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->require_subcommand(1);
    return s;
  };

  CLI::App* exp = leaf(&app, "exp", "p-adic exponential");
  exp->add_option("--x", o.x, "element literal")->required();
  CLI::App* log = leaf(&app, "log", "p-adic logarithm");
  log->add_option("--x", o.x, "element literal")->required();

  CLI::App* tate = group("tate", "Tate curve E_q");
  tate->add_option("--q", o.q, "q with v(q) > 0 (default p^2)");
  CLI::App* t_inv = leaf(tate, "invariants", "a4, a6, b-, c-invariants, discriminant, j");
  CLI::App* t_map = leaf(tate, "map", "phi_q(u)");
  t_map->add_option("--u", o.u, "u in K^x")->required();
  CLI::App* t_add = leaf(tate, "add", "group law");
  t_add->add_option("--u1", o.u1, "first point as phi(u1)");
  t_add->add_option("--u2", o.u2, "second point as phi(u2)");
  t_add->add_option("--x1", o.x1, "first point x (or O)");
  t_add->add_option("--y1", o.y1, "first point y");
  t_add->add_option("--x2", o.x2, "second point x (or O)");
  t_add->add_option("--y2", o.y2, "second point y");
  CLI::App* t_j = leaf(tate, "j", "j-invariant and its valuation");
  CLI::App* t_hom = leaf(tate, "verify-hom", "phi(u1 u2) = phi(u1) + phi(u2) at seeded points");
  t_hom->add_option("--trials", o.trials, "number of pairs")->capture_default_str();
  CLI::App* t_ode = leaf(tate, "verify-ode", "differential identities for X at u or seeded points");
  t_ode->add_option("--u", o.u, "single point (default: seeded trials)");
  t_ode->add_option("--trials", o.trials, "number of seeded points")->capture_default_str();
  for (CLI::App* s : {t_inv, t_map, t_add, t_j, t_hom, t_ode}) s->add_option("--q", o.q, "q (default p^2)");

  CLI::App* wdiv = leaf(&app, "wdiv", "Weierstrass division g = qf + r");
  wdiv->add_option("--g", o.g, "series file (or inline JSON)")->required();
  wdiv->add_option("--f", o.f, "series file (or inline JSON)")->required();
  wdiv->add_option("--active", o.active, "1-based regular variable (default last)");

  CLI::App* balls = group("balls", "lambda-next balls to a finite set");
  CLI::App* b_next = leaf(balls, "next", "ball lambda-next to C containing x");
  CLI::App* b_same = leaf(balls, "same", "same-ball criterion");
  for (CLI::App* s : {b_next, b_same}) {
    s->add_option("--C", o.C, "comma-separated literals")->required();
    s->add_option("--lambda", o.lambda, "r/s in (1/e)Z, >= 0")->capture_default_str();
    s->add_option("--x", o.x, "element literal")->required();
  }
  b_same->add_option("--y", o.y, "element literal")->required();

  CLI::App* rvc = leaf(&app, "rv", "leading-term class modulo 1 + B_{>lambda}(0)");
  rvc->add_option("--x", o.x, "element literal")->required();
  rvc->add_option("--lambda", o.lambda, "r/s >= 0")->capture_default_str();
  rvc->add_option("--y", o.y, "compare with the class of y");

  CLI::App* lattice = group("lattice", "integer matrices");
  CLI::App* l_smith = leaf(lattice, "smith", "Smith normal form U M V = D");
  CLI::App* l_kernel = leaf(lattice, "kernel", "saturated kernel basis");
  for (CLI::App* s : {l_smith, l_kernel}) s->add_option("--matrix", o.matrix, "matrix file or inline JSON")->required();

  CLI::App* geom = group("geom", "dimension calculus for subgroup cosets");
  CLI::App* g_rot = leaf(geom, "rotund", "search for M with dim(MV) < rk M");
  g_rot->add_option("--lattice", o.lattice, "lattice file or inline JSON")->required();
  g_rot->add_option("--height", o.height, "entries of M in [-H, H] (default 2)");
  CLI::App* g_pl = leaf(geom, "plikely", "persistently likely test against a list of T");
  g_pl->add_option("--V", o.V, "lattice")->required();
  g_pl->add_option("--S", o.S, "lattice")->required();
  g_pl->add_option("--T", o.T, "JSON array of lattices")->required();
  CLI::App* g_at = leaf(geom, "atypical", "dim X > dim V + dim W - dim Z");
  g_at->add_option("--dims", o.dims, "dimX,dimV,dimW,dimZ")->required();

  CLI::App* rel = group("relations", "bounded-height relation search");
  CLI::App* r_search = leaf(rel, "search", "sum m_i z_i = 0 to precision");
  r_search->add_option("--z", o.z, "comma-separated literals")->required();
  r_search->add_option("--height", o.height, "H (default 10)");
  CLI::App* r_mult = leaf(rel, "mult", "prod u_i^m_i in q^Z to precision");
  r_mult->add_option("--q", o.q, "q with v(q) > 0 (default p^2)");
  r_mult->add_option("--u", o.us, "comma-separated literals")->required();
  r_mult->add_option("--height", o.height, "H (default 5)");

  CLI::App* har = leaf(&app, "harness", "seeded invariant suites");
  har->add_option("--suite", o.suite, "all | exp,tate,weierstrass,balls,lattice,relations")->capture_default_str();
  har->add_option("--trials", o.cfg.trials, "trials per family (default: per suite)");
  har->add_option("--threads", o.cfg.threads, "worker threads")->capture_default_str();
  har->add_option("--q", o.cfg.q, "q for the tate suite (default p^2)");
  har->add_flag("--doubled", o.doubled, "rerun at doubled precision and compare");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // an unknown subcommand surfaces as a missing one; name the stray token
    const std::vector<std::string> stray = app.remaining(true);
    if (!stray.empty() && e.get_exit_code() != 0) {
      err << "error: unexpected argument '" << stray.front() << "'\n";
      return kUsageError;
    }
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  if (const char* env = std::getenv("PADIC_TATE_SEED")) {
    try {
      std::size_t used = 0;
      o.cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "error: PADIC_TATE_SEED='" << env << "' is not an unsigned 64-bit integer\n";
      return kUsageError;
    }
  }

  // An unset slack never makes a small --prec invalid.
  if (slack_opt->count() == 0 && o.cfg.prec > 0) o.cfg.slack = std::min(o.cfg.slack, o.cfg.prec - 1);

  Emitter emitter(o.format != "text", out);
  try {
    validate(o.cfg);
    Runner run(o, emitter);
    const std::vector<std::pair<CLI::App*, std::function<int()>>> table{
        {exp, [&] { return run.exp_or_log(true); }},
        {log, [&] { return run.exp_or_log(false); }},
        {t_inv, [&] { return run.tate_invariants(); }},
        {t_map, [&] { return run.tate_map(); }},
        {t_add, [&] { return run.tate_add(); }},
        {t_j, [&] { return run.tate_j(); }},
        {t_hom, [&] { return run.tate_verify_hom(); }},
        {t_ode, [&] { return run.tate_verify_ode(); }},
        {wdiv, [&] { return run.wdiv(); }},
        {b_next, [&] { return run.balls_next(); }},
        {b_same, [&] { return run.balls_same(); }},
        {rvc, [&] { return run.rv(); }},
        {l_smith, [&] { return run.lattice_smith(); }},
        {l_kernel, [&] { return run.lattice_kernel(); }},
        {g_rot, [&] { return run.geom_rotund(); }},
        {g_pl, [&] { return run.geom_plikely(); }},
        {g_at, [&] { return run.geom_atypical(); }},
        {r_search, [&] { return run.relations_search(); }},
        {r_mult, [&] { return run.relations_mult(); }},
        {har, [&] { return run.harness(); }},
    };
    for (const auto& [sub, fn] : table)
      if (sub->parsed()) return fn();
    err << "error: no subcommand given\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_precision_error(e.kind()) ? kPrecisionError : kUsageError;
  }
}

}  // namespace padic_tate::cli
