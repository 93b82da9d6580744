#pragma once

// Command-line driver. run() parses arguments, dispatches to the library and
// maps outcomes to exit codes: 0 all checks pass, 1 a mathematical check
// failed, 2 malformed input, 3 a precondition was violated.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homlts/homlts.hpp"
#include "homlts/io.hpp"

namespace homlts::cli {

enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, precondition_failed = 3 };

using io::Json;

struct Options {
  std::string format = "text";
  bool verbose = false;
  std::string output;
};

/// What a verb produced: a report (text and JSON views of the same content),
/// an exit code and optionally a document to write out.
class Report {
 public:
  explicit Report(std::string verb) : verb_(std::move(verb)) { json_["verb"] = verb_; }

  void line(const std::string& s) { text_ += s + "\n"; }
  Json& json() { return json_; }
  void fail() { code_ = check_failed; }
  int exit_code() const { return code_; }
  void set_document(Json doc) { document_ = std::move(doc); }
  const std::optional<Json>& document() const { return document_; }

  std::string render(const Options& opt) const {
    if (opt.format == "json") {
      Json out;
      out["verb"] = verb_;
      out["status"] = code_ == ok ? "pass" : "fail";
      out["exit_code"] = code_;
      for (const auto& [k, v] : json_.items())
        if (k != "verb") out[k] = v;
      return io::dump(out);
    }
    return text_;
  }

 private:
  std::string verb_;
  Json json_;
  std::string text_;
  int code_ = ok;
  std::optional<Json> document_;
};

namespace detail {

inline std::string tuple_string(const MultiIndex& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + ")";
}

template <FieldScalar K>
std::string vector_string(std::span<const K> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

template <FieldScalar K>
std::optional<MultiIndex> first_nonzero(const MultilinearMap<K>& f) {
  for (std::size_t t = 0; t < f.tuple_count(); ++t) {
    const auto v = f.value(t);
    for (const auto& x : v)
      if (!x.is_zero()) return f.decode(t);
  }
  return std::nullopt;
}

/// Calls fn with a value of the scalar type matching the field.
template <class Fn>
Report with_scalar(const FieldSpec& field, Fn&& fn) {
  if (field.is_rational()) return fn(Rational{});
  return fn(ModP{});
}

inline FieldSpec parse_field_option(const std::string& s) {
  if (s == "Q") return FieldSpec::rationals();
  if (s.rfind("GF:", 0) == 0) {
    const auto p = s.substr(3);
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos || p.size() > 10)
      throw parse_error("--field: expected Q or GF:p, got \"" + s + "\"");
    return FieldSpec::prime_field(std::stoull(p));
  }
  throw parse_error("--field: expected Q or GF:p, got \"" + s + "\"");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

/// "identity", "diag:a,b,..." or "rows:a,b;c,d" for an n x n matrix.
template <FieldScalar K>
Matrix<K> parse_matrix_spec(const std::string& spec, const FieldSpec& field, std::size_t n, const std::string& what) {
  const auto scalar = [&](const std::string& s) {
    try {
      return K::parse(s, field);
    } catch (const parse_error& e) {
      throw parse_error(what + ": " + e.what());
    }
  };
  if (spec == "identity") return Matrix<K>::identity(field, n);
  if (spec.rfind("diag:", 0) == 0) {
    const auto parts = split(spec.substr(5), ',');
    if (parts.size() != n)
      throw parse_error(what + ": expected " + std::to_string(n) + " diagonal entries, got " + std::to_string(parts.size()));
    Matrix<K> m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar(parts[i]);
    return m;
  }
  if (spec.rfind("rows:", 0) == 0) {
    const auto rows = split(spec.substr(5), ';');
    if (rows.size() != n) throw parse_error(what + ": expected " + std::to_string(n) + " rows");
    Matrix<K> m(field, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto cols = split(rows[r], ',');
      if (cols.size() != n) throw parse_error(what + ": row " + std::to_string(r) + " needs " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar(cols[c]);
    }
    return m;
  }
  throw parse_error(what + ": expected identity, diag:a,b,... or rows:a,b;c,d");
}

template <FieldScalar K>
HomTripleSystem<K> load_algebra(const Json& doc, const std::string& path) {
  return io::algebra_from_json<K>(doc, path);
}

/// "trivial" (one-dimensional, A = 1), "adjoint", or a representation file.
template <FieldScalar K>
Representation<K> load_rep(const HomTripleSystem<K>& t, const std::string& spec) {
  if (spec == "trivial") return trivial_rep(t, 1, Matrix<K>::identity(t.field(), 1));
  if (spec == "adjoint") return adjoint_rep(t);
  return io::representation_from_json<K>(io::read_json_file(spec), t, spec);
}

template <FieldScalar K>
Cochain<K> load_cochain(const std::string& path, const Representation<K>& r) {
  return io::cochain_from_json<K>(io::read_json_file(path), r.field(), r.dim(), r.mdim(), path);
}

template <FieldScalar K>
void describe_axioms(Report& rep, const AxiomReport<K>& ax, const Options& opt) {
  const std::pair<Axiom, bool> rows[] = {{Axiom::alternating, ax.alternating},
                                         {Axiom::ternary_cyclic, ax.ternary_cyclic},
                                         {Axiom::hom_nambu, ax.hom_nambu},
                                         {Axiom::multiplicativity, ax.multiplicativity}};
  Json axioms = Json::object();
  for (const auto& [a, good] : rows) {
    axioms[axiom_name(a)] = good;
    rep.line(axiom_name(a) + ": " + (good ? "ok" : "FAILED"));
  }
  rep.json()["axioms"] = axioms;
  rep.json()["violation_count"] = ax.violation_count;
  Json list = Json::array();
  const std::size_t shown = opt.verbose ? ax.violations.size() : std::min<std::size_t>(ax.violations.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = ax.violations[i];
    std::string msg = axiom_name(v.axiom) + " violated at " + tuple_string(v.where);
    if (opt.verbose) msg += ", residual " + vector_string<K>(v.residual);
    rep.line("  " + msg);
    Json e;
    e["axiom"] = axiom_name(v.axiom);
    e["at"] = v.where;
    if (opt.verbose) e["residual"] = io::vector_to_json<K>(v.residual);
    list.push_back(std::move(e));
  }
  if (shown < ax.violation_count) rep.line("  ... " + std::to_string(ax.violation_count - shown) + " more");
  rep.json()["violations"] = std::move(list);
  if (!ax.passed()) rep.fail();
}

// verify ALGEBRA [--rep FILE]
inline Report verify(const std::string& path, const std::string& rep_path, const Options& opt) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("verify");
    const auto t = load_algebra<K>(doc, path);
    rep.line("algebra: dim " + std::to_string(t.dim()) + " over " + t.field().name());
    describe_axioms(rep, check_axioms(t), opt);
    if (!rep_path.empty()) {
      const auto r = load_rep(t, rep_path);
      const auto rr = check_representation(r);
      Json j = Json::object();
      const std::pair<RepIdentity, bool> rows[] = {{RepIdentity::twist_compatibility, rr.twist_compatibility},
                                                   {RepIdentity::theta_theta, rr.theta_theta},
                                                   {RepIdentity::theta_d, rr.theta_d},
                                                   {RepIdentity::d_d, rr.d_d}};
      for (const auto& [id, good] : rows) {
        j[rep_identity_name(id)] = good;
        rep.line(rep_identity_name(id) + ": " + (good ? "ok" : "FAILED"));
      }
      Json list = Json::array();
      const std::size_t shown = opt.verbose ? rr.violations.size() : std::min<std::size_t>(rr.violations.size(), 10);
      for (std::size_t i = 0; i < shown; ++i) {
        rep.line("  " + rep_identity_name(rr.violations[i].identity) + " violated at " +
                 tuple_string(rr.violations[i].where));
        Json e;
        e["identity"] = rep_identity_name(rr.violations[i].identity);
        e["at"] = rr.violations[i].where;
        list.push_back(std::move(e));
      }
      j["violations"] = std::move(list);
      j["violation_count"] = rr.violation_count;
      rep.json()["representation"] = std::move(j);
      if (!rr.passed()) rep.fail();
    }
    rep.line(rep.exit_code() == ok ? "result: pass" : "result: FAIL");
    return rep;
  });
}

// cohomology ALGEBRA --degrees 1,3 --rep trivial|adjoint|FILE
inline Report cohomology_cmd(const std::string& path, const std::vector<std::size_t>& degrees, const std::string& rep_spec,
                             const Options& opt) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("cohomology");
    const auto t = load_algebra<K>(doc, path);
    const auto r = load_rep(t, rep_spec);
    const auto limits = Limits::from_env();
    rep.json()["representation"] = rep_spec == "trivial" || rep_spec == "adjoint" ? rep_spec : "file";
    Json list = Json::array();
    for (auto n : degrees) {
      const auto h = cohomology(r, n, limits);
      rep.line("H^" + std::to_string(n) + ": dim " + std::to_string(h.dim) + "  (C " + std::to_string(h.cochain_dim) +
               ", Z " + std::to_string(h.cocycles.dim()) + ", B " + std::to_string(h.coboundaries.dim()) + ")");
      Json e;
      e["degree"] = n;
      e["cochains"] = h.cochain_dim;
      e["cocycles"] = h.cocycles.dim();
      e["coboundaries"] = h.coboundaries.dim();
      e["dim"] = h.dim;
      if (opt.verbose) {
        Json reps = Json::array();
        for (const auto& c : h.representatives) reps.push_back(io::cochain_to_json(c));
        e["representatives"] = std::move(reps);
        for (const auto& c : h.representatives) rep.line("  representative: " + io::Json(io::cochain_to_json(c)).dump());
      }
      list.push_back(std::move(e));
    }
    rep.json()["degrees"] = std::move(list);
    return rep;
  });
}

// extend ALGEBRA --cocycle FILE [--rep FILE]
inline Report extend(const std::string& path, const std::string& cocycle, const std::string& rep_spec, const Options&) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("extend");
    const auto t = load_algebra<K>(doc, path);
    const auto r = load_rep(t, rep_spec);
    const auto g = load_cochain(cocycle, r);
    const auto e = build_extension(t, r, g);
    rep.line("central extension of dim " + std::to_string(e.total.dim()) + " = " + std::to_string(t.dim()) + " + " +
             std::to_string(r.mdim()) + "; all extension checks pass");
    rep.json()["dim"] = e.total.dim();
    rep.set_document(io::extension_to_json(e));
    return rep;
  });
}

// equiv ALGEBRA G1 G2 [--rep FILE]
inline Report equiv(const std::string& path, const std::string& g1, const std::string& g2, const std::string& rep_spec,
                    const Options&) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("equiv");
    const auto t = load_algebra<K>(doc, path);
    const auto r = load_rep(t, rep_spec);
    const auto res = are_equivalent(t, r, load_cochain(g1, r), load_cochain(g2, r), Limits::from_env());
    rep.json()["equivalent"] = res.equivalent;
    if (res.equivalent) {
      rep.line("equivalent: g2 - g1 = delta f");
      rep.line("f = " + io::Json(io::cochain_to_json(res.witness->f)).dump());
      rep.json()["f"] = io::cochain_to_json(res.witness->f);
      rep.json()["phi"] = io::matrix_to_json(res.witness->phi);
    } else {
      rep.line("not equivalent: class of g2 - g1 in H^3 has coordinates " + vector_string<K>(res.class_difference));
      rep.json()["class_difference"] = io::vector_to_json<K>(res.class_difference);
      rep.fail();
    }
    return rep;
  });
}

// center ALGEBRA
inline Report center_cmd(const std::string& path, const Options&) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("center");
    const auto t = load_algebra<K>(doc, path);
    const auto z = center(t);
    rep.line("center: dim " + std::to_string(z.size()));
    Json basis = Json::array();
    for (const auto& v : z) {
      rep.line("  " + vector_string<K>(v));
      basis.push_back(io::vector_to_json<K>(v));
    }
    rep.json()["dim"] = z.size();
    rep.json()["basis"] = std::move(basis);
    return rep;
  });
}

// def-check ALGEBRA DEFORMATION [--against DEF2 [--iso ISO]]
inline Report def_check(const std::string& path, const std::string& def_path, const std::string& against,
                        const std::string& iso, const Options& opt) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("def-check");
    const auto t = load_algebra<K>(doc, path);
    if (!check_axioms(t).passed()) throw precondition_error("the algebra fails the axiom check");
    const auto D = io::deformation_from_json<K>(io::read_json_file(def_path), t, def_path);
    const auto dr = check_deformation(D);
    Json orders = Json::array();
    for (std::size_t n = 0; n < dr.residuals.size(); ++n) {
      const auto at = first_nonzero(dr.residuals[n]);
      Json e;
      e["order"] = n + 1;
      e["zero"] = !at;
      if (at) e["first_nonzero_at"] = *at;
      if (opt.verbose) e["residual"] = io::cochain_to_json(dr.residuals[n]);
      orders.push_back(std::move(e));
      rep.line("order " + std::to_string(n + 1) + ": " +
               (at ? "deformation equation FAILS at " + tuple_string(*at) : std::string("ok")));
      if (at) rep.fail();
    }
    rep.json()["orders"] = std::move(orders);
    if (D.order() > 0) {
      const bool cocycle = infinitesimal_is_cocycle(D);
      rep.json()["infinitesimal_is_cocycle"] = cocycle;
      rep.line(std::string("infinitesimal d_1 is a 3-cocycle: ") + (cocycle ? "yes" : "no"));
    }
    if (!against.empty()) {
      const auto D2 = io::deformation_from_json<K>(io::read_json_file(against), t, against);
      if (!iso.empty()) {
        const auto phi = io::isomorphism_from_json<K>(io::read_json_file(iso), t, iso);
        const auto er = check_equivalence(D, D2, phi);
        Json eq = Json::array();
        for (std::size_t n = 0; n < er.residuals.size(); ++n) {
          const auto at = first_nonzero(er.residuals[n]);
          const bool comm = er.commutators[n].is_zero();
          Json e;
          e["order"] = n + 1;
          e["zero"] = !at;
          if (at) e["first_nonzero_at"] = *at;
          e["commutes_with_alpha"] = comm;
          eq.push_back(std::move(e));
          rep.line("equivalence order " + std::to_string(n + 1) + ": " +
                   (at ? "FAILS at " + tuple_string(*at) : std::string("ok")) +
                   (comm ? "" : "; phi does not commute with alpha"));
        }
        rep.json()["equivalence"] = std::move(eq);
        if (!er.passed()) rep.fail();
      } else {
        const auto w = infinitesimals_cohomologous(D, D2, Limits::from_env());
        rep.json()["cohomologous"] = w.has_value();
        if (w) {
          rep.json()["witness"] = io::matrix_to_json(cochain_matrix(*w));
          rep.line("infinitesimals are cohomologous: d_1 - d'_1 = delta phi_1");
        } else {
          rep.line("infinitesimals lie in distinct classes of H^3");
          rep.fail();
        }
      }
    }
    rep.line(rep.exit_code() == ok ? "result: pass" : "result: FAIL");
    return rep;
  });
}

// def-integrate ALGEBRA --cocycle D1 --order N
inline Report def_integrate(const std::string& path, const std::string& cocycle, std::size_t order, const Options&) {
  const auto doc = io::read_json_file(path);
  return with_scalar(io::algebra_field(doc, path), [&]<class K>(K) {
    Report rep("def-integrate");
    const auto t = load_algebra<K>(doc, path);
    if (!check_axioms(t).passed()) throw precondition_error("the algebra fails the axiom check");
    const auto r = adjoint_rep(t);
    const auto d1 = load_cochain(cocycle, r);
    if (d1.arity() != 3) throw precondition_error("the infinitesimal must be a 3-cochain");
    const auto res = integrate(t, d1, order, Limits::from_env());
    rep.json()["reached_order"] = res.deformation.order();
    if (res.obstructed()) {
      rep.line("obstructed at order " + std::to_string(*res.obstructed_at) + ": obstruction class in H^5 " +
               vector_string<K>(res.obstruction_class));
      rep.json()["obstructed_at"] = *res.obstructed_at;
      rep.json()["obstruction_class"] = io::vector_to_json<K>(res.obstruction_class);
      rep.fail();
    } else {
      rep.line("integrated to order " + std::to_string(order) + "; deformation equations hold at every order");
      rep.set_document(io::deformation_to_json(res.deformation));
    }
    return rep;
  });
}

struct GenArgs {
  std::string kind;
  std::string field = "Q";
  std::size_t dim = 2;
  std::string form = "identity";
  std::string alpha = "identity";
  std::string lambda = "1";
  std::size_t m = 2, n = 2;
  std::string conjugator;
  std::uint64_t seed = 0;
};

inline Report gen(const GenArgs& a, const Options&) {
  const auto field = parse_field_option(a.field);
  return with_scalar(field, [&]<class K>(K) {
    Report rep("gen");
    HomTripleSystem<K> t;
    if (a.kind == "bilinear") {
      K lambda;
      try {
        lambda = K::parse(a.lambda, field);
      } catch (const parse_error& e) {
        throw parse_error(std::string("--lambda: ") + e.what());
      }
      t = gen_bilinear(parse_matrix_spec<K>(a.form, field, a.dim, "--form"),
                       parse_matrix_spec<K>(a.alpha, field, a.dim, "--alpha"), lambda);
    } else if (a.kind == "matrix") {
      std::optional<Matrix<K>> g;
      if (!a.conjugator.empty()) g = parse_matrix_spec<K>(a.conjugator, field, a.m, "--conjugator");
      t = gen_matrix<K>(field, a.m, a.n, g);
    } else {
      t = random_homlts<K>(a.dim, field, a.seed);
    }
    rep.line("generated " + a.kind + " system of dim " + std::to_string(t.dim()));
    rep.set_document(io::algebra_to_json(t));
    return rep;
  });
}

inline void emit(const Report& rep, const Options& opt, std::ostream& out) {
  if (rep.document() && opt.output.empty()) {
    out << io::dump(*rep.document());
    return;
  }
  if (rep.document()) {
    std::ofstream f(opt.output, std::ios::binary);
    if (!f) throw precondition_error("cannot write " + opt.output);
    f << io::dump(*rep.document());
  }
  out << rep.render(opt);
}

}  // namespace detail

/// Runs the command line (args[0] is the program name). Reports go to out,
/// diagnostics to err.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for multiplicative Hom-Lie triple systems", "homlts"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the verb
  Options opt;
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--verbose,-v", opt.verbose, "Include residuals and bases in reports");
  app.add_option("--output,-o", opt.output, "Write the produced document to this path");

  std::string algebra, verify_rep, coh_rep, ext_rep, cocycle, second, against, iso;
  std::vector<std::size_t> degrees{1, 3};
  std::size_t order = 4;
  detail::GenArgs gen_args;

  auto* verify = app.add_subcommand("verify", "Check the axioms (and a representation with --rep)");
  verify->add_option("algebra", algebra, "Algebra file")->required();
  verify->add_option("--rep", verify_rep, "Representation file");

  auto* coh = app.add_subcommand("cohomology", "Dimensions of C^n, Z^n, B^n and H^n");
  coh->add_option("algebra", algebra, "Algebra file")->required();
  coh->add_option("--degrees", degrees, "Degrees, comma separated")->delimiter(',')->check(CLI::PositiveNumber);
  coh->add_option("--rep", coh_rep, "trivial, adjoint or a representation file")->default_val("trivial");

  auto* ext = app.add_subcommand("extend", "Build the central extension defined by a 3-cocycle");
  ext->add_option("algebra", algebra, "Algebra file")->required();
  ext->add_option("--cocycle", cocycle, "Cocycle file")->required();
  ext->add_option("--rep", ext_rep, "Trivial module: 'trivial' or a representation file")->default_val("trivial");

  auto* eq = app.add_subcommand("equiv", "Decide whether two cocycles give equivalent extensions");
  eq->add_option("algebra", algebra, "Algebra file")->required();
  eq->add_option("cocycle1", cocycle, "First cocycle file")->required();
  eq->add_option("cocycle2", second, "Second cocycle file")->required();
  eq->add_option("--rep", ext_rep, "Trivial module: 'trivial' or a representation file")->default_val("trivial");

  auto* dc = app.add_subcommand("def-check", "Check the deformation equations order by order");
  dc->add_option("algebra", algebra, "Algebra file")->required();
  dc->add_option("deformation", second, "Deformation file")->required();
  dc->add_option("--against", against, "Second deformation for an equivalence check");
  dc->add_option("--iso", iso, "Formal isomorphism file")->needs(dc->get_option("--against"));

  auto* di = app.add_subcommand("def-integrate", "Extend a 3-cocycle to a deformation of order N");
  di->add_option("algebra", algebra, "Algebra file")->required();
  di->add_option("--cocycle", cocycle, "Infinitesimal (adjoint 3-cocycle) file")->required();
  di->add_option("--order,-N", order, "Target order")->check(CLI::Range(1, 64))->default_val(4);

  auto* gen = app.add_subcommand("gen", "Generate an algebra file");
  gen->add_option("kind", gen_args.kind, "bilinear, matrix or random")
      ->required()
      ->check(CLI::IsMember({"bilinear", "matrix", "random"}));
  gen->add_option("--field", gen_args.field, "Q or GF:p")->default_val("Q");
  gen->add_option("--dim", gen_args.dim, "Dimension (bilinear, random)")->check(CLI::Range(1, 64))->default_val(2);
  gen->add_option("--form", gen_args.form, "Symmetric form: identity, diag:..., rows:...")->default_val("identity");
  gen->add_option("--alpha", gen_args.alpha, "Twist: identity, diag:..., rows:...")->default_val("identity");
  gen->add_option("--lambda", gen_args.lambda, "Scale of the bracket")->default_val("1");
  gen->add_option("--m", gen_args.m, "Rows (matrix)")->check(CLI::Range(1, 8))->default_val(2);
  gen->add_option("--n", gen_args.n, "Columns (matrix)")->check(CLI::Range(1, 8))->default_val(2);
  gen->add_option("--conjugator", gen_args.conjugator, "Orthogonal g for the twist A -> g A g^T (matrix)");
  gen->add_option("--seed", gen_args.seed, "Seed (random)")->default_val(0);

  auto* cen = app.add_subcommand("center", "Basis of the center");
  cen->add_option("algebra", algebra, "Algebra file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    std::optional<Report> rep;
    if (verb == "verify") rep = detail::verify(algebra, verify_rep, opt);
    else if (verb == "cohomology") rep = detail::cohomology_cmd(algebra, degrees, coh_rep, opt);
    else if (verb == "extend") rep = detail::extend(algebra, cocycle, ext_rep, opt);
    else if (verb == "equiv") rep = detail::equiv(algebra, cocycle, second, ext_rep, opt);
    else if (verb == "def-check") rep = detail::def_check(algebra, second, against, iso, opt);
    else if (verb == "def-integrate") rep = detail::def_integrate(algebra, cocycle, order, opt);
    else if (verb == "gen") rep = detail::gen(gen_args, opt);
    else rep = detail::center_cmd(algebra, opt);
    detail::emit(*rep, opt, out);
    return rep->exit_code();
  } catch (const error& e) {
    const bool parse = dynamic_cast<const parse_error*>(&e) != nullptr;
    const bool pre = dynamic_cast<const precondition_error*>(&e) != nullptr;
    const int code = parse ? bad_input : pre ? precondition_failed : check_failed;
    const char* kind = parse ? "input error" : pre ? "precondition violated" : "invariant violated";
    if (opt.format == "json") {
      Json j;
      j["verb"] = verb;
      j["status"] = "error";
      j["exit_code"] = code;
      j["error"] = std::string(kind) + ": " + e.what();
      out << io::dump(j);
    }
    err << kind << ": " << e.what() << "\n";
    return code;
  }
}

}  // namespace homlts::cli
