#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sfl/json_io.hpp"

using namespace sfl;
using io::Json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kError = 2 };

struct Options {
  std::string f, g, m, u, tau, kind, side = "column", mode = "exact", out;
  int trials = 20, i = 0, j = 0, codim = -1;
  std::optional<std::uint64_t> seed;
  bool full = false;
};

struct Outcome {
  Json doc;
  int code = kOk;
};

Outcome decided(Json doc, bool affirmative) { return {std::move(doc), affirmative ? kOk : kNegative}; }

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error("MissingArgument", std::string(flag) + " is required");
}

template <class S>
GroupMap<S> load_map(const std::string& arg, const char* flag, const Field& field) {
  require(arg, flag);
  Json doc = io::resolve_map(arg);
  if (!(io::map_field(doc) == field)) throw Error("FieldMismatch", std::string(flag) + " is over a different field");
  return io::map_from_json<S>(doc);
}

template <class S>
Json fit_to_json(const std::optional<CentralFit<S>>& fit) {
  if (!fit) return nullptr;
  return Json{{"alpha", io::scalar_to_json(fit->alpha)}, {"beta", io::scalar_to_json(fit->beta)}};
}

template <class S>
Outcome run_central(const std::string& sub, const Options& o, const GroupMap<S>& f) {
  if (sub == "fit") {
    // f = alpha * beta^nfix * sgn.
    auto fit = fit_sgn_nfix_form(f);
    if (!fit) return decided(Json{{"fit", nullptr}}, false);
    return decided(Json{{"fit", {{"alpha", io::scalar_to_json(fit->first)}, {"beta", io::scalar_to_json(fit->second)}}}},
                   true);
  }
  if (sub == "gf") {
    GfReport<S> rep = compute_Gf(f);
    Json doc{{"tag", tag_name(rep.tag)},
             {"n", rep.n},
             {"reason", rep.reason},
             {"constant_fit", fit_to_json(rep.constant_fit)},
             {"signature_fit", fit_to_json(rep.signature_fit)},
             {"solver_agrees", rep.solver_agrees ? Json(*rep.solver_agrees) : Json(nullptr)}};
    if (f.n() >= 4)
      doc["two_value_fit"] = rep.two_value_fit ? Json{{"alpha", io::scalar_to_json(rep.two_value_fit->alpha)},
                                                      {"even", io::scalar_to_json(rep.two_value_fit->c_even)},
                                                      {"odd", io::scalar_to_json(rep.two_value_fit->c_odd)}}
                                               : Json(nullptr);
    if (rep.k4_condition) {
      doc["k4_condition"] = *rep.k4_condition;
      doc["k4_constant_fit"] = rep.k4_constant_fit;
    }
    return {doc, kOk};
  }
  if (sub == "coherent") {
    require(o.tau, "--tau");
    Permutation t = io::perm_from_json(io::resolve_document(o.tau), "/tau", f.n());
    CoherenceResult<S> r = is_f_coherent(f, t);
    Json doc{{"status", status_name(r.status)}, {"method", r.method}};
    if (r.witness) doc["witness"] = io::witness_to_json(*r.witness);
    if (r.status == CoherenceStatus::unknown) {
      doc["error"] = {{"code", "RationalsUndecidable"},
                      {"message", "coherence over the rationals is decided only for central maps"}};
      return {doc, kError};
    }
    return decided(doc, r.status == CoherenceStatus::yes);
  }
  if (sub == "adapted") {
    std::string kind = o.kind.empty() ? (f.n() == 3 ? "three-cycle" : "k4") : o.kind;
    if (kind == "three-cycle") return {io::witness_to_json(three_cycle_adapted(f)), kOk};
    if (kind != "k4") throw Error("InvalidArgument", "--kind must be three-cycle or k4");
    auto w = k4_adapted(f);
    if (!w) return decided(Json{{"witness", nullptr}}, false);
    return {io::witness_to_json(*w), kOk};
  }
  throw Error("InvalidArgument", "unknown central subcommand");
}

Outcome run_oracle(const std::string& sub, const Options& o, const GroupMap<Fp>& f) {
  auto list = [](const std::vector<MatrixSubspace<Fp>>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(io::subspace_to_json(s));
    return a;
  };
  if (sub == "nullcone") {
    OracleReport rep = minimal_subspace_oracle(f);
    Json doc{{"codim_n", {{"scanned", rep.codim_n.scanned}, {"inside", list(rep.codim_n.inside)}}},
             {"codim_n_minus_1", {{"scanned", rep.codim_n_minus_1.scanned}, {"inside", list(rep.codim_n_minus_1.inside)}}},
             {"predicted", list(rep.predicted)},
             {"matches_prediction", rep.matches_prediction}};
    return decided(doc, rep.matches_prediction);
  }
  if (sub == "codim-check") {
    if (o.codim < 0) throw Error("MissingArgument", "--codim is required");
    ConeScan scan = scan_cone_subspaces(f, o.codim);
    return {Json{{"codim", scan.codim}, {"scanned", scan.scanned}, {"inside", list(scan.inside)}}, kOk};
  }
  throw Error("InvalidArgument", "unknown oracle subcommand");
}

template <class S>
Outcome run(const std::vector<std::string>& path, const Options& o, const Json& fdoc) {
  const std::string& cmd = path[0];
  const GroupMap<S> f = io::map_from_json<S>(fdoc);
  const Field& field = f.field();
  const int n = f.n();

  if (cmd == "eval") {
    require(o.m, "-m");
    Mat<S> m = io::matrix_from_json<S>(io::resolve_document(o.m), field, "", n);
    return {Json{{"value", io::scalar_to_json(eval(f, m))}}, kOk};
  }
  if (cmd == "partitions") {
    PartitionPair pp = partitions(f);
    return {Json{{"columns", pp.column_classes}, {"rows", pp.row_classes}, {"c_list", pp.c_list}, {"r_list", pp.r_list}},
            kOk};
  }
  if (cmd == "witness") {
    if (o.side != "column" && o.side != "row") throw Error("InvalidArgument", "--side must be column or row");
    auto w = o.side == "column" ? column_witness(f, o.i, o.j) : row_witness(f, o.i, o.j);
    if (!w) return decided(Json{{"i", o.i}, {"j", o.j}, {"side", o.side}, {"Z", nullptr}}, false);
    Json z = Json::array();
    for (const S& x : w->z) z.push_back(io::scalar_to_json(x));
    return {Json{{"i", w->i}, {"j", w->j}, {"side", side_name(w->side)}, {"Z", z}}, kOk};
  }
  if (cmd == "normalize") {
    NormalizationWitness<S> w = o.full ? fully_normalize(f) : normalize(f);
    return {Json{{"A", io::matrix_to_json(w.a)},
                 {"tau", io::perm_to_json(w.tau)},
                 {"tau_prime", io::perm_to_json(w.tau_prime)},
                 {"g", io::map_to_json(w.g)}},
            kOk};
  }
  if (cmd == "rigid") {
    bool r = is_rigid(f);
    return decided(Json{{"rigid", r}}, r);
  }
  if (cmd == "check") {
    const GroupMap<S> g = load_map<S>(o.g, "-g", field);
    require(o.u, "-u");
    auto u = io::transformation_from_json<S>(io::resolve_document(o.u), field);
    CheckMode mode;
    if (o.mode == "prob") {
      if (!o.seed) throw Error("MissingArgument", "--seed is required in probabilistic mode");
      mode = CheckMode::sampled(o.trials, *o.seed);
    } else if (o.mode != "exact") {
      throw Error("InvalidArgument", "--mode must be exact or prob");
    }
    TransformVerdict<S> v = is_transformation(f, g, u, mode);
    return decided(io::verdict_to_json(v), v.kind == VerdictKind::yes);
  }
  if (cmd == "exists") {
    const GroupMap<S> g = load_map<S>(o.g, "-g", field);
    auto u = exists_transformation(f, g);
    Json doc{{"exists", u.has_value()}};
    if (u) doc["U"] = io::transformation_to_json(*u);
    return decided(doc, u.has_value());
  }
  if (cmd == "decompose") {
    const GroupMap<S> g = load_map<S>(o.g, "-g", field);
    require(o.u, "-u");
    auto u = io::transformation_from_json<S>(io::resolve_document(o.u), field);
    return {io::decomposition_to_json(decompose(u, f, g)), kOk};
  }
  if (cmd == "h-equiv") {
    const GroupMap<S> g = load_map<S>(o.g, "-g", field);
    auto a = decide_h_equivalence(f, g);
    Json doc{{"equivalent", a.has_value()}};
    if (a) doc["A"] = io::matrix_to_json(*a);
    return decided(doc, a.has_value());
  }
  if (cmd == "ph-equiv") {
    const GroupMap<S> g = load_map<S>(o.g, "-g", field);
    auto w = decide_ph_equivalence(f, g);
    Json doc{{"equivalent", w.has_value()}};
    if (w) {
      doc["A"] = io::matrix_to_json(w->a);
      doc["tau"] = io::perm_to_json(w->tau);
      doc["tau_prime"] = io::perm_to_json(w->tau_prime);
    }
    return decided(doc, w.has_value());
  }
  if (cmd == "central") return run_central(path.at(1), o, f);
  if (cmd == "oracle") {
    if constexpr (std::is_same_v<S, Fp>) return run_oracle(path.at(1), o, f);
    else throw Error("InfiniteField", "the null-cone oracle needs a finite field");
  }
  throw Error("InvalidArgument", "unknown subcommand " + cmd);
}

Json error_doc(const std::string& code, const std::string& message) {
  return Json{{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear preservers of generalized matrix functions over S_n"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_map = [&](CLI::App* c, bool with_g) {
    c->add_option("-f", o.f, "map: JSON file, inline JSON or built-in (e.g. sgn:3,gfp:7)")->required();
    if (with_g) c->add_option("-g", o.g, "second map")->required();
  };
  auto add_out = [&](CLI::App* c) { c->add_option("-o", o.out, "write the JSON result to this path"); };

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool with_g) {
    CLI::App* c = parent->add_subcommand(name, help);
    add_map(c, with_g);
    add_out(c);
    return c;
  };

  leaf(&app, "eval", "evaluate f~ at a matrix", false)->add_option("-m", o.m, "matrix")->required();
  leaf(&app, "partitions", "column and row equivalence classes", false);
  {
    auto* c = leaf(&app, "witness", "equivalence witness for a pair of indices", false);
    c->add_option("-i", o.i)->required();
    c->add_option("-j", o.j)->required();
    c->add_option("--side", o.side)->check(CLI::IsMember({"column", "row"}));
  }
  leaf(&app, "normalize", "normalize f", false)->add_flag("--full", o.full, "also move classes onto intervals");
  leaf(&app, "rigid", "all classes are singletons", false);
  {
    auto* c = leaf(&app, "check", "is U an (f, g)-transformation", true);
    c->add_option("-u", o.u, "transformation")->required();
    c->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "prob"}));
    c->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed);
  }
  leaf(&app, "exists", "search for an (f, g)-transformation", true);
  leaf(&app, "decompose", "standard form of an (f, g)-transformation", true)
      ->add_option("-u", o.u, "transformation")
      ->required();
  leaf(&app, "h-equiv", "A with g = f.A", true);
  leaf(&app, "ph-equiv", "(A, t, t') with g = f.(A, t, t')", true);

  CLI::App* central = app.add_subcommand("central", "central maps and coherent permutations");
  central->require_subcommand(1, 1);
  leaf(central, "fit", "fit f = alpha beta^nfix sgn", false);
  leaf(central, "gf", "classify the subgroup of coherent permutations", false);
  leaf(central, "coherent", "decide whether tau is coherent", false)->add_option("--tau", o.tau)->required();
  leaf(central, "adapted", "explicit adapted matrices", false)
      ->add_option("--kind", o.kind)
      ->check(CLI::IsMember({"three-cycle", "k4"}));

  CLI::App* oracle = app.add_subcommand("oracle", "null-cone subspace scans over tiny fields");
  oracle->require_subcommand(1, 1);
  leaf(oracle, "nullcone", "minimal subspaces of the null cone vs prediction", false);
  leaf(oracle, "codim-check", "every subspace of one codimension", false)->add_option("--codim", o.codim)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  std::vector<std::string> path;
  for (CLI::App* c = app.get_subcommands().front();;) {
    path.push_back(c->get_name());
    auto subs = c->get_subcommands();
    if (subs.empty()) break;
    c = subs.front();
  }

  Outcome res;
  try {
    Json fdoc = io::resolve_map(o.f);
    res = io::map_field(fdoc).is_prime_field() ? run<Fp>(path, o, fdoc) : run<Rational>(path, o, fdoc);
  } catch (const Error& e) {
    res = {error_doc(e.code(), e.what()), kError};
  } catch (const std::exception& e) {
    res = {error_doc("InternalError", e.what()), kError};
  }
  if (res.code == kError) std::cerr << "sfl: " << res.doc["error"]["message"].get<std::string>() << "\n";

  const std::string text = res.doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out);
    if (!out) {
      std::cerr << "sfl: cannot write " << o.out << "\n";
      return kError;
    }
    out << text;
  }
  return res.code;
}
