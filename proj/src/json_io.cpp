#include "sfl/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace sfl::io {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(path + "/" + key, "missing");
  return *it;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw schema_error(path, "expected an integer");
  return j.get<int>();
}

template <class S>
S scalar_from_text(const std::string& text, const Field& field) {
  if constexpr (std::is_same_v<S, Fp>) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &used);
    } catch (const std::exception&) {
      throw Error("ParseError", "malformed GF(p) element '" + text + "'");
    }
    if (used != text.size()) throw Error("ParseError", "malformed GF(p) element '" + text + "'");
    return Fp::make(v, field.p);
  } else {
    return Rational::parse(text);
  }
}

template <class S>
Json build_builtin(const std::string& name, const std::vector<std::string>& args, const Field& field) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw Error("ParseError", "built-in '" + name + "' takes " + std::to_string(lo) +
                                    (lo == hi ? "" : ".." + std::to_string(hi)) + " arguments");
  };
  auto degree = [&](const std::string& s) {
    try {
      return std::stoi(s);
    } catch (const std::exception&) {
      throw Error("ParseError", "malformed degree '" + s + "'");
    }
  };
  auto scalar = [&](const std::string& s) { return scalar_from_text<S>(s, field); };
  if (name == "sgn" || name == "one") {
    need(1, 1);
    int n = degree(args[0]);
    return map_to_json(name == "sgn" ? sgn_map<S>(n, field) : one_map<S>(n, field));
  }
  if (name == "sgn-nfix") {
    need(3, 3);
    return map_to_json(sgn_nfix_map<S>(degree(args[0]), field, scalar(args[1]), scalar(args[2])));
  }
  if (name == "ex-f4") {
    need(1, 1);
    return map_to_json(example_f4_map<S>(field, scalar(args[0])));
  }
  if (name == "ex-g") {
    need(1, 2);
    return map_to_json(example_g_map<S>(degree(args[0]), field, scalar(args.size() > 1 ? args[1] : "2")));
  }
  if (name == "ex-h") {
    if (args.empty()) need(1, 1);
    int n = degree(args[0]);
    need(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    std::vector<S> xs;
    for (std::size_t k = 1; k < args.size(); ++k) xs.push_back(scalar(args[k]));
    return map_to_json(example_h_map<S>(n, field, xs));
  }
  throw Error("ParseError", "unknown built-in map '" + name + "'");
}

}  // namespace

Json field_to_json(const Field& field) {
  if (field.is_prime_field()) return Json{{"kind", "gfp"}, {"p", field.p}};
  return Json{{"kind", "rational"}};
}

Field field_from_json(const Json& j, const std::string& path) {
  const Json& kind = member(j, "kind", path);
  if (kind == "rational") return Field::rationals();
  if (kind != "gfp") throw schema_error(path + "/kind", "expected \"gfp\" or \"rational\"");
  const Json& p = member(j, "p", path);
  if (!p.is_number_unsigned()) throw schema_error(path + "/p", "expected a positive integer");
  try {
    return Field::gfp(p.get<std::uint64_t>());
  } catch (const Error& e) {
    throw schema_error(path + "/p", e.what());
  }
}

Json scalar_to_json(const Fp& x) { return x.value(); }

Json scalar_to_json(const Rational& x) {
  if (x.denominator() == 1 && x.numerator() <= std::numeric_limits<long long>::max() &&
      x.numerator() >= std::numeric_limits<long long>::min())
    return static_cast<long long>(x.numerator());
  return x.str();
}

template <>
Fp scalar_from_json<Fp>(const Json& j, const Field& field, const std::string& path) {
  if (!j.is_number_integer()) throw schema_error(path, "expected an integer in [0, p)");
  const long long v = j.get<long long>();
  if (v < 0 || v >= static_cast<long long>(field.p)) throw schema_error(path, "expected an integer in [0, p)");
  return Fp::make(v, field.p);
}

template <>
Rational scalar_from_json<Rational>(const Json& j, const Field&, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw schema_error(path, e.what());
    }
  }
  throw schema_error(path, "expected an integer or a \"num/den\" string");
}

template <class S>
Json matrix_to_json(const Mat<S>& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Mat<S> matrix_from_json(const Json& j, const Field& field, const std::string& path, std::optional<int> n) {
  if (!j.is_array() || j.empty()) throw schema_error(path, "expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) throw schema_error(path + "/0", "expected an array");
  const int cols = static_cast<int>(j[0].size());
  if (n && (rows != *n || cols != *n))
    throw schema_error(path, "expected a " + std::to_string(*n) + "x" + std::to_string(*n) + " matrix");
  Mat<S> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) throw schema_error(rp, "rows differ in length");
    for (int c = 0; c < cols; ++c) m(r, c) = scalar_from_json<S>(j[r][c], field, rp + "/" + std::to_string(c));
  }
  return m;
}

Json perm_to_json(const Permutation& s) {
  Json a = Json::array();
  for (int k = 1; k <= s.n(); ++k) a.push_back(s(k));
  return a;
}

Permutation perm_from_json(const Json& j, const std::string& path, std::optional<int> n) {
  if (!j.is_array()) throw schema_error(path, "expected a one-line permutation array");
  std::vector<int> img;
  for (std::size_t k = 0; k < j.size(); ++k) img.push_back(int_from_json(j[k], path + "/" + std::to_string(k)));
  if (n && static_cast<int>(img.size()) != *n) throw schema_error(path, "expected degree " + std::to_string(*n));
  try {
    return Permutation(std::move(img));
  } catch (const Error& e) {
    throw schema_error(path, e.what());
  }
}

template <class S>
Json map_to_json(const GroupMap<S>& f) {
  Json values = Json::array();
  for (const S& x : f.values()) values.push_back(scalar_to_json(x));
  return Json{{"n", f.n()}, {"field", field_to_json(f.field())}, {"values", std::move(values)}};
}

namespace {
const Json& unwrap(const Json& j, const char* data_key, const char* wrapper) {
  if (j.is_object() && !j.contains(data_key) && j.contains(wrapper)) return j[wrapper];
  return j;
}
}  // namespace

Field map_field(const Json& j) {
  const Json& d = unwrap(j, "values", "g");
  return field_from_json(member(d, "field", ""), "/field");
}

template <class S>
GroupMap<S> map_from_json(const Json& j0, const std::string& path0) {
  const bool wrapped = j0.is_object() && !j0.contains("values") && j0.contains("g");
  const Json& j = unwrap(j0, "values", "g");
  const std::string path = wrapped ? path0 + "/g" : path0;
  const int n = int_from_json(member(j, "n", path), path + "/n");
  if (n < 0 || n > kMaxDegree) throw schema_error(path + "/n", "degree must lie in 0.." + std::to_string(kMaxDegree));
  const Field field = field_from_json(member(j, "field", path), path + "/field");
  if (field.kind != ScalarKind<S>::kind) throw schema_error(path + "/field", "field kind mismatch");
  const Json& vals = member(j, "values", path);
  if (!vals.is_array() || vals.size() != factorial(n))
    throw schema_error(path + "/values", "expected " + std::to_string(factorial(n)) + " values");
  std::vector<S> v;
  v.reserve(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const std::string vp = path + "/values/" + std::to_string(k);
    v.push_back(scalar_from_json<S>(vals[k], field, vp));
    if (is_zero(v.back())) throw schema_error(vp, "map values must be nonzero");
  }
  return GroupMap<S>(n, field, std::move(v));
}

template <class S>
Json transformation_to_json(const TransformationMatrix<S>& u) {
  return Json{{"n", u.n}, {"entries", matrix_to_json(u.entries)}};
}

template <class S>
TransformationMatrix<S> transformation_from_json(const Json& j0, const Field& field, const std::string& path0) {
  const bool wrapped = j0.is_object() && !j0.contains("entries") && j0.contains("U");
  const Json& j = unwrap(j0, "entries", "U");
  const std::string path = wrapped ? path0 + "/U" : path0;
  const int n = int_from_json(member(j, "n", path), path + "/n");
  if (n < 1 || n > kMaxDegree) throw schema_error(path + "/n", "degree out of range");
  return TransformationMatrix<S>{n, field, matrix_from_json<S>(member(j, "entries", path), field, path + "/entries", n * n)};
}

template <class S>
Json witness_to_json(const CoherenceWitness<S>& w) {
  return Json{{"tau", perm_to_json(w.tau)}, {"A", matrix_to_json(w.a)}};
}

template <class S>
Json decomposition_to_json(const DecomposedForm<S>& d) {
  Json p = Json::array(), q = Json::array();
  for (const auto& b : d.v.p_blocks) p.push_back(matrix_to_json(b));
  for (const auto& b : d.v.q_blocks) q.push_back(matrix_to_json(b));
  return Json{{"case", case_name(d.kind)}, {"K", matrix_to_json(d.k)},   {"sigma", perm_to_json(d.sigma)},
              {"tau", perm_to_json(d.tau)}, {"P_blocks", std::move(p)}, {"Q_blocks", std::move(q)},
              {"alpha", scalar_to_json(d.v.alpha)}};
}

template <class S>
Json verdict_to_json(const TransformVerdict<S>& v) {
  Json out{{"verdict", verdict_name(v.kind)}, {"mode", v.probabilistic ? "prob" : "exact"}};
  if (v.alpha) out["alpha"] = scalar_to_json(*v.alpha);
  if (v.witness) out["witness"] = matrix_to_json(*v.witness);
  if (v.monomial) out["monomial"] = *v.monomial;
  if (v.probabilistic) {
    out["trials"] = v.trials;
    out["seed"] = v.seed;
  }
  return out;
}

Json subspace_to_json(const MatrixSubspace<Fp>& s) {
  auto cls = classify_subspace(s);
  if (!cls) {
    Json basis = Json::array();
    for (int k = 0; k < s.dim(); ++k) basis.push_back(matrix_to_json(s.element(k)));
    return Json{{"kind", "other"}, {"basis", std::move(basis)}};
  }
  Json x = Json::array();
  for (int i = 0; i < cls->second.size(); ++i) x.push_back(scalar_to_json(cls->second(i)));
  return Json{{"kind", cls->first == Side::column ? "VX" : "VXT"}, {"X", std::move(x)}};
}

Json builtin_map(const std::string& spec) {
  std::vector<std::string> tokens = split(spec, ',');
  if (tokens.empty() || tokens[0].empty()) throw Error("ParseError", "empty map specification");
  Field field = Field::rationals();
  const std::string& last = tokens.back();
  if (last.rfind("gfp:", 0) == 0) {
    try {
      field = Field::gfp(std::stoull(last.substr(4)));
    } catch (const std::logic_error&) {
      throw Error("ParseError", "malformed field '" + last + "'");
    }
    tokens.pop_back();
  } else if (last == "rational") {
    tokens.pop_back();
  }
  if (tokens.empty()) throw Error("ParseError", "map specification names no map");
  std::string name = tokens[0];
  std::vector<std::string> args;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    args.push_back(name.substr(colon + 1));
    name = name.substr(0, colon);
  }
  args.insert(args.end(), tokens.begin() + 1, tokens.end());
  if (field.is_prime_field()) return build_builtin<Fp>(name, args, field);
  return build_builtin<Rational>(name, args, field);
}

Json resolve_document(const std::string& arg) {
  std::string text;
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw Error("FileNotFound", "cannot read '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("SchemaError", std::string("invalid JSON: ") + e.what());
  }
}

Json resolve_map(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if ((first != std::string::npos && arg[first] == '{') || std::filesystem::is_regular_file(arg))
    return resolve_document(arg);
  return builtin_map(arg);
}

#define SFL_INSTANTIATE(S)                                                                                       \
  template Json matrix_to_json<S>(const Mat<S>&);                                                                \
  template Mat<S> matrix_from_json<S>(const Json&, const Field&, const std::string&, std::optional<int>);        \
  template Json map_to_json<S>(const GroupMap<S>&);                                                              \
  template GroupMap<S> map_from_json<S>(const Json&, const std::string&);                                        \
  template Json transformation_to_json<S>(const TransformationMatrix<S>&);                                       \
  template TransformationMatrix<S> transformation_from_json<S>(const Json&, const Field&, const std::string&);   \
  template Json witness_to_json<S>(const CoherenceWitness<S>&);                                                  \
  template Json decomposition_to_json<S>(const DecomposedForm<S>&);                                              \
  template Json verdict_to_json<S>(const TransformVerdict<S>&);

SFL_INSTANTIATE(Fp)
SFL_INSTANTIATE(Rational)

}  // namespace sfl::io
