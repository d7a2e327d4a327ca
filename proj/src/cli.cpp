#include "blanchfield/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "blanchfield/moves.hpp"
#include "json.hpp"

namespace blanchfield::cli {

namespace {

using nlohmann::json;

std::string where(const std::string& path) { return path.empty() ? "file" : path; }

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(where(path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where(path) + ": missing field \"" + key + "\"");
  return *it;
}

int small_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path + ": expected an integer");
  return j.get<int>();
}

mpz_class big_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0) throw ValidationError(path + ": \"" + s + "\" is not a decimal integer");
    return z;
  }
  throw ValidationError(path + ": expected an integer or a decimal string");
}

template <typename Entry>
auto read_matrix(const json& j, const std::string& path, Entry entry) {
  using Scalar = decltype(entry(j, path));
  if (!j.is_array()) throw ValidationError(path + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = rows;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw ValidationError(rp + ": expected an array");
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ValidationError(rp + ": has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols) +
                            " (matrices are square)");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = entry(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

IntMatrix read_int_matrix(const json& j, const std::string& path) { return read_matrix(j, path, big_int); }

json matrix_json(const RfMatrix& m, int nv) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c), nv));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Isometry:
      return "isometry";
    case Relation::Negating:
      return "negating";
    case Relation::Conjugating:
      return "conjugating";
  }
  return "?";
}

void print_matrix(std::ostream& out, const RfMatrix& m, int nv) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << " ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " | " : " ") << to_string(m(r, c), nv);
    out << "\n";
  }
}

Convention convention(const std::string& sign) { return sign == "bl" ? Convention::Blanchfield : Convention::Lambda; }

const char* convention_label(Convention c) { return c == Convention::Blanchfield ? "Bl = -lambda_H" : "lambda_H"; }

void print_delta(std::ostream& out, const TorsionData& td, int nv) {
  out << "rho = " << td.rho << "\n";
  out << "free rank = " << td.free_rank << "\n";
  out << "delta = " << to_string(td.delta, nv) << "\n";
}

json delta_json(const TorsionData& td, int nv) {
  return {{"rho", td.rho}, {"free_rank", td.free_rank}, {"delta", to_string(td.delta, nv)}};
}

struct Options {
  std::string file;
  bool as_json = false;
  std::string sign;
  std::string v;
  std::string w;
  std::string op;
  std::string with;
  std::string xi;
  std::string lam = "0";
  std::string alpha = "1";
  bool disjoint = false;
  bool check = false;
  std::string output;
};

int cmd_validate(const Options& o, std::ostream& out) {
  const LinkFile f = read_link_file(o.file);
  const CMatrix h = f.c_matrix();
  const char* mode = f.mode == LinkFile::Mode::Family ? "family" : f.mode == LinkFile::Mode::Boundary ? "boundary" : "matrix";
  if (o.as_json) {
    out << json{{"valid", true}, {"label", f.label}, {"mode", mode}, {"mu", h.mu()}, {"n", h.size()}}.dump(2) << "\n";
  } else {
    out << "valid: " << (f.label.empty() ? o.file : f.label) << " (" << mode << ", mu = " << h.mu()
        << ", n = " << h.size() << ")\n";
  }
  return kOk;
}

int cmd_delta(const Options& o, std::ostream& out) {
  const CMatrix h = read_link_file(o.file).c_matrix();
  const TorsionData td = torsion_order(h);
  if (o.as_json)
    out << delta_json(td, h.mu()).dump(2) << "\n";
  else
    print_delta(out, td, h.mu());
  return kOk;
}

int cmd_form(const Options& o, std::ostream& out) {
  const CMatrix h = read_link_file(o.file).c_matrix();
  const TorsionData td = torsion_order(h);
  if (td.free_rank > 0)
    throw SingularMatrix(td.rho, h.size());
  const Convention sign = o.sign.empty() ? Convention::Blanchfield : convention(o.sign);
  const BlForm form = blanchfield_matrix(td);
  const int nv = h.mu();
  auto entry = [&](std::size_t i, std::size_t j) {
    const QmodLS c = form.matrix[i][j];
    return sign == Convention::Blanchfield ? c : -c;
  };
  const auto n = static_cast<std::size_t>(h.size());
  if (o.as_json) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < n; ++j) row.push_back(to_string(qls_canonical(entry(i, j)), nv));
      rows.push_back(std::move(row));
    }
    out << json{{"convention", sign == Convention::Blanchfield ? "bl" : "lambda"}, {"mu", nv}, {"n", n}, {"matrix", rows}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << "# " << convention_label(sign) << ", " << n << "x" << n << ", classes in Q/Λ_S\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out << "(" << i + 1 << "," << j + 1 << ") " << to_string(entry(i, j), nv) << "\n";
  return kOk;
}

int cmd_pair(const Options& o, std::ostream& out) {
  const CMatrix h = read_link_file(o.file).c_matrix();
  const int nv = h.mu();
  const RfVector v = parse_vector(o.v, nv);
  const RfVector w = parse_vector(o.w, nv);
  const Convention sign = convention(o.sign.empty() ? "lambda" : o.sign);
  const QmodLS value = pair(torsion_order(h), v, w, sign);
  if (o.as_json)
    out << json{{"convention", sign == Convention::Blanchfield ? "bl" : "lambda"},
                {"value", to_string(qls_canonical(value), nv)}}
               .dump(2)
        << "\n";
  else
    out << to_string(value, nv) << "\n";
  return kOk;
}

int cmd_boundary(const Options& o, std::ostream& out, std::ostream& err) {
  const LinkFile f = read_link_file(o.file);
  if (f.mode != LinkFile::Mode::Boundary) throw ValidationError(o.file + ": boundary needs a boundary-mode file");
  const BoundarySeifert& b = *f.boundary;
  const CMatrix h = f.c_matrix();
  const int nv = h.mu();
  const TorsionData td = torsion_order(h);
  json j = delta_json(td, nv);
  j["H"] = matrix_json(h.matrix(), nv);
  if (!o.as_json) {
    out << "H =\n";
    print_matrix(out, h.matrix(), nv);
    print_delta(out, td, nv);
  }
  if (o.v.empty() && o.w.empty()) {
    if (o.as_json) out << j.dump(2) << "\n";
    return kOk;
  }
  if (o.v.empty() || o.w.empty()) throw ValidationError("boundary: --v and --w go together");
  const RfVector v = parse_vector(o.v, nv);
  const RfVector w = parse_vector(o.w, nv);
  const Convention sign = convention(o.sign.empty() ? "lambda" : o.sign);
  const QmodLS general = pair(td, v, w, sign);
  j["convention"] = sign == Convention::Blanchfield ? "bl" : "lambda";
  j["general"] = to_string(qls_canonical(general), nv);
  int code = kOk;
  try {
    QmodLS closed = boundary_closed_form(b, v, w);
    if (sign == Convention::Lambda) closed = -closed;
    const bool match = closed == general;
    j["closed_form"] = to_string(qls_canonical(closed), nv);
    j["verdict"] = match ? "MATCH" : "MISMATCH";
    if (!o.as_json) {
      out << "closed form = " << to_string(closed, nv) << "\n";
      out << "general path = " << to_string(general, nv) << "\n";
      out << "verdict: " << (match ? "MATCH" : "MISMATCH") << "\n";
    }
    if (!match) code = kInternal;
  } catch (const SingularMatrix& e) {
    j["closed_form"] = nullptr;
    j["verdict"] = "GENERAL_ONLY";
    err << "notice: A - tau A^T is singular (rank " << e.rank() << " < " << b.size()
        << "); closed form unavailable, general path only\n";
    if (!o.as_json) out << "general path = " << to_string(general, nv) << "\n";
  }
  if (o.as_json) out << j.dump(2) << "\n";
  return code;
}

struct Witness {
  std::string role;
  std::string source_label;
  FormIsometry iso;
};

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  const LinkFile f = read_link_file(o.file);
  const CMatrix h = f.c_matrix();
  const std::string label = f.label.empty() ? o.file : f.label;
  const int nv = h.mu();
  const bool binary = o.op == "sum" || o.op == "connected-sum";
  if (binary && o.with.empty()) throw ValidationError("--op " + o.op + " needs --with FILE");
  if (!binary && !o.with.empty()) throw ValidationError("--with only applies to sum and connected-sum");
  if (o.disjoint && o.op != "connected-sum") throw ValidationError("--disjoint only applies to connected-sum");

  CMatrix result = h;
  std::string out_label;
  std::vector<Witness> witnesses;
  if (o.op == "mirror") {
    const FormIsometry iso = mirror_isometry(h);
    result = iso.target;
    witnesses.push_back({"source", label, iso});
  } else if (o.op == "reverse") {
    const FormIsometry iso = reverse_isometry(h);
    result = iso.target;
    witnesses.push_back({"source", label, iso});
  } else if (o.op == "stab0") {
    const Transformed t = stabilize0(h);
    result = t.H;
    witnesses.push_back({"source", label, t.iso});
  } else if (o.op == "stab2") {
    const RfVector xi = o.xi.empty() ? RfVector::Constant(h.size(), RatFunc(LaurentPoly(mpz_class(0), nv)))
                                     : parse_vector(o.xi, nv);
    const Transformed t = stabilize2(h, xi, parse_ratfunc(o.lam, nv), parse_ratfunc(o.alpha, nv));
    result = t.H;
    witnesses.push_back({"source", label, t.iso});
  } else {
    const LinkFile g = read_link_file(o.with);
    const CMatrix h2 = g.c_matrix();
    const std::string label2 = g.label.empty() ? o.with : g.label;
    if (o.op == "sum") {
      result = block_sum({h, h2});
      auto embed = [&](const CMatrix& part, Eigen::Index offset) {
        RfMatrix map = RfMatrix::Constant(result.size(), part.size(), RatFunc(LaurentPoly(mpz_class(0), nv)));
        for (Eigen::Index i = 0; i < part.size(); ++i) map(offset + i, i) = RatFunc(LaurentPoly(mpz_class(1), nv));
        return FormIsometry{part, result, map, Relation::Isometry};
      };
      witnesses.push_back({"first", label, embed(h, 0)});
      witnesses.push_back({"second", label2, embed(h2, h.size())});
    } else {
      const ConnectedSum s = connected_sum(h, h2, !o.disjoint);
      result = s.H;
      witnesses.push_back({"first", label, s.first});
      witnesses.push_back({"second", label2, s.second});
    }
    out_label = o.op + "(" + label + ", " + label2 + ")";
  }
  if (out_label.empty()) out_label = o.op + "(" + label + ")";

  json file = json::parse(matrix_file_json(result, out_label));
  json wit = json::array();
  for (const auto& w : witnesses) {
    wit.push_back({{"role", w.role},
                   {"source_label", w.source_label},
                   {"source_mu", w.iso.source.mu()},
                   {"source_H", matrix_json(w.iso.source.matrix(), w.iso.source.mu())},
                   {"relation", relation_name(w.iso.relation)},
                   {"map", matrix_json(w.iso.map, result.mu())}});
    if (o.check) {
      const IsometryReport r = check_isometry(w.iso);
      err << "witness " << w.role << ": " << r.pairs_checked << " pairs checked, "
          << (r.ok() ? "ok" : std::to_string(r.violations.size()) + " violations") << "\n";
      for (const auto& v : r.violations) err << "  " << v << "\n";
      if (!r.ok()) return kInternal;
    }
  }
  file["witness"] = wit;
  const std::string text = file.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream os(o.output);
    if (!os) throw ValidationError("cannot write " + o.output);
    os << text;
    out << "wrote " << o.output << " (" << out_label << ", mu = " << result.mu() << ", n = " << result.size()
        << ")\n";
  }
  return kOk;
}

}  // namespace

CMatrix LinkFile::c_matrix() const {
  switch (mode) {
    case Mode::Family:
      return assemble(*family);
    case Mode::Boundary:
      return boundary_matrix(*boundary);
    case Mode::Matrix:
      return *matrix;
  }
  throw std::logic_error("LinkFile: unknown mode");
}

LinkFile parse_link_file(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  LinkFile f;
  const std::string root;
  const json& version = field(j, "schema", root);
  if (small_int(version, "schema") != kSchemaVersion)
    throw ValidationError("schema: version " + version.dump() + " is not supported (expected " +
                          std::to_string(kSchemaVersion) + ")");
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) throw ValidationError("label: expected a string");
    f.label = it->get<std::string>();
  }
  const json& mode = field(j, "mode", root);
  const std::string m = mode.is_string() ? mode.get<std::string>() : "";
  if (m == "family") {
    f.mode = LinkFile::Mode::Family;
    SeifertFamily fam;
    fam.mu = small_int(field(j, "mu", root), "mu");
    if (fam.mu < 1 || fam.mu > kMaxVars)
      throw ValidationError("mu: " + std::to_string(fam.mu) + " outside 1.." + std::to_string(kMaxVars));
    const json& mats = field(j, "matrices", root);
    if (!mats.is_object()) throw ValidationError("matrices: expected an object keyed by sign strings");
    fam.n = -1;
    if (auto it = j.find("n"); it != j.end()) fam.n = small_int(*it, "n");
    for (const auto& [key, value] : mats.items()) {
      const std::string path = "matrices[\"" + key + "\"]";
      SignVec s;
      try {
        s = SignVec::parse(key, fam.mu);
      } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
      }
      if (fam.mats.count(s)) throw ValidationError(path + ": sign key repeated");
      IntMatrix a = read_int_matrix(value, path);
      if (fam.n < 0) fam.n = a.rows();
      fam.mats[s] = std::move(a);
    }
    if (fam.n < 0) fam.n = 0;
    fam.validate();
    f.family = std::move(fam);
  } else if (m == "boundary") {
    f.mode = LinkFile::Mode::Boundary;
    BoundarySeifert b;
    const json& genera = field(j, "genera", root);
    if (!genera.is_array()) throw ValidationError("genera: expected an array of integers");
    for (std::size_t i = 0; i < genera.size(); ++i) b.genera.push_back(small_int(genera[i], "genera[" + std::to_string(i) + "]"));
    b.A = read_int_matrix(field(j, "A", root), "A");
    b.validate();
    f.boundary = std::move(b);
  } else if (m == "matrix") {
    f.mode = LinkFile::Mode::Matrix;
    const int mu = small_int(field(j, "mu", root), "mu");
    if (mu < 1 || mu > kMaxVars) throw ValidationError("mu: " + std::to_string(mu) + " outside 1.." + std::to_string(kMaxVars));
    RfMatrix h = read_matrix(field(j, "H", root), "H", [mu](const json& e, const std::string& path) {
      if (!e.is_string()) throw ValidationError(path + ": expected a polynomial string");
      try {
        return parse_ratfunc(e.get<std::string>(), mu);
      } catch (const ValidationError& err) {
        throw ValidationError(path + ": " + err.what());
      }
    });
    f.matrix = CMatrix(mu, std::move(h));
  } else {
    throw ValidationError("mode: expected \"family\", \"boundary\" or \"matrix\", got " + mode.dump());
  }
  return f;
}

LinkFile read_link_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  try {
    return parse_link_file(ss.str());
  } catch (const NotHermitian&) {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string matrix_file_json(const CMatrix& H, const std::string& label) {
  json j{{"schema", kSchemaVersion}, {"mode", "matrix"}, {"mu", H.mu()}, {"H", matrix_json(H.matrix(), H.mu())}};
  if (!label.empty()) j["label"] = label;
  return j.dump(2) + "\n";
}

RfVector parse_vector(std::string_view text, int nvars) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  RfVector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v(static_cast<Eigen::Index>(i)) = parse_ratfunc(parts[i], nvars);
    } catch (const ValidationError& e) {
      throw ValidationError("vector entry " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blanchfield pairings of colored links from C-complex data", "blanchfield"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "link file (JSON)")->required(); };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.as_json, "JSON output"); };
  auto add_sign = [&](CLI::App* sub) {
    sub->add_option("--sign", o.sign, "lambda: lambda_H, bl: Bl = -lambda_H")->check(CLI::IsMember({"lambda", "bl"}));
  };
  auto add_vw = [&](CLI::App* sub, bool required) {
    auto* v = sub->add_option("--v", o.v, "comma-separated entries of v");
    auto* w = sub->add_option("--w", o.w, "comma-separated entries of w");
    if (required) {
      v->required();
      w->required();
    }
  };

  auto* validate = app.add_subcommand("validate", "check a link file and the hermitian matrix it assembles");
  add_file(validate);
  add_json(validate);
  auto* delta = app.add_subcommand("delta", "rank, free rank and symmetrized torsion order");
  add_file(delta);
  add_json(delta);
  auto* form = app.add_subcommand("form", "matrix of the form on the standard generators (nonsingular H)");
  add_file(form);
  add_json(form);
  add_sign(form);
  auto* pairc = app.add_subcommand("pair", "pairing of two torsion vectors");
  add_file(pairc);
  add_json(pairc);
  add_sign(pairc);
  add_vw(pairc, true);
  auto* transform = app.add_subcommand("transform", "apply a move and write a matrix-mode file");
  add_file(transform);
  transform->add_option("--op", o.op, "move to apply")
      ->required()
      ->check(CLI::IsMember({"mirror", "reverse", "stab0", "stab2", "sum", "connected-sum"}));
  transform->add_option("--with", o.with, "second file for sum and connected-sum");
  transform->add_option("--xi", o.xi, "stab2: comma-separated column xi (default 0)");
  transform->add_option("--lam", o.lam, "stab2: self-conjugate diagonal entry (default 0)");
  transform->add_option("--alpha", o.alpha, "stab2: Λ_S-unit (default 1)");
  transform->add_flag("--disjoint", o.disjoint, "connected-sum: no shared variable");
  transform->add_flag("--check", o.check, "check each witness map on sampled torsion vectors");
  transform->add_option("-o,--output", o.output, "output path (default stdout)");
  auto* boundary = app.add_subcommand("boundary", "boundary-link matrix, delta, and closed form vs general path");
  add_file(boundary);
  add_json(boundary);
  add_sign(boundary);
  add_vw(boundary, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (delta->parsed()) return cmd_delta(o, out);
    if (form->parsed()) return cmd_form(o, out);
    if (pairc->parsed()) return cmd_pair(o, out);
    if (transform->parsed()) return cmd_transform(o, out, err);
    if (boundary->parsed()) return cmd_boundary(o, out, err);
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return kInvalid;
  } catch (const SingularMatrix& e) {
    err << "error: " << e.what();
    if (form->parsed()) err << "; the full form needs det H != 0, use `pair` for individual values";
    err << "\n";
    return kMathError;
  } catch (const MathError& e) {
    err << "error: " << e.what() << "\n";
    return kMathError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInvalid;
}

}  // namespace blanchfield::cli
