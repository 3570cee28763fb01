#include "baut/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "baut/dsl.hpp"
#include "baut/homology.hpp"
#include "baut/weights.hpp"

namespace baut {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string subscript(int n) {
  static const char* digit[10] = {"₀", "₁", "₂", "₃", "₄",
                                  "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : std::to_string(n)) out += digit[c - '0'];
  return out;
}

struct Range {
  int lo = std::numeric_limits<int>::min();
  int hi = std::numeric_limits<int>::max();
  bool contains(int n) const { return lo <= n && n <= hi; }
};

Range parse_range(const std::string& s) {
  auto bad = [&] { throw CLI::ValidationError("--degrees", "expected A..B, got '" + s + "'"); };
  std::size_t dots = s.find("..");
  if (dots == std::string::npos) bad();
  Range r;
  try {
    std::size_t used = 0;
    r.lo = std::stoi(s.substr(0, dots), &used);
    if (used != dots) bad();
    std::string hi = s.substr(dots + 2);
    r.hi = std::stoi(hi, &used);
    if (used != hi.size()) bad();
  } catch (const std::exception&) {
    bad();
  }
  if (r.lo > r.hi) bad();
  return r;
}

/* "z* - 2*(w,x)": the term-joining used everywhere a named combination is
 * shown. */
std::string combo_str(const std::vector<std::pair<std::string, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [name, c] : terms) {
    Rational a(abs(c));
    bool neg = c < 0;
    if (first) {
      if (neg) s += "-";
      first = false;
    } else {
      s += neg ? " - " : " + ";
    }
    if (a != 1) s += to_string(a) + "*";
    s += name;
  }
  return s;
}

ordered_json combo_json(const std::vector<std::pair<std::string, Rational>>& terms) {
  ordered_json arr = ordered_json::array();
  for (const auto& [name, c] : terms) {
    ordered_json t;
    t["basis"] = name;
    t["coeff"] = to_string(c);
    arr.push_back(t);
  }
  return arr;
}

std::vector<std::pair<std::string, Rational>> derivation_terms(const MinimalModel& m,
                                                               const Derivation& th) {
  std::vector<std::pair<std::string, Rational>> terms;
  for (const auto& [e, c] : th.coords()) terms.emplace_back(der_basis_str(m, e), c);
  return terms;
}

const char* kind_str(ValidationIssue::Kind k) {
  switch (k) {
    case ValidationIssue::Kind::degree: return "degree";
    case ValidationIssue::Kind::not_minimal: return "not_minimal";
    case ValidationIssue::Kind::not_square_zero: return "not_square_zero";
    case ValidationIssue::Kind::degree_one_generator: return "degree_one_generator";
  }
  return "?";
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

/* Prints error-severity issues to err; true when the model may be used. */
bool require_valid(const MinimalModel& m, std::ostream& err) {
  ValidationReport rep = m.validate();
  if (rep.valid) return true;
  for (const ValidationIssue* is : rep.errors())
    err << "error [" << is->generator << "]: " << is->detail << "\n";
  return false;
}

int cmd_validate(const ParsedModel& pm, bool json, std::ostream& out) {
  ValidationReport rep = pm.model.validate();
  std::size_t nerr = rep.errors().size(), nwarn = rep.warnings().size();
  if (json) {
    ordered_json j;
    j["command"] = "validate";
    j["valid"] = rep.valid;
    j["generators"] = pm.model.generators().size();
    ordered_json issues = ordered_json::array();
    for (const ValidationIssue& is : rep.issues) {
      ordered_json e;
      e["severity"] = is.is_warning ? "warning" : "error";
      e["kind"] = kind_str(is.kind);
      e["generator"] = is.generator;
      e["detail"] = is.detail;
      issues.push_back(e);
    }
    j["issues"] = issues;
    emit(out, j);
  } else {
    out << (rep.valid ? "valid" : "invalid");
    if (nerr || nwarn) {
      out << " (";
      if (nerr) out << nerr << (nerr == 1 ? " error" : " errors");
      if (nerr && nwarn) out << ", ";
      if (nwarn) out << nwarn << (nwarn == 1 ? " warning" : " warnings");
      out << ")";
    }
    out << "\n";
    for (const ValidationIssue& is : rep.issues)
      out << (is.is_warning ? "warning" : "error") << " [" << is.generator
          << "]: " << is.detail << "\n";
  }
  return rep.valid ? 0 : 1;
}

int cmd_homology(const ParsedModel& pm, bool json, bool reps, const Range& range,
                 std::ostream& out) {
  DerComplex c(pm.model);
  HomologyReport h = homology(c);
  if (json) {
    ordered_json j;
    j["command"] = "homology";
    j["top_degree"] = h.top_degree;
    ordered_json dims = ordered_json::object();
    for (const auto& [n, dim] : h.dims)
      if (range.contains(n)) dims[std::to_string(n)] = dim;
    j["dims"] = dims;
    if (reps) {
      ordered_json rj = ordered_json::object();
      for (const auto& [n, classes] : h.representatives) {
        if (!range.contains(n) || classes.empty()) continue;
        ordered_json arr = ordered_json::array();
        for (const Derivation& th : classes)
          arr.push_back(combo_json(derivation_terms(c.model(), th)));
        rj[std::to_string(n)] = arr;
      }
      j["representatives"] = rj;
    }
    emit(out, j);
  } else {
    for (const auto& [n, dim] : h.dims) {
      if (!range.contains(n)) continue;
      out << "H_" << n << " = " << dim << "\n";
      if (reps && dim > 0)
        for (const Derivation& th : h.representatives.at(n))
          out << "  rep: " << derivation_str(c.model(), th) << "\n";
    }
  }
  return 0;
}

int cmd_baut(const ParsedModel& pm, bool json, const Range& range, std::ostream& out) {
  HomologyReport h = homology(DerComplex(pm.model));
  std::map<int, int> ranks = h.baut_ranks();
  if (json) {
    ordered_json j;
    j["command"] = "baut";
    ordered_json r = ordered_json::object();
    for (const auto& [n, k] : ranks)
      if (range.contains(n)) r[std::to_string(n)] = k;
    j["ranks"] = r;
    emit(out, j);
  } else {
    std::string line;
    for (const auto& [n, k] : ranks) {
      if (!range.contains(n)) continue;
      if (!line.empty()) line += ", ";
      line += "π" + subscript(n) + " = ℚ";
      if (k > 1) line += "^" + std::to_string(k);
    }
    if (!line.empty()) out << line << "\n";
  }
  return 0;
}

int cmd_gottlieb(const ParsedModel& pm, bool json, bool reps, const Range& range,
                 std::ostream& out) {
  DerComplex c(pm.model);
  HomologyReport h = homology(c);
  GottliebReport g = gottlieb(c, h);
  if (json) {
    ordered_json j;
    j["command"] = "gottlieb";
    ordered_json dims = ordered_json::object();
    for (const auto& [n, dim] : g.dims)
      if (range.contains(n)) dims[std::to_string(n)] = dim;
    j["dims"] = dims;
    if (reps) {
      ordered_json fj = ordered_json::object();
      for (const auto& [n, rows] : g.functionals) {
        if (!range.contains(n) || rows.empty()) continue;
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
          ordered_json rowj = ordered_json::array();
          for (const auto& [gen, val] : row) {
            ordered_json t;
            t["generator"] = gen;
            t["value"] = to_string(val);
            rowj.push_back(t);
          }
          arr.push_back(rowj);
        }
        fj[std::to_string(n)] = arr;
      }
      j["functionals"] = fj;
    }
    emit(out, j);
  } else {
    for (const auto& [n, dim] : g.dims) {
      if (!range.contains(n)) continue;
      out << "G_" << n << " = " << dim << "\n";
      if (reps && dim > 0) {
        auto it = g.functionals.find(n);
        if (it != g.functionals.end())
          for (const auto& row : it->second) {
            out << "  functional:";
            bool first = true;
            for (const auto& [gen, val] : row) {
              out << (first ? " " : ", ") << gen << " = " << to_string(val);
              first = false;
            }
            out << "\n";
          }
      }
    }
  }
  return 0;
}

int cmd_weights(const ParsedModel& pm, bool json, std::ostream& out) {
  WeightResult r = find_positive_weights(pm.model);
  if (json) {
    ordered_json j;
    j["command"] = "weights";
    j["feasible"] = r.feasible;
    if (r.feasible) {
      ordered_json w = ordered_json::object();
      for (const Generator& g : pm.model.generators())
        w[g.name] = to_string(r.weights.weights.at(g.name));
      j["weights"] = w;
    } else {
      j["witness"] = r.witness;
    }
    emit(out, j);
  } else {
    if (r.feasible) {
      out << "FEASIBLE\n";
      for (const Generator& g : pm.model.generators())
        out << "wt(" << g.name << ") = " << to_string(r.weights.weights.at(g.name)) << "\n";
    } else {
      out << "INFEASIBLE\n";
      for (const std::string& line : r.witness) out << line << "\n";
    }
  }
  return r.feasible ? 0 : 1;
}

int cmd_ks_check(const ParsedModel& pm, bool json, std::ostream& out, std::ostream& err) {
  if (!pm.extension) {
    err << "error: ks-check needs a file with an 'extend' declaration\n";
    return 1;
  }
  MinimalModel total;
  try {
    total = build_ks_total(pm.model, *pm.extension);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  KSCertificate cert = ks_check(total, pm.extension->base_name);
  if (json) {
    ordered_json j;
    j["command"] = "ks-check";
    j["base"] = pm.extension->base_name;
    j["degree"] = cert.degree;
    j["pass"] = cert.pass;
    j["cycle_space_dim"] = cert.cycle_space_dim;
    if (!cert.pass) j["witness"] = combo_json(cert.witness);
    emit(out, j);
  } else {
    if (cert.pass)
      out << "PASS: every degree-" << cert.degree << " D-cycle vanishes on "
          << pm.extension->base_name << " (cycle space dimension " << cert.cycle_space_dim
          << ")\n";
    else
      out << "FAIL: degree-" << cert.degree << " witness cycle " << combo_str(cert.witness)
          << "\n";
  }
  return cert.pass ? 0 : 1;
}

int cmd_der_table(const ParsedModel& pm, bool json, const Range& range, std::ostream& out) {
  DerComplex c(pm.model);
  if (json) {
    ordered_json j;
    j["command"] = "der-table";
    ordered_json degs = ordered_json::object();
    for (int n = c.top_degree(); n >= 1; --n) {
      if (!range.contains(n) || c.basis(n).empty()) continue;
      ordered_json names = ordered_json::array();
      for (const DerBasisElement& e : c.basis(n)) names.push_back(der_basis_str(c.model(), e));
      degs[std::to_string(n)] = names;
    }
    j["degrees"] = degs;
    emit(out, j);
  } else {
    bool any = false;
    for (int n = c.top_degree(); n >= 1; --n)
      if (range.contains(n) && !c.basis(n).empty()) any = true;
    if (!any) return 0;
    out << "degree | generators\n";
    for (int n = c.top_degree(); n >= 1; --n) {
      if (!range.contains(n) || c.basis(n).empty()) continue;
      std::string num = std::to_string(n);
      out << std::string(num.size() < 6 ? 6 - num.size() : 0, ' ') << num << " | ";
      bool first = true;
      for (const DerBasisElement& e : c.basis(n)) {
        if (!first) out << ", ";
        out << der_basis_str(c.model(), e);
        first = false;
      }
      out << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"derivation homology of Sullivan minimal models"};
  app.require_subcommand(1);

  std::string file, degrees;
  bool json = false, reps = false;

  auto add_common = [&](CLI::App* s) {
    s->add_option("file", file, "model file (*.mm)")->required();
    s->add_flag("--json", json, "machine-readable report");
    return s;
  };
  CLI::App* c_validate = add_common(app.add_subcommand("validate", "check the model axioms"));
  CLI::App* c_homology =
      add_common(app.add_subcommand("homology", "homology of the derivation complex"));
  c_homology->add_flag("--reps", reps, "include representative cycles");
  c_homology->add_option("--degrees", degrees, "restrict the report to degrees A..B");
  CLI::App* c_baut =
      add_common(app.add_subcommand("baut", "homotopy ranks of the classifying space"));
  c_baut->add_option("--degrees", degrees, "restrict the report to degrees A..B");
  CLI::App* c_gottlieb = add_common(app.add_subcommand("gottlieb", "Gottlieb group ranks"));
  c_gottlieb->add_flag("--reps", reps, "include evaluation functionals");
  c_gottlieb->add_option("--degrees", degrees, "restrict the report to degrees A..B");
  CLI::App* c_weights =
      add_common(app.add_subcommand("weights", "positive generator-diagonal weights"));
  CLI::App* c_ks =
      add_common(app.add_subcommand("ks-check", "essential-extension certificate"));
  CLI::App* c_table =
      add_common(app.add_subcommand("der-table", "derivation basis, by degree"));
  c_table->add_option("--degrees", degrees, "restrict the table to degrees A..B");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    Range range;
    if (!degrees.empty()) range = parse_range(degrees);

    std::string text;
    try {
      text = read_file(file);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    ParsedModel pm;
    try {
      pm = parse_model(text);
    } catch (const ParseError& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      return 2;
    }

    if (app.got_subcommand(c_validate)) return cmd_validate(pm, json, out);
    if (app.got_subcommand(c_ks)) return cmd_ks_check(pm, json, out, err);
    if (!require_valid(pm.model, err)) return 1;
    if (app.got_subcommand(c_homology)) return cmd_homology(pm, json, reps, range, out);
    if (app.got_subcommand(c_baut)) return cmd_baut(pm, json, range, out);
    if (app.got_subcommand(c_gottlieb)) return cmd_gottlieb(pm, json, reps, range, out);
    if (app.got_subcommand(c_weights)) return cmd_weights(pm, json, out);
    if (app.got_subcommand(c_table)) return cmd_der_table(pm, json, range, out);
    err << "error: unknown command\n";
    return 2;
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace baut
