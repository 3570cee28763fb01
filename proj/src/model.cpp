#include "baut/model.hpp"

#include <sstream>

#include "baut/dercomplex.hpp"
#include "baut/linalg.hpp"

namespace baut {

std::vector<const ValidationIssue*> ValidationReport::errors() const {
  std::vector<const ValidationIssue*> out;
  for (const auto& i : issues)
    if (!i.is_warning) out.push_back(&i);
  return out;
}

std::vector<const ValidationIssue*> ValidationReport::warnings() const {
  std::vector<const ValidationIssue*> out;
  for (const auto& i : issues)
    if (i.is_warning) out.push_back(&i);
  return out;
}

void MinimalModel::set_differential(GenId id, Polynomial p) {
  if (id < 0 || static_cast<std::size_t>(id) >= diff_.size())
    throw Error("unknown generator id in differential");
  if (!diff_[id].is_zero()) throw Error("differential already set for generator '" +
                                        alg_.generator(id).name + "'");
  diff_[id] = std::move(p);
}

Polynomial MinimalModel::d(const Polynomial& p) const {
  /* Degree +1 derivation: d(f1..fk) = sum_i (-1)^{|f1..f_{i-1}|} f1.. d(fi) ..fk.
   * Factors with equal even generator grouped: the i copies contribute alike. */
  Polynomial out;
  for (const auto& [mon, coeff] : p.terms()) {
    const auto& fs = mon.factors();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Factor& f = fs[i];
      const Polynomial& dg = diff_[f.gen];
      if (!dg.is_zero()) {
        /* prefix = factors before this run (any copies of f within the run are
         * even, hence degree-parity neutral and sign-free). */
        Monomial prefix(std::vector<Factor>(fs.begin(), fs.begin() + i));
        std::vector<Factor> rest_fs(fs.begin() + i, fs.end());
        rest_fs[0].exponent -= 1;
        if (rest_fs[0].exponent == 0) rest_fs.erase(rest_fs.begin());
        Monomial rest(std::move(rest_fs));

        int sign = prefix_degree % 2 == 0 ? 1 : -1;
        Rational c = coeff * sign * f.exponent;
        Polynomial piece;
        piece.add_term(prefix, c);
        piece = alg_.multiply(piece, dg);
        Polynomial rest_poly;
        rest_poly.add_term(rest, Rational(1));
        out += alg_.multiply(piece, rest_poly);
      }
      prefix_degree += f.degree * f.exponent;
    }
  }
  return out;
}

ValidationReport MinimalModel::validate() const {
  ValidationReport rep;
  for (const Generator& g : alg_.generators()) {
    if (g.degree == 1) {
      rep.issues.push_back({ValidationIssue::Kind::degree_one_generator, g.name,
                            "degree-1 generator: model is at most nilpotent, not simply connected",
                            true});
    }
    const Polynomial& dg = diff_[g.id];
    for (const auto& [mon, coeff] : dg.terms()) {
      if (mon.degree() != g.degree + 1)
        rep.issues.push_back({ValidationIssue::Kind::degree, g.name,
                              "term " + alg_.monomial_str(mon) + " has degree " +
                                  std::to_string(mon.degree()) + ", expected " +
                                  std::to_string(g.degree + 1),
                              false});
      if (mon.word_length() < 2)
        rep.issues.push_back({ValidationIssue::Kind::not_minimal, g.name,
                              "term " + alg_.monomial_str(mon) + " has word length " +
                                  std::to_string(mon.word_length()) + ", expected >= 2",
                              false});
    }
    Polynomial ddg = d(dg);
    if (!ddg.is_zero())
      rep.issues.push_back({ValidationIssue::Kind::not_square_zero, g.name,
                            "d(d(" + g.name + ")) = " + alg_.polynomial_str(ddg), false});
  }
  rep.valid = rep.errors().empty();
  return rep;
}

std::vector<std::pair<int, int>> MinimalModel::homotopy_ranks() const {
  std::map<int, int> by_degree;
  for (const Generator& g : alg_.generators()) ++by_degree[g.degree];
  return {by_degree.begin(), by_degree.end()};
}

MinimalModel build_ks_total(const MinimalModel& fibre, const KSExtensionSpec& ext) {
  if (ext.base_degree < 2)
    throw Error("extension base generator must have degree >= 2");
  Algebra total_alg;
  GenId base = total_alg.add_generator(ext.base_name, ext.base_degree);
  std::vector<GenId> fibre_to_total;
  for (const Generator& g : fibre.generators())
    fibre_to_total.push_back(total_alg.add_generator(g.name, g.degree));

  MinimalModel total(total_alg);
  auto translate = [&](const Polynomial& p) {
    Polynomial out;
    for (const auto& [mon, coeff] : p.terms()) {
      std::vector<GenId> word;
      for (const Factor& f : mon.factors())
        for (int e = 0; e < f.exponent; ++e) word.push_back(fibre_to_total[f.gen]);
      out += total_alg.term(coeff, word);
    }
    return out;
  };

  for (const Generator& g : fibre.generators()) {
    Polynomial dv = translate(fibre.differential(g.id));
    /* Perturbation terms, each required to contain the base generator. */
    for (const auto& [name, terms] : ext.perturbations) {
      if (name != g.name) continue;
      for (const KSExtensionSpec::Term& t : terms) {
        std::vector<GenId> word;
        bool has_base = false;
        for (const std::string& n : t.word) {
          GenId id = total_alg.find(n);
          if (id < 0) throw Error("unknown generator '" + n + "' in perturbation of '" +
                                  name + "'");
          if (id == base) has_base = true;
          word.push_back(id);
        }
        if (!has_base)
          throw Error("perturbation term of '" + name + "' is not divisible by '" +
                      ext.base_name + "'");
        dv += total_alg.term(t.coeff, word);
      }
    }
    if (!dv.is_zero()) total.set_differential(fibre_to_total[g.id], std::move(dv));
  }
  for (const auto& [name, terms] : ext.perturbations)
    if (total_alg.find(name) < 0 || name == ext.base_name)
      throw Error("perturbation names unknown fibre generator '" + name + "'");

  ValidationReport rep = total.validate();
  if (!rep.valid) {
    std::ostringstream os;
    os << "extension total is not a minimal model:";
    for (const ValidationIssue* i : rep.errors()) os << ' ' << i->generator << ": " << i->detail << ';';
    throw Error(os.str());
  }
  return total;
}

KSCertificate ks_check(const MinimalModel& total, const std::string& base_name) {
  GenId base = total.algebra().find(base_name);
  if (base < 0) throw Error("unknown base generator '" + base_name + "'");
  int n = total.algebra().generator(base).degree;

  DerComplex complex(total);
  KSCertificate cert;
  cert.degree = n;

  const auto& basis = complex.basis(n);
  std::size_t base_index = basis.size();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].source == base && basis[i].target.is_unit()) base_index = i;

  auto kernel = kernel_basis(complex.matrix_of_D(n));
  cert.cycle_space_dim = static_cast<int>(kernel.size());
  cert.pass = true;
  if (base_index == basis.size()) return cert;  // w* not even a basis element

  /* Prefer the pure w* witness when it is itself a cycle. */
  Derivation w_star(n);
  w_star.add(basis[base_index], Rational(1));
  if (differential_D(total, w_star).is_zero()) {
    cert.pass = false;
    cert.witness.emplace_back(der_basis_str(total, basis[base_index]), Rational(1));
    return cert;
  }
  for (const auto& vec : kernel) {
    if (vec[base_index] == 0) continue;
    cert.pass = false;
    for (std::size_t i = 0; i < vec.size(); ++i)
      if (vec[i] != 0) cert.witness.emplace_back(der_basis_str(total, basis[i]), vec[i]);
    break;
  }
  return cert;
}

}  // namespace baut
