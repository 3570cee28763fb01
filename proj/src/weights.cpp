#include "baut/weights.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <utility>

namespace baut {

namespace {

/* A homogeneous linear form sum coeff * wt(gen); no zero coefficients kept. */
using Form = std::map<GenId, Rational>;

void add_scaled(Form& f, const Form& g, const Rational& c) {
  for (const auto& [v, a] : g) {
    auto it = f.find(v);
    if (it == f.end()) {
      Rational t = a * c;
      if (t != 0) f.emplace(v, t);
    } else {
      it->second += a * c;
      if (it->second == 0) f.erase(it);
    }
  }
}

Form monomial_weight_form(const Monomial& m) {
  Form f;
  for (const Factor& fac : m.factors()) f[fac.gen] = Rational(fac.exponent);
  return f;
}

std::string form_str(const Algebra& alg, const Form& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : f) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1) os << to_string(a) << '*';
    os << "wt(" << alg.generator(v).name << ')';
  }
  return os.str();
}

Rational eval(const Form& f, const std::map<GenId, Rational>& assign) {
  Rational s(0);
  for (const auto& [v, c] : f) s += c * assign.at(v);
  return s;
}

/* Decides whether the open cone {all constraints > 0} over the given
 * variables is nonempty, by Fourier-Motzkin elimination (exact, strict,
 * homogeneous). Returns a sample point when it is. */
std::optional<std::map<GenId, Rational>> positive_sample(
    const std::vector<GenId>& vars, std::vector<Form> cons) {
  struct Level {
    GenId var;
    std::vector<Form> lowers, uppers;  // var > L, var < U
  };
  std::vector<Level> levels;

  for (auto vi = vars.rbegin(); vi != vars.rend(); ++vi) {
    Level lv;
    lv.var = *vi;
    std::vector<Form> rest;
    for (Form& f : cons) {
      auto fx = f.find(lv.var);
      if (fx == f.end()) {
        rest.push_back(std::move(f));
        continue;
      }
      Rational c = fx->second;
      f.erase(fx);
      Form bound;
      for (const auto& [w, a] : f) bound[w] = Rational(-a / c);
      (c > 0 ? lv.lowers : lv.uppers).push_back(std::move(bound));
    }
    for (const Form& lo : lv.lowers)
      for (const Form& up : lv.uppers) {
        Form nf = up;
        add_scaled(nf, lo, Rational(-1));
        rest.push_back(std::move(nf));  // up - lo > 0
      }
    cons = std::move(rest);
    levels.push_back(std::move(lv));
  }

  if (!cons.empty()) return std::nullopt;  // some combination reduced to 0 > 0

  std::map<GenId, Rational> assign;
  for (auto li = levels.rbegin(); li != levels.rend(); ++li) {
    bool has_lo = false, has_up = false;
    Rational lo(0), up(0);
    for (const Form& f : li->lowers) {
      Rational v = eval(f, assign);
      if (!has_lo || v > lo) lo = v;
      has_lo = true;
    }
    for (const Form& f : li->uppers) {
      Rational v = eval(f, assign);
      if (!has_up || v < up) up = v;
      has_up = true;
    }
    Rational x;
    if (!has_up) {
      x = has_lo ? Rational(lo + 1) : Rational(1);
    } else if (!has_lo) {
      x = Rational(up / 2);
    } else {
      x = Rational((lo + up) / 2);
    }
    assign[li->var] = x;
  }
  return assign;
}

WeightSystem to_integer_weights(const Algebra& alg,
                                const std::vector<Rational>& values) {
  mpz_class L(1);
  for (const Rational& q : values) L = lcm(L, q.get_den());
  std::vector<mpz_class> nums;
  mpz_class G(0);
  for (const Rational& q : values) {
    mpz_class n = q.get_num() * (L / q.get_den());
    G = gcd(G, n);
    nums.push_back(std::move(n));
  }
  WeightSystem ws;
  for (const Generator& g : alg.generators())
    ws.weights[g.name] = Rational(mpz_class(nums[g.id] / G));
  return ws;
}

}  // namespace

WeightConstraintSystem weight_constraints(const MinimalModel& m) {
  const Algebra& alg = m.algebra();
  WeightConstraintSystem sys;
  for (const Generator& g : alg.generators()) sys.variables.push_back(g.name);

  for (const Generator& g : alg.generators()) {
    const Polynomial& p = m.differential(g.id);
    if (p.is_zero()) continue;
    auto first = p.terms().begin();
    Form w1 = monomial_weight_form(first->first);
    std::string m1 = alg.monomial_str(first->first);

    WeightEquation def;
    def.form[g.id] = Rational(1);
    add_scaled(def.form, w1, Rational(-1));
    def.source = "d(" + g.name + "): wt(" + g.name + ") = wt(" + m1 + ")";
    sys.equations.push_back(std::move(def));

    for (auto it = std::next(first); it != p.terms().end(); ++it) {
      WeightEquation eq;
      eq.form = w1;
      add_scaled(eq.form, monomial_weight_form(it->first), Rational(-1));
      eq.source =
          "d(" + g.name + "): wt(" + m1 + ") = wt(" + alg.monomial_str(it->first) + ")";
      sys.equations.push_back(std::move(eq));
    }
  }
  return sys;
}

WeightResult find_positive_weights(const MinimalModel& m) {
  const Algebra& alg = m.algebra();
  WeightConstraintSystem sys = weight_constraints(m);

  std::map<GenId, Form> subst;  // solved var -> form over unsolved vars
  std::vector<std::string> steps;

  auto reduce = [&subst](const Form& f) {
    Form out;
    for (const auto& [v, c] : f) {
      auto it = subst.find(v);
      if (it == subst.end()) {
        Form unit{{v, Rational(1)}};
        add_scaled(out, unit, c);
      } else {
        add_scaled(out, it->second, c);
      }
    }
    return out;
  };

  auto infeasible = [&steps]() {
    WeightResult r;
    r.feasible = false;
    r.witness = steps;
    return r;
  };

  for (const WeightEquation& eq : sys.equations) {
    Form f = reduce(eq.form);
    if (f.empty()) continue;  // already implied
    if (f.size() == 1) {
      const std::string& name = alg.generator(f.begin()->first).name;
      steps.push_back("from " + eq.source + " => wt(" + name + ") = 0");
      steps.push_back("contradiction: wt(" + name + ") = 0 violates wt(" + name + ") > 0");
      return infeasible();
    }

    GenId v = f.rbegin()->first;  // solve for the last declared variable
    Rational a = f.rbegin()->second;
    Form rhs;
    for (const auto& [w, c] : f)
      if (w != v) rhs[w] = Rational(-c / a);
    steps.push_back("from " + eq.source + " => wt(" + alg.generator(v).name +
                    ") = " + form_str(alg, rhs));

    for (auto& [u, g] : subst) {
      auto it = g.find(v);
      if (it == g.end()) continue;
      Rational c = it->second;
      g.erase(it);
      add_scaled(g, rhs, c);
    }
    subst[v] = std::move(rhs);

    for (const auto& [u, g] : subst) {
      if (!g.empty()) continue;
      const std::string& name = alg.generator(u).name;
      steps.push_back("hence wt(" + name + ") = 0");
      steps.push_back("contradiction: wt(" + name + ") = 0 violates wt(" + name + ") > 0");
      return infeasible();
    }
  }

  std::vector<GenId> free_vars;
  for (const Generator& g : alg.generators())
    if (!subst.count(g.id)) free_vars.push_back(g.id);

  std::map<GenId, Rational> assign;
  for (GenId v : free_vars) assign[v] = Rational(1);
  auto value_of = [&](GenId v) {
    auto it = subst.find(v);
    return it == subst.end() ? assign.at(v) : eval(it->second, assign);
  };

  bool all_positive = true;
  for (const Generator& g : alg.generators())
    if (!(value_of(g.id) > 0)) all_positive = false;

  if (!all_positive) {
    std::vector<Form> cons;
    for (GenId v : free_vars) cons.push_back(Form{{v, Rational(1)}});
    for (const auto& [v, f] : subst) cons.push_back(f);
    auto sample = positive_sample(free_vars, std::move(cons));
    if (!sample) {
      std::ostringstream os;
      os << "contradiction: no choice of positive weights for the free generators";
      for (std::size_t i = 0; i < free_vars.size(); ++i)
        os << (i == 0 ? " " : ", ") << alg.generator(free_vars[i]).name;
      os << " makes every derived weight positive";
      steps.push_back(os.str());
      return infeasible();
    }
    assign = *sample;
  }

  std::vector<Rational> values;
  for (const Generator& g : alg.generators()) values.push_back(value_of(g.id));
  WeightResult r;
  r.feasible = true;
  r.weights = to_integer_weights(alg, values);
  return r;
}

bool check_weight_system(const MinimalModel& m, const WeightSystem& ws) {
  const Algebra& alg = m.algebra();
  std::vector<Rational> wt(alg.generators().size());
  bool positive = true;
  for (const Generator& g : alg.generators()) {
    auto it = ws.weights.find(g.name);
    if (it == ws.weights.end())
      throw Error("no weight assigned to generator '" + g.name + "'");
    wt[g.id] = it->second;
    if (!(it->second > 0)) positive = false;
  }
  if (!positive) return false;
  for (const Generator& g : alg.generators()) {
    for (const auto& [mon, c] : m.differential(g.id).terms()) {
      Rational w(0);
      for (const Factor& f : mon.factors()) w += wt[f.gen] * f.exponent;
      if (w != wt[g.id]) return false;
    }
  }
  return true;
}

int der_block_weight(const MinimalModel& m, const DerBasisElement& e) {
  int s = m.algebra().generator(e.source).degree;
  if (e.target.is_unit()) {
    if (s == 2) return 1;
    if (s == 3) return 2;
    if (s == 4) return 3;
  } else if (e.target.word_length() == 1) {
    int t = e.target.degree();
    if (s == 3 && t == 2) return 1;
    if (s == 4 && t == 3) return 1;
    if (s == 4 && t == 2) return 2;
  }
  throw Error("derivation basis element outside the degrees-{2,3,4} blocks: " +
              der_basis_str(m, e));
}

BlockWeightReport block_weight_verify(const MinimalModel& m) {
  if (!m.validate().valid)
    throw Error("block weight verification requires a valid model");
  for (const Generator& g : m.generators())
    if (g.degree < 2 || g.degree > 4)
      throw Error("generator '" + g.name + "' has degree " +
                  std::to_string(g.degree) +
                  "; block weights cover degrees 2, 3, 4 only");

  struct Entry {
    DerBasisElement e;
    int n;
    int w;
  };
  std::vector<Entry> entries;
  for (int n = 1; n <= m.top_degree(); ++n)
    for (const DerBasisElement& e : der_basis(m, n))
      entries.push_back({e, n, der_block_weight(m, e)});

  BlockWeightReport report;
  report.ok = true;
  auto flag = [&report](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  for (const Entry& en : entries) {
    ++report.differential_checks;
    Derivation theta(en.n);
    theta.add(en.e, Rational(1));
    Derivation d = differential_D(m, theta);
    if (en.n - 1 < 1) continue;  // image sits below the positive-degree range
    for (const auto& [comp, c] : d.coords()) {
      int w = der_block_weight(m, comp);
      if (w != en.w)
        flag("D(" + der_basis_str(m, en.e) + ") has the weight-" +
             std::to_string(w) + " component " + der_basis_str(m, comp) +
             "; expected weight " + std::to_string(en.w));
    }
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    Derivation a(entries[i].n);
    a.add(entries[i].e, Rational(1));
    for (std::size_t j = i; j < entries.size(); ++j) {
      ++report.bracket_checks;
      Derivation b(entries[j].n);
      b.add(entries[j].e, Rational(1));
      Derivation br = bracket(m, a, b);
      int expected = entries[i].w + entries[j].w;
      for (const auto& [comp, c] : br.coords()) {
        int w = der_block_weight(m, comp);
        if (w != expected)
          flag("[" + der_basis_str(m, entries[i].e) + ", " +
               der_basis_str(m, entries[j].e) + "] has the weight-" +
               std::to_string(w) + " component " + der_basis_str(m, comp) +
               "; expected weight " + std::to_string(expected));
      }
    }
  }
  return report;
}

}  // namespace baut
