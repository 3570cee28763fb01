#include "baut/dercomplex.hpp"

#include <sstream>

namespace baut {

void Derivation::add(const DerBasisElement& e, const Rational& c) {
  if (c == 0) return;
  auto it = coords_.find(e);
  if (it == coords_.end()) {
    coords_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) coords_.erase(it);
  }
}

Derivation& Derivation::operator+=(const Derivation& other) {
  for (const auto& [e, c] : other.coords_) add(e, c);
  return *this;
}

Derivation& Derivation::scale(const Rational& c) {
  if (c == 0) {
    coords_.clear();
    return *this;
  }
  for (auto& [e, coeff] : coords_) coeff *= c;
  return *this;
}

Polynomial Derivation::value_on(const MinimalModel& m, GenId g) const {
  (void)m;
  Polynomial p;
  for (const auto& [e, c] : coords_)
    if (e.source == g) p.add_term(e.target, c);
  return p;
}

std::vector<DerBasisElement> der_basis(const MinimalModel& m, int n) {
  std::vector<DerBasisElement> out;
  if (n < 0) return out;
  for (const Generator& g : m.generators()) {
    int target_degree = g.degree - n;
    if (target_degree < 0) continue;
    for (const Monomial& chi : m.algebra().basis_of_degree(target_degree))
      out.push_back({g.id, chi});
  }
  return out;
}

Polynomial extend(const MinimalModel& m, const Derivation& theta, const Polynomial& p) {
  /* theta(f1..fk) = sum_i (-1)^{n |f1..f_{i-1}|} f1.. theta(fi) ..fk, runs of an
   * even generator grouped (their copies contribute identical terms). */
  const Algebra& alg = m.algebra();
  int n = theta.degree();
  Polynomial out;
  for (const auto& [mon, coeff] : p.terms()) {
    const auto& fs = mon.factors();
    int prefix_degree = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Factor& f = fs[i];
      Polynomial tg = theta.value_on(m, f.gen);
      if (!tg.is_zero()) {
        Monomial prefix(std::vector<Factor>(fs.begin(), fs.begin() + i));
        std::vector<Factor> rest_fs(fs.begin() + i, fs.end());
        rest_fs[0].exponent -= 1;
        if (rest_fs[0].exponent == 0) rest_fs.erase(rest_fs.begin());
        Monomial rest(std::move(rest_fs));

        int sign = (n * prefix_degree) % 2 == 0 ? 1 : -1;
        Polynomial piece;
        piece.add_term(prefix, Rational(coeff * sign * f.exponent));
        piece = alg.multiply(piece, tg);
        Polynomial rest_poly;
        rest_poly.add_term(rest, Rational(1));
        out += alg.multiply(piece, rest_poly);
      }
      prefix_degree += f.degree * f.exponent;
    }
  }
  return out;
}

namespace {

Derivation from_values(const MinimalModel& m, int degree,
                       const std::vector<Polynomial>& values) {
  Derivation out(degree);
  for (const Generator& g : m.generators())
    for (const auto& [mon, c] : values[g.id].terms()) out.add({g.id, mon}, c);
  return out;
}

}  // namespace

Derivation differential_D(const MinimalModel& m, const Derivation& theta) {
  int n = theta.degree();
  int parity = n % 2 == 0 ? 1 : -1;
  std::vector<Polynomial> values(m.generators().size());
  for (const Generator& g : m.generators()) {
    Polynomial v = m.d(theta.value_on(m, g.id));
    Polynomial td = extend(m, theta, m.differential(g.id));
    td.scale(Rational(-parity));
    v += td;
    values[g.id] = std::move(v);
  }
  return from_values(m, n - 1, values);
}

Derivation bracket(const MinimalModel& m, const Derivation& a, const Derivation& b) {
  int sign = (a.degree() * b.degree()) % 2 == 0 ? 1 : -1;
  std::vector<Polynomial> values(m.generators().size());
  for (const Generator& g : m.generators()) {
    Polynomial ab = extend(m, a, b.value_on(m, g.id));
    Polynomial ba = extend(m, b, a.value_on(m, g.id));
    ba.scale(Rational(-sign));
    ab += ba;
    values[g.id] = std::move(ab);
  }
  return from_values(m, a.degree() + b.degree(), values);
}

std::string der_basis_str(const MinimalModel& m, const DerBasisElement& e) {
  const std::string& name = m.algebra().generator(e.source).name;
  if (e.target.is_unit()) return name + "*";
  return "(" + name + "," + m.algebra().monomial_str(e.target) + ")";
}

std::string derivation_str(const MinimalModel& m, const Derivation& theta) {
  if (theta.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : theta.coords()) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1) os << to_string(a) << '*';
    os << der_basis_str(m, e);
  }
  return os.str();
}

DerComplex::DerComplex(MinimalModel model) : model_(std::move(model)) {
  N_ = model_.top_degree();
  bases_.resize(N_ + 1);
  for (int n = 0; n <= N_; ++n) bases_[n] = der_basis(model_, n);
}

const std::vector<DerBasisElement>& DerComplex::basis(int n) const {
  if (n < 0 || n > N_) return empty_;
  return bases_[n];
}

Derivation DerComplex::basis_derivation(int n, std::size_t index) const {
  Derivation theta(n);
  theta.add(basis(n).at(index), Rational(1));
  return theta;
}

Derivation DerComplex::from_coords(int n, const std::vector<Rational>& coords) const {
  const auto& b = basis(n);
  if (coords.size() != b.size()) throw Error("coordinate vector has wrong length");
  Derivation theta(n);
  for (std::size_t i = 0; i < coords.size(); ++i) theta.add(b[i], coords[i]);
  return theta;
}

RationalMatrix DerComplex::matrix_of_D(int n) const {
  if (n < 1 || n > N_ + 1) throw Error("matrix_of_D degree out of range");
  const auto& cols = basis(n);
  const auto& rows = basis(n - 1);
  std::map<DerBasisElement, std::size_t> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);

  RationalMatrix mat(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Derivation theta(n);
    theta.add(cols[j], Rational(1));
    Derivation d = differential_D(model_, theta);
    for (const auto& [e, c] : d.coords()) {
      auto it = row_index.find(e);
      if (it == row_index.end())
        throw Error("differential left the enumerated basis");
      mat.set(it->second, j, c);
    }
  }
  return mat;
}

}  // namespace baut
