#pragma once
// Graded-commutative algebras over Q presented as Λ(generators) modulo a monomial
// ideal (explicit relation monomials plus optional degree truncations), with a
// derivation of degree +1 determined by its values on generators.
//
// Monomials are exponent vectors over the generators in canonical order
// (degree, then name). Odd generators have exponent ≤ 1. The sign of a product
// comes from moving the odd factors of the right operand past the odd factors
// of the left operand that sort after them.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsecat/errors.hpp"
#include "rsecat/graded.hpp"
#include "rsecat/linalg.hpp"

namespace rsecat {

struct Generator {
  std::string name;
  int degree = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Monomial {
  std::vector<int> exps;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Homogeneous element: coordinates over the algebra's basis in `degree`.
struct Element {
  int degree = 0;
  SparseVec coeffs;

  bool is_zero() const noexcept { return coeffs.empty(); }
  friend bool operator==(const Element&, const Element&) = default;
};

/// Ordered product of generator powers with a coefficient, addressed by name.
/// The order of factors matters for odd generators.
struct NamedTerm {
  Rational coeff{1};
  std::vector<std::pair<std::string, int>> factors;
};
using NamedPolynomial = std::vector<NamedTerm>;

/// Degree cap on the sub-monomial formed by the masked generators.
struct Truncation {
  std::vector<bool> mask;
  int max_degree = 0;
};

class Cdga {
 public:
  /// Graded algebra with zero differential.
  ///
  /// window_max bounds the degrees computed when the algebra is infinite-dimensional;
  /// it is ignored for finite-dimensional algebras, whose window is [0, top degree].
  Cdga(std::string name, std::vector<Generator> generators,
       std::vector<std::vector<std::pair<std::string, int>>> relations = {},
       std::vector<std::pair<std::vector<std::string>, int>> truncations = {}, int window_max = 24)
      : name_(std::move(name)) {
    std::sort(generators.begin(), generators.end(), [](const Generator& a, const Generator& b) {
      return std::tie(a.degree, a.name) < std::tie(b.degree, b.name);
    });
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& g = generators[i];
      if (g.degree < 2)
        throw InvalidArgument("generator " + g.name + " has degree " + std::to_string(g.degree) +
                              ": simple connectivity requires degree >= 2");
      if (by_name_.count(g.name)) throw InvalidArgument("duplicate generator " + g.name);
      by_name_[g.name] = i;
    }
    gens_ = std::move(generators);
    for (const auto& rel : relations) {
      Monomial m = monomial_from_factors(rel);
      relations_.push_back(m);
    }
    for (const auto& [names, cap] : truncations) {
      Truncation t{std::vector<bool>(gens_.size(), false), cap};
      for (const auto& n : names) t.mask[generator_index(n)] = true;
      truncations_.push_back(std::move(t));
    }
    init_basis(window_max);
    d_gen_.assign(gens_.size(), Element{});
    for (std::size_t i = 0; i < gens_.size(); ++i) d_gen_[i].degree = gens_[i].degree + 1;
    build_differential();
  }

  /// The same graded algebra with the derivation extending `values` (one per generator,
  /// canonical order). Verifies degrees, preservation of the relation ideal and d² = 0.
  Cdga with_differential(std::vector<Element> values) const {
    if (values.size() != gens_.size()) throw InvalidArgument("with_differential: one value per generator required");
    Cdga out = *this;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (!values[i].is_zero() && values[i].degree != gens_[i].degree + 1)
        throw InvalidArgument("d " + gens_[i].name + " must have degree " + std::to_string(gens_[i].degree + 1));
      values[i].degree = gens_[i].degree + 1;
    }
    out.d_gen_ = std::move(values);
    out.check_ideal_preserved();
    out.build_differential();
    out.check_d_squared();
    return out;
  }

  /// Differential given by named polynomials; unnamed generators get d = 0.
  Cdga with_differential(const std::map<std::string, NamedPolynomial>& values) const {
    std::vector<Element> v(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) v[i].degree = gens_[i].degree + 1;
    for (const auto& [name, poly] : values) {
      std::size_t i = generator_index(name);
      v[i] = polynomial(poly, gens_[i].degree + 1);
    }
    return with_differential(std::move(v));
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  const std::vector<Monomial>& relations() const noexcept { return relations_; }
  const std::vector<Truncation>& truncations() const noexcept { return truncations_; }
  bool finite_dimensional() const noexcept { return finite_; }
  /// Highest computed degree: the top degree if finite, else the window cap.
  int max_degree() const noexcept { return max_degree_; }
  DegreeWindow window() const { return DegreeWindow(0, max_degree_); }

  std::size_t generator_index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw InvalidArgument("unknown generator " + name);
    return it->second;
  }
  bool has_generator(const std::string& name) const { return by_name_.count(name) > 0; }

  int degree_of(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i) d += m.exps[i] * gens_[i].degree;
    return d;
  }

  void require_degree(int k) const {
    if (k > max_degree_ && !finite_)
      throw WindowViolation("algebra " + name_ + ": degree " + std::to_string(k) + " beyond window max " +
                            std::to_string(max_degree_));
  }

  std::size_t dim(int k) const {
    if (k < 0) return 0;
    require_degree(k);
    if (k > max_degree_) return 0;
    return basis_[k].size();
  }

  const std::vector<Monomial>& basis(int k) const {
    static const std::vector<Monomial> empty;
    if (k < 0) return empty;
    require_degree(k);
    if (k > max_degree_) return empty;
    return basis_[k];
  }

  std::optional<std::size_t> index_of(const Monomial& m) const {
    int k = degree_of(m);
    if (k < 0 || k > max_degree_) return std::nullopt;
    auto it = index_[k].find(m);
    if (it == index_[k].end()) return std::nullopt;
    return it->second;
  }

  /// Total dimension; only meaningful for finite-dimensional algebras.
  std::size_t total_dim() const {
    if (!finite_) throw InfiniteDimension("algebra " + name_ + " is infinite-dimensional");
    std::size_t n = 0;
    for (const auto& b : basis_) n += b.size();
    return n;
  }

  Element zero(int degree) const { return Element{degree, {}}; }
  Element unit() const { return Element{0, vec::unit(0)}; }
  Element basis_element(int degree, std::size_t i) const { return Element{degree, vec::unit(i)}; }
  Element generator(std::size_t i) const {
    Monomial m{std::vector<int>(gens_.size(), 0)};
    m.exps[i] = 1;
    auto idx = index_of(m);
    int k = gens_[i].degree;
    require_degree(k);
    if (!idx) return zero(k);
    return basis_element(k, *idx);
  }
  Element generator(const std::string& name) const { return generator(generator_index(name)); }

  bool is_odd(std::size_t gen) const { return gens_[gen].degree % 2 != 0; }

  /// Product of two basis monomials in the free graded-commutative algebra:
  /// (sign, monomial), sign 0 when an odd generator would be squared.
  std::pair<int, Monomial> free_product(const Monomial& a, const Monomial& b) const {
    Monomial c{std::vector<int>(gens_.size(), 0)};
    int odd_after = 0;  // odd factors of a at positions > current index
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (is_odd(i)) odd_after += a.exps[i];
    int transpositions = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (is_odd(i)) {
        odd_after -= a.exps[i];
        if (a.exps[i] + b.exps[i] > 1) return {0, c};
        transpositions += b.exps[i] * odd_after;
      }
      c.exps[i] = a.exps[i] + b.exps[i];
    }
    return {transpositions % 2 == 0 ? 1 : -1, c};
  }

  /// True iff m lies in the monomial ideal (relations and truncations).
  bool in_ideal(const Monomial& m) const {
    for (const auto& r : relations_) {
      bool divides = true;
      for (std::size_t i = 0; i < m.exps.size() && divides; ++i) divides = r.exps[i] <= m.exps[i];
      if (divides) return true;
    }
    for (const auto& t : truncations_) {
      int d = 0;
      for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (t.mask[i]) d += m.exps[i] * gens_[i].degree;
      if (d > t.max_degree) return true;
    }
    return false;
  }

  Element multiply(const Element& a, const Element& b) const {
    int k = a.degree + b.degree;
    if (a.is_zero() || b.is_zero()) return zero(k);
    require_degree(k);
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (const auto& [i, x] : a.coeffs) {
      const Monomial& ma = basis_[a.degree][i];
      for (const auto& [j, y] : b.coeffs) {
        auto [sign, m] = free_product(ma, basis_[b.degree][j]);
        if (sign == 0 || in_ideal(m)) continue;
        auto idx = index_of(m);
        if (!idx) throw Error("internal: standard monomial missing from basis");
        terms.emplace_back(*idx, sign > 0 ? Rational(x * y) : Rational(-(x * y)));
      }
    }
    return Element{k, vec::from_terms(std::move(terms))};
  }

  Element add(const Element& a, const Element& b) const {
    if (a.is_zero()) return b.is_zero() ? Element{std::max(a.degree, b.degree), {}} : b;
    if (b.is_zero()) return a;
    if (a.degree != b.degree) throw InvalidArgument("adding elements of different degrees");
    return Element{a.degree, vec::add(a.coeffs, b.coeffs)};
  }
  Element scale(const Element& a, const Rational& c) const { return Element{a.degree, vec::scale(a.coeffs, c)}; }
  Element sub(const Element& a, const Element& b) const { return add(a, scale(b, Rational(-1))); }

  Element power(const Element& a, int e) const {
    Element r = unit();
    for (int i = 0; i < e; ++i) r = multiply(r, a);
    return r;
  }

  /// Value of an ordered named polynomial; `degree` is used for the zero polynomial.
  Element polynomial(const NamedPolynomial& p, int degree) const {
    Element acc = zero(degree);
    for (const auto& t : p) {
      Element term = unit();
      for (const auto& [name, e] : t.factors) {
        std::size_t g = generator_index(name);
        if (is_odd(g) && e > 1)
          throw InvalidArgument("odd-degree generator " + name + " raised to exponent " + std::to_string(e));
        term = multiply(term, power(generator(g), e));
      }
      term = scale(term, t.coeff);
      if (term.degree != degree && !term.is_zero())
        throw InvalidArgument("polynomial is not homogeneous of degree " + std::to_string(degree));
      if (term.degree != degree) term.degree = degree;
      acc = add(acc, term);
    }
    acc.degree = degree;
    return acc;
  }

  Element differential(const Element& a) const {
    if (a.is_zero()) return zero(a.degree + 1);
    require_degree(a.degree + 1);
    return Element{a.degree + 1, d_matrix(a.degree).apply(a.coeffs)};
  }

  /// d^k : A^k → A^{k+1}
  Matrix d_matrix(int k) const {
    if (k < 0) return Matrix(dim(k + 1), 0);
    require_degree(k + 1);
    if (k >= static_cast<int>(d_.size())) return Matrix(dim(k + 1), dim(k));
    return d_[k];
  }

  const Element& generator_differential(std::size_t i) const { return d_gen_.at(i); }

  bool has_zero_differential() const {
    return std::all_of(d_gen_.begin(), d_gen_.end(), [](const Element& e) { return e.is_zero(); });
  }

  /// The differential as a GradedMap over the computed degrees.
  GradedMap differential_map() const {
    GradedMap g;
    g.degree_shift = 1;
    for (std::size_t k = 0; k < d_.size(); ++k) g.blocks[static_cast<int>(k)] = d_[k];
    return g;
  }

  /// Cochain complex of the algebra on degrees [0, max_degree] (one below 0 for homology at 0).
  ChainComplex as_complex() const {
    GradedSpace space;
    int hi = finite_ ? max_degree_ + 1 : max_degree_;
    for (int k = 0; k <= std::min(hi, max_degree_); ++k) space.set_basis(k, labels(k));
    GradedMap d = differential_map();
    if (!finite_) d.blocks.erase(max_degree_);
    return ChainComplex(std::move(space), std::move(d), DegreeWindow(-1, hi));
  }

  std::vector<std::string> labels(int k) const {
    std::vector<std::string> out;
    for (const auto& m : basis(k)) out.push_back(format_monomial(m));
    return out;
  }

  std::string format_monomial(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += gens_[i].name;
      if (m.exps[i] > 1) s += '^' + std::to_string(m.exps[i]);
    }
    return s.empty() ? "1" : s;
  }

  std::string format(const Element& a) const {
    if (a.is_zero()) return "0";
    std::string s;
    for (const auto& [i, c] : a.coeffs) {
      std::string mono = format_monomial(basis_[a.degree][i]);
      Rational ac = abs(c);
      std::string body = (ac == 1 && mono != "1") ? mono : (mono == "1" ? ac.get_str() : ac.get_str() + "*" + mono);
      if (s.empty())
        s = (c < 0 ? "-" : "") + body;
      else
        s += (c < 0 ? " - " : " + ") + body;
    }
    return s;
  }

  Monomial monomial_from_factors(const std::vector<std::pair<std::string, int>>& factors) const {
    Monomial m{std::vector<int>(gens_.size(), 0)};
    for (const auto& [name, e] : factors) {
      std::size_t g = generator_index(name);
      if (e < 0) throw InvalidArgument("negative exponent on " + name);
      m.exps[g] += e;
      if (is_odd(g) && m.exps[g] > 1)
        throw InvalidArgument("odd-degree generator " + name + " raised to exponent " + std::to_string(m.exps[g]));
    }
    return m;
  }

 private:
  void init_basis(int window_max) {
    std::vector<int> cap(gens_.size(), -1);  // max exponent, -1 = unbounded
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (is_odd(i)) cap[i] = 1;
    for (const auto& r : relations_) {
      int nonzero = 0;
      std::size_t which = 0;
      for (std::size_t i = 0; i < r.exps.size(); ++i)
        if (r.exps[i] > 0) ++nonzero, which = i;
      if (nonzero == 1) {
        int c = r.exps[which] - 1;
        cap[which] = cap[which] < 0 ? c : std::min(cap[which], c);
      }
      if (nonzero == 0) throw InvalidArgument("relation 1 = 0 kills the algebra");
    }
    for (const auto& t : truncations_)
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (t.mask[i]) {
          int c = t.max_degree / gens_[i].degree;
          cap[i] = cap[i] < 0 ? c : std::min(cap[i], c);
        }
    finite_ = std::all_of(cap.begin(), cap.end(), [](int c) { return c >= 0; });
    int bound = window_max;
    if (finite_) {
      bound = 0;
      for (std::size_t i = 0; i < gens_.size(); ++i) bound += cap[i] * gens_[i].degree;
    }
    basis_.assign(bound + 1, {});
    Monomial m{std::vector<int>(gens_.size(), 0)};
    enumerate(0, bound, m, cap);
    for (auto& b : basis_) std::sort(b.begin(), b.end(), std::greater<>());
    if (finite_) {
      int top = 0;
      for (int k = 0; k <= bound; ++k)
        if (!basis_[k].empty()) top = k;
      basis_.resize(top + 1);
      max_degree_ = top;
    } else {
      max_degree_ = bound;
    }
    index_.assign(basis_.size(), {});
    for (std::size_t k = 0; k < basis_.size(); ++k)
      for (std::size_t i = 0; i < basis_[k].size(); ++i) index_[k][basis_[k][i]] = i;
  }

  void enumerate(std::size_t g, int remaining, Monomial& m, const std::vector<int>& cap) {
    if (g == gens_.size()) {
      if (!in_ideal(m)) basis_[degree_of(m)].push_back(m);
      return;
    }
    int maxe = remaining / gens_[g].degree;
    if (cap[g] >= 0) maxe = std::min(maxe, cap[g]);
    for (int e = 0; e <= maxe; ++e) {
      m.exps[g] = e;
      enumerate(g + 1, remaining - e * gens_[g].degree, m, cap);
    }
    m.exps[g] = 0;
  }

  // d of a standard monomial via the Leibniz rule on its ordered word of generators.
  Element differential_of_monomial(const Monomial& m) const {
    int k = degree_of(m);
    std::vector<std::size_t> word;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      for (int e = 0; e < m.exps[i]; ++e) word.push_back(i);
    Element acc = zero(k + 1);
    int prefix_degree = 0;
    for (std::size_t t = 0; t < word.size(); ++t) {
      const Element& dg = d_gen_[word[t]];
      if (!dg.is_zero()) {
        Element prefix = unit();
        for (std::size_t s = 0; s < t; ++s) prefix = multiply(prefix, generator(word[s]));
        Element term = multiply(prefix, dg);
        for (std::size_t s = t + 1; s < word.size(); ++s) term = multiply(term, generator(word[s]));
        if (prefix_degree % 2 != 0) term = scale(term, Rational(-1));
        acc = add(acc, term);
      }
      prefix_degree += gens_[word[t]].degree;
    }
    acc.degree = k + 1;
    return acc;
  }

  void build_differential() {
    d_.clear();
    int last = finite_ ? max_degree_ : max_degree_ - 1;
    for (int k = 0; k <= last; ++k) {
      std::vector<SparseVec> cols;
      for (const auto& m : basis_[k]) cols.push_back(differential_of_monomial(m).coeffs);
      d_.push_back(Matrix::from_columns(dim(k + 1), std::move(cols)));
    }
  }

  // d(r) must lie in the monomial ideal for every relation r. Computed in the free
  // algebra so terms the quotient would discard are still seen.
  void check_ideal_preserved() const {
    auto check = [&](const Monomial& r) {
      std::map<Monomial, Rational> dr;  // d(r) in the free algebra, modulo the ideal
      std::vector<std::size_t> word;
      for (std::size_t i = 0; i < r.exps.size(); ++i)
        for (int e = 0; e < r.exps[i]; ++e) word.push_back(i);
      int prefix_degree = 0;
      for (std::size_t t = 0; t < word.size(); ++t) {
        const Element& dg = d_gen_[word[t]];
        for (const auto& [j, c] : dg.coeffs) {
          Monomial left{std::vector<int>(gens_.size(), 0)};
          for (std::size_t s = 0; s < t; ++s) left.exps[word[s]]++;
          Monomial right{std::vector<int>(gens_.size(), 0)};
          for (std::size_t s = t + 1; s < word.size(); ++s) right.exps[word[s]]++;
          // left, right are sorted sub-words of a sorted word, so they are canonical as written.
          auto [s1, lm] = free_product(left, basis_[dg.degree][j]);
          if (s1 == 0) continue;
          auto [s2, full] = free_product(lm, right);
          if (s2 == 0) continue;
          if (in_ideal(full)) continue;
          Rational v = c * s1 * s2;
          if (prefix_degree % 2 != 0) v = -v;
          dr[full] += v;
        }
        prefix_degree += gens_[word[t]].degree;
      }
      for (const auto& [mono, c] : dr)
        if (c != 0)
          throw NotDifferentialIdeal("d(" + format_monomial(r) + ") leaves the relation ideal (term " +
                                     format_monomial(mono) + ")");
    };
    for (const auto& r : relations_) check(r);
    // Truncations: d raises degree, so a monomial over the cap stays over the cap
    // unless d introduces generators outside the mask.
    for (const auto& t : truncations_)
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (t.mask[i])
          for (const auto& [j, c] : d_gen_[i].coeffs)
            for (std::size_t g = 0; g < gens_.size(); ++g)
              if (basis_[d_gen_[i].degree][j].exps[g] > 0 && !t.mask[g])
                throw NotDifferentialIdeal("truncation is not preserved by d " + gens_[i].name);
  }

  void check_d_squared() const {
    for (int k = 0; k + 1 < static_cast<int>(d_.size()); ++k) {
      Matrix dd = d_[k + 1] * d_[k];
      for (std::size_t j = 0; j < dd.cols(); ++j)
        if (!dd.column(j).empty())
          throw DSquaredNonzero("d(d(" + format_monomial(basis_[k][j]) + ")) != 0 in algebra " + name_);
    }
  }

  std::string name_;
  std::vector<Generator> gens_;
  std::map<std::string, std::size_t> by_name_;
  std::vector<Monomial> relations_;
  std::vector<Truncation> truncations_;
  bool finite_ = false;
  int max_degree_ = 0;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::map<Monomial, std::size_t>> index_;
  std::vector<Element> d_gen_;
  std::vector<Matrix> d_;
};

using CdgaPtr = std::shared_ptr<const Cdga>;

/// The algebra Q (no generators).
inline CdgaPtr ground_field() { return std::make_shared<const Cdga>("Q", std::vector<Generator>{}); }

/// Convenience: free or monomially presented CDGA from named data.
inline CdgaPtr make_cdga(std::string name, std::vector<Generator> gens,
                         const std::map<std::string, NamedPolynomial>& differential = {},
                         std::vector<std::vector<std::pair<std::string, int>>> relations = {},
                         std::vector<std::pair<std::vector<std::string>, int>> truncations = {},
                         int window_max = 24) {
  Cdga base(std::move(name), std::move(gens), std::move(relations), std::move(truncations), window_max);
  if (differential.empty()) return std::make_shared<const Cdga>(std::move(base));
  return std::make_shared<const Cdga>(base.with_differential(differential));
}

/// The derivation extending generator values, exported as a graded map (d² checked).
inline GradedMap derivation_extend(const Cdga& a, const std::map<std::string, NamedPolynomial>& values) {
  return a.with_differential(values).differential_map();
}

}  // namespace rsecat
