#pragma once
// Relative models (A⊗ΛX → A/K), the fiberwise join model J_m over A and the
// tensor products P⊗_A J_m used by the join criterion.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rsecat/semifree.hpp"

namespace rsecat {

/// A⊗Λ(u)⊗ΛX ≃ A/K with u ↦ 1̄ and X ↦ 0. Generator 0 is u; for x ∈ X the
/// u-coefficient of dx (written d₀x) lies in K, the remaining terms form d₊x.
struct RelativeModel {
  CdgaPtr algebra;
  Ideal kernel;
  SemifreeResolution resolution;
  int final_through = 0;  // every X generator of degree <= this is present

  const SemifreePtr& module() const { return resolution.P; }
  const std::vector<SemifreeGenerator>& generators() const { return resolution.P->generators(); }
  std::size_t size() const { return generators().size(); }

  Element d0(std::size_t x) const {
    const auto& g = generators()[x];
    for (const auto& [h, c] : g.boundary)
      if (h == 0) return c;
    return algebra->zero(g.degree + 1);
  }
  std::vector<std::pair<std::size_t, Element>> d_plus(std::size_t x) const {
    std::vector<std::pair<std::size_t, Element>> out;
    for (const auto& [h, c] : generators()[x].boundary)
      if (h != 0) out.emplace_back(h, c);
    return out;
  }
};

using RelativeModelPtr = std::shared_ptr<const RelativeModel>;

/// Builds the relative model with all X generators of degree <= final_through.
inline RelativeModelPtr relative_model(const CdgaPtr& a, const Ideal& k, int final_through) {
  if (k.ambient() != a) throw InvalidArgument("relative model: ideal of a different algebra");
  auto q = quotient_algebra_module(a, k);
  if (q->dim(0) != 1) throw InvalidArgument("relative model: K must vanish in degree 0");
  ResolutionOptions opt;
  opt.seeds.push_back(SeedGenerator{SemifreeGenerator{"u", 0, 0, {}}, vec::unit(0)});
  opt.normalize_against_unit = q;
  opt.prefix = "x";
  int depth = std::max(final_through, 0) + 1;
  auto r = std::make_shared<RelativeModel>();
  r->algebra = a;
  r->kernel = k;
  r->resolution = semifree_resolution(q, depth, opt);
  r->final_through = r->resolution.complete_through;
  for (std::size_t x = 1; x < r->size(); ++x)
    if (Element e = r->d0(x); !k.contains(e.degree, e.coeffs)) throw Error("relative model: d0 of " + r->generators()[x].name + " is not in K");
  return r;
}

/// J_m: generators u and ordered tuples (x_0, …, x_m) of X generators, of degree
/// Σ|x_i| + m, with d u = 0 and
///   d(x_0…x_m) = ε Π d₀x_i · u
///              + Σ_i Σ_j (−1)^{(|a_ij|+1)(|x_0|+…+|x_{i−1}|+m)} a_ij (x_0…x_ij…x_m),
/// where d₊x_i = Σ_j a_ij x_ij and ε = (−1)^{Σ_{k=1}^m (k|x_{m−k}| + k − 1)}.
/// Only tuples of degree <= bound are kept; the set is closed under d.
struct JoinModel {
  int m = 0;
  int bound = 0;
  RelativeModelPtr relative;
  std::vector<std::vector<std::size_t>> tuples;  // tuple i is module generator i + 1
  SemifreePtr module;
};

inline int join_sign_epsilon(const RelativeModel& r, const std::vector<std::size_t>& t) {
  int m = static_cast<int>(t.size()) - 1;
  long e = 0;
  for (int k = 1; k <= m; ++k) e += static_cast<long>(k) * r.generators()[t[m - k]].degree + k - 1;
  return e % 2 == 0 ? 1 : -1;
}

/// X generators must be final through bound − 2m (every |x| >= 1).
inline JoinModel join_model(const RelativeModelPtr& r, int m, int bound) {
  if (m < 0) throw InvalidArgument("join model: m must be >= 0");
  int g_max = bound - 2 * m;
  if (r->final_through < g_max)
    throw InvalidArgument("join model: relative model final only through degree " +
                          std::to_string(r->final_through) + ", need " + std::to_string(g_max));
  const auto& rg = r->generators();
  const Cdga& a = *r->algebra;

  JoinModel j;
  j.m = m;
  j.bound = bound;
  j.relative = r;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, int used) -> void {
    if (static_cast<int>(cur.size()) == m + 1) {
      j.tuples.push_back(cur);
      return;
    }
    int remaining = m - static_cast<int>(cur.size());  // entries after this one
    for (std::size_t x = 1; x < rg.size(); ++x) {
      int d = used + rg[x].degree;
      if (rg[x].degree < 1) throw Error("join model: X generator of degree < 1");
      if (d + remaining * 1 + m > bound) continue;
      cur.push_back(x);
      self(self, d);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  auto degree_of = [&](const std::vector<std::size_t>& t) {
    int d = m;
    for (auto x : t) d += rg[x].degree;
    return d;
  };
  std::stable_sort(j.tuples.begin(), j.tuples.end(),
                   [&](const auto& s, const auto& t) { return degree_of(s) < degree_of(t); });
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < j.tuples.size(); ++i) index[j.tuples[i]] = i + 1;

  std::vector<SemifreeGenerator> gens{{"u", 0, 0, {}}};
  for (const auto& t : j.tuples) {
    SemifreeGenerator g;
    g.degree = degree_of(t);
    g.stage = 0;
    g.name = "[";
    for (std::size_t i = 0; i < t.size(); ++i) g.name += (i ? "|" : "") + rg[t[i]].name;
    g.name += "]";
    std::map<std::size_t, Element> bd;
    auto add = [&](std::size_t h, const Element& c) {
      if (c.is_zero()) return;
      auto it = bd.find(h);
      if (it == bd.end()) bd.emplace(h, c);
      else it->second = a.add(it->second, c);
    };
    Element prod = a.unit();
    for (auto x : t) prod = a.multiply(prod, r->d0(x));
    add(0, join_sign_epsilon(*r, t) > 0 ? prod : a.scale(prod, -1));
    int prefix = m;
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (const auto& [h, c] : r->d_plus(t[i])) {
        std::vector<std::size_t> t2 = t;
        t2[i] = h;
        bool neg = ((c.degree + 1) * prefix) % 2 != 0;
        add(index.at(t2), neg ? a.scale(c, -1) : c);
      }
      prefix += rg[t[i]].degree;
    }
    for (auto& [h, c] : bd)
      if (!c.is_zero()) g.boundary.emplace_back(h, c);
    gens.push_back(std::move(g));
  }
  j.module = std::make_shared<SemifreeModule>(r->algebra, std::move(gens));

  // d² = 0 on every generator whose degree + 2 lies in the module's window.
  const SemifreeModule& jm = *j.module;
  std::map<int, Matrix> dmat;
  auto d_at = [&](int k) -> const Matrix& {
    auto it = dmat.find(k);
    if (it == dmat.end()) it = dmat.emplace(k, jm.differential(k)).first;
    return it->second;
  };
  for (std::size_t g = 1; g < jm.generators().size(); ++g) {
    int k = jm.generators()[g].degree;
    if (!jm.known(k + 2)) continue;
    SparseVec v = jm.embed(g, a.unit());
    SparseVec dd = d_at(k + 1).apply(d_at(k).apply(v));
    if (!dd.empty())
      throw DSquaredNonzero("join model: d² ≠ 0 on " + jm.generators()[g].name + ", d²= " + jm.format(k + 2, dd));
  }
  return j;
}

/// C = P⊗_A J_m on generators w⊗t with |w| + |t| <= bound, and
///   d(w⊗t) = dw⊗t + (−1)^{|w|} Σ_{(b,t′) ∈ dt} (−1)^{|w||b|} b·(w⊗t′).
struct JoinTensor {
  SemifreePtr P;
  SemifreePtr C;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (P generator, J generator)
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;

  /// w ↦ w⊗u on complexes over [lo, hi].
  ChainMap inclusion(int lo, int hi) const {
    ChainMap f{std::make_shared<const ChainComplex>(P->complex(lo, hi)),
               std::make_shared<const ChainComplex>(C->complex(lo, hi)), GradedMap{0, {}}};
    const Cdga& a = *P->algebra();
    for (int k = lo; k <= hi; ++k) {
      std::vector<SparseVec> cols;
      for (std::size_t i = 0; i < P->dim(k); ++i) {
        auto [g, j] = P->locate(k, i);
        auto it = index.find({g, 0});
        if (it == index.end()) throw WindowViolation("join tensor: w⊗u beyond the degree bound");
        cols.push_back(C->embed(it->second, a.basis_element(k - P->generators()[g].degree, j)));
      }
      f.map.blocks[k] = Matrix::from_columns(C->dim(k), std::move(cols));
    }
    return f;
  }
};

inline JoinTensor tensor_with_join(const SemifreePtr& p, const JoinModel& j, int bound) {
  const Cdga& a = *p->algebra();
  const auto& pg = p->generators();
  const auto& jg = j.module->generators();
  JoinTensor out;
  out.P = p;
  for (std::size_t w = 0; w < pg.size(); ++w)
    for (std::size_t t = 0; t < jg.size(); ++t)
      if (pg[w].degree + jg[t].degree <= bound) out.pairs.emplace_back(w, t);
  std::stable_sort(out.pairs.begin(), out.pairs.end(), [&](const auto& x, const auto& y) {
    return pg[x.first].degree + jg[x.second].degree < pg[y.first].degree + jg[y.second].degree;
  });
  for (std::size_t i = 0; i < out.pairs.size(); ++i) out.index[out.pairs[i]] = i;

  std::vector<SemifreeGenerator> gens;
  for (const auto& [w, t] : out.pairs) {
    SemifreeGenerator g;
    g.name = pg[w].name + "⊗" + jg[t].name;
    g.degree = pg[w].degree + jg[t].degree;
    std::map<std::size_t, Element> bd;
    auto add = [&](std::size_t h, const Element& c) {
      if (c.is_zero()) return;
      auto it = bd.find(h);
      if (it == bd.end()) bd.emplace(h, c);
      else it->second = a.add(it->second, c);
    };
    for (const auto& [h, c] : pg[w].boundary) add(out.index.at({h, t}), c);
    int wd = pg[w].degree;
    for (const auto& [h, c] : jg[t].boundary) {
      bool neg = (wd + wd * c.degree) % 2 != 0;
      add(out.index.at({w, h}), neg ? a.scale(c, -1) : c);
    }
    for (auto& [h, c] : bd)
      if (!c.is_zero()) g.boundary.emplace_back(h, c);
    gens.push_back(std::move(g));
  }
  out.C = std::make_shared<SemifreeModule>(p->algebra(), std::move(gens));
  return out;
}

struct JoinVerdict {
  bool injective = true;
  std::map<int, bool> per_degree;
  std::vector<int> degrees;
  std::size_t join_generators = 0;
  std::size_t tensor_generators = 0;
};

/// Degree bound needed on J_m for the criterion over the homology support of r.
inline int join_degree_bound(const SemifreeResolution& r) {
  if (r.homology_support.empty()) return 0;
  int lowest = INT_MAX;
  for (const auto& g : r.P->generators()) lowest = std::min(lowest, g.degree);
  return r.homology_support.back() + 1 - lowest;
}

/// Homology injectivity of P → P⊗_A J_m on the support of H(P).
inline JoinVerdict join_injective(const SemifreeResolution& r, const RelativeModelPtr& rel, int m) {
  JoinVerdict v;
  v.degrees = r.homology_support;
  if (v.degrees.empty()) return v;
  int lo = v.degrees.front() - 1, hi = v.degrees.back() + 1;
  if (!r.certifies(hi)) throw Undetermined("resolution complete only through degree " + std::to_string(r.complete_through));
  JoinModel j = join_model(rel, m, join_degree_bound(r));
  JoinTensor c = tensor_with_join(r.P, j, hi);
  InjectivityVerdict iv = injective_on_homology(c.inclusion(lo, hi), v.degrees);
  v.injective = iv.injective;
  v.per_degree = iv.per_degree;
  v.join_generators = j.module->generators().size();
  v.tensor_generators = c.C->generators().size();
  return v;
}

}  // namespace rsecat
