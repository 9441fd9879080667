#pragma once
// Semifree modules A⊗W, resolutions built degree by degree, quotients by ideal
// action and the homology-injectivity retraction criterion with witnesses.

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsecat/module.hpp"

namespace rsecat {

struct SemifreeGenerator {
  std::string name;
  int degree = 0;
  int stage = 0;
  /// dw = Σ a·w_h, with w_h earlier in the generator list and |a| = |w| + 1 − |w_h|.
  std::vector<std::pair<std::size_t, Element>> boundary;
};

/// P = A⊗W with d(a·w) = da·w + (−1)^{|a|} a·dw. Basis of P^k: pairs (generator, basis
/// index of A^{k−|w|}), ordered by generator, then by A index.
class SemifreeModule : public DgModule {
 public:
  SemifreeModule(CdgaPtr a, std::vector<SemifreeGenerator> gens) : a_(std::move(a)), gens_(std::move(gens)) {
    for (std::size_t g = 0; g < gens_.size(); ++g)
      for (const auto& [h, c] : gens_[g].boundary) {
        if (h >= g)
          throw InvalidArgument("semifree: boundary of " + gens_[g].name + " uses a generator that is not earlier");
        if (!c.is_zero() && c.degree != gens_[g].degree + 1 - gens_[h].degree)
          throw InvalidArgument("semifree: boundary of " + gens_[g].name + " is not homogeneous");
      }
  }

  const CdgaPtr& algebra() const override { return a_; }
  const std::vector<SemifreeGenerator>& generators() const noexcept { return gens_; }

  DegreeWindow window() const override {
    if (gens_.empty()) return DegreeWindow(0, 0);
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& g : gens_) lo = std::min(lo, g.degree), hi = std::max(hi, g.degree);
    if (a_->finite_dimensional()) return DegreeWindow(lo, hi + a_->max_degree());
    return DegreeWindow(lo, lo + a_->max_degree());
  }
  bool zero_below() const override { return true; }
  bool zero_above() const override { return a_->finite_dimensional() || gens_.empty(); }

  std::string label(int k, std::size_t i) const override {
    auto [g, j] = locate(k, i);
    std::string m = a_->format_monomial(a_->basis(k - gens_[g].degree)[j]);
    return m == "1" ? gens_[g].name : m + "*" + gens_[g].name;
  }

  /// Offset of generator g's block inside P^k.
  std::size_t offset(int k, std::size_t g) const {
    std::size_t off = 0;
    for (std::size_t h = 0; h < g; ++h) off += block_dim(k, h);
    return off;
  }
  std::size_t block_dim(int k, std::size_t g) const { return a_->dim(k - gens_[g].degree); }

  std::pair<std::size_t, std::size_t> locate(int k, std::size_t i) const {
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      std::size_t b = block_dim(k, g);
      if (i < b) return {g, i};
      i -= b;
    }
    throw InvalidArgument("semifree: basis index out of range");
  }

  /// a·w_g as a vector of P^{|a|+|w_g|}.
  SparseVec embed(std::size_t g, const Element& a) const {
    int k = a.degree + gens_[g].degree;
    std::size_t off = offset(k, g);
    SparseVec out;
    for (const auto& [i, c] : a.coeffs) out.emplace_back(off + i, c);
    return out;
  }

  /// Per-generator A-coefficients of v ∈ P^k.
  std::vector<Element> decompose(int k, const SparseVec& v) const {
    std::vector<Element> out;
    for (std::size_t g = 0; g < gens_.size(); ++g) out.push_back(a_->zero(k - gens_[g].degree));
    std::vector<std::size_t> offs;
    std::size_t off = 0;
    for (std::size_t g = 0; g < gens_.size(); ++g) offs.push_back(off), off += block_dim(k, g);
    for (const auto& [i, c] : v) {
      std::size_t g = std::upper_bound(offs.begin(), offs.end(), i) - offs.begin() - 1;
      out[g].coeffs.emplace_back(i - offs[g], c);
    }
    return out;
  }

  std::string format(int k, const SparseVec& v) const {
    if (v.empty()) return "0";
    std::string s;
    auto parts = decompose(k, v);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (parts[g].is_zero()) continue;
      std::string a = a_->format(parts[g]);
      bool single = parts[g].coeffs.size() == 1;
      std::string term = a == "1" ? gens_[g].name
                                  : (single ? a + "*" + gens_[g].name : "(" + a + ")*" + gens_[g].name);
      if (a == "-1") term = "-" + gens_[g].name;
      if (!s.empty()) s += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
      else s = term;
    }
    return s;
  }

 protected:
  std::size_t dim_in(int k) const override {
    std::size_t n = 0;
    for (std::size_t g = 0; g < gens_.size(); ++g) n += block_dim(k, g);
    return n;
  }

  Matrix differential_in(int k) const override {
    std::vector<SparseVec> cols;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      int ad = k - gens_[g].degree;
      for (std::size_t i = 0; i < a_->dim(ad); ++i) {
        Element a = a_->basis_element(ad, i);
        SparseVec col = a_->differential(a).is_zero() ? SparseVec{} : embed(g, a_->differential(a));
        Rational sign = ad % 2 == 0 ? 1 : -1;
        for (const auto& [h, c] : gens_[g].boundary) {
          Element ac = a_->multiply(a, c);
          if (!ac.is_zero()) col = vec::axpy(col, sign, embed(h, ac));
        }
        cols.push_back(std::move(col));
      }
    }
    return Matrix::from_columns(dim(k + 1), std::move(cols));
  }

  SparseVec act_in(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const override {
    Element b = a_->basis_element(a_deg, a_idx);
    auto parts = decompose(k, v);
    SparseVec out;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (parts[g].is_zero()) continue;
      Element p = a_->multiply(b, parts[g]);
      if (!p.is_zero()) out = vec::add(out, embed(g, p));
    }
    return out;
  }

 private:
  CdgaPtr a_;
  std::vector<SemifreeGenerator> gens_;
};

using SemifreePtr = std::shared_ptr<const SemifreeModule>;

/// A semifree module P with a chain map η : P → M of A-modules. P^j agrees with the
/// full resolution for j ≤ complete_through (all generators of those degrees are
/// present), and η is a homology isomorphism there.
struct SemifreeResolution {
  SemifreePtr P;
  ModulePtr target;
  std::vector<SparseVec> eta;  // η(w_g) ∈ M^{|w_g|}
  int lowest = 0;              // no homology of M below this degree (within M's window)
  int complete_through = INT_MAX;
  bool exact_free = false;     // M recognized as free of rank one; η is an isomorphism
  std::vector<int> homology_support;  // degrees with H(M) ≠ 0 found while building

  bool certifies(int k) const { return k <= complete_through; }

  SparseVec apply_eta(int k, const SparseVec& v) const {
    auto parts = P->decompose(k, v);
    SparseVec out;
    for (std::size_t g = 0; g < parts.size(); ++g)
      if (!parts[g].is_zero()) out = vec::add(out, target->act(parts[g], P->generators()[g].degree, eta[g]));
    return out;
  }

  Matrix eta_matrix(int k) const {
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < P->dim(k); ++i) cols.push_back(apply_eta(k, vec::unit(i)));
    return Matrix::from_columns(target->dim(k), std::move(cols));
  }

  /// η on complexes over [lo, hi].
  ChainMap eta_chain_map(int lo, int hi) const {
    ChainMap f{std::make_shared<const ChainComplex>(P->complex(lo, hi)),
               std::make_shared<const ChainComplex>(target->complex(lo, hi)), GradedMap{0, {}}};
    for (int k = lo; k <= hi; ++k) f.map.blocks[k] = eta_matrix(k);
    return f;
  }
};

/// Raised when the target module does not extend far enough to build the requested
/// resolution; carries what was built.
class DepthExhausted : public Error {
 public:
  DepthExhausted(const std::string& what, std::shared_ptr<const SemifreeResolution> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::shared_ptr<const SemifreeResolution>& partial() const noexcept { return partial_; }

 private:
  std::shared_ptr<const SemifreeResolution> partial_;
};

struct SeedGenerator {
  SemifreeGenerator generator;
  SparseVec eta;
};

struct ResolutionOptions {
  /// Generators fixed in advance (e.g. a unit generator), in order, all cocycle-compatible.
  std::vector<SeedGenerator> seeds;
  /// If set, every new generator is normalized to η(w) = 0 by subtracting (lift of
  /// its intended η value)·seed₀; the target must then be A/K with seed₀ ↦ 1̄.
  std::shared_ptr<const QuotientModule> normalize_against_unit;
  std::string prefix = "w";
};

/// Builds P → M for degrees lowest(H(M)) .. depth. At degree k: first every class of
/// H^k(P) mapping to zero is killed by a generator of degree k−1; then cocycle
/// generators of degree k are added for a complement of the image in H^k(M).
/// After processing degree k, η is a homology isomorphism through k and generators
/// of degree < k are final.
inline SemifreeResolution semifree_resolution(const ModulePtr& m, int depth, const ResolutionOptions& opt = {}) {
  const CdgaPtr& a = m->algebra();
  if (std::dynamic_pointer_cast<const RegularModule>(m)) {
    // Free of rank one on 1.
    SemifreeResolution r;
    r.P = std::make_shared<SemifreeModule>(a, std::vector<SemifreeGenerator>{{"w0", 0, 0, {}}});
    r.target = m;
    r.eta = {vec::unit(0)};
    r.exact_free = true;
    r.lowest = 0;
    for (int k = 0; k <= a->max_degree(); ++k) {
      if (!a->finite_dimensional() && k + 1 > a->max_degree()) break;
      if (homology_at(a->as_complex(), k).dim() > 0) r.homology_support.push_back(k);
    }
    return r;
  }

  DegreeWindow w = m->window();
  std::vector<SemifreeGenerator> gens;
  std::vector<SparseVec> eta;
  for (const auto& s : opt.seeds) gens.push_back(s.generator), eta.push_back(s.eta);

  auto snapshot = [&](int through) {
    SemifreeResolution r;
    r.P = std::make_shared<SemifreeModule>(a, gens);
    r.target = m;
    r.eta = eta;
    r.complete_through = through;
    return r;
  };

  int start = m->zero_below() ? w.min_degree : w.min_degree + 1;
  // Lowest degree with homology; the seeds' degrees are included so they are processed.
  int lowest = INT_MAX;
  for (const auto& s : opt.seeds) lowest = std::min(lowest, s.generator.degree);
  std::vector<int> support;
  for (int k = start; k <= depth; ++k) {
    if (!m->known(k + 1)) break;
    if (homology_at(m->complex(k - 1, k + 1), k).dim() > 0) {
      support.push_back(k);
      lowest = std::min(lowest, k);
    }
  }
  if (lowest == INT_MAX) {
    SemifreeResolution r = snapshot(depth);
    r.lowest = depth;
    r.homology_support = support;
    return r;
  }

  int stage = 0;
  for (int k = lowest; k <= depth; ++k, ++stage) {
    if (!m->known(k + 1)) {
      auto partial = std::make_shared<SemifreeResolution>(snapshot(k - 2));
      partial->lowest = lowest;
      partial->homology_support = support;
      throw DepthExhausted("resolution: target module unknown in degree " + std::to_string(k + 1), partial);
    }
    int index = 0;
    auto add_generator = [&](int degree, SparseVec boundary_vec, int boundary_deg, SparseVec intended_eta) {
      SemifreeModule cur(a, gens);
      SemifreeGenerator g;
      g.name = opt.prefix + std::to_string(stage) + "_" + std::to_string(index++);
      g.degree = degree;
      g.stage = stage;
      SparseVec eta_val = std::move(intended_eta);
      if (opt.normalize_against_unit) {
        // w' = w − ã·u with φ(ã) = intended η value
        Element lift{degree, opt.normalize_against_unit->lift(degree, eta_val)};
        Element dlift = a->differential(lift);
        if (!dlift.is_zero()) boundary_vec = vec::sub(boundary_vec, cur.embed(0, dlift));
        eta_val.clear();
      }
      if (!boundary_vec.empty()) {
        auto parts = cur.decompose(boundary_deg, boundary_vec);
        for (std::size_t h = 0; h < parts.size(); ++h)
          if (!parts[h].is_zero()) g.boundary.emplace_back(h, parts[h]);
      }
      gens.push_back(std::move(g));
      eta.push_back(std::move(eta_val));
    };

    // Kill classes in ker(H^k(P) → H^k(M)).
    {
      SemifreeResolution r = snapshot(k - 1);
      ChainComplex pc = r.P->complex(k - 1, k + 1);
      ChainComplex mc = m->complex(k - 1, k + 1);
      HomologyBasis hp = homology_at(pc, k), hm = homology_at(mc, k);
      Matrix ek = r.eta_matrix(k);
      std::vector<SparseVec> cols;
      for (const auto& z : hp.representatives()) cols.push_back(hm.coordinates(ek.apply(z)));
      Matrix induced = Matrix::from_columns(hm.dim(), cols);
      Matrix dm = m->differential(k - 1);
      for (const auto& kv : echelon(induced).kernel_basis) {
        SparseVec z;
        for (const auto& [i, c] : kv) z = vec::axpy(z, c, hp.representatives()[i]);
        auto mprime = solve(dm, ek.apply(z));
        if (!mprime) throw Error("resolution: internal error, kernel class does not bound in the target");
        add_generator(k - 1, z, k, *mprime);
      }
    }
    // Hit the cokernel.
    {
      SemifreeResolution r = snapshot(k - 1);
      ChainComplex pc = r.P->complex(k - 1, k + 1);
      ChainComplex mc = m->complex(k - 1, k + 1);
      HomologyBasis hp = homology_at(pc, k), hm = homology_at(mc, k);
      Matrix ek = r.eta_matrix(k);
      Span image(hm.dim());
      for (const auto& z : hp.representatives()) image.add(hm.coordinates(ek.apply(z)));
      for (std::size_t j = 0; j < hm.dim(); ++j)
        if (image.add(vec::unit(j))) add_generator(k, {}, k + 1, hm.representatives()[j]);
    }
  }
  SemifreeResolution r = snapshot(depth - 1);
  r.lowest = lowest;
  r.homology_support = support;
  return r;
}

/// Resolution of A^#. Uses P = A·v₀ when A^# is free of rank one on the top dual class.
inline SemifreeResolution resolution_of_dual(const CdgaPtr& a, int depth = 2) {
  ModulePtr dual = dual_module(a);
  if (auto v = dual_free_rank_one(a)) {
    SemifreeResolution r;
    r.P = std::make_shared<SemifreeModule>(a, std::vector<SemifreeGenerator>{{"v0", *v, 0, {}}});
    r.target = dual;
    r.eta = {vec::unit(0)};
    r.lowest = *v;
    r.exact_free = true;
    ChainComplex c = a->as_complex();
    for (int k = 0; k <= a->max_degree(); ++k)
      if (homology_at(c, k).dim() > 0) r.homology_support.push_back(-k);
    std::sort(r.homology_support.begin(), r.homology_support.end());
    return r;
  }
  return semifree_resolution(dual, depth, ResolutionOptions{{}, nullptr, "w"});
}

/// P/J·P as an A-module: basis (generator, basis of (A/J)^{k−|w|}).
class IdealQuotientModule : public DgModule {
 public:
  IdealQuotientModule(SemifreePtr p, const Ideal& j)
      : p_(std::move(p)), q_(quotient_algebra_module(p_->algebra(), j)) {}

  const CdgaPtr& algebra() const override { return p_->algebra(); }
  DegreeWindow window() const override { return p_->window(); }
  bool zero_below() const override { return true; }
  bool zero_above() const override { return p_->zero_above(); }
  std::string label(int k, std::size_t i) const override {
    auto [g, j] = locate(k, i);
    return q_->label(k - gens()[g].degree, j) + "*" + gens()[g].name;
  }
  const QuotientModule& algebra_quotient() const noexcept { return *q_; }

  /// ϱ : P^k → (P/JP)^k
  SparseVec project(int k, const SparseVec& v) const {
    auto parts = p_->decompose(k, v);
    SparseVec out;
    std::size_t off = 0;
    for (std::size_t g = 0; g < parts.size(); ++g) {
      int ad = k - gens()[g].degree;
      for (const auto& [i, c] : q_->project(ad, parts[g].coeffs)) out.emplace_back(off + i, c);
      off += q_->dim(ad);
    }
    return out;
  }
  Matrix projection_matrix(int k) const {
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < p_->dim(k); ++i) cols.push_back(project(k, vec::unit(i)));
    return Matrix::from_columns(dim(k), std::move(cols));
  }
  /// Standard lift (P/JP)^k → P^k.
  SparseVec lift(int k, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [i, c] : v) {
      auto [g, j] = locate(k, i);
      int ad = k - gens()[g].degree;
      out = vec::add(out, p_->embed(g, Element{ad, vec::scale(q_->lift(ad, vec::unit(j)), c)}));
    }
    return out;
  }

 protected:
  std::size_t dim_in(int k) const override {
    std::size_t n = 0;
    for (const auto& g : gens()) n += q_->dim(k - g.degree);
    return n;
  }
  Matrix differential_in(int k) const override {
    Matrix d = p_->differential(k);
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < dim(k); ++i) cols.push_back(project(k + 1, d.apply(lift(k, vec::unit(i)))));
    return Matrix::from_columns(dim(k + 1), std::move(cols));
  }
  SparseVec act_in(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const override {
    return project(k + a_deg, p_->act(a_deg, a_idx, k, lift(k, v)));
  }

 private:
  const std::vector<SemifreeGenerator>& gens() const { return p_->generators(); }
  std::pair<std::size_t, std::size_t> locate(int k, std::size_t i) const {
    for (std::size_t g = 0; g < gens().size(); ++g) {
      std::size_t b = q_->dim(k - gens()[g].degree);
      if (i < b) return {g, i};
      i -= b;
    }
    throw InvalidArgument("quotient: basis index out of range");
  }

  SemifreePtr p_;
  std::shared_ptr<const QuotientModule> q_;
};

struct QuotientProjection {
  std::shared_ptr<const IdealQuotientModule> quotient;
  ChainMap projection;  // P → P/JP on [lo, hi]
};

inline QuotientProjection quotient_by_ideal_action(const SemifreePtr& p, const Ideal& j, int lo, int hi) {
  auto q = std::make_shared<IdealQuotientModule>(p, j);
  ChainMap f{std::make_shared<const ChainComplex>(p->complex(lo, hi)),
             std::make_shared<const ChainComplex>(q->complex(lo, hi)), GradedMap{0, {}}};
  for (int k = lo; k <= hi; ++k) f.map.blocks[k] = q->projection_matrix(k);
  return {q, std::move(f)};
}

struct RetractionVerdict {
  bool injective = true;
  std::map<int, bool> per_degree;
  bool exact = true;          // false when the degrees are only window-certified
  std::vector<int> degrees;   // degrees of H(P) that were tested
};

/// Homology injectivity of P → P/J·P on the support of H(P).
inline RetractionVerdict projection_injective(const SemifreeResolution& r, const Ideal& j) {
  RetractionVerdict v;
  v.degrees = r.homology_support;
  v.exact = r.P->algebra()->finite_dimensional();
  if (v.degrees.empty()) return v;
  int lo = v.degrees.front() - 1, hi = v.degrees.back() + 1;
  if (!r.certifies(hi)) throw Undetermined("resolution complete only through degree " + std::to_string(r.complete_through));
  QuotientProjection qp = quotient_by_ideal_action(r.P, j, lo, hi);
  InjectivityVerdict iv = injective_on_homology(qp.projection, v.degrees);
  v.injective = iv.injective;
  v.per_degree = iv.per_degree;
  return v;
}

/// Retraction criterion: φ admits a homotopy retraction of A-modules iff P → P/K·P is
/// injective in homology, for P ≃ A^#.
inline RetractionVerdict has_homotopy_retraction(const CdgaMorphism& phi, int resolution_depth = 2) {
  Ideal k = kernel_ideal(phi);
  SemifreeResolution r = resolution_of_dual(phi.source(), resolution_depth);
  return projection_injective(r, k);
}

struct WitnessClass {
  int m = 0;
  int degree = 0;
  SparseVec omega;                 // in P^degree, lies in K^m·P
  SparseVec cocycle;               // representative z with ϱ(z) a boundary
  SparseVec theta;                 // ω = z − dθ
  SparseVec certificate;           // coordinates of [ω] in the homology basis of P
  std::string formatted;
};

/// From a class [z] ≠ 0 of H(P) dying in P/K^m·P, builds ω = z − dθ ∈ K^m·P.
inline WitnessClass lower_bound_witness(const SemifreeResolution& r, const Ideal& k, int m) {
  if (m < 1) throw NoWitness("witness: m must be >= 1");
  Ideal km = ideal_power(k, m);
  if (km.is_zero()) throw NoWitness("witness: K^" + std::to_string(m) + " = 0");
  const auto& degs = r.homology_support;
  if (degs.empty()) throw NoWitness("witness: H(P) = 0");
  int lo = degs.front() - 1, hi = degs.back() + 1;
  QuotientProjection qp = quotient_by_ideal_action(r.P, km, lo, hi);
  for (int deg : degs) {
    HomologyBasis hp = homology_at(*qp.projection.source, deg);
    Matrix ind = induced_on_homology(qp.projection, deg);
    auto ker = echelon(ind).kernel_basis;
    if (ker.empty()) continue;
    SparseVec z;
    for (const auto& [i, c] : ker.front()) z = vec::axpy(z, c, hp.representatives()[i]);
    SparseVec rz = qp.quotient->project(deg, z);
    auto ybar = solve(qp.quotient->differential(deg - 1), rz);
    if (!ybar) throw Error("witness: internal error, projected class is not a boundary");
    SparseVec y = qp.quotient->lift(deg - 1, *ybar);
    SparseVec omega = vec::sub(z, r.P->differential(deg - 1).apply(y));
    WitnessClass w;
    w.m = m;
    w.degree = deg;
    w.omega = omega;
    w.cocycle = z;
    w.theta = y;
    w.certificate = hp.coordinates(omega);
    w.formatted = r.P->format(deg, omega);
    return w;
  }
  throw NoWitness("witness: P → P/K^" + std::to_string(m) + "·P is injective in homology");
}

struct WitnessCheck {
  bool in_ideal_module = false;
  bool cocycle = false;
  bool nontrivial = false;
  bool ok() const { return in_ideal_module && cocycle && nontrivial; }
};

/// Independent re-verification: ω ∈ K^m·P coefficientwise, dω = 0, and ω is not a
/// boundary (rank of the boundary space grows when ω is appended).
inline WitnessCheck verify_witness(const SemifreeResolution& r, const Ideal& k, const WitnessClass& w) {
  WitnessCheck c;
  Ideal km = ideal_power(k, w.m);
  auto parts = r.P->decompose(w.degree, w.omega);
  c.in_ideal_module = !w.omega.empty();
  for (std::size_t g = 0; g < parts.size(); ++g) {
    if (parts[g].is_zero()) continue;
    Span s(r.P->algebra()->dim(parts[g].degree));
    for (const auto& b : km.basis(parts[g].degree)) s.add(b);
    if (!s.contains(parts[g].coeffs)) c.in_ideal_module = false;
  }
  c.cocycle = r.P->differential(w.degree).apply(w.omega).empty();
  Matrix b = r.P->differential(w.degree - 1);
  std::vector<SparseVec> cols = b.columns();
  std::size_t r0 = rank(Matrix::from_columns(b.rows(), cols));
  cols.push_back(w.omega);
  std::size_t r1 = rank(Matrix::from_columns(b.rows(), cols));
  c.nontrivial = r1 == r0 + 1;
  return c;
}

}  // namespace rsecat
