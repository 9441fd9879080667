#pragma once
// Differential graded modules over a CDGA: the regular module, duals and quotients
// by ideals. Each module knows its data on a degree window; outside it, degrees are
// either known to vanish or unavailable.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsecat/morphism.hpp"

namespace rsecat {

class DgModule {
 public:
  virtual ~DgModule() = default;

  virtual const CdgaPtr& algebra() const = 0;
  /// Degrees on which dimensions, differentials and the action are available.
  virtual DegreeWindow window() const = 0;
  virtual bool zero_below() const = 0;  // every degree below the window vanishes
  virtual bool zero_above() const = 0;
  virtual std::string label(int k, std::size_t i) const { return "e" + std::to_string(k) + "_" + std::to_string(i); }

  bool known(int k) const {
    DegreeWindow w = window();
    return w.contains(k) || (k < w.min_degree && zero_below()) || (k > w.max_degree && zero_above());
  }

  std::size_t dim(int k) const {
    DegreeWindow w = window();
    if (w.contains(k)) return dim_in(k);
    if ((k < w.min_degree && zero_below()) || (k > w.max_degree && zero_above())) return 0;
    throw WindowViolation("module degree " + std::to_string(k) + " outside window [" +
                          std::to_string(w.min_degree) + ", " + std::to_string(w.max_degree) + "]");
  }

  /// d^k : M^k → M^{k+1}
  Matrix differential(int k) const {
    std::size_t r = dim(k + 1), c = dim(k);
    if (r == 0 || c == 0) return Matrix(r, c);
    return differential_in(k);
  }

  /// Basis element a_idx of A^{a_deg} acting on v ∈ M^k.
  SparseVec act(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const {
    if (v.empty() || dim(k + a_deg) == 0) return {};
    return act_in(a_deg, a_idx, k, v);
  }

  SparseVec act(const Element& a, int k, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [i, c] : a.coeffs) out = vec::axpy(out, c, act(a.degree, i, k, v));
    return out;
  }

  /// Matrix of a·: M^k → M^{k+|a|}.
  Matrix action_matrix(int a_deg, std::size_t a_idx, int k) const {
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < dim(k); ++j) cols.push_back(act(a_deg, a_idx, k, vec::unit(j)));
    return Matrix::from_columns(dim(k + a_deg), std::move(cols));
  }

  /// Cochain complex on [lo, hi] (differentials d^lo .. d^{hi-1}).
  ChainComplex complex(int lo, int hi) const {
    GradedSpace s;
    GradedMap d;
    d.degree_shift = 1;
    for (int k = lo; k <= hi; ++k) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < dim(k); ++i) labels.push_back(label(k, i));
      s.set_basis(k, std::move(labels));
      if (k < hi) d.blocks[k] = differential(k);
    }
    return ChainComplex(std::move(s), std::move(d), DegreeWindow(lo, hi));
  }

 protected:
  virtual std::size_t dim_in(int k) const = 0;
  virtual Matrix differential_in(int k) const = 0;
  virtual SparseVec act_in(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const = 0;
};

using ModulePtr = std::shared_ptr<const DgModule>;

/// A acting on itself.
class RegularModule : public DgModule {
 public:
  explicit RegularModule(CdgaPtr a) : a_(std::move(a)) {}
  const CdgaPtr& algebra() const override { return a_; }
  DegreeWindow window() const override { return DegreeWindow(0, a_->max_degree()); }
  bool zero_below() const override { return true; }
  bool zero_above() const override { return a_->finite_dimensional(); }
  std::string label(int k, std::size_t i) const override { return a_->format_monomial(a_->basis(k)[i]); }

 protected:
  std::size_t dim_in(int k) const override { return a_->dim(k); }
  Matrix differential_in(int k) const override { return a_->d_matrix(k); }
  SparseVec act_in(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const override {
    return a_->multiply(a_->basis_element(a_deg, a_idx), Element{k, v}).coeffs;
  }

 private:
  CdgaPtr a_;
};

/// M^# = Hom(M, Q) with (M^#)^k = (M^{-k})^#, (a·φ)(x) = (−1)^{|a||φ|} φ(a·x) and
/// d(φ) = −(−1)^{|φ|} φ∘d. Without the extra minus the Leibniz rule fails as soon as
/// da ≠ 0. Coordinates are those of the dual basis.
class DualModule : public DgModule {
 public:
  explicit DualModule(ModulePtr m) : m_(std::move(m)) {}
  const CdgaPtr& algebra() const override { return m_->algebra(); }
  DegreeWindow window() const override {
    DegreeWindow w = m_->window();
    return DegreeWindow(-w.max_degree, -w.min_degree);
  }
  bool zero_below() const override { return m_->zero_above(); }
  bool zero_above() const override { return m_->zero_below(); }
  std::string label(int k, std::size_t i) const override { return m_->label(-k, i) + "^"; }
  const ModulePtr& underlying() const noexcept { return m_; }

 protected:
  std::size_t dim_in(int k) const override { return m_->dim(-k); }
  Matrix differential_in(int k) const override {
    Matrix t = m_->differential(-k - 1).transpose();
    return k % 2 != 0 ? t : t.scaled(Rational(-1));
  }
  SparseVec act_in(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const override {
    // (a·φ)(e_j) for e_j in M^{-k-|a|}
    int src = -k - a_deg;
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (std::size_t j = 0; j < m_->dim(src); ++j) {
      SparseVec img = m_->act(a_deg, a_idx, src, vec::unit(j));
      Rational s = 0;
      auto p = img.begin();
      auto q = v.begin();
      while (p != img.end() && q != v.end()) {
        if (p->first < q->first)
          ++p;
        else if (q->first < p->first)
          ++q;
        else
          s += p->second * (q++)->second, ++p;
      }
      if (s != 0) terms.emplace_back(j, ((a_deg * k) % 2 == 0) ? s : Rational(-s));
    }
    return vec::from_terms(std::move(terms));
  }

 private:
  ModulePtr m_;
};

/// A/J as an A-module. Quotient coordinates are the non-pivot coordinates of the
/// canonical basis of J^k; the lift of a quotient basis vector is the corresponding
/// standard basis vector of A^k.
class QuotientModule : public DgModule {
 public:
  QuotientModule(CdgaPtr a, Ideal j) : a_(std::move(a)), j_(std::move(j)) {
    if (j_.ambient() != a_) throw InvalidArgument("QuotientModule: ideal of a different algebra");
    if (!j_.is_differential()) throw NotDifferentialIdeal("QuotientModule: ideal is not closed under d");
    for (int k = 0; k <= a_->max_degree(); ++k) {
      Layer l;
      std::vector<bool> pivot(a_->dim(k), false);
      for (const auto& v : j_.basis(k)) {
        pivot[v.front().first] = true;
        l.rows.push_back(v);
      }
      for (std::size_t i = 0; i < a_->dim(k); ++i)
        if (!pivot[i]) {
          l.quotient_index[i] = l.lift.size();
          l.lift.push_back(i);
        }
      layers_.push_back(std::move(l));
    }
  }

  const CdgaPtr& algebra() const override { return a_; }
  DegreeWindow window() const override { return DegreeWindow(0, a_->max_degree()); }
  bool zero_below() const override { return true; }
  bool zero_above() const override { return a_->finite_dimensional(); }
  std::string label(int k, std::size_t i) const override {
    return "[" + a_->format_monomial(a_->basis(k)[layers_.at(k).lift[i]]) + "]";
  }
  const Ideal& ideal() const noexcept { return j_; }

  /// Coordinates in A^k/J^k of a vector of A^k.
  SparseVec project(int k, const SparseVec& v) const {
    if (k < 0 || (k > a_->max_degree() && a_->finite_dimensional())) return {};
    a_->require_degree(k);
    const Layer& l = layers_.at(k);
    SparseVec r = v;
    for (const auto& row : l.rows) {
      Rational c = vec::get(r, row.front().first);
      if (c != 0) r = vec::axpy(r, -c, row);
    }
    SparseVec out;
    for (const auto& [i, c] : r) out.emplace_back(l.quotient_index.at(i), c);
    return out;
  }

  SparseVec lift(int k, const SparseVec& q) const {
    if (q.empty() || k < 0 || (k > a_->max_degree() && a_->finite_dimensional())) return {};
    a_->require_degree(k);
    const Layer& l = layers_.at(k);
    std::vector<std::pair<std::size_t, Rational>> terms;
    for (const auto& [i, c] : q) terms.emplace_back(l.lift[i], c);
    return vec::from_terms(std::move(terms));
  }

  Matrix projection_matrix(int k) const {
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < a_->dim(k); ++i) cols.push_back(project(k, vec::unit(i)));
    return Matrix::from_columns(dim(k), std::move(cols));
  }

 protected:
  std::size_t dim_in(int k) const override { return layers_.at(k).lift.size(); }
  Matrix differential_in(int k) const override {
    Matrix d = a_->d_matrix(k);
    std::vector<SparseVec> cols;
    for (std::size_t i : layers_.at(k).lift) cols.push_back(project(k + 1, d.column(i)));
    return Matrix::from_columns(dim(k + 1), std::move(cols));
  }
  SparseVec act_in(int a_deg, std::size_t a_idx, int k, const SparseVec& v) const override {
    Element prod = a_->multiply(a_->basis_element(a_deg, a_idx), Element{k, lift(k, v)});
    return project(k + a_deg, prod.coeffs);
  }

 private:
  struct Layer {
    std::vector<SparseVec> rows;  // canonical basis of J^k
    std::vector<std::size_t> lift;
    std::map<std::size_t, std::size_t> quotient_index;
  };
  CdgaPtr a_;
  Ideal j_;
  std::vector<Layer> layers_;
};

inline ModulePtr regular_module(const CdgaPtr& a) { return std::make_shared<RegularModule>(a); }
inline ModulePtr dual_module(const CdgaPtr& a) {
  return std::make_shared<DualModule>(regular_module(a));
}
inline std::shared_ptr<const QuotientModule> quotient_algebra_module(const CdgaPtr& a, const Ideal& j) {
  return std::make_shared<QuotientModule>(a, j);
}

/// For a finite-dimensional A whose top degree is one-dimensional: if v₀ = (top class)^∨
/// is a cocycle of A^# and a ↦ a·v₀ is bijective, A^# is free of rank one on v₀.
/// Returns |v₀| on success.
inline std::optional<int> dual_free_rank_one(const CdgaPtr& a) {
  if (!a->finite_dimensional()) return std::nullopt;
  int top = a->max_degree();
  if (a->dim(top) != 1) return std::nullopt;
  ModulePtr dual = dual_module(a);
  if (!dual->differential(-top).is_zero()) return std::nullopt;
  for (int k = 0; k <= top; ++k) {
    if (a->dim(k) != dual->dim(k - top)) return std::nullopt;
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < a->dim(k); ++i) cols.push_back(dual->act(k, i, -top, vec::unit(0)));
    if (rank(Matrix::from_columns(dual->dim(k - top), std::move(cols))) != a->dim(k)) return std::nullopt;
  }
  return -top;
}

}  // namespace rsecat
