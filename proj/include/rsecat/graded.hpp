#pragma once
// Integer-graded vector spaces, graded maps and cochain complexes (d of degree +1),
// with homology and induced maps computed exactly.

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rsecat/errors.hpp"
#include "rsecat/linalg.hpp"

namespace rsecat {

struct DegreeWindow {
  int min_degree = 0;
  int max_degree = 0;

  DegreeWindow() = default;
  DegreeWindow(int lo, int hi) : min_degree(lo), max_degree(hi) {
    if (lo > hi) throw InvalidArgument("DegreeWindow: min " + std::to_string(lo) + " > max " + std::to_string(hi));
  }
  bool contains(int k) const noexcept { return min_degree <= k && k <= max_degree; }
  friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

class GradedSpace {
 public:
  GradedSpace() = default;

  void set_basis(int degree, std::vector<std::string> labels) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("GradedSpace: duplicate basis label in degree " + std::to_string(degree));
    basis_[degree] = std::move(labels);
  }

  std::size_t dim(int degree) const {
    auto it = basis_.find(degree);
    return it == basis_.end() ? 0 : it->second.size();
  }

  const std::vector<std::string>& basis(int degree) const {
    static const std::vector<std::string> empty;
    auto it = basis_.find(degree);
    return it == basis_.end() ? empty : it->second;
  }

  const std::map<int, std::vector<std::string>>& support() const noexcept { return basis_; }

 private:
  std::map<int, std::vector<std::string>> basis_;
};

/// Homogeneous linear map between graded spaces. Absent blocks are zero.
struct GradedMap {
  int degree_shift = 0;
  std::map<int, Matrix> blocks;  // source degree k -> matrix basis(k) -> basis(k + shift)

  Matrix block(int k, std::size_t rows, std::size_t cols) const {
    auto it = blocks.find(k);
    if (it == blocks.end()) return Matrix(rows, cols);
    return it->second;
  }
};

/// Cochain complex truncated to a window. Differential blocks d^k exist for
/// window.min ≤ k < window.max; degrees outside the window are unknown, not zero.
class ChainComplex {
 public:
  ChainComplex() = default;

  ChainComplex(GradedSpace space, GradedMap differential, DegreeWindow window)
      : space_(std::move(space)), d_(std::move(differential)), window_(window) {
    if (d_.degree_shift != 1) throw InvalidArgument("ChainComplex: differential must have degree +1");
    for (const auto& [k, m] : d_.blocks) {
      if (m.cols() != space_.dim(k) || m.rows() != space_.dim(k + 1))
        throw InvalidArgument("ChainComplex: block shape mismatch at degree " + std::to_string(k));
    }
    for (int k = window_.min_degree; k + 2 <= window_.max_degree; ++k) {
      if (!(d(k + 1) * d(k)).is_zero())
        throw DSquaredNonzero("ChainComplex: d∘d ≠ 0 starting in degree " + std::to_string(k));
    }
  }

  const GradedSpace& space() const noexcept { return space_; }
  const DegreeWindow& window() const noexcept { return window_; }
  std::size_t dim(int k) const { return space_.dim(k); }

  /// d^k : C^k → C^{k+1}
  Matrix d(int k) const {
    if (k < window_.min_degree || k + 1 > window_.max_degree)
      throw WindowViolation("ChainComplex: differential out of window at degree " + std::to_string(k));
    return d_.block(k, space_.dim(k + 1), space_.dim(k));
  }

 private:
  GradedSpace space_;
  GradedMap d_;
  DegreeWindow window_;
};

/// Basis of H^k with chosen cocycle representatives; can express any cocycle in it.
class HomologyBasis {
 public:
  HomologyBasis() = default;
  HomologyBasis(int degree, std::size_t ambient, std::vector<SparseVec> boundaries,
                std::vector<SparseVec> cocycles)
      : degree_(degree), span_(ambient) {
    for (const auto& b : boundaries)
      if (span_.add(b)) ++n_boundaries_;
    for (const auto& z : cocycles)
      if (span_.add(z)) reps_.push_back(z);
  }

  int degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return reps_.size(); }
  const std::vector<SparseVec>& representatives() const noexcept { return reps_; }

  bool is_boundary(const SparseVec& z) const {
    auto c = span_.coordinates(z);
    if (!c) throw InvalidArgument("HomologyBasis: vector is not a cocycle");
    return std::all_of(c->begin(), c->end(), [&](const auto& e) { return e.first < n_boundaries_; });
  }

  /// Coordinates of the class of cocycle z in the representative basis.
  SparseVec coordinates(const SparseVec& z) const {
    auto c = span_.coordinates(z);
    if (!c) throw InvalidArgument("HomologyBasis: vector is not a cocycle");
    SparseVec out;
    for (const auto& [i, x] : *c)
      if (i >= n_boundaries_) out.emplace_back(i - n_boundaries_, x);
    return out;
  }

 private:
  int degree_ = 0;
  Span span_;
  std::size_t n_boundaries_ = 0;
  std::vector<SparseVec> reps_;
};

inline HomologyBasis homology_at(const ChainComplex& c, int k) {
  if (k - 1 < c.window().min_degree || k + 1 > c.window().max_degree)
    throw WindowViolation("homology_at: degree " + std::to_string(k) + " needs degrees " +
                          std::to_string(k - 1) + ".." + std::to_string(k + 1) + " inside the window");
  Matrix in = c.d(k - 1);
  Matrix out = c.d(k);
  return HomologyBasis(k, c.dim(k), echelon(in).image_basis, echelon(out).kernel_basis);
}

/// Degree-0 map between two complexes, given blockwise.
struct ChainMap {
  std::shared_ptr<const ChainComplex> source;
  std::shared_ptr<const ChainComplex> target;
  GradedMap map;

  Matrix block(int k) const { return map.block(k, target->dim(k), source->dim(k)); }
};

inline void check_chain_map_at(const ChainMap& f, int k) {
  for (int j : {k - 1, k}) {
    Matrix lhs = f.block(j + 1) * f.source->d(j);
    Matrix rhs = f.target->d(j) * f.block(j);
    if (!(lhs == rhs)) throw NotAChainMap("map does not commute with d at degree " + std::to_string(j));
  }
}

/// Matrix of H^k(F) in the representative bases chosen by homology_at.
inline Matrix induced_on_homology(const ChainMap& f, int k) {
  check_chain_map_at(f, k);
  HomologyBasis hs = homology_at(*f.source, k);
  HomologyBasis ht = homology_at(*f.target, k);
  Matrix fk = f.block(k);
  std::vector<SparseVec> cols;
  cols.reserve(hs.dim());
  for (const auto& z : hs.representatives()) cols.push_back(ht.coordinates(fk.apply(z)));
  return Matrix::from_columns(ht.dim(), std::move(cols));
}

struct InjectivityVerdict {
  std::map<int, bool> per_degree;
  bool injective = true;
};

inline InjectivityVerdict injective_on_homology(const ChainMap& f, const std::vector<int>& degrees) {
  InjectivityVerdict v;
  for (int k : degrees) {
    Matrix m = induced_on_homology(f, k);
    bool ok = rank(m) == m.cols();
    v.per_degree[k] = ok;
    v.injective = v.injective && ok;
  }
  return v;
}

}  // namespace rsecat
