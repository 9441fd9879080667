#pragma once
// CDGA morphisms, tensor products, ideals, kernels and ideal powers.

#include <functional>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "rsecat/cdga.hpp"

namespace rsecat {

/// Morphism determined by the images of the source generators.
class CdgaMorphism {
 public:
  CdgaMorphism() = default;

  /// images[i] is the image of source generator i (canonical order). Validates
  /// degrees, compatibility with relations and truncations, and commutation with d.
  CdgaMorphism(std::string name, CdgaPtr source, CdgaPtr target, std::vector<Element> images)
      : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    const auto& gens = source_->generators();
    if (images_.size() != gens.size()) throw InvalidArgument("morphism " + name_ + ": one image per generator required");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (!images_[i].is_zero() && images_[i].degree != gens[i].degree)
        throw InvalidArgument("morphism " + name_ + ": image of " + gens[i].name + " has wrong degree");
      images_[i].degree = gens[i].degree;
    }
    validate();
  }

  static CdgaMorphism from_named(std::string name, CdgaPtr source, CdgaPtr target,
                                 const std::map<std::string, NamedPolynomial>& images) {
    std::vector<Element> v;
    for (const auto& g : source->generators()) {
      auto it = images.find(g.name);
      v.push_back(it == images.end() ? target->zero(g.degree) : target->polynomial(it->second, g.degree));
    }
    for (const auto& [n, p] : images)
      if (!source->has_generator(n)) throw InvalidArgument("morphism " + name + ": unknown source generator " + n);
    return CdgaMorphism(std::move(name), std::move(source), std::move(target), std::move(v));
  }

  static CdgaMorphism identity(const CdgaPtr& a) {
    std::vector<Element> v;
    for (std::size_t i = 0; i < a->generators().size(); ++i) v.push_back(a->generator(i));
    return CdgaMorphism("id", a, a, std::move(v));
  }

  /// The augmentation A → Q sending every generator to 0.
  static CdgaMorphism augmentation(const CdgaPtr& a) {
    CdgaPtr q = ground_field();
    std::vector<Element> v;
    for (const auto& g : a->generators()) v.push_back(q->zero(g.degree));
    return CdgaMorphism("augmentation", a, q, std::move(v));
  }

  const std::string& name() const noexcept { return name_; }
  const CdgaPtr& source() const noexcept { return source_; }
  const CdgaPtr& target() const noexcept { return target_; }
  const std::vector<Element>& images() const noexcept { return images_; }

  /// Image of a standard monomial: the product of generator images in canonical order.
  Element apply_monomial(const Monomial& m) const {
    int k = source_->degree_of(m);
    Element r = target_->unit();
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      for (int e = 0; e < m.exps[i]; ++e) {
        r = target_->multiply(r, images_[i]);
        if (r.is_zero()) return target_->zero(k);
      }
    r.degree = k;
    return r;
  }

  Element apply(const Element& a) const {
    Element out = target_->zero(a.degree);
    for (const auto& [i, c] : a.coeffs)
      out = target_->add(out, target_->scale(apply_monomial(source_->basis(a.degree)[i]), c));
    out.degree = a.degree;
    return out;
  }

  /// Matrix of the degree-k component, source basis → target basis.
  Matrix matrix(int k) const {
    const auto& b = source_->basis(k);
    std::vector<SparseVec> cols;
    cols.reserve(b.size());
    for (const auto& m : b) cols.push_back(apply_monomial(m).coeffs);
    return Matrix::from_columns(target_->dim(k), std::move(cols));
  }

 private:
  void validate() const {
    for (const auto& r : source_->relations())
      if (!apply_monomial(r).is_zero())
        throw InvalidArgument("morphism " + name_ + " does not kill relation " + source_->format_monomial(r));
    for (const auto& t : source_->truncations()) check_truncation(t);
    const auto& gens = source_->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int k = gens[i].degree + 1;
      if (!target_->finite_dimensional() && k > target_->max_degree()) continue;
      if (!source_->finite_dimensional() && k > source_->max_degree()) continue;
      Element lhs = target_->differential(images_[i]);
      Element rhs = apply(source_->generator_differential(i));
      if (!(lhs.coeffs == rhs.coeffs))
        throw NotAChainMap("morphism " + name_ + " does not commute with d on " + gens[i].name);
    }
  }

  // Minimal monomials over the cap (dropping any factor brings them under it) must map to 0.
  void check_truncation(const Truncation& t) const {
    const auto& gens = source_->generators();
    Monomial m{std::vector<int>(gens.size(), 0)};
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int deg) {
      if (deg > t.max_degree) {
        bool minimal = true;
        for (std::size_t i = 0; i < gens.size() && minimal; ++i)
          if (m.exps[i] > 0 && deg - gens[i].degree > t.max_degree) minimal = false;
        if (minimal && !apply_monomial(m).is_zero())
          throw InvalidArgument("morphism " + name_ + " does not respect the truncation");
        return;
      }
      for (std::size_t i = g; i < gens.size(); ++i) {
        if (!t.mask[i]) continue;
        if (source_->is_odd(i) && m.exps[i] > 0) continue;
        m.exps[i]++;
        rec(i, deg + gens[i].degree);
        m.exps[i]--;
      }
    };
    rec(0, 0);
  }

  std::string name_;
  CdgaPtr source_;
  CdgaPtr target_;
  std::vector<Element> images_;
};

/// Composite g∘f.
inline CdgaMorphism compose(const CdgaMorphism& g, const CdgaMorphism& f) {
  if (f.target() != g.source()) throw InvalidArgument("compose: target of first is not source of second");
  std::vector<Element> v;
  for (const auto& im : f.images()) v.push_back(g.apply(im));
  return CdgaMorphism(g.name() + "∘" + f.name(), f.source(), g.target(), std::move(v));
}

struct TensorProduct {
  CdgaPtr algebra;
  CdgaMorphism left;   // a ↦ a⊗1
  CdgaMorphism right;  // b ↦ 1⊗b
  std::vector<std::size_t> left_gens;   // generator i of A is generator left_gens[i] of A⊗B
  std::vector<std::size_t> right_gens;
};

namespace detail {

// Multiplicative map defined by generator images, no validation. Used while the
// target differential is not yet installed.
inline Element push_generators(const Cdga& src, const Cdga& tgt, const std::vector<std::size_t>& gen_map,
                               const Element& a) {
  Element out = tgt.zero(a.degree);
  for (const auto& [i, c] : a.coeffs) {
    const Monomial& m = src.basis(a.degree)[i];
    Element r = tgt.unit();
    for (std::size_t g = 0; g < m.exps.size(); ++g)
      for (int e = 0; e < m.exps[g]; ++e) r = tgt.multiply(r, tgt.generator(gen_map[g]));
    r.degree = a.degree;
    out = tgt.add(out, tgt.scale(r, c));
  }
  out.degree = a.degree;
  return out;
}

inline std::vector<std::pair<std::string, int>> rename_factors(const Monomial& m,
                                                               const std::vector<std::string>& names) {
  std::vector<std::pair<std::string, int>> f;
  for (std::size_t i = 0; i < m.exps.size(); ++i)
    if (m.exps[i] > 0) f.emplace_back(names[i], m.exps[i]);
  return f;
}

}  // namespace detail

/// A⊗B with generator names suffixed by left_suffix / right_suffix. With empty
/// suffixes, only colliding names receive "_1" / "_2".
inline TensorProduct tensor(const CdgaPtr& a, const CdgaPtr& b, const std::string& left_suffix = "",
                            const std::string& right_suffix = "", const std::string& name = "") {
  std::vector<std::string> ln, rn;
  for (const auto& g : a->generators()) {
    std::string n = g.name + left_suffix;
    if (left_suffix.empty() && b->has_generator(g.name)) n += "_1";
    ln.push_back(n);
  }
  for (const auto& g : b->generators()) {
    std::string n = g.name + right_suffix;
    if (right_suffix.empty() && a->has_generator(g.name)) n += "_2";
    rn.push_back(n);
  }
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < ln.size(); ++i) gens.push_back({ln[i], a->generators()[i].degree});
  for (std::size_t i = 0; i < rn.size(); ++i) gens.push_back({rn[i], b->generators()[i].degree});
  std::vector<std::vector<std::pair<std::string, int>>> rels;
  for (const auto& r : a->relations()) rels.push_back(detail::rename_factors(r, ln));
  for (const auto& r : b->relations()) rels.push_back(detail::rename_factors(r, rn));
  std::vector<std::pair<std::vector<std::string>, int>> truncs;
  auto add_truncs = [&](const Cdga& c, const std::vector<std::string>& names) {
    for (const auto& t : c.truncations()) {
      std::vector<std::string> masked;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (t.mask[i]) masked.push_back(names[i]);
      truncs.emplace_back(masked, t.max_degree);
    }
  };
  add_truncs(*a, ln);
  add_truncs(*b, rn);
  int window = 1 << 20;
  if (!a->finite_dimensional()) window = std::min(window, a->max_degree());
  if (!b->finite_dimensional()) window = std::min(window, b->max_degree());
  if (a->finite_dimensional() && b->finite_dimensional()) window = a->max_degree() + b->max_degree();
  std::string nm = name.empty() ? a->name() + "⊗" + b->name() : name;
  Cdga base(nm, gens, rels, truncs, window);

  std::vector<std::size_t> lmap, rmap;
  for (const auto& n : ln) lmap.push_back(base.generator_index(n));
  for (const auto& n : rn) rmap.push_back(base.generator_index(n));
  std::vector<Element> dvals(base.generators().size());
  for (std::size_t i = 0; i < base.generators().size(); ++i) dvals[i].degree = base.generators()[i].degree + 1;
  for (std::size_t i = 0; i < ln.size(); ++i)
    dvals[lmap[i]] = detail::push_generators(*a, base, lmap, a->generator_differential(i));
  for (std::size_t i = 0; i < rn.size(); ++i)
    dvals[rmap[i]] = detail::push_generators(*b, base, rmap, b->generator_differential(i));
  auto full = std::make_shared<const Cdga>(base.with_differential(std::move(dvals)));

  std::vector<Element> li, ri;
  for (std::size_t i = 0; i < ln.size(); ++i) li.push_back(full->generator(lmap[i]));
  for (std::size_t i = 0; i < rn.size(); ++i) ri.push_back(full->generator(rmap[i]));
  return TensorProduct{full, CdgaMorphism("incl_1", a, full, std::move(li)),
                       CdgaMorphism("incl_2", b, full, std::move(ri)), lmap, rmap};
}

/// A^{⊗n} with generators x_1..x_n for each generator x of A, together with the
/// n slot inclusions.
struct TensorPower {
  CdgaPtr algebra;
  std::vector<CdgaMorphism> slots;
  std::vector<std::vector<std::size_t>> slot_gens;
};

inline TensorPower tensor_power(const CdgaPtr& a, int n) {
  if (n < 1) throw InvalidArgument("tensor_power: n must be >= 1");
  std::vector<Generator> gens;
  std::vector<std::vector<std::pair<std::string, int>>> rels;
  std::vector<std::pair<std::vector<std::string>, int>> truncs;
  std::vector<std::vector<std::string>> names(n);
  for (int s = 0; s < n; ++s) {
    for (const auto& g : a->generators()) {
      names[s].push_back(g.name + "_" + std::to_string(s + 1));
      gens.push_back({names[s].back(), g.degree});
    }
    for (const auto& r : a->relations()) rels.push_back(detail::rename_factors(r, names[s]));
    for (const auto& t : a->truncations()) {
      std::vector<std::string> masked;
      for (std::size_t i = 0; i < names[s].size(); ++i)
        if (t.mask[i]) masked.push_back(names[s][i]);
      truncs.emplace_back(masked, t.max_degree);
    }
  }
  int window = a->finite_dimensional() ? n * a->max_degree() : a->max_degree();
  std::string nm = a->name() + "^⊗" + std::to_string(n);
  Cdga base(nm, gens, rels, truncs, window);
  std::vector<std::vector<std::size_t>> maps(n);
  for (int s = 0; s < n; ++s)
    for (const auto& nmx : names[s]) maps[s].push_back(base.generator_index(nmx));
  std::vector<Element> dvals(base.generators().size());
  for (std::size_t i = 0; i < base.generators().size(); ++i) dvals[i].degree = base.generators()[i].degree + 1;
  for (int s = 0; s < n; ++s)
    for (std::size_t i = 0; i < names[s].size(); ++i)
      dvals[maps[s][i]] = detail::push_generators(*a, base, maps[s], a->generator_differential(i));
  auto full = std::make_shared<const Cdga>(base.with_differential(std::move(dvals)));
  TensorPower out{full, {}, maps};
  for (int s = 0; s < n; ++s) {
    std::vector<Element> im;
    for (std::size_t i = 0; i < names[s].size(); ++i) im.push_back(full->generator(maps[s][i]));
    out.slots.emplace_back("slot_" + std::to_string(s + 1), a, full, std::move(im));
  }
  return out;
}

/// Tensor product of morphisms f⊗g : A⊗B → A'⊗B'.
inline CdgaMorphism tensor_morphism(const CdgaMorphism& f, const CdgaMorphism& g, const TensorProduct& src,
                                    const TensorProduct& tgt) {
  std::vector<Element> im(src.algebra->generators().size());
  for (std::size_t i = 0; i < src.left_gens.size(); ++i) im[src.left_gens[i]] = tgt.left.apply(f.images()[i]);
  for (std::size_t i = 0; i < src.right_gens.size(); ++i) im[src.right_gens[i]] = tgt.right.apply(g.images()[i]);
  return CdgaMorphism(f.name() + "⊗" + g.name(), src.algebra, tgt.algebra, std::move(im));
}

/// Homogeneous ideal given by canonical (reduced row echelon) bases per degree, known
/// on the ambient algebra's degree range.
class Ideal {
 public:
  Ideal() = default;
  Ideal(CdgaPtr ambient, std::map<int, std::vector<SparseVec>> bases)
      : ambient_(std::move(ambient)) {
    for (auto& [k, b] : bases) {
      auto c = canonical_basis(b);
      if (!c.empty()) bases_[k] = std::move(c);
    }
  }

  static Ideal zero(const CdgaPtr& a) { return Ideal(a, {}); }

  const CdgaPtr& ambient() const noexcept { return ambient_; }
  int max_degree() const { return ambient_->max_degree(); }

  const std::vector<SparseVec>& basis(int k) const {
    static const std::vector<SparseVec> empty;
    ambient_->require_degree(k);
    auto it = bases_.find(k);
    return it == bases_.end() ? empty : it->second;
  }
  std::size_t dim(int k) const { return basis(k).size(); }
  bool is_zero() const { return bases_.empty(); }

  bool contains(int k, const SparseVec& v) const {
    Span s(ambient_->dim(k));
    for (const auto& b : basis(k)) s.add(b);
    return s.contains(v);
  }

  /// Degreewise inclusion into `other` (same ambient).
  bool subset_of(const Ideal& other) const {
    for (const auto& [k, b] : bases_)
      for (const auto& v : b)
        if (!other.contains(k, v)) return false;
    return true;
  }

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.ambient_ == b.ambient_ && a.bases_ == b.bases_; }

  const std::map<int, std::vector<SparseVec>>& bases() const noexcept { return bases_; }

  /// d(I^k) ⊆ I^{k+1} on the known range.
  bool is_differential() const {
    for (const auto& [k, b] : bases_) {
      if (k + 1 > ambient_->max_degree()) continue;
      Matrix d = ambient_->d_matrix(k);
      for (const auto& v : b)
        if (!contains(k + 1, d.apply(v))) return false;
    }
    return true;
  }

 private:
  CdgaPtr ambient_;
  std::map<int, std::vector<SparseVec>> bases_;
};

/// Kernel of a morphism that is surjective in every computed degree.
inline Ideal kernel_ideal(const CdgaMorphism& phi) {
  const Cdga& a = *phi.source();
  std::map<int, std::vector<SparseVec>> bases;
  for (int k = 0; k <= a.max_degree(); ++k) {
    Matrix m = phi.matrix(k);
    EchelonResult e = echelon(m);
    if (e.rank != m.rows())
      throw NotSurjective("morphism " + phi.name() + " is not surjective in degree " + std::to_string(k), k);
    bases[k] = std::move(e.kernel_basis);
  }
  // Surjectivity above the source's top degree: the target must vanish there.
  const Cdga& b = *phi.target();
  if (a.finite_dimensional())
    for (int k = a.max_degree() + 1; k <= b.max_degree(); ++k)
      if (b.dim(k) != 0)
        throw NotSurjective("morphism " + phi.name() + " is not surjective in degree " + std::to_string(k), k);
  Ideal out(phi.source(), std::move(bases));
  if (!out.is_differential()) throw NotDifferentialIdeal("kernel of " + phi.name() + " is not closed under d");
  return out;
}

/// Ideal product I·J, degreewise span of products of basis vectors.
inline Ideal ideal_product(const Ideal& i, const Ideal& j) {
  const Cdga& a = *i.ambient();
  std::map<int, std::vector<SparseVec>> out;
  for (const auto& [p, bi] : i.bases())
    for (const auto& [q, bj] : j.bases()) {
      int k = p + q;
      if (k > a.max_degree()) continue;
      for (const auto& x : bi)
        for (const auto& y : bj) {
          Element z = a.multiply(Element{p, x}, Element{q, y});
          if (!z.is_zero()) out[k].push_back(std::move(z.coeffs));
        }
    }
  return Ideal(i.ambient(), std::move(out));
}

/// K^p for p ≥ 1, degreewise on the ambient's computed range.
inline Ideal ideal_power(const Ideal& k, int p) {
  if (p < 1) throw InvalidArgument("ideal_power: p must be >= 1");
  Ideal r = k;
  for (int i = 1; i < p && !r.is_zero(); ++i) r = ideal_product(r, k);
  return r;
}

/// Smallest p with K^p = 0 on the computed range, or nullopt if none up to p_max.
inline std::optional<int> nilpotency_index(const Ideal& k, int p_max = 64) {
  if (k.is_zero()) return 1;
  Ideal r = k;
  for (int p = 2; p <= p_max; ++p) {
    r = ideal_product(r, k);
    if (r.is_zero()) return p;
  }
  return std::nullopt;
}

}  // namespace rsecat
