#pragma once
// Surjective models φ: A → A/K of fibrations: augmentations (path fibration),
// n-fold multiplications (higher topological complexity) and their products.

#include <optional>
#include <string>

#include "rsecat/morphism.hpp"

namespace rsecat {

enum class Provenance { augmentation, multiplication, product, user };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::augmentation: return "augmentation";
    case Provenance::multiplication: return "n-fold multiplication";
    case Provenance::product: return "product";
    case Provenance::user: return "user";
  }
  return "user";
}

struct SurjectiveModel {
  std::string name;
  CdgaMorphism phi;
  Ideal kernel;
  std::optional<CdgaMorphism> section;  // verified φ∘section = id
  Provenance provenance = Provenance::user;
  bool retraction_asserted = false;     // hypothesis trusted without a strict section

  const CdgaPtr& algebra() const { return phi.source(); }
  bool hypothesis_holds() const { return section.has_value() || retraction_asserted; }
  std::string hypothesis() const {
    if (section) return "section-verified";
    return retraction_asserted ? "asserted" : "none";
  }
};

/// Validates surjectivity (computing K) and, if given, the strict section.
inline SurjectiveModel make_smodel(std::string name, CdgaMorphism phi, std::optional<CdgaMorphism> section = {},
                                   Provenance prov = Provenance::user, bool asserted = false) {
  Ideal k = kernel_ideal(phi);
  if (section) {
    if (section->source() != phi.target() || section->target() != phi.source())
      throw InvalidArgument("s-model " + name + ": section has the wrong source or target");
    CdgaMorphism comp = compose(phi, *section);
    const Cdga& b = *phi.target();
    for (std::size_t i = 0; i < b.generators().size(); ++i)
      if (!(comp.images()[i].coeffs == b.generator(i).coeffs))
        throw InvalidArgument("s-model " + name + ": φ∘section is not the identity on " + b.generators()[i].name);
  }
  return SurjectiveModel{std::move(name), std::move(phi), std::move(k), std::move(section), prov, asserted};
}

/// ε : A → Q with the unit as strict section (models PX → X).
inline SurjectiveModel augmentation_smodel(const CdgaPtr& a) {
  CdgaMorphism eps = CdgaMorphism::augmentation(a);
  CdgaMorphism unit("unit", eps.target(), a, {});
  return make_smodel("augmentation(" + a->name() + ")", std::move(eps), std::move(unit), Provenance::augmentation);
}

struct MultiplicationModel {
  SurjectiveModel smodel;
  TensorPower power;
};

/// μ_n : A^{⊗n} → A with section a ↦ a⊗1⊗⋯⊗1 (models π_n).
inline MultiplicationModel multiplication_smodel(const CdgaPtr& a, int n) {
  if (n < 2) throw InvalidArgument("multiplication model needs n >= 2");
  TensorPower tp = tensor_power(a, n);
  std::vector<Element> images(tp.algebra->generators().size());
  for (int s = 0; s < n; ++s)
    for (std::size_t i = 0; i < a->generators().size(); ++i) images[tp.slot_gens[s][i]] = a->generator(i);
  CdgaMorphism mu("mu_" + std::to_string(n), tp.algebra, a, std::move(images));
  SurjectiveModel sm = make_smodel("mu_" + std::to_string(n) + "(" + a->name() + ")", std::move(mu), tp.slots[0],
                                   Provenance::multiplication);
  return {std::move(sm), std::move(tp)};
}

/// φ_f⊗φ_g : A⊗B → (A/K_f)⊗(B/K_g). The kernel is computed by rank and
/// cross-checked against K_f⊗B + A⊗K_g.
inline SurjectiveModel product_smodel(const SurjectiveModel& f, const SurjectiveModel& g) {
  TensorProduct src = tensor(f.algebra(), g.algebra());
  TensorProduct tgt = tensor(f.phi.target(), g.phi.target());
  CdgaMorphism phi = tensor_morphism(f.phi, g.phi, src, tgt);
  std::optional<CdgaMorphism> section;
  if (f.section && g.section) section = tensor_morphism(*f.section, *g.section, tgt, src);
  bool asserted = f.hypothesis_holds() && g.hypothesis_holds() && !section;
  SurjectiveModel out = make_smodel(f.name + "×" + g.name, std::move(phi), std::move(section), Provenance::product,
                                    asserted);

  const Cdga& ab = *src.algebra;
  std::map<int, std::vector<SparseVec>> span;
  auto add_products = [&](const Ideal& left_ideal, bool ideal_on_left) {
    const Cdga& a = *f.algebra();
    const Cdga& b = *g.algebra();
    for (const auto& [p, basis] : left_ideal.bases())
      for (const auto& v : basis) {
        const Cdga& other = ideal_on_left ? b : a;
        for (int q = 0; p + q <= ab.max_degree() && q <= other.max_degree(); ++q)
          for (std::size_t j = 0; j < other.dim(q); ++j) {
            Element x = ideal_on_left ? src.left.apply(Element{p, v}) : src.left.apply(a.basis_element(q, j));
            Element y = ideal_on_left ? src.right.apply(b.basis_element(q, j)) : src.right.apply(Element{p, v});
            Element z = ab.multiply(x, y);
            if (!z.is_zero()) span[z.degree].push_back(z.coeffs);
          }
      }
  };
  add_products(f.kernel, true);
  add_products(g.kernel, false);
  Ideal expected(src.algebra, std::move(span));
  if (!(expected == out.kernel))
    throw Error("product s-model: kernel differs from K_f⊗B + A⊗K_g (internal error)");
  return out;
}

}  // namespace rsecat
