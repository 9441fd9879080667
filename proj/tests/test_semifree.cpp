#include <catch_amalgamated.hpp>

#include <random>

#include "rsecat/semifree.hpp"

using namespace rsecat;

namespace {

NamedPolynomial mono(std::vector<std::pair<std::string, int>> f, Rational c = 1) { return {{c, std::move(f)}}; }

CdgaPtr ext3() { return make_cdga("L3", {{"x", 3}}); }
CdgaPtr trunc2() { return make_cdga("S2", {{"x", 2}}, {}, {{{"x", 2}}}); }
CdgaPtr s2free(int w) { return make_cdga("S2free", {{"x", 2}, {"y", 3}}, {{"y", mono({{"x", 2}})}}, {}, {}, w); }
CdgaPtr wedge22() {
  return make_cdga("S2vS2", {{"x", 2}, {"y", 2}}, {}, {{{"x", 2}}, {{"x", 1}, {"y", 1}}, {{"y", 2}}});
}

struct MuModel {
  TensorPower tp;
  CdgaMorphism mu;
};

MuModel mu2(const CdgaPtr& a) {
  TensorPower tp = tensor_power(a, 2);
  // x_s ↦ x for both slots
  std::vector<Element> images(tp.algebra->generators().size());
  for (int s = 0; s < 2; ++s)
    for (std::size_t i = 0; i < a->generators().size(); ++i) images[tp.slot_gens[s][i]] = a->generator(i);
  return {tp, CdgaMorphism("mu", tp.algebra, a, images)};
}

// η must be a homology isomorphism on [lo, hi] (hi inside the complete range).
void check_quasi_iso(const SemifreeResolution& r, int lo, int hi) {
  ChainMap f = r.eta_chain_map(lo - 1, hi + 1);
  for (int k = lo; k <= hi; ++k) {
    Matrix m = induced_on_homology(f, k);
    CHECK(m.rows() == m.cols());
    CHECK(rank(m) == m.cols());
  }
}

void check_semifree(const SemifreeModule& p) {
  const auto& g = p.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& [h, c] : g[i].boundary) CHECK(h < i);
}

}  // namespace

TEST_CASE("dual of an exterior algebra is free on one generator") {
  auto r = resolution_of_dual(ext3());
  REQUIRE(r.exact_free);
  REQUIRE(r.P->generators().size() == 1);
  CHECK(r.P->generators()[0].name == "v0");
  CHECK(r.P->generators()[0].degree == -3);
  CHECK(r.homology_support == std::vector<int>{-3, 0});
  check_quasi_iso(r, -3, 0);
  // η is a degreewise isomorphism
  for (int k = -3; k <= 0; ++k) CHECK(rank(r.eta_matrix(k)) == r.P->dim(k));
}

TEST_CASE("resolution of Q over an exterior algebra telescopes") {
  auto a = ext3();
  Ideal k = kernel_ideal(CdgaMorphism::augmentation(a));
  auto q = quotient_algebra_module(a, k);
  SemifreeResolution r = semifree_resolution(q, 9);
  const auto& g = r.P->generators();
  // degrees 0, 2, 4, 6, 8 with d w_j = x·w_{j−1}
  REQUIRE(g.size() == 5);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(g[j].degree == 2 * static_cast<int>(j));
  for (std::size_t j = 1; j < g.size(); ++j) {
    REQUIRE(g[j].boundary.size() == 1);
    CHECK(g[j].boundary[0].first == j - 1);
    CHECK(g[j].boundary[0].second.degree == 3);
  }
  check_semifree(*r.P);
  check_quasi_iso(r, 0, 8);
}

TEST_CASE("resolution of the regular module is itself") {
  auto a = trunc2();
  SemifreeResolution r = semifree_resolution(regular_module(a), 4);
  CHECK(r.exact_free);
  REQUIRE(r.P->generators().size() == 1);
  CHECK(r.P->generators()[0].degree == 0);
  for (int k = 0; k <= 2; ++k) CHECK(r.eta_matrix(k) == Matrix::identity(a->dim(k)));
}

TEST_CASE("built resolutions are quasi-isomorphisms on their complete range") {
  for (const auto& a : {wedge22(), s2free(10), tensor(trunc2(), s2free(8)).algebra}) {
    SemifreeResolution r = semifree_resolution(dual_module(a), 3);
    check_semifree(*r.P);
    CHECK(r.complete_through == 2);
    int lo = r.homology_support.front();
    check_quasi_iso(r, lo, 2);
    // d² = 0 and Leibniz on P
    for (int k = lo; k + 2 <= 3; ++k) CHECK((r.P->differential(k + 1) * r.P->differential(k)).is_zero());
    for (int p = 2; p <= 4; ++p)
      for (std::size_t ai = 0; ai < a->dim(p); ++ai)
        for (int k = lo; k + p + 1 <= 4; ++k)
          for (std::size_t j = 0; j < r.P->dim(k); ++j) {
            SparseVec v = vec::unit(j);
            SparseVec lhs = r.P->differential(k + p).apply(r.P->act(p, ai, k, v));
            SparseVec rhs = r.P->act(a->differential(a->basis_element(p, ai)), k, v);
            rhs = vec::axpy(rhs, Rational(p % 2 == 0 ? 1 : -1), r.P->act(p, ai, k + 1, r.P->differential(k).apply(v)));
            CHECK(lhs == rhs);
          }
  }
  CHECK(resolution_of_dual(wedge22()).exact_free == false);
}

TEST_CASE("projection by an ideal on P = A v0 for the exterior algebra") {
  auto a = ext3();
  auto r = resolution_of_dual(a);
  Ideal k = kernel_ideal(CdgaMorphism::augmentation(a));
  QuotientProjection qp = quotient_by_ideal_action(r.P, k, -4, 1);
  CHECK(qp.quotient->dim(-3) == 1);
  CHECK(qp.quotient->dim(0) == 0);
  CHECK(induced_on_homology(qp.projection, 0) == Matrix(0, 1));
  CHECK(induced_on_homology(qp.projection, -3) == Matrix::identity(1));
  auto v = injective_on_homology(qp.projection, {-3, 0});
  CHECK_FALSE(v.injective);
  CHECK(v.per_degree.at(-3));
  CHECK_FALSE(v.per_degree.at(0));

  QuotientProjection id = quotient_by_ideal_action(r.P, Ideal::zero(a), -4, 1);
  CHECK(injective_on_homology(id.projection, {-3, 0}).injective);
  for (int j = -4; j <= 1; ++j) CHECK(id.projection.block(j) == Matrix::identity(r.P->dim(j)));
}

TEST_CASE("quotient by K^2 for the square of the sphere model") {
  auto s = trunc2();
  MuModel mm = mu2(s);
  Ideal k = kernel_ideal(mm.mu);
  Ideal k2 = ideal_power(k, 2);
  auto r = resolution_of_dual(mm.tp.algebra);
  REQUIRE(r.exact_free);
  CHECK(r.P->generators()[0].degree == -4);
  QuotientProjection qp = quotient_by_ideal_action(r.P, k2, -5, 1);
  CHECK(qp.quotient->dim(-4) == 1);
  CHECK(qp.quotient->dim(-2) == 2);
  CHECK(qp.quotient->dim(0) == 0);
}

TEST_CASE("homotopy retraction criterion") {
  auto a = ext3();
  CHECK(has_homotopy_retraction(CdgaMorphism::identity(a)).injective);
  auto eps = has_homotopy_retraction(CdgaMorphism::augmentation(a));
  CHECK_FALSE(eps.injective);
  CHECK_FALSE(eps.per_degree.at(0));
  // A → A/K² with K² = 0 is the identity on A
  Ideal k = kernel_ideal(CdgaMorphism::augmentation(a));
  Ideal k2 = ideal_power(k, 2);
  REQUIRE(k2.is_zero());
  CHECK(projection_injective(resolution_of_dual(a), k2).injective);
}

TEST_CASE("lower bound witnesses") {
  auto a = ext3();
  auto r = resolution_of_dual(a);
  Ideal k = kernel_ideal(CdgaMorphism::augmentation(a));
  WitnessClass w = lower_bound_witness(r, k, 1);
  CHECK(w.formatted == "x*v0");
  CHECK(w.degree == 0);
  CHECK(verify_witness(r, k, w).ok());
  CHECK_THROWS_AS(lower_bound_witness(r, k, 2), NoWitness);

  auto s = trunc2();
  MuModel mm = mu2(s);
  Ideal ks = kernel_ideal(mm.mu);
  auto rs = resolution_of_dual(mm.tp.algebra);
  WitnessClass w2 = lower_bound_witness(rs, ks, 2);
  CHECK(w2.formatted == "x_1*x_2*v0");
  CHECK(verify_witness(rs, ks, w2).ok());
  CHECK_THROWS_AS(lower_bound_witness(rs, ks, 3), NoWitness);
}

TEST_CASE("verdicts are monotone in the ideal power") {
  std::vector<CdgaPtr> algebras{ext3(), trunc2(), wedge22(), make_cdga("CP3", {{"x", 2}}, {}, {{{"x", 4}}}),
                                tensor(ext3(), trunc2()).algebra};
  for (const auto& a : algebras) {
    auto r = resolution_of_dual(a);
    Ideal k = kernel_ideal(CdgaMorphism::augmentation(a));
    bool seen_true = false;
    for (int m = 0; m <= 5; ++m) {
      bool v = projection_injective(r, ideal_power(k, m + 1)).injective;
      if (seen_true) CHECK(v);
      seen_true = seen_true || v;
      if (!v) CHECK(verify_witness(r, k, lower_bound_witness(r, k, m + 1)).ok());
    }
    CHECK(seen_true);
  }
}

TEST_CASE("semifree modules reject non-triangular boundaries") {
  auto a = ext3();
  SemifreeGenerator w0{"w0", 0, 0, {}};
  SemifreeGenerator w1{"w1", 2, 1, {{1, a->generator("x")}}};
  CHECK_THROWS_AS(SemifreeModule(a, {w0, w1}), InvalidArgument);
}
