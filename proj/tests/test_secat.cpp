#include <catch_amalgamated.hpp>

#include "rsecat/secat.hpp"

using namespace rsecat;

namespace {

CdgaPtr ext(int n, const std::string& g = "x") { return make_cdga("S" + std::to_string(n), {{g, n}}); }
CdgaPtr even_sphere(int n) { return make_cdga("S" + std::to_string(n), {{"x", n}}, {}, {{{"x", 2}}}); }
CdgaPtr cp(int n, const std::string& g = "x") {
  return make_cdga("CP" + std::to_string(n), {{g, 2}}, {}, {{{g, n + 1}}});
}
CdgaPtr s2free() {
  return make_cdga("S2free", {{"x", 2}, {"y", 3}}, {{"y", NamedPolynomial{{1, {{"x", 2}}}}}}, {}, {}, 16);
}

SurjectiveModel identity_model(const CdgaPtr& a) {
  return make_smodel("id(" + a->name() + ")", CdgaMorphism::identity(a), CdgaMorphism::identity(a));
}

SurjectiveModel without_section(SurjectiveModel s) {
  s.section.reset();
  s.retraction_asserted = false;
  return s;
}

void check_report_invariants(const SecatReport& r) {
  if (r.upper) CHECK(r.lower <= *r.upper);
  if (r.value) {
    REQUIRE(r.upper);
    CHECK(*r.value == r.lower);
    CHECK(*r.upper == r.lower);
  }
  if (r.lower > 0) {
    REQUIRE(r.witness);
    REQUIRE(r.witness_check);
    CHECK(r.witness_check->ok());
  }
  // at most one false → true transition
  bool seen_true = false;
  for (const auto& v : r.verdicts) {
    if (!v.injective) continue;
    if (seen_true) CHECK(*v.injective);
    seen_true = seen_true || *v.injective;
  }
}

}  // namespace

TEST_CASE("quotient route examples") {
  SecatReport r = msecat_via_quotient(augmentation_smodel(ext(3)));
  REQUIRE(r.value);
  CHECK(*r.value == 1);
  CHECK(r.exact());
  REQUIRE(r.verdicts.size() == 2);
  CHECK(*r.verdicts[0].injective == false);
  CHECK(*r.verdicts[1].injective == true);
  REQUIRE(r.witness);
  CHECK(r.witness->formatted == "x*v0");
  check_report_invariants(r);

  SecatReport id = msecat_via_quotient(identity_model(ext(3)));
  CHECK(id.value == 0);
  CHECK_FALSE(id.witness);

  SecatReport mu = msecat_via_quotient(multiplication_smodel(cp(1), 2).smodel);
  CHECK(mu.value == 2);
  REQUIRE(mu.witness);
  CHECK(mu.witness->m == 2);
  check_report_invariants(mu);
}

TEST_CASE("join route examples agree with the quotient route") {
  SecatReport r = msecat_via_join(augmentation_smodel(ext(3)));
  CHECK(r.value == 1);
  CHECK(r.route == "join");
  check_report_invariants(r);
  CHECK(msecat_via_join(identity_model(cp(1))).value == 0);
  CHECK(msecat_via_join(augmentation_smodel(cp(1))).value == 1);
  CHECK(msecat_via_join(augmentation_smodel(cp(2))).value == 2);
  CHECK(msecat_via_join(multiplication_smodel(ext(3), 2).smodel).value == 1);
  CHECK(msecat_via_join(multiplication_smodel(cp(1), 2).smodel).value == 2);
}

TEST_CASE("join route without a section is labelled single-sided") {
  SecatReport r = msecat_via_join(without_section(augmentation_smodel(ext(3))));
  CHECK(r.route == "join (definitional criterion, single-sided)");
  CHECK(r.hypothesis == "none");
  CHECK(r.value == 1);
}

TEST_CASE("mcat examples") {
  SecatReport pt = mcat(ground_field());
  CHECK(pt.value == 0);
  CHECK(mcat(ext(3)).value == 1);
  SecatReport c2 = mcat(cp(2));
  CHECK(c2.invariant == "mcat");
  CHECK(c2.value == 2);
  REQUIRE(c2.witness);
  CHECK(c2.witness->formatted == "x^2*v0");
  CHECK(c2.convention == "reduced");
  check_report_invariants(c2);
}

TEST_CASE("mtc examples") {
  CHECK(mtc(ext(3), 2).value == 1);
  CHECK(mtc(cp(1), 2).value == 2);
  SecatReport t3 = mtc(ext(3), 3);
  CHECK(t3.invariant == "mtc_3");
  CHECK(t3.value == 2);
  check_report_invariants(t3);
}

TEST_CASE("free models are window-certified") {
  SecatReport r = mcat(s2free());
  CHECK(r.value == 1);
  CHECK(r.status == "window-certified to degree 16");
  CHECK_FALSE(r.exact());
  check_report_invariants(r);
}

TEST_CASE("m_max exhaustion gives an undetermined interval") {
  EngineOptions opt;
  opt.m_max = 1;
  SecatReport r = mcat(cp(3), opt);
  CHECK_FALSE(r.value);
  CHECK(r.lower == 2);
  CHECK_FALSE(r.upper);
  CHECK(r.status == "undetermined");
  REQUIRE(r.witness);
  CHECK(r.witness_check->ok());
}

TEST_CASE("insufficient resolution depth is undetermined, not wrong") {
  // wedge S2 ∨ S2 has a non-free dual; depth 1 leaves degree 1 uncertified
  auto w = make_cdga("S2vS2", {{"x", 2}, {"y", 2}}, {}, {{{"x", 2}}, {{"x", 1}, {"y", 1}}, {{"y", 2}}});
  EngineOptions opt;
  opt.depth = 1;
  SecatReport r = mcat(w, opt);
  CHECK_FALSE(r.value);
  CHECK(r.status == "undetermined");
  REQUIRE(r.verdicts.size() == 1);
  CHECK_FALSE(r.verdicts[0].injective.has_value());
  CHECK(mcat(w).value == 1);
}

TEST_CASE("product s-models") {
  SurjectiveModel ii = product_smodel(identity_model(ext(3)), identity_model(cp(1)));
  CHECK(ii.kernel.is_zero());
  CHECK(ii.section.has_value());

  SurjectiveModel ee = product_smodel(augmentation_smodel(ext(3, "x")), augmentation_smodel(ext(3, "y")));
  Ideal aug = kernel_ideal(CdgaMorphism::augmentation(ee.algebra()));
  CHECK(ee.kernel == aug);
  CHECK(ee.hypothesis() == "section-verified");

  SurjectiveModel mm = product_smodel(multiplication_smodel(cp(1, "a"), 2).smodel,
                                      multiplication_smodel(ext(3, "b"), 2).smodel);
  CHECK(mm.algebra()->total_dim() == 16);
  CHECK(mm.section.has_value());
}

TEST_CASE("additivity examples") {
  AdditivityReport a = verify_additivity(augmentation_smodel(ext(3, "x")), augmentation_smodel(ext(3, "y")));
  CHECK(a.lhs == 2);
  CHECK(a.rhs == 2);
  CHECK(a.equal);
  CHECK_FALSE(a.defect);

  AdditivityReport b = verify_additivity(multiplication_smodel(cp(1, "a"), 2).smodel,
                                         multiplication_smodel(ext(3, "b"), 2).smodel);
  CHECK(b.f.value == 2);
  CHECK(b.g.value == 1);
  CHECK(b.lhs == 3);
  CHECK(b.equal);

  AdditivityReport c = verify_additivity(identity_model(cp(1, "a")), augmentation_smodel(cp(2, "b")));
  CHECK(c.lhs == 2);
  CHECK(c.equal);

  CHECK_THROWS_AS(verify_additivity(without_section(augmentation_smodel(ext(3))), augmentation_smodel(cp(1))),
                  InvalidArgument);
  CHECK_THROWS_AS(verify_additivity(augmentation_smodel(s2free()), augmentation_smodel(ext(3, "z"))), Undetermined);
}

TEST_CASE("subadditivity without sections") {
  AdditivityReport a = verify_subadditivity(without_section(augmentation_smodel(cp(1, "a"))),
                                            without_section(augmentation_smodel(cp(1, "b"))));
  CHECK(a.subadditive);
  CHECK(a.lhs == 2);  // K nilpotent of index 2 on each side
  CHECK(a.lhs <= 2);
  AdditivityReport t = verify_subadditivity(identity_model(ext(3, "a")), without_section(augmentation_smodel(ext(5, "b"))));
  CHECK(t.equal);
}

TEST_CASE("nilpotency bounds every verdict") {
  for (const auto& a : {ext(3), even_sphere(4), cp(1), cp(2), cp(3), tensor(cp(1), ext(3)).algebra}) {
    SurjectiveModel s = augmentation_smodel(a);
    SecatReport r = msecat_via_quotient(s);
    auto n = nilpotency_index(s.kernel);
    REQUIRE(n);
    REQUIRE(r.value);
    // K^{m+1} = 0 forces the verdict at m
    CHECK(*r.value <= *n - 1);
    // zero differential and Poincaré duality: equality with the closed form
    CHECK(*r.value == *n - 1);
    check_report_invariants(r);
  }
}

TEST_CASE("engine output is deterministic") {
  SecatReport a = mtc(cp(1), 2), b = mtc(cp(1), 2);
  CHECK(a.value == b.value);
  REQUIRE(a.witness);
  CHECK(a.witness->formatted == b.witness->formatted);
  CHECK(a.witness->omega == b.witness->omega);
}
