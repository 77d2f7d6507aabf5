#include <catch_amalgamated.hpp>

#include "scc/constructions.hpp"
#include "scc/group.hpp"
#include "scc/heisenberg.hpp"
#include "scc/morphism.hpp"
#include "scc/subgroup.hpp"

using namespace scc;

namespace {

GroupError::Kind error_kind(auto&& fn) {
  try {
    fn();
  } catch (GroupError const& e) {
    return e.kind();
  }
  FAIL("expected a GroupError");
  return GroupError::Kind::Parse;
}

Index label_index(FiniteGroup const& g, std::string const& label) {
  for (Index i = 0; i < g.order(); ++i)
    if (g.label(i) == label) return i;
  FAIL("no element labelled " << label);
  return 0;
}

std::vector<FiniteGroup> sample_groups() {
  return {FiniteGroup{}, cyclic(2),   cyclic(4),       klein4(),     cyclic(6),
          symmetric(3),  dihedral(4), quaternion8(),   cyclic(8),    build_sl2z3(),
          build_s4(),    symmetric(4), direct_product(cyclic(2), cyclic(3)),
          build_heisenberg(2, 2)};
}

}  // namespace

TEST_CASE("tables build groups or fail with the right error", "[group]") {
  auto trivial = FiniteGroup::from_table({{0}});
  CHECK(trivial.order() == 1);
  CHECK(trivial.is_abelian());

  auto z2 = FiniteGroup::from_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.inverse(1) == 1);

  CHECK(error_kind([] { FiniteGroup::from_table({{0, 1}, {1, 1}}); }) == GroupError::Kind::NotClosed);
  CHECK(error_kind([] { FiniteGroup::from_table({{0, 2}, {1, 0}}); }) == GroupError::Kind::NotClosed);
  CHECK(error_kind([] { FiniteGroup::from_table({{0, 1}, {1}}); }) == GroupError::Kind::NotClosed);
  CHECK(error_kind([] { FiniteGroup::from_table({}); }) == GroupError::Kind::NotClosed);
  // x * y = -x - y mod 3: a Latin square without an identity
  CHECK(error_kind([] { FiniteGroup::from_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}); }) ==
        GroupError::Kind::NoIdentity);
  // Latin square with identity 0 that is not associative (order-5 loop)
  CHECK(error_kind([] {
          FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                   {1, 0, 3, 4, 2},
                                   {2, 4, 0, 1, 3},
                                   {3, 2, 4, 0, 1},
                                   {4, 3, 1, 2, 0}});
        }) == GroupError::Kind::NotAssociative);
}

TEST_CASE("error messages name the offending indices", "[group]") {
  try {
    FiniteGroup::from_table({{0, 1}, {1, 1}});
    FAIL("expected failure");
  } catch (GroupError const& e) {
    std::string what = e.what();
    CHECK(what.find('1') != std::string::npos);
  }
}

TEST_CASE("element arithmetic in the order-32 example", "[group]") {
  auto g2 = build_heisenberg(2, 2);
  auto a = g2.element(label_index(g2, "(1,0,0,0;0)"));
  auto b = g2.element(label_index(g2, "(0,1,0,0;0)"));
  CHECK(g2.label(g2.mul(a, b).index) == "(1,1,0,0;0)");
  CHECK(g2.label(g2.commutator(a, b).index) == "(0,0,0,0;1)");
  for (Index x = 0; x < g2.order(); ++x) CHECK(g2.commutator(x, x) == g2.identity_index());
}

TEST_CASE("elements of different groups do not mix", "[group]") {
  auto a = cyclic(2);
  auto b = cyclic(2);
  CHECK(error_kind([&] { a.mul(a.element(1), b.element(1)); }) == GroupError::Kind::CrossGroup);
  CHECK(error_kind([&] { a.inv(b.element(1)); }) == GroupError::Kind::CrossGroup);
  CHECK(error_kind([&] { a.element(2); }) == GroupError::Kind::NotClosed);
  CHECK(a.mul(a.element(1), a.element(1)) == a.identity());
}

TEST_CASE("commutators vanish exactly for abelian groups", "[group][property]") {
  for (auto const& g : sample_groups()) {
    bool all_trivial = true;
    for (Index a = 0; a < g.order(); ++a)
      for (Index b = 0; b < g.order(); ++b)
        if (g.commutator(a, b) != g.identity_index()) all_trivial = false;
    CHECK(all_trivial == g.is_abelian());
  }
}

TEST_CASE("constructors", "[group]") {
  auto v = direct_product(cyclic(2), cyclic(2));
  CHECK(v.order() == 4);
  CHECK(v.is_abelian());
  int involutions = 0;
  for (Index x = 0; x < 4; ++x) involutions += v.element_order(x) == 2;
  CHECK(involutions == 3);

  auto sl = build_sl2z3();
  CHECK(sl.order() == 24);
  auto z = center(sl);
  CHECK(z.order() == 2);
  // -1 is (index 1 of Q8, t^0): index 1 * 3 + 0
  CHECK(z.contains(3));
  CHECK(sl.label(3) == "(-1,0)");
  int order_two = 0;
  for (Index x = 0; x < 24; ++x) order_two += sl.element_order(x) == 2;
  CHECK(order_two == 1);

  auto s4 = build_s4();
  CHECK(s4.order() == 24);
  CHECK(isomorphic(s4, symmetric(4)));
  CHECK_FALSE(isomorphic(sl, s4));

  CHECK(symmetric(3).order() == 6);
  CHECK_FALSE(symmetric(3).is_abelian());
  CHECK(dihedral(8).order() == 16);
  CHECK(quaternion8().order() == 8);
  CHECK(center(quaternion8()).order() == 2);
}

TEST_CASE("semidirect products validate the action", "[group]") {
  auto v = klein4();
  auto z2 = cyclic(2);
  // swapping the generators of V4 is an automorphism
  std::vector<std::vector<Index>> ok{{0, 1, 2, 3}, {0, 2, 1, 3}};
  CHECK(semidirect_product(v, z2, ok).order() == 8);
  CHECK(isomorphic(semidirect_product(v, z2, ok), dihedral(4)));
  // not a bijection
  std::vector<std::vector<Index>> bad{{0, 1, 2, 3}, {0, 1, 1, 3}};
  CHECK(error_kind([&] { semidirect_product(v, z2, bad); }) == GroupError::Kind::BadAction);
  // bijection that is not a homomorphism (moves the identity)
  std::vector<std::vector<Index>> bad2{{0, 1, 2, 3}, {1, 0, 2, 3}};
  CHECK(error_kind([&] { semidirect_product(v, z2, bad2); }) == GroupError::Kind::BadAction);
  // automorphisms, but the generator of Z3 would need order dividing 3
  std::vector<std::vector<Index>> bad3{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 2, 1, 3}};
  CHECK(error_kind([&] { semidirect_product(v, cyclic(3), bad3); }) == GroupError::Kind::BadAction);
}

TEST_CASE("subgroups, center, derived subgroup, quotient", "[group]") {
  auto z4 = cyclic(4);
  auto subs = all_subgroups(z4);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].order() == 1);
  CHECK(subs[1].order() == 2);
  CHECK(subs[2].order() == 4);

  CHECK(all_subgroups(symmetric(3)).size() == 6);
  CHECK(normal_subgroups(symmetric(3)).size() == 3);
  CHECK(all_subgroups(quaternion8()).size() == 6);
  CHECK(normal_subgroups(quaternion8()).size() == 6);
  CHECK(all_subgroups(symmetric(4)).size() == 30);
  CHECK(normal_subgroups(symmetric(4)).size() == 4);

  auto g2 = build_heisenberg(2, 2);
  auto z = center(g2);
  auto d = derived_subgroup(g2);
  CHECK(z.order() == 2);
  CHECK(z.members == d.members);
  auto ab = quotient(g2, d);
  CHECK(ab.order() == 16);
  CHECK(ab.is_abelian());
  CHECK(isomorphic(ab, direct_product(direct_product(klein4(), cyclic(2)), cyclic(2))));

  auto s3 = symmetric(3);
  auto two = generated_subgroup(s3, {Index{1}});
  CHECK(two.order() == 2);
  CHECK_FALSE(two.is_normal);
  CHECK(error_kind([&] { quotient(s3, two); }) == GroupError::Kind::NotNormal);
  CHECK(error_kind([&] { quotient(s3, center(symmetric(3))); }) == GroupError::Kind::CrossGroup);
}

TEST_CASE("subgroup properties on sample groups", "[group][property]") {
  for (auto const& g : sample_groups()) {
    if (g.order() > 32) continue;
    auto gens = generating_set(g);
    CHECK(generated_subgroup(g, std::span<Index const>(gens)).order() == g.order());
    for (auto const& n : normal_subgroups(g)) {
      CHECK(quotient(g, n).order() * n.order() == g.order());
    }
    for (auto const& s : all_subgroups(g)) {
      CHECK(g.order() % s.order() == 0);
      CHECK(s.contains(g.identity_index()));
      for (Index a : s.members) {
        CHECK(s.contains(g.inverse(a)));
        for (Index b : s.members) REQUIRE(s.contains(g.product(a, b)));
      }
    }
  }
}

TEST_CASE("cyclic extensions of abelian groups", "[group]") {
  for (auto const& g : {cyclic(6), klein4(), cyclic(1)}) {
    auto r = is_cyclic_extension_of_abelian(g);
    CHECK(r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->order() == g.order());
  }
  CHECK_FALSE(is_cyclic_extension_of_abelian(build_sl2z3()).holds);
  CHECK_FALSE(is_cyclic_extension_of_abelian(build_s4()).holds);
  auto d16 = dihedral(8);
  auto r = is_cyclic_extension_of_abelian(d16);
  REQUIRE(r.holds);
  CHECK(r.witness->order() == 8);
  CHECK(r.witness->is_normal);
  CHECK(r.witness->is_abelian());
  CHECK(is_cyclic(quotient(d16, *r.witness)));
  // rotations r^0..r^7 are indices 0..7
  CHECK(r.witness->members == std::vector<Index>{0, 1, 2, 3, 4, 5, 6, 7});

  for (auto const& g : sample_groups()) {
    auto z = center(g);
    bool sufficient = g.is_abelian() || is_cyclic(quotient(g, z));
    if (sufficient) CHECK(is_cyclic_extension_of_abelian(g).holds);
    auto c = is_cyclic_extension_of_abelian(g);
    if (c.holds) {
      CHECK(c.witness->is_normal);
      CHECK(c.witness->is_abelian());
      CHECK(is_cyclic(quotient(g, *c.witness)));
    }
  }
}

TEST_CASE("isomorphism", "[group]") {
  CHECK_FALSE(isomorphic(cyclic(4), klein4()));
  CHECK(isomorphic(cyclic(6), direct_product(cyclic(2), cyclic(3))));
  CHECK_FALSE(isomorphic(quaternion8(), dihedral(4)));
  CHECK(isomorphic(symmetric(3), dihedral(3)));

  auto gs = sample_groups();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    CHECK(isomorphic(gs[i], gs[i]));
    for (std::size_t j = 0; j < gs.size(); ++j) {
      CHECK(isomorphic(gs[i], gs[j]) == isomorphic(gs[j], gs[i]));
      for (std::size_t k = 0; k < gs.size(); ++k)
        if (isomorphic(gs[i], gs[j]) && isomorphic(gs[j], gs[k])) CHECK(isomorphic(gs[i], gs[k]));
    }
  }
  auto iso = find_isomorphism(build_s4(), symmetric(4));
  REQUIRE(iso);
  auto s4 = build_s4();
  auto p4 = symmetric(4);
  for (Index a = 0; a < 24; ++a)
    for (Index b = 0; b < 24; ++b) CHECK((*iso)[s4.product(a, b)] == p4.product((*iso)[a], (*iso)[b]));
}

TEST_CASE("automorphism groups", "[group]") {
  CHECK(automorphisms(klein4()).size() == 6);
  CHECK(automorphisms(cyclic(8)).size() == 4);
  CHECK(automorphisms(quaternion8()).size() == 24);
  CHECK(automorphisms(symmetric(3)).size() == 6);
  CHECK(automorphisms(dihedral(4)).size() == 8);
  CHECK(automorphisms(FiniteGroup{}).size() == 1);
}

TEST_CASE("fingerprints", "[group]") {
  auto f = fingerprint(build_sl2z3());
  CHECK(f.str() == "n=24;orders=1^1,2^1,3^8,4^6,6^8;Z=2;D=8");
  CHECK(fingerprint(symmetric(4)).str() == "n=24;orders=1^1,2^9,3^8,4^6;Z=1;D=12");
  CHECK(fingerprint(cyclic(4)) != fingerprint(klein4()));
}

TEST_CASE("text serialization round-trips bit-exactly", "[group]") {
  for (auto const& g : sample_groups()) {
    auto text = to_text(g);
    auto back = from_text(text);
    CHECK(back.order() == g.order());
    CHECK(back.flat_table() == g.flat_table());
    CHECK(back.labels() == g.labels());
    CHECK(to_text(back) == text);
  }
  auto t = to_text(cyclic(2));
  CHECK(t.rfind("order 2\n", 0) == 0);
  CHECK(error_kind([] { from_text("order x\n"); }) == GroupError::Kind::Parse);
  CHECK(error_kind([] { from_text("order 2\n0 1\n"); }) == GroupError::Kind::Parse);
  CHECK(error_kind([] { from_text("order 2\n0 1\n1 a\n"); }) == GroupError::Kind::Parse);
  CHECK(error_kind([] { from_text("order 2\n0 1\n1\n"); }) == GroupError::Kind::NotClosed);
  CHECK(error_kind([] { from_text("order 2\n0 1\n1 1\n"); }) == GroupError::Kind::NotClosed);
}
