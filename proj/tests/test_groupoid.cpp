#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fspan/group.hpp"
#include "fspan/groupoid.hpp"
#include "fspan/iso.hpp"

using namespace fspan;

namespace {

// Two-object connected groupoid with loop group Z2 at each object: the
// smallest case where connecting morphisms and class data do real work.
GroupoidPtr codiscrete_z2(int n_objects) {
  GroupTable z2 = cyclic_group(2);
  GroupoidBuilder b;
  std::vector<int> obs;
  for (int i = 0; i < n_objects; ++i) obs.push_back(b.add_object("o" + std::to_string(i)));
  // morphism (x, g, y), indexed x*(n*2) + y*2 + g
  auto midx = [&](int x, int y, int g) { return (x * n_objects + y) * 2 + g; };
  for (int x = 0; x < n_objects; ++x) {
    for (int y = 0; y < n_objects; ++y) {
      for (int g = 0; g < 2; ++g) {
        b.add_morphism("m" + std::to_string(x) + std::to_string(y) + std::to_string(g),
                       obs[x], obs[y]);
      }
    }
  }
  for (int x = 0; x < n_objects; ++x) b.set_identity(obs[x], midx(x, x, 0));
  for (int x = 0; x < n_objects; ++x) {
    for (int y = 0; y < n_objects; ++y) {
      for (int z = 0; z < n_objects; ++z) {
        for (int g = 0; g < 2; ++g) {
          for (int h = 0; h < 2; ++h) {
            b.set_compose(midx(x, y, g), midx(y, z, h), midx(x, z, z2.mul(g, h)));
          }
        }
      }
    }
  }
  return b.build();
}

}  // namespace

TEST_CASE("group tables: cyclic and symmetric") {
  GroupTable z4 = cyclic_group(4);
  CHECK(z4.n() == 4);
  CHECK(z4.names[0] == "e");
  CHECK(z4.mul(1, 3) == 0);
  CHECK(z4.inv(1) == 3);
  CHECK(z4.order_of(1) == 4);
  CHECK(z4.order_of(2) == 2);
  check_group_axioms(z4);

  GroupTable s3 = symmetric_group(3);
  CHECK(s3.n() == 6);
  CHECK(s3.names[0] == "e");
  check_group_axioms(s3);
  // transpositions square to the identity
  int transpositions = 0;
  for (int a = 1; a < 6; ++a) {
    if (s3.mul(a, a) == 0) ++transpositions;
  }
  CHECK(transpositions == 3);

  GroupTable s4 = symmetric_group(4);
  CHECK(s4.n() == 24);
  check_group_axioms(s4);
}

TEST_CASE("group tables: permutation closure and Cayley input") {
  GroupTable s3 = group_from_permutations({"(1 2)", "(1 2 3)"});
  CHECK(s3.n() == 6);
  check_group_axioms(s3);

  GroupTable z2xz2 = group_from_permutations({"(1 2)", "(3 4)"});
  CHECK(z2xz2.n() == 4);
  for (int a = 0; a < 4; ++a) CHECK(z2xz2.mul(a, a) == 0);

  // S5 has 120 elements, far over the default closure cap
  CHECK_THROWS_AS(group_from_permutations({"(1 2 3 4 5)", "(1 2)"}), BudgetExceeded);
  CHECK_THROWS_AS(group_from_permutations({"(1 2"}), StructuralError);
  CHECK_THROWS_AS(group_from_permutations({"(1 1)"}), StructuralError);

  // Z3 written with the identity in the middle row; elements get renumbered.
  std::vector<std::vector<int>> rows = {{2, 0, 1}, {0, 1, 2}, {1, 2, 0}};
  GroupTable z3 = group_from_cayley(rows);
  CHECK(z3.n() == 3);
  CHECK(z3.names[0] == "x1");
  check_group_axioms(z3);

  std::vector<std::vector<int>> broken = {{0, 1}, {1, 1}};
  CHECK_THROWS_AS(group_from_cayley(broken), StructuralError);
}

TEST_CASE("groupoid builder and validation on a one-object group") {
  GroupoidPtr g = group_groupoid("X", cyclic_group(3));
  CHECK(g->n_objects() == 1);
  CHECK(g->n_morphisms() == 3);
  CHECK(g->identity_at(0) == 0);
  CHECK(g->mul(1, 2) == 0);
  CHECK(g->inv(1) == 2);
  CHECK(g->is_identity(0));
  CHECK(!g->is_identity(1));
  CHECK(g->cardinality() == Rational(1) / 3);
  CHECK(validate_groupoid(*g).ok());

  AutGroup aut = automorphism_group(*g, 0);
  CHECK(aut.elements.size() == 3);
}

TEST_CASE("builder rejects malformed input") {
  GroupoidBuilder b;
  int x = b.add_object("x");
  CHECK_THROWS_AS(b.add_object("x"), StructuralError);
  int e = b.add_morphism("e", x, x);
  CHECK_THROWS_AS(b.add_morphism("e", x, x), StructuralError);
  CHECK_THROWS_AS(b.add_morphism("bad", x, 7), StructuralError);
  CHECK_THROWS_AS(b.set_identity(x, 5), StructuralError);
  int a = b.add_morphism("a", x, x);
  b.set_identity(x, e);
  b.set_compose(e, e, e);
  b.set_compose(e, e, e);  // re-recording the same value is harmless
  CHECK_THROWS_AS(b.add_object("y"), StructuralError);      // frozen
  CHECK_THROWS_AS(b.set_compose(e, e, a), StructuralError);  // contradicts the entry above
}

TEST_CASE("builder morphism budget") {
  Limits lim;
  lim.max_morphisms = 2;
  GroupoidBuilder b(lim);
  int x = b.add_object("x");
  b.add_morphism("e", x, x);
  b.add_morphism("a", x, x);
  CHECK_THROWS_AS(b.add_morphism("b", x, x), BudgetExceeded);
}

TEST_CASE("validation finds axiom violations") {
  // a;a = a with no inverse for a
  {
    GroupoidBuilder b;
    int x = b.add_object("x");
    int e = b.add_morphism("e", x, x);
    int a = b.add_morphism("a", x, x);
    b.set_identity(x, e);
    b.set_compose(e, e, e);
    b.set_compose(e, a, a);
    b.set_compose(a, e, a);
    b.set_compose(a, a, a);
    GroupoidPtr g = b.build();
    ValidationReport rep = validate_groupoid(*g);
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& p : rep.problems) {
      if (p.find("inverse") != std::string::npos) found = true;
    }
    CHECK(found);
  }
  // missing entry
  {
    GroupoidBuilder b;
    int x = b.add_object("x");
    int e = b.add_morphism("e", x, x);
    int a = b.add_morphism("a", x, x);
    b.set_identity(x, e);
    b.set_compose(e, e, e);
    b.set_compose(a, a, e);
    GroupoidPtr g = b.build();
    ValidationReport rep = validate_groupoid(*g);
    CHECK(!rep.ok());
    bool found = false;
    for (const auto& p : rep.problems) {
      if (p.find("not total") != std::string::npos) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("connected components, connecting morphisms, hom sets") {
  GroupoidPtr g = codiscrete_z2(3);
  CHECK(g->n_objects() == 3);
  CHECK(g->n_morphisms() == 18);
  CHECK(validate_groupoid(*g).ok());

  const IsoClassPartition& cls = g->iso_classes();
  CHECK(cls.classes.size() == 1);
  CHECK(cls.representative[0] == 0);
  for (int x = 0; x < 3; ++x) {
    int c = g->connecting(x);
    CHECK(g->src(c) == 0);
    CHECK(g->dst(c) == x);
  }
  CHECK(g->hom(0, 2).size() == 2);
  CHECK(g->loops_at(1).size() == 2);
  // cardinality: one class, Aut of rep has 2 elements
  CHECK(g->cardinality() == Rational(1) / 2);
}

TEST_CASE("disjoint union") {
  GroupoidPtr a = group_groupoid("X", cyclic_group(2));
  GroupoidPtr b = group_groupoid("Y", cyclic_group(3));
  GroupoidPtr u = disjoint_union(a, b);
  CHECK(u->n_objects() == 2);
  CHECK(u->n_morphisms() == 5);
  CHECK(u->object_index("0:X") == 0);
  CHECK(u->object_index("1:Y") == 1);
  CHECK(validate_groupoid(*u).ok());
  CHECK(u->cardinality() == Rational(1) / 2 + Rational(1) / 3);
  CHECK(u->iso_classes().classes.size() == 2);
  CHECK(same_groupoid(*u, *disjoint_union(a, b)));
  CHECK(!same_groupoid(*u, *a));
}

TEST_CASE("group isomorphism search") {
  GroupoidPtr z4 = group_groupoid("X", cyclic_group(4));
  GroupTable k4 = group_from_permutations({"(1 2)", "(3 4)"});
  GroupoidPtr klein = group_groupoid("X", k4);

  LoopGroup a = loop_group(*z4, 0);
  LoopGroup b = loop_group(*klein, 0);
  CHECK(!find_group_iso(a, b).has_value());
  CHECK(find_group_iso(a, a).has_value());

  // relabeled Z4 still matches
  std::vector<std::vector<int>> rows = {{3, 2, 0, 1}, {2, 3, 1, 0}, {0, 1, 2, 3}, {1, 0, 3, 2}};
  GroupoidPtr z4b = group_groupoid("X", group_from_cayley(rows));
  LoopGroup c = loop_group(*z4b, 0);
  auto theta = find_group_iso(a, c);
  REQUIRE(theta.has_value());
  // the witness is a homomorphism
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      int ij = z4->mul(a.elems[i], a.elems[j]);
      int pos = -1;
      for (int k = 0; k < 4; ++k) {
        if (a.elems[k] == ij) pos = k;
      }
      CHECK(z4b->mul((*theta)[i], (*theta)[j]) == (*theta)[pos]);
    }
  }
}

TEST_CASE("groupoid isomorphism and equivalence") {
  GroupoidPtr a = codiscrete_z2(2);
  GroupoidPtr b = codiscrete_z2(2);
  auto h = groupoid_iso(a, b);
  REQUIRE(h.has_value());
  CHECK(validate_functor(*h).ok());

  GroupoidPtr fat = codiscrete_z2(3);
  CHECK(!groupoid_iso(a, fat).has_value());
  CHECK(groupoid_equivalence(a, fat).has_value());

  GroupoidPtr z3 = group_groupoid("X", cyclic_group(3));
  CHECK(!groupoid_equivalence(a, z3).has_value());

  auto [sk, r] = skeleton(fat);
  CHECK(sk->n_objects() == 1);
  CHECK(sk->n_morphisms() == 2);
  CHECK(validate_functor(r).ok());
  CHECK(validate_groupoid(*sk).ok());
}

TEST_CASE("functor composition and validation") {
  GroupoidPtr g = codiscrete_z2(2);
  GFunctor id = identity_functor(g);
  CHECK(validate_functor(id).ok());
  GFunctor idid = compose_functors(id, id);
  CHECK(same_functor(id, idid));

  GFunctor broken = id;
  broken.mor[1] = 2;  // sends a loop at object 0 to a morphism 0 -> 1
  CHECK(!validate_functor(broken).ok());
}

TEST_CASE("perfect matching") {
  CHECK(perfect_matching(2, 2, {{0, 1}, {0}}).has_value());
  CHECK(!perfect_matching(2, 2, {{1}, {1}}).has_value());
  auto m = perfect_matching(3, 3, {{0, 1}, {1, 2}, {0, 2}});
  REQUIRE(m.has_value());
  CHECK((*m)[0] != (*m)[1]);
}

TEST_CASE("automorphism group checks closure") {
  GroupoidPtr g = codiscrete_z2(2);
  AutGroup aut = automorphism_group(*g, 0);
  CHECK(aut.elements.size() == 2);
  CHECK(automorphism_group(*g, "o1").object == 1);
  CHECK_THROWS_AS(automorphism_group(*g, "nope"), StructuralError);
}

TEST_CASE("search guard budget") {
  Limits lim;
  lim.search_nodes = 10;
  SearchGuard guard(lim);
  for (int i = 0; i < 10; ++i) guard.tick();
  CHECK_THROWS_AS(guard.tick(), BudgetExceeded);
}
