#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "fia/poset.hpp"
#include "fia/poset_enum.hpp"
#include "support.hpp"

using namespace fia;
using testsupport::chain;
using testsupport::crown;
using testsupport::diamond;
using testsupport::vee;

// brute-force oracle: all bijections of {0..n-1} passing the given predicate
static std::vector<std::vector<int>> all_bijections_where(
    const FinitePoset& poset, bool (*pred)(const FinitePoset&, const std::vector<int>&)) {
  std::vector<int> perm(poset.size());
  for (int i = 0; i < poset.size(); ++i) perm[i] = i;
  std::vector<std::vector<int>> out;
  do {
    if (pred(poset, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

TEST_CASE("build_poset closes covers transitively") {
  auto c3 = chain(3);
  REQUIRE(c3->leq(c3->index_of("1"), c3->index_of("3")));  // inferred
  REQUIRE_FALSE(c3->leq(c3->index_of("3"), c3->index_of("1")));

  auto dia = diamond();
  REQUIRE_FALSE(dia->comparable(dia->index_of("a"), dia->index_of("b")));
  REQUIRE(dia->leq(dia->index_of("0"), dia->index_of("1")));
}

TEST_CASE("build_poset rejects bad inputs") {
  REQUIRE_THROWS_AS(build_poset({"1", "2"}, {{"1", "2"}, {"2", "1"}}), CycleError);
  REQUIRE_THROWS_AS(build_poset({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"3", "1"}}),
                    CycleError);
  REQUIRE_THROWS_AS(build_poset({"1", "2"}, {{"1", "z"}}), UnknownLabel);
  REQUIRE_THROWS_AS(build_poset({"1", "1"}, {}), UnknownLabel);
}

TEST_CASE("connectivity of the comparability graph") {
  REQUIRE(is_connected(*diamond()));
  REQUIRE(is_connected(*build_poset({"x"}, {})));
  auto two = testsupport::two_disjoint_chains();
  REQUIRE_FALSE(is_connected(*two));
  REQUIRE(component_count(*two) == 2);
}

TEST_CASE("automorphism enumeration matches the factorial-scan oracle") {
  auto is_auto = +[](const FinitePoset& p, const std::vector<int>& img) {
    return is_order_automorphism(p, img);
  };

  auto c3 = chain(3);
  REQUIRE(enumerate_automorphisms(c3).size() == 1);  // chains are rigid

  auto dia = diamond();
  auto found = enumerate_automorphisms(dia);
  auto brute = all_bijections_where(*dia, is_auto);
  REQUIRE(found.size() == brute.size());
  REQUIRE(found.size() == 2);
  for (std::size_t i = 0; i < found.size(); ++i) REQUIRE(found[i].image == brute[i]);

  auto antichain = build_poset({"1", "2"}, {});
  REQUIRE(enumerate_automorphisms(antichain).size() == 2);

  for (const auto& poset : connected_posets_of_size(4)) {
    auto fast = enumerate_automorphisms(poset);
    auto slow = all_bijections_where(*poset, is_auto);
    REQUIRE(fast.size() == slow.size());
  }
}

TEST_CASE("involution enumeration matches the factorial-scan oracle") {
  auto is_inv = +[](const FinitePoset& p, const std::vector<int>& img) {
    return is_order_reversing_involution(p, img);
  };

  auto c2 = chain(2);
  auto invs2 = enumerate_involutions(c2);
  REQUIRE(invs2.size() == 1);
  REQUIRE(invs2[0].image == std::vector<int>{1, 0});

  auto c3 = chain(3);
  auto invs3 = enumerate_involutions(c3);
  auto brute3 = all_bijections_where(*c3, is_inv);
  REQUIRE(invs3.size() == brute3.size());
  REQUIRE(invs3.size() == 1);
  REQUIRE(invs3[0].image == std::vector<int>{2, 1, 0});

  REQUIRE(enumerate_involutions(vee()).empty());  // one min, two max: not self-dual

  for (const auto& poset : connected_posets_of_size(4)) {
    auto fast = enumerate_involutions(poset);
    auto slow = all_bijections_where(*poset, is_inv);
    REQUIRE(fast.size() == slow.size());
  }
}

TEST_CASE("every enumerated map satisfies its defining property") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& poset : connected_posets_of_size(n)) {
      for (const auto& lambda : enumerate_involutions(poset)) {
        for (int x = 0; x < poset->size(); ++x)
          REQUIRE(lambda.image[lambda.image[x]] == x);
        for (int x = 0; x < poset->size(); ++x)
          for (int y = 0; y < poset->size(); ++y)
            REQUIRE(poset->leq(x, y) == poset->leq(lambda.image[y], lambda.image[x]));
      }
    }
  }
}

TEST_CASE("automorphisms form a group") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& poset : connected_posets_of_size(n)) {
      auto autos = enumerate_automorphisms(poset);
      std::set<std::vector<int>> group;
      for (const auto& a : autos) group.insert(a.image);
      for (const auto& a : autos) {
        REQUIRE(group.count(a.inverse_image()) == 1);
        for (const auto& b : autos) {
          std::vector<int> comp(poset->size());
          for (int x = 0; x < poset->size(); ++x) comp[x] = a.image[b.image[x]];
          REQUIRE(group.count(comp) == 1);
        }
      }
    }
  }
}

TEST_CASE("lambda decompositions") {
  auto c3 = chain(3);
  auto dec3 = lambda_decomposition(enumerate_involutions(c3)[0]);
  REQUIRE(dec3.x1 == std::vector<int>{c3->index_of("1")});
  REQUIRE(dec3.x3 == std::vector<int>{c3->index_of("2")});
  REQUIRE(dec3.x2 == std::vector<int>{c3->index_of("3")});

  auto dia = diamond();
  auto lam = testsupport::diamond_lambda_fixing_middle(dia);
  auto dec = lambda_decomposition(lam);
  REQUIRE(dec.x1 == std::vector<int>{dia->index_of("0")});
  REQUIRE(dec.x2 == std::vector<int>{dia->index_of("1")});
  REQUIRE(dec.x3 == std::vector<int>{dia->index_of("a"), dia->index_of("b")});

  auto c2 = chain(2);
  auto dec2 = lambda_decomposition(enumerate_involutions(c2)[0]);
  REQUIRE(dec2.x3.empty());
  REQUIRE(dec2.x1 == std::vector<int>{0});
  REQUIRE(dec2.x2 == std::vector<int>{1});
}

TEST_CASE("lambda decomposition closure properties hold on every instance") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& poset : connected_posets_of_size(n)) {
      for (const auto& lambda : enumerate_involutions(poset)) {
        auto dec = lambda_decomposition(lambda);
        auto part = [&](int x) { return dec.part_of(x); };
        using P = LambdaDecomposition::Part;
        for (int x = 0; x < poset->size(); ++x) {
          if (part(x) == P::X3) REQUIRE(lambda.image[x] == x);
          if (part(x) == P::X1) REQUIRE(part(lambda.image[x]) == P::X2);
          if (part(x) == P::X2) REQUIRE(part(lambda.image[x]) == P::X1);
          for (int y = 0; y < poset->size(); ++y) {
            if (part(x) == P::X1 && poset->leq(y, x)) REQUIRE(part(y) == P::X1);
            if (part(x) == P::X2 && poset->leq(x, y)) REQUIRE(part(y) == P::X2);
            if (part(x) == P::X3 && part(y) == P::X3 && x != y)
              REQUIRE_FALSE(poset->lt(x, y));  // X3 is an antichain
          }
        }
      }
    }
  }
}

TEST_CASE("poset involution equivalence witnesses") {
  auto c3 = chain(3);
  auto lam = enumerate_involutions(c3)[0];
  auto w = poset_involutions_equivalent(lam, lam);
  REQUIRE(w.has_value());
  for (int x = 0; x < 3; ++x) REQUIRE(w->image[x] == x);  // identity witness

  auto dia = diamond();
  auto invs = enumerate_involutions(dia);
  REQUIRE(invs.size() == 2);
  // the two diamond involutions have fixed sets of sizes 2 and 0, so they
  // cannot be intertwined; same-vs-same always is
  for (const auto& l1 : invs)
    for (const auto& l2 : invs) {
      auto alpha = poset_involutions_equivalent(l1, l2);
      auto same_fixed = lambda_decomposition(l1).x3.size() ==
                        lambda_decomposition(l2).x3.size();
      REQUIRE(alpha.has_value() == (l1 == l2));
      if (alpha.has_value()) {
        REQUIRE(same_fixed);  // |X3| is an equivalence invariant
        for (int x = 0; x < dia->size(); ++x)
          REQUIRE(alpha->image[l2.image[x]] == l1.image[alpha->image[x]]);
      }
    }

  // cross-poset sanity over the full catalog: a witness forces equal |X3|
  for (const auto& poset : connected_posets_of_size(4)) {
    auto all = enumerate_involutions(poset);
    for (const auto& l1 : all)
      for (const auto& l2 : all)
        if (auto alpha = poset_involutions_equivalent(l1, l2))
          REQUIRE(lambda_decomposition(l1).x3.size() ==
                  lambda_decomposition(l2).x3.size());
  }
}

TEST_CASE("connected poset counts at desk scale") {
  REQUIRE(connected_posets_of_size(1).size() == 1);
  REQUIRE(connected_posets_of_size(2).size() == 1);
  REQUIRE(connected_posets_of_size(3).size() == 3);
  REQUIRE(connected_posets_of_size(4).size() == 10);
  REQUIRE(connected_posets_of_size(5).size() == 44);
}
