#include <doctest.h>

#include <klcells/cells.hpp>

using namespace klcells;

namespace {

using Blocks = std::vector<std::vector<std::string>>;

Blocks sorted_blocks(Blocks b) {
  for (auto& x : b) std::sort(x.begin(), x.end());
  std::sort(b.begin(), b.end());
  return b;
}

}  // namespace

TEST_CASE("link graph basics") {
  CoxeterGroup G = CoxeterGroup::affine_g2();
  HeckeSession H(G, WeightFunction::from_class_vector(G, {2, 1}), 4);
  KLTable kl(H);
  LinkGraph g = left_link_graph(kl);

  // e links into every generator (edge e -> s since h_{s,e,s} = 1)
  for (int s = 0; s < 3; ++s) {
    int sid = H.id_of(G.generator(s));
    CHECK(std::count(g.edges[0].begin(), g.edges[0].end(), sid) == 1);
  }

  // sy > y => edge y -> sy
  const Ball& b = H.ball();
  for (int y = 0; y < b.size(); ++y) {
    if (g.uncertain[y]) continue;
    for (int s = 0; s < 3; ++s) {
      int sy = b.lmul[y][s];
      if (sy >= 0 && b.len[sy] > b.len[y])
        CHECK(std::count(g.edges[y].begin(), g.edges[y].end(), sy) == 1);
    }
  }
}

TEST_CASE("dihedral I2(4) equal parameters") {
  CoxeterGroup G = CoxeterGroup::dihedral(4);
  HeckeSession H(G, WeightFunction(G, {1, 1}), 4);
  KLTable kl(H);

  CellPartition left = cells_from_links(kl, CellKind::Left, 4);
  Blocks expected = sorted_blocks({{"e"},
                                   {"1", "21", "121"},
                                   {"2", "12", "212"},
                                   {"1212"}});
  CHECK(left.block_words(H.ball()) == expected);

  CellPartition two = cells_from_links(kl, CellKind::TwoSided, 4);
  Blocks expected2 = sorted_blocks({{"e"},
                                    {"1", "2", "12", "21", "121", "212"},
                                    {"1212"}});
  CHECK(two.block_words(H.ball()) == expected2);

  annotate_a_values(two, kl, 4);
  // a-values 0 on {e}, a on the middle cell, m*a on {w0}
  for (int i = 0; i < two.block_count(); ++i) {
    if (two.blocks[i].size() == 1 && H.ball().len[two.blocks[i][0]] == 0)
      CHECK(two.a_value[i] == 0);
    else if (two.blocks[i].size() == 6)
      CHECK(two.a_value[i] == 1);
    else
      CHECK(two.a_value[i] == 4);
  }
}

TEST_CASE("dihedral I2(4) unequal parameters") {
  CoxeterGroup G = CoxeterGroup::dihedral(4);
  HeckeSession H(G, WeightFunction(G, {2, 1}), 4);  // a > b
  KLTable kl(H);

  CellPartition left = cells_from_links(kl, CellKind::Left, 4);
  Blocks expected = sorted_blocks({{"e"},
                                   {"2"},
                                   {"12", "212"},
                                   {"1", "21"},
                                   {"121"},
                                   {"1212"}});
  CHECK(left.block_words(H.ball()) == expected);
}

TEST_CASE("dihedral I2(2): four singleton cells") {
  for (auto weights : {std::vector<std::int64_t>{1, 1}, {2, 1}}) {
    CoxeterGroup G = CoxeterGroup::dihedral(2);
    HeckeSession H(G, WeightFunction(G, weights), 2);
    KLTable kl(H);
    CellPartition left = cells_from_links(kl, CellKind::Left, 2);
    CHECK(left.block_count() == 4);
    for (const auto& blk : left.blocks) CHECK(blk.size() == 1);
  }
}

TEST_CASE("affine A1, a > b") {
  CoxeterGroup G = CoxeterGroup::affine_a1();
  HeckeSession H(G, WeightFunction(G, {2, 1}), 8);
  KLTable kl(H);
  CellPartition left = cells_from_links(kl, CellKind::Left, 5);

  // {e}, {2}, all longer words ending in 1, all longer words ending in 2
  Blocks expected = sorted_blocks({{"e"},
                                   {"2"},
                                   {"1", "21", "121", "2121", "12121"},
                                   {"12", "212", "1212", "21212"}});
  CHECK(left.block_words(H.ball()) == expected);
}

TEST_CASE("duality, connectivity, truncation monotonicity") {
  CoxeterGroup G = CoxeterGroup::affine_g2();
  WeightFunction L = WeightFunction::from_class_vector(G, {2, 1});

  HeckeSession H(G, L, 7);
  KLTable kl(H);
  CellPartition left = cells_from_links(kl, CellKind::Left, 4);
  CellPartition right = cells_from_links(kl, CellKind::Right, 4);
  CellPartition two = cells_from_links(kl, CellKind::TwoSided, 4);

  CHECK(inversion_duality_holds(left, right, H.ball()));
  CHECK(left_connected(left, H.ball(), 3));

  // two-sided is coarser than left
  for (int x : left.ground)
    for (int y : left.ground)
      if (left.same_block(x, y)) CHECK(two.same_block(x, y));

  // block preorder is antisymmetric on distinct blocks
  for (int i = 0; i < left.block_count(); ++i)
    for (int j = 0; j < left.block_count(); ++j)
      if (i != j && left.block_leq[i][j]) CHECK_FALSE(left.block_leq[j][i]);

  // enlarging the ball may merge trusted blocks but never split them
  HeckeSession H2(G, L, 9);
  KLTable kl2(H2);
  CellPartition left2 = cells_from_links(kl2, CellKind::Left, 4);
  for (int x : left.ground)
    for (int y : left.ground) {
      const Element &ex = H.ball().elements[x], &ey = H.ball().elements[y];
      int x2 = H2.ball().id_of(ex), y2 = H2.ball().id_of(ey);
      if (left.same_block(x, y)) CHECK(left2.same_block(x2, y2));
    }
}

TEST_CASE("a_estimate examples") {
  // a(e) = 0 and a(w0) = L(w0) in finite dihedral groups
  {
    CoxeterGroup G = CoxeterGroup::dihedral(3);
    HeckeSession H(G, WeightFunction(G, {1, 1}), 3);
    KLTable kl(H);
    CHECK(a_estimate(kl, 0, 3) == 0);
    CHECK(a_estimate(kl, H.id_of(G.longest_element({0, 1})), 3) == 3);
  }
  {
    CoxeterGroup G = CoxeterGroup::dihedral(4);
    HeckeSession H(G, WeightFunction(G, {2, 1}), 4);
    KLTable kl(H);
    // L(w0) = 2a + 2b = 6
    CHECK(a_estimate(kl, H.id_of(G.longest_element({0, 1})), 4) == 6);
  }
  // G2~, (a,b) = (3,2): a(s1s2s1s2s1) = 3a - 2b = 5
  {
    CoxeterGroup G = CoxeterGroup::affine_g2();
    HeckeSession H(G, WeightFunction::from_class_vector(G, {3, 2}), 8);
    KLTable kl(H);
    CHECK(a_estimate(kl, H.id_of(G.from_string("12121")), 5) == 5);
  }
}
