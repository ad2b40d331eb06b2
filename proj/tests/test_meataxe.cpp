#include <catch2/catch_amalgamated.hpp>

#include "crosschar/meataxe.hpp"

using namespace crosschar;

TEST_CASE("chop of the Borel permutation module in characteristic 2") {
    Rng rng(11);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto F = get_field(2, 2);
    Module X = permutation_module(G, G->subgroup("borel"), F);
    auto fs = chop(X, rng);
    // factors k, k, V, W with dim V = dim W = 2
    uint32_t triv = 0, two = 0;
    for (auto& cf : fs) {
        if (cf.simple.dim == 1) triv += cf.mult;
        if (cf.simple.dim == 2) two += cf.mult;
    }
    REQUIRE(triv == 2);
    REQUIRE(two == 2);

    auto G7 = GroupInstance::build({Family::PSL2, 7});
    auto F4 = get_field(2, 2);
    Module X7 = permutation_module(G7, G7->subgroup("borel"), F4);
    auto fs7 = chop(X7, rng);
    uint32_t triv7 = 0, three7 = 0;
    for (auto& cf : fs7) {
        if (cf.simple.dim == 1) triv7 += cf.mult;
        if (cf.simple.dim == 3) three7 += cf.mult;
    }
    REQUIRE(triv7 == 2);
    REQUIRE(three7 == 2);
}

TEST_CASE("irreducibility certification on an irreducible module") {
    Rng rng(12);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto F = get_field(2, 2);
    Module X = permutation_module(G, G->subgroup("borel"), F);
    Mat ones(1, X.dim, F->one());
    auto quo = quotient_by_basis(X, spin(X, ones).basis);  // X/k, dim 5, not semisimple
    REQUIRE(!is_irreducible(quo.module, rng));
    // a 2-dim factor is irreducible
    auto fs = chop(X, rng);
    for (auto& cf : fs) REQUIRE(is_irreducible(cf.simple, rng));
}

TEST_CASE("catalog for PSL2(5) mod 2") {
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    REQUIRE(cat.simples.size() == 4);
    std::vector<uint32_t> dims;
    for (auto& s : cat.simples) dims.push_back(s.dim);
    REQUIRE(dims == std::vector<uint32_t>{1, 2, 2, 4});
    // splitting field for this cell certifies at GF(4)
    REQUIRE(cat.F->characteristic() == 2);
    REQUIRE(cat.F->degree() == 2);
    // the 4-dimensional simple is projective, the others are not
    REQUIRE(is_projective(cat, cat.simples[3]));
    REQUIRE(!is_projective(cat, cat.simples[0]));
    REQUIRE(!is_projective(cat, cat.simples[1]));
    // principal block is {k, V, W}; the projective simple sits alone
    REQUIRE(cat.num_blocks == 2);
    REQUIRE(cat.block_of[0] == cat.block_of[1]);
    REQUIRE(cat.block_of[0] == cat.block_of[2]);
    REQUIRE(cat.block_of[0] != cat.block_of[3]);
    // PC(k) has dimension 12 and composition multiset {k:4, V:2, W:2}
    int ki = cat.trivial_index();
    REQUIRE(ki == 0);
    REQUIRE(cat.pims[0].pim.dim == 12);
    Rng rng(5);
    auto mult = composition_multiset(cat, cat.pims[0].pim, rng);
    REQUIRE(mult == std::vector<uint32_t>{4, 2, 2, 0});
    // PC(V) and PC(W) have dim 8
    REQUIRE(cat.pims[1].pim.dim == 8);
    REQUIRE(cat.pims[2].pim.dim == 8);
}

TEST_CASE("catalog for PSL2(7) mod 2 and perm module shape") {
    auto G = GroupInstance::build({Family::PSL2, 7});
    auto cat = build_catalog(G, 2);
    REQUIRE(cat.simples.size() == 4);
    std::vector<uint32_t> dims;
    for (auto& s : cat.simples) dims.push_back(s.dim);
    REQUIRE(dims == std::vector<uint32_t>{1, 3, 3, 8});
    // perm module is projective (Borel has odd order) with shape [k | V+W | k]
    Module X = permutation_module(G, G->subgroup("borel"), cat.F);
    REQUIRE(is_projective(cat, X));
    auto sd = radical_series(cat, X);
    REQUIRE(sd.layers.size() == 3);
    REQUIRE(sd.layers[0] == std::map<int, uint32_t>{{0, 1}});
    REQUIRE(sd.layers[1] == std::map<int, uint32_t>{{1, 1}, {2, 1}});
    REQUIRE(sd.layers[2] == std::map<int, uint32_t>{{0, 1}});
    // and is the projective cover of the trivial module
    REQUIRE(cat.pims[0].pim.dim == 8);
    Rng rng(3);
    REQUIRE(is_isomorphic(cat.pims[0].pim, X, rng).has_value());
    // socle of the perm module is trivial of dim 1
    auto socm = socle_multiplicities(cat, X);
    REQUIRE(socm == std::vector<uint32_t>{1, 0, 0, 0});
}

TEST_CASE("catalog for PGL2(5) mod 3 has two linear simples") {
    auto G = GroupInstance::build({Family::PGL2, 5});
    auto cat = build_catalog(G, 3);
    REQUIRE(cat.simples.size() == 5);
    uint32_t linear = 0;
    for (auto& s : cat.simples)
        if (s.dim == 1) ++linear;
    REQUIRE(linear == 2);
    // blocks: {k, V}, {delta, V delta}, {projective 6-dim}
    REQUIRE(cat.num_blocks == 3);
}

TEST_CASE("decompose splits a direct sum with certified summands") {
    Rng rng(9);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    const auto& V = cat.simples[1];
    const auto& k = cat.simples[0];
    Module m = direct_sum(direct_sum(k, k), V);
    auto parts = decompose(m, rng);
    REQUIRE(parts.size() == 3);
    REQUIRE(parts[0].module.dim == 1);
    REQUIRE(parts[1].module.dim == 1);
    REQUIRE(parts[2].module.dim == 2);
    // irreducible module: single summand
    auto one = decompose(V, rng);
    REQUIRE(one.size() == 1);
    // heart of the perm module of PSL2(5) is V + W of dim 4
    Module X = permutation_module(G, G->subgroup("borel"), cat.F);
    Module h = heart(cat, X);
    REQUIRE(h.dim == 4);
    auto hp = decompose(h, rng);
    REQUIRE(hp.size() == 2);
    REQUIRE(hp[0].module.dim == 2);
    REQUIRE(hp[1].module.dim == 2);
}

TEST_CASE("radical and socle series lengths agree") {
    Rng rng(21);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    Module X = permutation_module(G, G->subgroup("borel"), cat.F);
    auto rs = radical_series(cat, X);
    auto ss = socle_series(cat, X);
    REQUIRE(rs.layers.size() == ss.layers.size());
    REQUIRE(rs.layers.size() == 3);
    // chop equals the union of radical layers
    auto mult = composition_multiset(cat, X, rng);
    std::vector<uint32_t> fromLayers(cat.simples.size(), 0);
    for (auto& layer : rs.layers)
        for (auto& [idx, c] : layer) fromLayers[size_t(idx)] += c;
    REQUIRE(mult == fromLayers);
}
