#include <catch2/catch_amalgamated.hpp>

#include "crosschar/heller.hpp"

using namespace crosschar;

TEST_CASE("projective covers and basic omegas over PSL2(7) mod 2") {
    auto G = GroupInstance::build({Family::PSL2, 7});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    Module k = cat.simples[size_t(cat.trivial_index())];
    auto pc = eng.projective_cover(k);
    REQUIRE(pc.P.dim == 8);  // PC(k) = the Borel permutation module
    REQUIRE(pc.omega.dim == 7);
    // Omega of a projective module is zero
    Module proj = cat.simples[3];  // the 8-dimensional projective simple
    REQUIRE(is_projective(cat, proj));
    REQUIRE(eng.omega(proj).dim == 0);
    // cover of Omega k: head of Omega k is V + W, so P = PC(V) + PC(W)
    auto pc2 = eng.projective_cover(pc.omega);
    REQUIRE(pc2.P.dim == 32);
    REQUIRE(pc2.pim_mults.size() == 2);
}

TEST_CASE("Fong-Milgram series for PSL2(5) in characteristic 2") {
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    Module k = cat.simples[size_t(cat.trivial_index())];
    std::vector<uint32_t> want{1, 0, 1, 2, 1, 2, 3, 2, 3};
    for (uint32_t n = 0; n <= 8; ++n) REQUIRE(eng.cohomology_dim(k, n) == want[n]);
}

TEST_CASE("omega periodicity: PSL2(5) mod 2 has period 3 on V") {
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    Rng rng(77);
    auto orb = eng.omega_orbit(cat.simples[1], 6, rng);
    REQUIRE(orb.period == 3);
    // Ext^n(V,W) vanishes for n <= 6 (different principal-block simples, q = 1 mod 4)
    for (uint32_t n = 0; n <= 6; ++n) REQUIRE(eng.ext_dim(cat.simples[1], 2, n) == 0);
    // Ext^n(V,V): zero iff n = 1 mod 3
    for (uint32_t n = 0; n <= 6; ++n) REQUIRE(eng.ext_dim(cat.simples[1], 1, n) == (n % 3 == 1 ? 0 : 1));
}

TEST_CASE("SL2(5) mod 2: principal-block simples have omega-period exactly 4") {
    auto G = GroupInstance::build({Family::SL2, 5});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    Rng rng(78);
    // principal block: k and the two 2-dimensional simples
    for (size_t i = 0; i < 3; ++i) {
        auto orb = eng.omega_orbit(cat.simples[i], 4, rng);
        REQUIRE(orb.period == 4);
        REQUIRE(!is_isomorphic(orb.translates[2], cat.simples[i], rng));
    }
    // Omega^2 k has the shape [V+W | k | V+W] of dimension 9
    {
        Module k0 = cat.simples[size_t(cat.trivial_index())];
        Module om2 = eng.omega_power(k0, 2);
        REQUIRE(om2.dim == 9);
        auto sd = radical_series(cat, om2);
        REQUIRE(sd.layers.size() == 3);
        REQUIRE(sd.layers[0] == std::map<int, uint32_t>{{1, 1}, {2, 1}});
        REQUIRE(sd.layers[1] == std::map<int, uint32_t>{{0, 1}});
        REQUIRE(sd.layers[2] == std::map<int, uint32_t>{{1, 1}, {2, 1}});
    }
    // V and W never extend each other
    for (uint32_t n = 0; n <= 6; ++n) {
        REQUIRE(eng.ext_dim(cat.simples[1], 2, n) == 0);
        REQUIRE(eng.ext_dim(cat.simples[2], 1, n) == 0);
    }
    // H^n(G,k) pattern 1,0,0,1,1,0,0,1,...
    Module k = cat.simples[size_t(cat.trivial_index())];
    std::vector<uint32_t> want{1, 0, 0, 1, 1, 0, 0, 1, 1};
    for (uint32_t n = 0; n <= 8; ++n) REQUIRE(eng.cohomology_dim(k, n) == want[n]);
}

TEST_CASE("odd characteristic: PSL2(5) mod 3 walks the Brauer tree") {
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 3);
    HellerEngine eng(cat);
    // simples: k, Ma1(3), Ma2(3), V(4); the 3-dimensional ones are projective
    std::vector<uint32_t> dims;
    for (auto& s : cat.simples) dims.push_back(s.dim);
    REQUIRE(dims == std::vector<uint32_t>{1, 3, 3, 4});
    REQUIRE(is_projective(cat, cat.simples[1]));
    REQUIRE(is_projective(cat, cat.simples[2]));
    Module k = cat.simples[0];
    // Omega k is uniserial [V | k] of dimension 5
    Module om = eng.omega(k);
    REQUIRE(om.dim == 5);
    auto sd = radical_series(cat, om);
    REQUIRE(sd.layers.size() == 2);
    REQUIRE(sd.layers[0] == std::map<int, uint32_t>{{3, 1}});
    REQUIRE(sd.layers[1] == std::map<int, uint32_t>{{0, 1}});
    // H^n(G,k): 1,0,0,1 pattern mod 4
    std::vector<uint32_t> want{1, 0, 0, 1, 1, 0, 0, 1, 1};
    for (uint32_t n = 0; n <= 8; ++n) REQUIRE(eng.cohomology_dim(k, n) == want[n]);
    // special branch: the 3-part of q+1 is 3, so Ext^n(V,V) follows H^n(G,k)
    for (uint32_t n = 0; n <= 8; ++n) REQUIRE(eng.ext_dim(cat.simples[3], 3, n) == want[n]);
}

TEST_CASE("general Ext evaluator agrees with the head-of-omega shortcut") {
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    for (size_t a = 0; a < cat.simples.size(); ++a)
        for (size_t b = 0; b < cat.simples.size(); ++b) {
            auto gen = eng.ext_dims_general(cat.simples[a], cat.simples[b], 5);
            for (uint32_t n = 0; n <= 5; ++n) REQUIRE(gen[n] == eng.ext_dim(cat.simples[a], b, n));
        }
}

TEST_CASE("kernel of every cover lies in the radical") {
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    for (auto& s : cat.simples) {
        auto pc = eng.projective_cover(s);
        if (pc.kernel.rows() == 0) continue;
        Mat rad = radical_basis(cat, pc.P);
        // every kernel row lies in the radical row space
        RowSpace sp(*cat.F, pc.P.dim);
        for (uint32_t i = 0; i < rad.rows(); ++i) sp.insert(std::vector<Fel>(rad.row(i), rad.row(i) + pc.P.dim));
        for (uint32_t i = 0; i < pc.kernel.rows(); ++i)
            REQUIRE(sp.contains(std::vector<Fel>(pc.kernel.row(i), pc.kernel.row(i) + pc.P.dim)));
    }
}

TEST_CASE("dimension bookkeeping along omega") {
    Rng rng(99);
    auto G = GroupInstance::build({Family::PSL2, 7});
    auto cat = build_catalog(G, 2);
    HellerEngine eng(cat);
    Module cur = cat.simples[1];
    for (int i = 0; i < 4; ++i) {
        auto pc = eng.projective_cover(cur);
        REQUIRE(pc.omega.dim == pc.P.dim - cur.dim);
        cur = pc.omega;
    }
}
