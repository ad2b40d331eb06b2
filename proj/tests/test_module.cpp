#include <catch2/catch_amalgamated.hpp>

#include "crosschar/module.hpp"

using namespace crosschar;

static void validate_action(const Module& m, int samples, Rng& rng) {
    // rho extends to a homomorphism: check rho(g)rho(x) = rho(gx) on samples
    for (int t = 0; t < samples; ++t) {
        uint32_t x = uint32_t(rng.below(m.G->order()));
        uint32_t gi = uint32_t(rng.below(m.G->num_gens()));
        uint32_t gx = m.G->id_of(m.G->gen(gi) * m.G->perm_of(x));
        REQUIRE(mat_mul(*m.F, m.gen[gi], m.rho(x)) == m.rho(gx));
    }
}

TEST_CASE("induced and permutation modules act correctly") {
    Rng rng(1);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto F = get_field(2, 2);
    auto B = G->subgroup("borel");
    Module X = permutation_module(G, B, F);
    REQUIRE(X.dim == 6);
    validate_action(X, 40, rng);
    // regular module
    Module reg = permutation_module(G, G->subgroup("trivial"), F);
    REQUIRE(reg.dim == 60);
    validate_action(reg, 10, rng);
    // all-ones vector is fixed
    Mat fix = fixed_points_all(X);
    REQUIRE(fix.rows() == 1);
}

TEST_CASE("induction from a nontrivial linear character") {
    Rng rng(2);
    auto G = GroupInstance::build({Family::PSL2, 7});
    auto B = G->subgroup("borel");
    // r = 3: the only character of B = 7:3 with 3'-order values is trivial
    auto F729 = get_field(3, 6);
    auto chars = linear_characters(*G, B, *F729, 3);
    REQUIRE(chars.size() == 1);
    // r = 2 over GF(4): the three characters of the C3 quotient
    auto F4 = get_field(2, 2);
    auto chars2 = linear_characters(*G, B, *F4, 2);
    REQUIRE(chars2.size() == 3);
    for (auto& lc : chars2) {
        Module M = induce_linear(G, lc, F4);
        REQUIRE(M.dim == 8);
        validate_action(M, 25, rng);
    }
}

TEST_CASE("dual is an involution and tensor dims multiply") {
    Rng rng(3);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto F = get_field(2, 2);
    Module X = permutation_module(G, G->subgroup("borel"), F);
    Module Xdd = dual(dual(X));
    for (uint32_t gi = 0; gi < G->num_gens(); ++gi) REQUIRE(Xdd.gen[gi] == X.gen[gi]);
    Module T = tensor(X, X);
    REQUIRE(T.dim == 36);
    validate_action(T, 15, rng);
    Module k = trivial_module(G, F);
    Module kX = tensor(k, X);
    REQUIRE(kX.dim == X.dim);
    // permutation modules are self-dual
    auto iso = is_isomorphic(X, dual(X), rng);
    REQUIRE(iso.has_value());
}

TEST_CASE("spin, submodule and quotient") {
    Rng rng(4);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto F = get_field(2, 2);
    Module X = permutation_module(G, G->subgroup("borel"), F);
    // spin of the all-ones vector: the trivial submodule
    Mat ones(1, X.dim, F->one());
    auto sp = spin(X, ones);
    REQUIRE(sp.basis.rows() == 1);
    auto sub = submodule_from_basis(X, sp.basis);
    REQUIRE(sub.module.dim == 1);
    for (auto& g : sub.module.gen) REQUIRE(g == mat_identity(*F, 1));
    auto quo = quotient_by_basis(X, sp.basis);
    REQUIRE(quo.module.dim == 5);
    validate_action(quo.module, 20, rng);
    // projection intertwines: rho_X(g) * proj = proj * rho_Q(g)
    for (uint32_t gi = 0; gi < G->num_gens(); ++gi)
        REQUIRE(mat_mul(*F, X.gen[gi], quo.projection) == mat_mul(*F, quo.projection, quo.module.gen[gi]));
    // quotient by zero and by everything
    auto quo0 = quotient_by_basis(X, Mat(0, X.dim, F->zero()));
    REQUIRE(quo0.module.dim == X.dim);
    auto spall = spin(X, mat_identity(*F, X.dim));
    auto quoall = quotient_by_basis(X, spall.basis);
    REQUIRE(quoall.module.dim == 0);
}

TEST_CASE("spin of the regular module of C2 over GF(2)") {
    // exhaustive: the nonzero vectors of kC2 split into generators of the
    // whole module and generators of the socle
    auto S5unused = 0;
    (void)S5unused;
    // build C2 as the materialized center of SL2(5)... simpler: Sym path not
    // available, use subgroup of PSL2(5) generated by an involution
    auto G = GroupInstance::build({Family::PSL2, 5});
    uint32_t invol = 0;
    for (uint32_t i = 1; i < G->order(); ++i)
        if (G->element_order(i) == 2) {
            invol = i;
            break;
        }
    auto C2 = G->subgroup_from_gen_ids("c2", {invol});
    auto mat = G->materialize(C2);
    auto F = get_field(2, 1);
    Module reg = permutation_module(mat.group, mat.group->subgroup("trivial"), F);
    REQUIRE(reg.dim == 2);
    int full = 0, proper = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (!a && !b) continue;
            Mat v(1, 2, F->zero());
            if (a) v.at(0, 0) = F->one();
            if (b) v.at(0, 1) = F->one();
            auto sp = spin(reg, v);
            if (sp.basis.rows() == 2)
                ++full;
            else
                ++proper;
        }
    REQUIRE(full == 2);
    REQUIRE(proper == 1);
}

TEST_CASE("hom spaces: Frobenius reciprocity and Schur") {
    Rng rng(5);
    auto G = GroupInstance::build({Family::PSL2, 5});
    auto F = get_field(2, 2);
    Module k = trivial_module(G, F);
    Module X = permutation_module(G, G->subgroup("borel"), F);
    REQUIRE(hom_dim(k, X) == 1);   // one trivial submodule (transitive action)
    REQUIRE(hom_dim(X, k) == 1);   // one trivial quotient
    REQUIRE(hom_dim(k, k) == 1);
    // Frobenius reciprocity dims on random pairs: dim Hom(Ind w, M) = dim Hom_H(w, Res M)
    auto B = G->subgroup("borel");
    auto chars = linear_characters(*G, B, *F, 2);
    for (auto& lc : chars) {
        Module Ind = induce_linear(G, lc, F);
        for (const Module* M : {&X, &k}) {
            uint32_t lhs = hom_dim(Ind, *M);
            // rhs: lambda-isotypic of Res_B M
            auto R = restrict_to(*M, B);
            uint32_t count = 0;
            {
                const Gf& FF = *F;
                Mat stacked(M->dim, M->dim * uint32_t(B.gen_ids.size()), FF.zero());
                for (size_t kk = 0; kk < B.gen_ids.size(); ++kk) {
                    Mat d = M->rho(B.gen_ids[kk]);
                    Fel lam = lc.value_of_parent_id(*G, B.gen_ids[kk], FF);
                    for (uint32_t i = 0; i < M->dim; ++i)
                        for (uint32_t j = 0; j < M->dim; ++j) {
                            Fel v = d.at(i, j);
                            if (i == j) v = FF.sub(v, lam);
                            stacked.at(i, uint32_t(kk) * M->dim + j) = v;
                        }
                }
                count = kernel_left(FF, stacked).rows();
            }
            REQUIRE(lhs == count);
        }
    }
    // hom between the two generic relation-path modules agrees with the
    // induced shortcut: strip provenance and recompute
    Module Xplain = X;
    Xplain.induced = nullptr;
    REQUIRE(hom_dim(Xplain, Xplain) == hom_dim(X, X));
    REQUIRE(hom_dim(k, Xplain) == 1);
    // intertwining property of every basis element
    for (auto& T : hom_space(Xplain, Xplain))
        for (uint32_t gi = 0; gi < G->num_gens(); ++gi)
            REQUIRE(mat_mul(*F, X.gen[gi], T) == mat_mul(*F, T, X.gen[gi]));
}

TEST_CASE("restriction keeps dimensions and fixed points work") {
    auto G = GroupInstance::build({Family::PSL2, 7});
    auto F = get_field(2, 6);
    auto B = G->subgroup("borel");
    Module X = permutation_module(G, B, F);
    auto R = restrict_to(X, B);
    REQUIRE(R.module.dim == X.dim);
    // Res_B(Ind_B k) has a trivial submodule
    Mat fp = fixed_points_all(R.module);
    REQUIRE(fp.rows() >= 1);
    // fixed points of the full group on X: 1-dimensional
    REQUIRE(fixed_points(X, G->subgroup_from_gen_ids("all", {G->id_of(G->gen(0)), G->id_of(G->gen(1)), G->id_of(G->gen(2))})).rows() == 1);
    // regular module of the trivial subgroup: everything is fixed
    REQUIRE(fixed_points(X, G->subgroup("trivial")).rows() == X.dim);
}
