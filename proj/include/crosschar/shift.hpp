#pragma once

#include "bar.hpp"
#include "heller.hpp"

namespace crosschar {

// Dimension-shifting context: a subgroup H with O_{r'}(H) = O^r(H), the
// permutation module X on its cosets and the quotient X/k.
struct ShiftContext {
    GroupPtr G;
    SubgroupHandle H;
    uint32_t r = 0;
    CoreCheckResult cores;
    bool hypothesis = false;
    Module X;    // Ind_H^G k
    Module Xk;   // X modulo the span of the all-ones vector
    Mat ones;    // the fixed line inside X
};

inline ShiftContext make_shift_context(const Catalog& cat, const SubgroupHandle& H) {
    ShiftContext ctx;
    ctx.G = cat.G;
    ctx.H = H;
    ctx.r = cat.r;
    ctx.cores = cat.G->core_check(H, cat.r);
    ctx.hypothesis = ctx.cores.hypothesis_holds;
    ctx.X = permutation_module(cat.G, H, cat.F);
    Mat ones(1, ctx.X.dim, cat.F->one());
    ctx.ones = spin(ctx.X, ones).basis;
    if (ctx.ones.rows() != 1) throw InternalError("permutation module has no fixed line");
    ctx.Xk = quotient_by_basis(ctx.X, ctx.ones).module;
    return ctx;
}

struct TheoremACheck {
    uint32_t lhs = 0;  // dim H^n(G, V)
    uint32_t rhs = 0;  // dim Ext^{n-1}(V^*, X/k)
    bool equal = false;
};

// dim H^n(G,V) = dim Ext^{n-1}(V^*, X/k) under the core hypothesis and V^H = 0
inline TheoremACheck theorem_a_check(const ShiftContext& ctx, HellerEngine& eng, const Module& v, uint32_t n) {
    if (n < 1) throw ArgumentError("degree must be at least 1");
    if (!ctx.hypothesis) throw PreconditionError("core coincidence hypothesis fails for H");
    if (fixed_points(v, ctx.H).rows() != 0) throw PreconditionError("module has H-fixed points");
    TheoremACheck out;
    out.lhs = eng.cohomology_dim(v, n);
    out.rhs = eng.ext_dims_general(dual(v), ctx.Xk, n - 1)[n - 1];
    out.equal = out.lhs == out.rhs;
    return out;
}

// dim H^1(G,V) = dim Hom(V^*, X/k) - dim V^H, for r'-subgroups H
inline uint32_t h1_correction(const ShiftContext& ctx, const Module& v) {
    if (ctx.H.order % ctx.r == 0) throw PreconditionError("subgroup order divisible by r");
    uint32_t homdim = hom_dim(dual(v), ctx.Xk);
    uint32_t fix = fixed_points(v, ctx.H).rows();
    if (homdim < fix) throw InternalError("negative corrected dimension");
    return homdim - fix;
}

// dim H^2(G,V) = dim Hom(V^*, (X/k) tensor (X/k)) - dim Hom_H(V^*, X/k)
inline uint32_t h2_formula(const ShiftContext& ctx, const Module& v) {
    if (ctx.H.order % ctx.r == 0) throw PreconditionError("subgroup order divisible by r");
    Module vd = dual(v);
    Module XkXk = tensor(ctx.Xk, ctx.Xk);
    uint32_t big = hom_dim(vd, XkXk);
    // restricted hom over the materialized subgroup
    auto rv = restrict_to(vd, ctx.H);
    auto rx = restrict_to(ctx.Xk, ctx.H);
    uint32_t small = hom_dim(rv.module, rx.module);
    if (big < small) throw InternalError("negative corrected dimension");
    return big - small;
}

// the four equivalent statements, evaluated independently
struct EquivalenceAudit {
    bool fixed_h = false;        // V^H != 0
    bool trivial_factor = false; // Res_H V has a trivial composition factor
    bool fixed_core = false;     // V^A != 0 for A = O_{r'}(H)
    bool fixed_dual = false;     // (V^*)^H != 0
    bool consistent = false;
};

inline EquivalenceAudit lemma_equivalence_audit(const ShiftContext& ctx, const Module& v, Rng& rng) {
    EquivalenceAudit a;
    a.fixed_h = fixed_points(v, ctx.H).rows() > 0;
    auto res = restrict_to(v, ctx.H);
    for (auto& cf : chop(res.module, rng)) {
        if (cf.simple.dim != 1) continue;
        bool triv = true;
        for (auto& g : cf.simple.gen) triv &= g == mat_identity(*v.F, 1);
        if (triv) {
            a.trivial_factor = true;
            break;
        }
    }
    a.fixed_core = fixed_points(v, ctx.cores.o_rprime).rows() > 0;
    a.fixed_dual = fixed_points(dual(v), ctx.H).rows() > 0;
    a.consistent = (a.fixed_h == a.trivial_factor) && (a.fixed_h == a.fixed_core) && (a.fixed_h == a.fixed_dual);
    return a;
}

// a deterministic audit sample: simples, duals, the permutation module and
// its quotient, small tensor products and Heller translates
inline std::vector<Module> audit_module_sample(const Catalog& cat, const ShiftContext& ctx, HellerEngine& eng,
                                               size_t at_least) {
    std::vector<Module> mods;
    mods.push_back(trivial_module(cat.G, cat.F));
    for (auto& s : cat.simples) mods.push_back(s);
    for (auto& s : cat.simples) mods.push_back(dual(s));
    mods.push_back(ctx.X);
    mods.push_back(ctx.Xk);
    for (size_t i = 0; i < cat.simples.size() && mods.size() < at_least + 8; ++i)
        for (size_t j = i; j < cat.simples.size(); ++j) {
            if (cat.simples[i].dim * cat.simples[j].dim > 400) continue;
            mods.push_back(tensor(cat.simples[i], cat.simples[j]));
            if (mods.size() >= at_least + 8) break;
        }
    for (size_t i = 0; i < cat.simples.size() && mods.size() < at_least + 12; ++i) {
        Module om = eng.omega(cat.simples[i]);
        if (om.dim > 0) mods.push_back(om);
    }
    return mods;
}

struct IndexVanishingReport {
    uint32_t swept = 0;
    uint32_t failures = 0;
};

// simples of dimension above the index, or missing from the permutation
// module, have vanishing first cohomology
inline IndexVanishingReport index_vanishing(const ShiftContext& ctx, const Catalog& cat, HellerEngine& eng, Rng& rng) {
    if (!ctx.hypothesis) throw PreconditionError("core coincidence hypothesis fails for H");
    IndexVanishingReport rep;
    uint64_t index = ctx.G->order() / ctx.H.order;
    auto permFactors = composition_multiset(cat, ctx.X, rng);
    for (size_t i = 0; i < cat.simples.size(); ++i) {
        const Module& s = cat.simples[i];
        if (s.dim == 1) continue;  // linear modules excluded from the sweep
        bool sweep = s.dim > index || permFactors[i] == 0;
        if (!sweep) continue;
        ++rep.swept;
        if (eng.cohomology_dim(s, 1) != 0) ++rep.failures;
    }
    return rep;
}

}  // namespace crosschar
