#pragma once

#include <map>

#include "gfpoly.hpp"
#include "module.hpp"

namespace crosschar {

namespace mtx {

// seeded element of the enveloping algebra: random combination of short
// generator words
inline Mat random_algebra_element(const Module& m, Rng& rng, int richness) {
    const Gf& F = *m.F;
    std::vector<Mat> words;
    for (auto& g : m.gen) words.push_back(g);
    uint32_t ng = uint32_t(m.gen.size());
    for (int d = 0; d < richness && words.size() < ng + 6; ++d) {
        uint32_t i = uint32_t(rng.below(words.size()));
        uint32_t j = uint32_t(rng.below(ng));
        words.push_back(mat_mul(F, words[i], m.gen[j]));
    }
    Mat theta = mat_zero(F, m.dim, m.dim);
    for (auto& w : words) {
        Fel c = Fel(rng.below(F.size()));
        if (c >= F.size() - 1) c = F.zero();
        theta = mat_add(F, theta, mat_scale(F, w, c));
    }
    return theta;
}

struct SplitOrProof {
    bool split = false;
    Mat sub_basis;       // proper invariant row space when split
    bool irreducible = false;
};

// one attempt with a fixed algebra element; Norton certificate when the
// chosen irreducible factor has minimal nullity
inline SplitOrProof chop_attempt(const Module& m, Mat theta, Rng& rng) {
    const Gf& F = *m.F;
    SplitOrProof out;
    std::vector<Fel> seed(m.dim, F.zero());
    seed[rng.below(m.dim)] = F.one();
    Poly mp = minpoly_on_vector(F, theta, seed);
    if (uint32_t(poly_deg(mp)) == m.dim) {
        auto fs = poly_factor(F, mp, rng);
        if (fs.size() == 1 && fs[0].second == 1) {
            // cyclic vector with irreducible minimal polynomial: every
            // invariant subspace is a theta-submodule of k[x]/(f)
            out.irreducible = true;
            return out;
        }
    }
    auto factors = poly_factor(F, mp, rng);
    for (auto& [f, mult] : factors) {
        // kernel vector of f(theta) without forming f(theta): w = (mp/f)(theta) seed
        Poly cof = poly_divmod(F, mp, f).first;
        std::vector<Fel> w = poly_apply_vec(F, cof, theta, seed);
        bool nz = false;
        for (auto x : w) nz |= !F.is_zero(x);
        if (!nz) continue;
        Mat wm(1, m.dim, F.zero());
        for (uint32_t j = 0; j < m.dim; ++j) wm.at(0, j) = w[j];
        auto sp = spin(m, wm);
        if (sp.basis.rows() < m.dim) {
            out.split = true;
            out.sub_basis = sp.basis;
            return out;
        }
    }
    // no split found from this vector; try the Norton certificate with the
    // smallest-degree factor when feasible
    const Poly& f = factors.front().first;
    if (uint32_t(poly_deg(f)) > 40 && m.dim > 150) return out;  // inconclusive
    Mat ft = poly_apply_mat(F, f, theta);
    Mat K = kernel_left(F, ft);
    for (uint32_t i = 0; i < K.rows(); ++i) {
        Mat row(1, m.dim, F.zero());
        for (uint32_t j = 0; j < m.dim; ++j) row.at(0, j) = K.at(i, j);
        auto sp = spin(m, row);
        if (sp.basis.rows() < m.dim) {
            out.split = true;
            out.sub_basis = sp.basis;
            return out;
        }
    }
    if (K.rows() != uint32_t(poly_deg(f))) return out;  // nullity not minimal: inconclusive
    // transpose side: spin a kernel vector of f(theta)^T under the transposed
    // action; a proper invariant subspace there gives a submodule as its perp
    Module mt = m;
    for (auto& g : mt.gen) g = transpose(g);
    Mat Kt = kernel_left(F, transpose(ft));
    Mat row(1, m.dim, F.zero());
    for (uint32_t j = 0; j < m.dim; ++j) row.at(0, j) = Kt.at(0, j);
    auto spt = spin(mt, row);
    if (spt.basis.rows() == m.dim) {
        out.irreducible = true;
        return out;
    }
    out.split = true;
    out.sub_basis = kernel_right(F, spt.basis);  // perp of the transposed-invariant space
    return out;
}

}  // namespace mtx

// certified decision: either a proper submodule basis or an irreducibility proof
inline mtx::SplitOrProof find_submodule_or_prove_irreducible(const Module& m, Rng& rng) {
    if (m.dim == 1) {
        mtx::SplitOrProof p;
        p.irreducible = true;
        return p;
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        Mat theta = mtx::random_algebra_element(m, rng, attempt / 2 + 1);
        auto res = mtx::chop_attempt(m, std::move(theta), rng);
        if (res.split || res.irreducible) return res;
    }
    throw InternalError("chop made no progress");
}

struct ChopFactor {
    Module simple;
    uint32_t mult;
};

// composition factors with multiplicities (pairwise non-isomorphic)
inline std::vector<ChopFactor> chop(const Module& m, Rng& rng) {
    std::vector<ChopFactor> out;
    std::vector<Module> stack;
    if (m.dim > 0) stack.push_back(m);
    auto add = [&](const Module& s) {
        for (auto& cf : out) {
            if (cf.simple.dim == s.dim && is_isomorphic(cf.simple, s, rng.fork(17))) {
                ++cf.mult;
                return;
            }
        }
        out.push_back({s, 1});
    };
    while (!stack.empty()) {
        Module cur = std::move(stack.back());
        stack.pop_back();
        if (cur.dim == 0) continue;
        auto res = find_submodule_or_prove_irreducible(cur, rng);
        if (res.irreducible) {
            add(cur);
            continue;
        }
        auto sub = submodule_from_basis(cur, res.sub_basis);
        auto quo = quotient_by_basis(cur, res.sub_basis);
        stack.push_back(std::move(sub.module));
        stack.push_back(std::move(quo.module));
    }
    std::sort(out.begin(), out.end(), [](const ChopFactor& a, const ChopFactor& b) {
        if (a.simple.dim != b.simple.dim) return a.simple.dim < b.simple.dim;
        return a.simple.content_hash() < b.simple.content_hash();
    });
    return out;
}

inline bool is_irreducible(const Module& m, Rng& rng) {
    if (m.dim == 0) return false;
    return find_submodule_or_prove_irreducible(m, rng).irreducible;
}

// ---------- decomposition into indecomposable summands ----------

struct Summand {
    Module module;
    Mat inclusion;          // rows: basis inside the parent
    Mat projection;         // parent -> summand coordinates
    std::vector<Mat> endos; // basis of End(summand)
};

namespace mtx {

// split off im(f^inf) + ker(f^inf) when f is a proper Fitting element
inline bool fitting_split(const Module& m, const Mat& f, Mat& im_basis, Mat& ker_basis) {
    const Gf& F = *m.F;
    Mat p = f;
    uint32_t r = mat_rank(F, p);
    if (r == 0 || r == m.dim) return false;
    for (int t = 0; t < 24; ++t) {
        Mat p2 = mat_mul(F, p, p);
        uint32_t r2 = mat_rank(F, p2);
        if (r2 == r) break;
        p = std::move(p2);
        r = r2;
        if (r == 0) return false;
    }
    if (r == 0 || r == m.dim) return false;
    // rank is now stable: M = im(p) + ker(p) with trivial intersection
    Mat im = p;
    EchelonInfo info = echelonize(F, im);
    Mat imb(info.rank, m.dim, F.zero());
    for (uint32_t i = 0; i < info.rank; ++i)
        for (uint32_t j = 0; j < m.dim; ++j) imb.at(i, j) = im.at(i, j);
    Mat kerb = kernel_left(F, p);
    if (imb.rows() + kerb.rows() != m.dim) return false;
    im_basis = std::move(imb);
    ker_basis = std::move(kerb);
    return true;
}

inline void decompose_rec(const Module& m, const Mat& incl, const Mat& proj, std::vector<Mat> endos, Rng& rng,
                          std::vector<Summand>& out) {
    const Gf& F = *m.F;
    // rank-reduce the projected endomorphism basis
    {
        std::vector<Mat> red;
        RowSpace sp(F, m.dim * m.dim);
        for (auto& T : endos) {
            std::vector<Fel> flat(T.data());
            if (!sp.insert(flat)) red.push_back(T);
        }
        endos = std::move(red);
    }
    auto try_split = [&](const Mat& f) -> bool {
        Mat imb, kerb;
        if (!fitting_split(m, f, imb, kerb)) return false;
        auto s1 = submodule_from_basis(m, imb);
        auto s2 = submodule_from_basis(m, kerb);
        // coordinate change to split the projections
        Mat stacked(m.dim, m.dim, F.zero());
        for (uint32_t i = 0; i < s1.inclusion.rows(); ++i)
            for (uint32_t j = 0; j < m.dim; ++j) stacked.at(i, j) = s1.inclusion.at(i, j);
        for (uint32_t i = 0; i < s2.inclusion.rows(); ++i)
            for (uint32_t j = 0; j < m.dim; ++j) stacked.at(s1.inclusion.rows() + i, j) = s2.inclusion.at(i, j);
        auto invOpt = mat_inverse(F, stacked);
        if (!invOpt) throw InternalError("direct sum change of basis is singular");
        const Mat& inv = *invOpt;
        Mat proj1(m.dim, s1.inclusion.rows(), F.zero());
        Mat proj2(m.dim, s2.inclusion.rows(), F.zero());
        for (uint32_t i = 0; i < m.dim; ++i) {
            for (uint32_t j = 0; j < s1.inclusion.rows(); ++j) proj1.at(i, j) = inv.at(i, j);
            for (uint32_t j = 0; j < s2.inclusion.rows(); ++j) proj2.at(i, j) = inv.at(i, s1.inclusion.rows() + j);
        }
        auto project_endos = [&](const Mat& inc, const Mat& prj) {
            std::vector<Mat> es;
            for (auto& T : endos) es.push_back(mat_mul(F, mat_mul(F, inc, T), prj));
            return es;
        };
        decompose_rec(s1.module, mat_mul(F, s1.inclusion, incl), mat_mul(F, proj, proj1),
                      project_endos(s1.inclusion, proj1), rng, out);
        decompose_rec(s2.module, mat_mul(F, s2.inclusion, incl), mat_mul(F, proj, proj2), project_endos(s2.inclusion, proj2), rng, out);
        return true;
    };
    for (auto& T : endos)
        if (try_split(T)) return;
    for (int t = 0; t < 128; ++t) {
        Mat f = mat_zero(F, m.dim, m.dim);
        for (auto& T : endos) {
            Fel c = Fel(rng.below(F.size()));
            if (c >= F.size() - 1) c = F.zero();
            f = mat_add(F, f, mat_scale(F, T, c));
        }
        if (try_split(f)) return;
    }
    // indecomposable: every basis element (and many combinations) is
    // invertible or nilpotent
    Summand s;
    s.module = m;
    s.inclusion = incl;
    s.projection = proj;
    s.endos = std::move(endos);
    out.push_back(std::move(s));
}

}  // namespace mtx

inline std::vector<Summand> decompose(const Module& m, Rng& rng) {
    if (m.dim == 0) return {};
    const Gf& F = *m.F;
    auto endos = hom_space(m, m);
    std::vector<Summand> out;
    mtx::decompose_rec(m, mat_identity(F, m.dim), mat_identity(F, m.dim), std::move(endos), rng, out);
    // deterministic order: by dimension, then content
    std::sort(out.begin(), out.end(), [](const Summand& a, const Summand& b) {
        if (a.module.dim != b.module.dim) return a.module.dim < b.module.dim;
        return a.module.content_hash() < b.module.content_hash();
    });
    return out;
}

// ---------- catalog of simple modules ----------

struct PimData {
    Module pim;
    bool from_source = false;
    Module source;   // projective induced module containing the pim
    Mat incl;        // pim inside source
    Mat proj;        // source -> pim coordinates
};

struct Catalog {
    GroupPtr G;
    GfPtr F;
    uint32_t r = 0;
    std::vector<Module> simples;       // canonical order
    std::vector<std::string> names;    // S0, S1, ... until classified
    std::vector<PimData> pims;         // aligned with simples
    std::vector<uint32_t> block_of;    // aligned with simples
    uint32_t num_blocks = 0;
    SubgroupHandle sylow;
    uint64_t seed = 0;

    int index_of(const Module& s, Rng rng) const {
        for (size_t i = 0; i < simples.size(); ++i)
            if (simples[i].dim == s.dim && is_isomorphic(simples[i], s, rng)) return int(i);
        return -1;
    }
    int trivial_index() const {
        for (size_t i = 0; i < simples.size(); ++i) {
            if (simples[i].dim != 1) continue;
            bool triv = true;
            for (auto& g : simples[i].gen) triv &= g == mat_identity(*F, 1);
            if (triv) return int(i);
        }
        throw InternalError("no trivial module in catalog");
    }
};

// multiplicity of each simple in the head of m (splitting field: dim Hom)
inline std::vector<uint32_t> head_multiplicities(const Catalog& cat, const Module& m);

inline bool is_projective(const Catalog& cat, const Module& m) {
    if (m.dim == 0) return true;
    const Gf& F = *m.F;
    uint64_t psize = cat.sylow.order;
    if (psize == 1) return true;
    if (m.dim % psize != 0) return false;
    Mat norm = mat_zero(F, m.dim, m.dim);
    for (uint32_t id : cat.sylow.elem_ids) norm = mat_add(F, norm, m.rho(id));
    return mat_rank(F, norm) * psize == m.dim;
}

namespace mtx {

struct CatalogIncomplete : std::runtime_error {
    explicit CatalogIncomplete(const std::string& m) : std::runtime_error(m) {}
};

inline std::vector<std::pair<SubgroupHandle, std::vector<LinearChar>>> catalog_sources(const GroupInstance& G, const Gf& F,
                                                                                       uint32_t r) {
    std::vector<std::pair<SubgroupHandle, std::vector<LinearChar>>> src;
    auto add = [&](const SubgroupHandle& h) { src.push_back({h, linear_characters(G, h, F, r)}); };
    if (G.spec().family == Family::Sym) {
        add(G.subgroup("point-stabilizer"));
        add(G.subgroup("f20"));
    } else {
        add(G.subgroup("borel"));
        add(G.subgroup("singer"));
    }
    return src;
}

inline std::vector<Module> find_all_simples(GroupPtr G, GfPtr F, uint32_t r, Rng& rng) {
    uint32_t target = G->count_r_regular_classes(r);
    std::vector<Module> simples;
    auto add_factors = [&](const Module& m) {
        auto fs = chop(m, rng);
        for (auto& cf : fs) {
            bool known = false;
            for (auto& s : simples)
                if (s.dim == cf.simple.dim && is_isomorphic(s, cf.simple, rng.fork(23))) {
                    known = true;
                    break;
                }
            if (!known) simples.push_back(cf.simple);
        }
    };
    for (auto& [h, chars] : catalog_sources(*G, *F, r)) {
        for (auto& lc : chars) {
            if (simples.size() >= target) break;
            add_factors(induce_linear(G, lc, F));
        }
    }
    // tensor completion for anything the induction sources missed
    for (int pass = 0; pass < 4 && simples.size() < target; ++pass) {
        size_t before = simples.size();
        for (size_t i = 0; i < simples.size() && simples.size() < target; ++i)
            for (size_t j = i; j < simples.size() && simples.size() < target; ++j)
                if (simples[i].dim * simples[j].dim <= 700) add_factors(tensor(simples[i], simples[j]));
        if (simples.size() == before) break;
    }
    if (simples.size() != target)
        throw CatalogIncomplete("found " + std::to_string(simples.size()) + " of " + std::to_string(target));
    // absolute irreducibility: End(S) must be one-dimensional
    for (auto& s : simples)
        if (hom_space(s, s).size() != 1) throw CatalogIncomplete("simple with non-scalar endomorphisms");
    std::sort(simples.begin(), simples.end(), [](const Module& a, const Module& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        for (size_t g = 0; g < a.gen.size(); ++g) {
            if (a.gen[g].data() != b.gen[g].data()) return a.gen[g].data() < b.gen[g].data();
        }
        return false;
    });
    return simples;
}

}  // namespace mtx

inline std::vector<uint32_t> head_multiplicities(const Catalog& cat, const Module& m) {
    std::vector<uint32_t> out(cat.simples.size(), 0);
    for (size_t i = 0; i < cat.simples.size(); ++i) {
        if (cat.simples[i].dim > m.dim) continue;
        out[i] = hom_dim(m, cat.simples[i]);
    }
    return out;
}

inline std::vector<uint32_t> socle_multiplicities(const Catalog& cat, const Module& m) {
    std::vector<uint32_t> out(cat.simples.size(), 0);
    for (size_t i = 0; i < cat.simples.size(); ++i) {
        if (cat.simples[i].dim > m.dim) continue;
        out[i] = hom_dim(cat.simples[i], m);
    }
    return out;
}

// radical: intersection of the kernels of all maps onto simples
inline Mat radical_basis(const Catalog& cat, const Module& m) {
    const Gf& F = *m.F;
    std::vector<Mat> maps;
    uint32_t total = 0;
    for (auto& s : cat.simples) {
        if (s.dim > m.dim) continue;
        for (auto& T : hom_space(m, s)) {
            total += T.cols();
            maps.push_back(T);
        }
    }
    if (maps.empty()) return mat_identity(F, m.dim);
    Mat stacked(m.dim, total, F.zero());
    uint32_t off = 0;
    for (auto& T : maps) {
        for (uint32_t i = 0; i < m.dim; ++i)
            for (uint32_t j = 0; j < T.cols(); ++j) stacked.at(i, off + j) = T.at(i, j);
        off += T.cols();
    }
    return kernel_left(F, stacked);
}

// socle: sum of the images of all maps from simples
inline Mat socle_basis(const Catalog& cat, const Module& m) {
    const Gf& F = *m.F;
    RowSpace sp(F, m.dim);
    for (auto& s : cat.simples) {
        if (s.dim > m.dim) continue;
        for (auto& T : hom_space(s, m))
            for (uint32_t i = 0; i < T.rows(); ++i) sp.insert(std::vector<Fel>(T.row(i), T.row(i) + m.dim));
    }
    return sp.echelon_basis();
}

// radical layers, as multisets of catalog indices
struct ShapeDescriptor {
    std::vector<std::map<int, uint32_t>> layers;

    bool operator==(const ShapeDescriptor& o) const { return layers == o.layers; }
};

inline ShapeDescriptor radical_series(const Catalog& cat, const Module& m) {
    ShapeDescriptor sd;
    Module cur = m;
    while (cur.dim > 0) {
        auto mults = head_multiplicities(cat, cur);
        std::map<int, uint32_t> layer;
        for (size_t i = 0; i < mults.size(); ++i)
            if (mults[i]) layer[int(i)] = mults[i];
        sd.layers.push_back(std::move(layer));
        Mat rad = radical_basis(cat, cur);
        if (rad.rows() == cur.dim) throw InternalError("radical did not shrink");
        if (rad.rows() == 0) break;
        cur = submodule_from_basis(cur, rad).module;
    }
    return sd;
}

inline ShapeDescriptor socle_series(const Catalog& cat, const Module& m) {
    ShapeDescriptor sd;
    Module cur = m;
    while (cur.dim > 0) {
        auto mults = socle_multiplicities(cat, cur);
        std::map<int, uint32_t> layer;
        for (size_t i = 0; i < mults.size(); ++i)
            if (mults[i]) layer[int(i)] = mults[i];
        sd.layers.push_back(std::move(layer));
        Mat soc = socle_basis(cat, cur);
        if (soc.rows() == 0) throw InternalError("socle vanished on a nonzero module");
        if (soc.rows() == cur.dim) break;
        cur = quotient_by_basis(cur, soc).module;
    }
    return sd;
}

// heart: rad(m) / (rad(m) meet soc(m))
inline Module heart(const Catalog& cat, const Module& m) {
    const Gf& F = *m.F;
    Mat rad = radical_basis(cat, m);
    if (rad.rows() == 0) return zero_module(m.G, m.F);
    auto sub = submodule_from_basis(m, rad);
    Mat soc = socle_basis(cat, m);
    // rad meet soc, expressed in rad coordinates: rows of soc lying in rad
    // span: stack and intersect via kernels
    // intersection = { v in rad : v in soc } - compute via solving coords
    Mat join(rad.rows() + soc.rows(), m.dim, F.zero());
    for (uint32_t i = 0; i < rad.rows(); ++i)
        for (uint32_t j = 0; j < m.dim; ++j) join.at(i, j) = rad.at(i, j);
    for (uint32_t i = 0; i < soc.rows(); ++i)
        for (uint32_t j = 0; j < m.dim; ++j) join.at(rad.rows() + i, j) = soc.at(i, j);
    Mat ker = kernel_left(F, join);  // rows (a | b) with a*rad + b*soc = 0
    // intersection vectors: a*rad for each kernel row
    Mat inter(ker.rows(), rad.rows(), F.zero());
    for (uint32_t i = 0; i < ker.rows(); ++i)
        for (uint32_t j = 0; j < rad.rows(); ++j) inter.at(i, j) = ker.at(i, j);
    // rows of `inter` are coordinates in the rad basis already
    Mat interEch = inter;
    EchelonInfo info = echelonize(F, interEch);
    Mat basisInRad(info.rank, rad.rows(), F.zero());
    for (uint32_t i = 0; i < info.rank; ++i)
        for (uint32_t j = 0; j < rad.rows(); ++j) basisInRad.at(i, j) = interEch.at(i, j);
    return quotient_by_basis(sub.module, basisInRad).module;
}

inline std::vector<ChopFactor> chop_against_catalog(const Catalog& cat, const Module& m, Rng& rng) {
    auto fs = chop(m, rng);
    return fs;
}

// composition multiplicities as a vector over catalog indices
inline std::vector<uint32_t> composition_multiset(const Catalog& cat, const Module& m, Rng& rng) {
    std::vector<uint32_t> out(cat.simples.size(), 0);
    for (auto& cf : chop(m, rng)) {
        int idx = cat.index_of(cf.simple, rng.fork(31));
        if (idx < 0) throw InternalError("composition factor missing from catalog");
        out[size_t(idx)] += cf.mult;
    }
    return out;
}

// ---------- catalog build ----------

namespace mtx {

inline std::vector<SubgroupHandle> pim_source_subgroups(const GroupInstance& G, uint32_t r) {
    std::vector<SubgroupHandle> hs;
    auto push_if_rprime = [&](SubgroupHandle h) {
        if (h.order % r != 0) hs.push_back(std::move(h));
    };
    if (G.spec().family == Family::Sym) {
        push_if_rprime(G.subgroup("point-stabilizer"));
        push_if_rprime(G.subgroup("f20"));
    } else {
        push_if_rprime(G.subgroup("borel-rprime", r));
        push_if_rprime(G.subgroup("unipotent"));
        // r'-part of the Singer cycle
        auto s = G.subgroup("singer");
        uint64_t rp = p_part(s.order, r);
        if (rp == 1)
            hs.push_back(s);
        else {
            uint32_t gid = s.gen_ids.at(0);
            Perm srp = G.perm_of(gid);
            Perm acc = srp;
            for (uint64_t i = 1; i < rp; ++i) acc = acc * srp;
            push_if_rprime(G.subgroup_from_perm_gens("singer-rprime", {acc}));
        }
    }
    push_if_rprime(G.subgroup("trivial"));
    return hs;
}

}  // namespace mtx

inline Catalog build_catalog(GroupPtr G, uint32_t r, uint64_t seed = 1) {
    // Brauer bound: order of r modulo the r'-part of the exponent
    uint64_t ex = G->exponent();
    while (ex % r == 0) ex /= r;
    uint32_t e0 = 1;
    {
        uint64_t t = r % ex;
        uint32_t e = 1;
        while (t != 1 % ex) {
            t = (t * r) % ex;
            ++e;
            if (e > 64) throw InternalError("order computation runaway");
        }
        e0 = e;
    }
    std::vector<uint32_t> divisors;
    for (uint32_t d = 1; d <= e0; ++d)
        if (e0 % d == 0) divisors.push_back(d);
    for (uint32_t e : divisors) {
        uint64_t size = 1;
        bool fits = true;
        for (uint32_t i = 0; i < e; ++i) {
            size *= r;
            if (size > Gf::kMaxSize) {
                fits = false;
                break;
            }
        }
        if (!fits) continue;
        try {
            GfPtr F = get_field(r, e);
            Rng rng(hash_combine(hash_combine(seed, r), hash_combine(e, G->order())));
            Catalog cat;
            cat.G = G;
            cat.F = F;
            cat.r = r;
            cat.seed = seed;
            cat.simples = mtx::find_all_simples(G, F, r, rng);
            for (size_t i = 0; i < cat.simples.size(); ++i) cat.names.push_back("S" + std::to_string(i));
            cat.sylow = G->subgroup("sylow", r);
            // projective covers
            cat.pims.resize(cat.simples.size());
            std::vector<bool> have(cat.simples.size(), false);
            // projective simples are their own covers
            for (size_t i = 0; i < cat.simples.size(); ++i) {
                if (is_projective(cat, cat.simples[i])) {
                    cat.pims[i].pim = cat.simples[i];
                    cat.pims[i].from_source = false;
                    have[i] = true;
                }
            }
            auto sources = mtx::pim_source_subgroups(*G, r);
            for (auto& h : sources) {
                bool all = true;
                for (bool b : have) all &= b;
                if (all) break;
                for (auto& lc : linear_characters(*G, h, *F, r)) {
                    bool all2 = true;
                    for (bool b : have) all2 &= b;
                    if (all2) break;
                    Module src = induce_linear(G, lc, F);
                    // quick check: does the head contain a needed simple?
                    bool interesting = false;
                    auto heads = head_multiplicities(cat, src);
                    for (size_t i = 0; i < have.size(); ++i)
                        if (!have[i] && heads[i]) interesting = true;
                    if (!interesting) continue;
                    auto summands = decompose(src, rng);
                    for (auto& sm : summands) {
                        auto hm = head_multiplicities(cat, sm.module);
                        int head_idx = -1;
                        uint32_t nheads = 0;
                        for (size_t i = 0; i < hm.size(); ++i) {
                            nheads += hm[i];
                            if (hm[i]) head_idx = int(i);
                        }
                        if (nheads != 1 || head_idx < 0 || have[size_t(head_idx)]) continue;
                        PimData pd;
                        pd.pim = sm.module;
                        pd.from_source = true;
                        pd.source = src;
                        pd.incl = sm.inclusion;
                        pd.proj = sm.projection;
                        cat.pims[size_t(head_idx)] = std::move(pd);
                        have[size_t(head_idx)] = true;
                    }
                }
            }
            for (size_t i = 0; i < have.size(); ++i)
                if (!have[i]) throw InternalError("projective cover not found for simple " + std::to_string(i));
            // certify
            for (size_t i = 0; i < cat.simples.size(); ++i) {
                if (!is_projective(cat, cat.pims[i].pim)) throw InternalError("pim fails projectivity");
                auto hm = head_multiplicities(cat, cat.pims[i].pim);
                for (size_t j = 0; j < hm.size(); ++j)
                    if (hm[j] != (i == j ? 1u : 0u)) throw InternalError("pim has wrong head");
            }
            // blocks: linkage via Ext^1 both ways (head of rad PC(S))
            uint32_t n = uint32_t(cat.simples.size());
            std::vector<uint32_t> uf(n);
            std::iota(uf.begin(), uf.end(), 0);
            std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
                while (uf[x] != x) x = uf[x] = uf[uf[x]];
                return x;
            };
            for (uint32_t i = 0; i < n; ++i) {
                Mat rad = radical_basis(cat, cat.pims[i].pim);
                if (rad.rows() == 0) continue;
                Module radm = submodule_from_basis(cat.pims[i].pim, rad).module;
                auto hm = head_multiplicities(cat, radm);
                for (uint32_t j = 0; j < n; ++j)
                    if (hm[j]) {
                        uint32_t a = find(i), b = find(j);
                        if (a != b) uf[a] = b;
                    }
            }
            cat.block_of.assign(n, 0);
            std::map<uint32_t, uint32_t> root_to_block;
            for (uint32_t i = 0; i < n; ++i) {
                uint32_t rt = find(i);
                if (!root_to_block.count(rt)) {
                    uint32_t b = uint32_t(root_to_block.size());
                    root_to_block[rt] = b;
                }
                cat.block_of[i] = root_to_block[rt];
            }
            cat.num_blocks = uint32_t(root_to_block.size());
            return cat;
        } catch (const mtx::CatalogIncomplete&) {
            continue;
        }
    }
    throw RefusalError("no feasible splitting field certified");
}

// Hom(PC(S), B) using the projective source when available
inline std::vector<Mat> hom_from_pim(const Catalog& cat, size_t pim_idx, const Module& B) {
    const PimData& pd = cat.pims[pim_idx];
    const Gf& F = *cat.F;
    if (!pd.from_source) return hom_space(pd.pim, B);
    auto big = hom_space(pd.source, B);
    // restriction of every source hom to the summand; the splitting makes this surjective
    RowSpace sp(F, pd.pim.dim * B.dim);
    std::vector<Mat> out;
    for (auto& T : big) {
        Mat rest = mat_mul(F, pd.incl, T);
        std::vector<Fel> flat(rest.data());
        if (!sp.insert(flat)) out.push_back(std::move(rest));
    }
    return out;
}

}  // namespace crosschar
