#pragma once

#include "group.hpp"
#include "matrix.hpp"

namespace crosschar {

// Right-coset data used by induced modules: transversal for H\G with
// t_0 = identity and a BFS tree t_i = t_parent * gen.
struct RightCosets {
    uint32_t count = 0;
    std::vector<uint32_t> transversal;
    std::vector<int32_t> parent, via_gen;
    // coset index of t_i * g for each generator g
    std::vector<std::vector<uint32_t>> next;
    // the H-part h = t_i * g * t_j^{-1}, as a parent-group element id
    std::vector<std::vector<uint32_t>> hpart;
};

inline RightCosets right_cosets(const GroupInstance& G, const SubgroupHandle& H) {
    auto coset_key = [&](uint32_t x) {
        uint32_t best = UINT32_MAX;
        for (uint32_t hid : H.elem_ids) best = std::min(best, G.id_of(G.perm_of(hid) * G.perm_of(x)));
        return best;
    };
    RightCosets rc;
    std::unordered_map<uint32_t, uint32_t> key_to_idx;
    rc.transversal.push_back(G.identity_id());
    rc.parent.push_back(-1);
    rc.via_gen.push_back(-1);
    key_to_idx[coset_key(G.identity_id())] = 0;
    for (uint32_t head = 0; head < rc.transversal.size(); ++head) {
        for (uint32_t gi = 0; gi < G.num_gens(); ++gi) {
            uint32_t x = G.id_of(G.perm_of(rc.transversal[head]) * G.gen(gi));
            uint32_t key = coset_key(x);
            if (!key_to_idx.count(key)) {
                key_to_idx[key] = uint32_t(rc.transversal.size());
                rc.transversal.push_back(x);
                rc.parent.push_back(int32_t(head));
                rc.via_gen.push_back(int32_t(gi));
            }
        }
    }
    rc.count = uint32_t(rc.transversal.size());
    rc.next.assign(G.num_gens(), std::vector<uint32_t>(rc.count, 0));
    rc.hpart.assign(G.num_gens(), std::vector<uint32_t>(rc.count, 0));
    for (uint32_t gi = 0; gi < G.num_gens(); ++gi)
        for (uint32_t i = 0; i < rc.count; ++i) {
            uint32_t x = G.id_of(G.perm_of(rc.transversal[i]) * G.gen(gi));
            uint32_t key = coset_key(x);
            uint32_t j = key_to_idx.at(key);
            rc.next[gi][i] = j;
            uint32_t h = G.id_of(G.perm_of(x) * G.perm_of(rc.transversal[j]).inverse());
            if (!H.contains(h)) throw InternalError("transversal decomposition left the subgroup");
            rc.hpart[gi][i] = h;
        }
    return rc;
}

// Provenance of a module induced from a linear character; makes Hom spaces
// in and out of the module computable by Frobenius reciprocity.
struct InducedInfo {
    SubgroupHandle H;
    RightCosets cosets;
    std::vector<uint32_t> hgen_parent_ids;  // generators of H as parent element ids
    std::vector<Fel> lambda_on_hgens;
};

class Module {
  public:
    GroupPtr G;
    GfPtr F;
    uint32_t dim = 0;
    std::vector<Mat> gen;  // row action: v -> v * rho(g), rho(gh) = rho(g) rho(h)
    std::shared_ptr<const InducedInfo> induced;

    Module() = default;
    Module(GroupPtr g, GfPtr f, uint32_t d, std::vector<Mat> mats)
        : G(std::move(g)), F(std::move(f)), dim(d), gen(std::move(mats)), rho_cache_(std::make_shared<Cache>()) {}

    // action matrix of an arbitrary element, assembled along its BFS word
    const Mat& rho(uint32_t elem_id) const {
        auto it = rho_cache_->find(elem_id);
        if (it != rho_cache_->end()) return it->second;
        Mat m;
        if (elem_id == G->identity_id())
            m = mat_identity(*F, dim);
        else {
            int32_t par = G->word_parent(elem_id);
            int32_t gi = G->word_gen(elem_id);
            m = mat_mul(*F, gen[size_t(gi)], rho(uint32_t(par)));
        }
        auto res = rho_cache_->emplace(elem_id, std::move(m));
        return res.first->second;
    }

    uint64_t content_hash() const {
        uint64_t h = hash_combine(uint64_t(F->characteristic()), F->degree());
        h = hash_combine(h, dim);
        for (auto& m : gen) h = hash_combine(h, mat_hash(m));
        return h;
    }

  private:
    using Cache = std::unordered_map<uint32_t, Mat>;
    mutable std::shared_ptr<Cache> rho_cache_ = std::make_shared<Cache>();
};

inline Module trivial_module(GroupPtr G, GfPtr F) {
    std::vector<Mat> mats(G->num_gens(), mat_identity(*F, 1));
    return Module(std::move(G), std::move(F), 1, std::move(mats));
}

inline Module zero_module(GroupPtr G, GfPtr F) {
    std::vector<Mat> mats(G->num_gens(), Mat(0, 0, F->zero()));
    return Module(std::move(G), std::move(F), 0, std::move(mats));
}

inline Module direct_sum(const Module& a, const Module& b) {
    if (a.G != b.G || !a.F->same(*b.F)) throw ConfigError("direct sum across groups or fields");
    const Gf& F = *a.F;
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < a.G->num_gens(); ++gi) {
        Mat m = mat_zero(F, a.dim + b.dim, a.dim + b.dim);
        for (uint32_t i = 0; i < a.dim; ++i)
            for (uint32_t j = 0; j < a.dim; ++j) m.at(i, j) = a.gen[gi].at(i, j);
        for (uint32_t i = 0; i < b.dim; ++i)
            for (uint32_t j = 0; j < b.dim; ++j) m.at(a.dim + i, a.dim + j) = b.gen[gi].at(i, j);
        mats.push_back(std::move(m));
    }
    return Module(a.G, a.F, a.dim + b.dim, std::move(mats));
}

inline Module dual(const Module& m) {
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < m.G->num_gens(); ++gi) {
        uint32_t inv_id = m.G->inv(m.G->id_of(m.G->gen(gi)));
        mats.push_back(transpose(m.rho(inv_id)));
    }
    return Module(m.G, m.F, m.dim, std::move(mats));
}

inline Module tensor(const Module& a, const Module& b) {
    if (a.G != b.G) throw ConfigError("tensor across groups");
    if (!a.F->same(*b.F)) throw ConfigError("tensor across fields");
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < a.G->num_gens(); ++gi) mats.push_back(kron(*a.F, a.gen[gi], b.gen[gi]));
    return Module(a.G, a.F, a.dim * b.dim, std::move(mats));
}

// restriction: the same space as a module for the materialized subgroup
struct Restriction {
    Module module;                       // over mat.group
    GroupInstance::Materialized mat;     // child-to-parent element map
};

inline Restriction restrict_to(const Module& m, const SubgroupHandle& H) {
    auto mat = m.G->materialize(H);
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < mat.group->num_gens(); ++gi) {
        uint32_t pid = m.G->id_of(mat.group->gen(gi));
        mats.push_back(m.rho(pid));
    }
    Restriction res{Module(mat.group, m.F, m.dim, std::move(mats)), std::move(mat)};
    return res;
}

// linear character of H given by its values on the handle's generators;
// values on arbitrary elements come from the BFS words of the materialized copy
struct LinearChar {
    SubgroupHandle H;
    GroupInstance::Materialized mat;
    std::vector<Fel> on_mat_gens;
    std::vector<Fel> value_by_mat_id;  // per element of the materialized group

    static LinearChar build(const GroupInstance& G, const SubgroupHandle& H, const std::vector<Fel>& on_gens, const Gf& F) {
        LinearChar lc;
        lc.H = H;
        lc.mat = G.materialize(H);
        lc.on_mat_gens = on_gens;
        const auto& M = *lc.mat.group;
        if (on_gens.size() != M.num_gens()) throw ArgumentError("character values must match subgroup generators");
        lc.value_by_mat_id.assign(M.order(), F.one());
        for (uint32_t i = 1; i < M.order(); ++i) {
            uint32_t par = uint32_t(M.word_parent(i));
            uint32_t gi = uint32_t(M.word_gen(i));
            lc.value_by_mat_id[i] = F.mul(on_gens[gi], lc.value_by_mat_id[par]);
        }
        // well-definedness: multiplicativity on every (element, generator) pair
        for (uint32_t i = 0; i < M.order(); ++i)
            for (uint32_t gi = 0; gi < M.num_gens(); ++gi) {
                uint32_t j = M.id_of(M.gen(gi) * M.perm_of(i));
                if (lc.value_by_mat_id[j] != F.mul(on_gens[gi], lc.value_by_mat_id[i]))
                    throw ArgumentError("values do not define a character");
            }
        return lc;
    }

    Fel value_of_parent_id(const GroupInstance& /*G*/, uint32_t parent_id, const Gf& F) const {
        // translate a parent element id to the materialized copy
        const auto& M = *mat.group;
        (void)F;
        uint32_t mid = M.id_of(H.parent->perm_of(parent_id));
        return value_by_mat_id[mid];
    }
};

// all linear characters of H with values of order prime to r, one per
// homomorphism H -> F^*; found by assigning root-of-unity values to generators
inline std::vector<LinearChar> linear_characters(const GroupInstance& G, const SubgroupHandle& H, const Gf& F, uint32_t r) {
    auto mat = G.materialize(H);
    const auto& M = *mat.group;
    uint32_t ng = M.num_gens();
    // candidate value sets per generator: roots of unity of order dividing
    // the r'-part of the generator order
    std::vector<std::vector<Fel>> cands(ng);
    for (uint32_t gi = 0; gi < ng; ++gi) {
        uint64_t o = M.gen(gi).order();
        while (o % r == 0) o /= r;
        uint64_t d = gcd_u64(o, F.size() - 1);
        for (uint64_t k = 0; k < d; ++k) cands[gi].push_back(Fel(k * ((F.size() - 1) / d)));
    }
    std::vector<LinearChar> out;
    std::vector<uint32_t> pick(ng, 0);
    while (true) {
        std::vector<Fel> vals(ng);
        for (uint32_t gi = 0; gi < ng; ++gi) vals[gi] = cands[gi][pick[gi]];
        try {
            out.push_back(LinearChar::build(G, H, vals, F));
        } catch (const ArgumentError&) {
        }
        uint32_t i = 0;
        while (i < ng && pick[i] + 1 == cands[i].size()) pick[i++] = 0;
        if (i == ng) break;
        ++pick[i];
    }
    return out;
}

// Ind_H^G of a linear character
inline Module induce_linear(GroupPtr G, const LinearChar& lc, GfPtr F) {
    auto info = std::make_shared<InducedInfo>();
    info->H = lc.H;
    info->cosets = right_cosets(*G, lc.H);
    for (uint32_t gid : lc.H.gen_ids) info->hgen_parent_ids.push_back(gid);
    const RightCosets& rc = info->cosets;
    uint32_t n = rc.count;
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < G->num_gens(); ++gi) {
        Mat m = mat_zero(*F, n, n);
        for (uint32_t i = 0; i < n; ++i) {
            uint32_t j = rc.next[gi][i];
            Fel lam = lc.value_of_parent_id(*G, rc.hpart[gi][i], *F);
            m.at(i, j) = lam;
        }
        mats.push_back(std::move(m));
    }
    for (uint32_t k = 0; k < lc.H.gen_ids.size(); ++k)
        info->lambda_on_hgens.push_back(lc.value_of_parent_id(*G, lc.H.gen_ids[k], *F));
    Module mod(G, F, n, std::move(mats));
    mod.induced = info;
    return mod;
}

// Ind_H^G of an arbitrary module W for the materialized subgroup
inline Module induce_module(GroupPtr G, const SubgroupHandle& H, const GroupInstance::Materialized& matH, const Module& W) {
    RightCosets rc = right_cosets(*G, H);
    const Gf& F = *W.F;
    uint32_t n = rc.count * W.dim;
    // parent id -> materialized id for evaluating W on H-parts
    const auto& M = *matH.group;
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < G->num_gens(); ++gi) {
        Mat m = mat_zero(F, n, n);
        for (uint32_t i = 0; i < rc.count; ++i) {
            uint32_t j = rc.next[gi][i];
            uint32_t mid = M.id_of(G->perm_of(rc.hpart[gi][i]));
            const Mat& wh = W.rho(mid);
            for (uint32_t s = 0; s < W.dim; ++s)
                for (uint32_t t = 0; t < W.dim; ++t) m.at(i * W.dim + s, j * W.dim + t) = wh.at(s, t);
        }
        mats.push_back(std::move(m));
    }
    return Module(G, W.F, n, std::move(mats));
}

// permutation module on the cosets of H = Ind of the trivial character
inline Module permutation_module(GroupPtr G, const SubgroupHandle& H, GfPtr F) {
    auto lc = LinearChar::build(*G, H, std::vector<Fel>(G->materialize(H).group->num_gens(), F->one()), *F);
    return induce_linear(G, lc, F);
}

// fixed points of a subgroup: rows v with v * rho(h) = v for all generators
inline Mat fixed_points(const Module& m, const SubgroupHandle& H) {
    const Gf& F = *m.F;
    if (H.gen_ids.empty()) return mat_identity(F, m.dim);
    Mat stacked(m.dim, m.dim * uint32_t(H.gen_ids.size()), F.zero());
    for (size_t k = 0; k < H.gen_ids.size(); ++k) {
        Mat d = mat_sub(F, m.rho(H.gen_ids[k]), mat_identity(F, m.dim));
        for (uint32_t i = 0; i < m.dim; ++i)
            for (uint32_t j = 0; j < m.dim; ++j) stacked.at(i, uint32_t(k) * m.dim + j) = d.at(i, j);
    }
    return kernel_left(F, stacked);
}

inline Mat fixed_points_all(const Module& m) {
    const Gf& F = *m.F;
    Mat stacked(m.dim, m.dim * m.G->num_gens(), F.zero());
    for (uint32_t k = 0; k < m.G->num_gens(); ++k) {
        Mat d = mat_sub(F, m.gen[k], mat_identity(F, m.dim));
        for (uint32_t i = 0; i < m.dim; ++i)
            for (uint32_t j = 0; j < m.dim; ++j) stacked.at(i, k * m.dim + j) = d.at(i, j);
    }
    return kernel_left(F, stacked);
}

// ---------- spin and sub/quotient structure ----------

struct SpinResult {
    Mat basis;  // echelonized rows spanning the closure
};

inline SpinResult spin(const Module& m, const Mat& seeds) {
    const Gf& F = *m.F;
    RowSpace sp(F, m.dim);
    std::vector<std::vector<Fel>> queue;
    for (uint32_t i = 0; i < seeds.rows(); ++i) {
        std::vector<Fel> v(seeds.row(i), seeds.row(i) + m.dim);
        if (!sp.insert(v)) queue.push_back(std::move(v));
    }
    for (uint32_t head = 0; head < queue.size(); ++head) {
        for (uint32_t gi = 0; gi < m.G->num_gens(); ++gi) {
            std::vector<Fel> nxt(m.dim, F.zero());
            for (uint32_t k = 0; k < m.dim; ++k) row_axpy(F, nxt.data(), m.gen[gi].row(k), queue[head][k], m.dim);
            if (!sp.insert(nxt)) queue.push_back(std::move(nxt));
        }
    }
    return {sp.echelon_basis()};
}

// spin with full bookkeeping for Hom computations over the spun module
struct SpinStructure {
    std::vector<std::vector<Fel>> basis;  // raw vectors in spin order
    std::vector<int32_t> parent;          // -1 for seeds
    std::vector<int32_t> via_gen;
    std::vector<uint32_t> seed_index;     // which seed each tree root is
    struct Relation {
        uint32_t node;
        uint32_t gen;
        std::vector<Fel> coeffs;  // g-image of node in terms of raw basis
    };
    std::vector<Relation> relations;
};

inline SpinStructure spin_structure(const Module& m, const Mat& seeds) {
    const Gf& F = *m.F;
    RowSpace sp(F, m.dim);
    SpinStructure st;
    std::vector<uint32_t> root_of;
    for (uint32_t i = 0; i < seeds.rows(); ++i) {
        std::vector<Fel> v(seeds.row(i), seeds.row(i) + m.dim);
        auto dep = sp.insert(v);
        if (dep) continue;  // dependent seeds are dropped
        st.basis.push_back(std::move(v));
        st.parent.push_back(-1);
        st.via_gen.push_back(-1);
        st.seed_index.push_back(uint32_t(st.seed_index.size()));
        root_of.push_back(uint32_t(st.basis.size() - 1));
    }
    std::vector<uint32_t> seed_of(st.basis.size());
    for (uint32_t k = 0; k < st.basis.size(); ++k) seed_of[k] = k;
    for (uint32_t head = 0; head < st.basis.size(); ++head) {
        for (uint32_t gi = 0; gi < m.G->num_gens(); ++gi) {
            std::vector<Fel> nxt(m.dim, F.zero());
            for (uint32_t k = 0; k < m.dim; ++k) row_axpy(F, nxt.data(), m.gen[gi].row(k), st.basis[head][k], m.dim);
            auto dep = sp.insert(nxt);
            if (dep) {
                st.relations.push_back({head, gi, std::move(*dep)});
            } else {
                st.basis.push_back(std::move(nxt));
                st.parent.push_back(int32_t(head));
                st.via_gen.push_back(int32_t(gi));
                seed_of.push_back(seed_of[head]);
            }
        }
    }
    st.seed_index = std::move(seed_of);
    return st;
}

struct Submodule {
    Module module;
    Mat inclusion;  // rows: basis of the submodule inside the parent
};

inline Submodule submodule_from_basis(const Module& m, const Mat& basis) {
    const Gf& F = *m.F;
    uint32_t d = basis.rows();
    // coordinates: solve  X * basis = basis * rho(g)  row-wise via RREF
    Mat B = basis;
    EchelonInfo info = echelonize(F, B);
    if (info.rank != d) throw ArgumentError("submodule basis must be independent");
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < m.G->num_gens(); ++gi) {
        Mat img = mat_mul(F, B, m.gen[gi]);
        Mat co = mat_zero(F, d, d);
        for (uint32_t i = 0; i < d; ++i) {
            // reduce img row against echelon rows of B, collecting coefficients
            std::vector<Fel> v(img.row(i), img.row(i) + m.dim);
            for (uint32_t k = 0; k < d; ++k) {
                Fel c = v[info.pivot_cols[k]];
                if (!F.is_zero(c)) {
                    co.at(i, k) = c;
                    row_axpy(F, v.data(), B.row(k), F.neg(c), m.dim);
                }
            }
            for (uint32_t j = 0; j < m.dim; ++j)
                if (!F.is_zero(v[j])) throw ArgumentError("row space is not stable under the action");
        }
        mats.push_back(std::move(co));
    }
    return {Module(m.G, m.F, d, std::move(mats)), B};
}

struct Quotient {
    Module module;
    Mat projection;  // dim x qdim, rows of the parent map onto quotient coords
};

inline Quotient quotient_by_basis(const Module& m, const Mat& basis) {
    const Gf& F = *m.F;
    Mat B = basis;
    EchelonInfo info = echelonize(F, B);
    uint32_t d = info.rank;
    B = Mat(d, m.dim, F.zero());
    {
        Mat tmp = basis;
        EchelonInfo i2 = echelonize(F, tmp);
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < m.dim; ++j) B.at(i, j) = tmp.at(i, j);
        info = std::move(i2);
    }
    std::vector<bool> is_piv(m.dim, false);
    for (uint32_t k = 0; k < d; ++k) is_piv[info.pivot_cols[k]] = true;
    std::vector<uint32_t> comp_cols;
    for (uint32_t j = 0; j < m.dim; ++j)
        if (!is_piv[j]) comp_cols.push_back(j);
    uint32_t qd = uint32_t(comp_cols.size());
    // projection: reduce each standard basis vector mod B, read complement coords
    Mat proj = mat_zero(F, m.dim, qd);
    auto reduce_coords = [&](std::vector<Fel> v) {
        for (uint32_t k = 0; k < d; ++k) {
            Fel c = v[info.pivot_cols[k]];
            if (!F.is_zero(c)) row_axpy(F, v.data(), B.row(k), F.neg(c), m.dim);
        }
        std::vector<Fel> out(qd);
        for (uint32_t t = 0; t < qd; ++t) out[t] = v[comp_cols[t]];
        return out;
    };
    for (uint32_t i = 0; i < m.dim; ++i) {
        std::vector<Fel> e(m.dim, F.zero());
        e[i] = F.one();
        auto co = reduce_coords(std::move(e));
        for (uint32_t t = 0; t < qd; ++t) proj.at(i, t) = co[t];
    }
    std::vector<Mat> mats;
    for (uint32_t gi = 0; gi < m.G->num_gens(); ++gi) {
        // action on quotient coords: lift complement vector, act, project
        Mat q = mat_zero(F, qd, qd);
        for (uint32_t t = 0; t < qd; ++t) {
            std::vector<Fel> v(m.dim, F.zero());
            v[comp_cols[t]] = F.one();
            std::vector<Fel> img(m.dim, F.zero());
            for (uint32_t k = 0; k < m.dim; ++k) row_axpy(F, img.data(), m.gen[gi].row(k), v[k], m.dim);
            auto co = reduce_coords(std::move(img));
            for (uint32_t u = 0; u < qd; ++u) q.at(t, u) = co[u];
        }
        mats.push_back(std::move(q));
    }
    return {Module(m.G, m.F, qd, std::move(mats)), proj};
}

// ---------- Hom spaces ----------

namespace homdetail {

// greedy generating rows: standard basis vectors not already in the spin span
inline Mat greedy_generators(const Module& m) {
    const Gf& F = *m.F;
    RowSpace sp(F, m.dim);
    std::vector<std::vector<Fel>> gens;
    std::vector<std::vector<Fel>> queue;
    uint32_t probe = 0;
    while (sp.dim() < m.dim && probe < m.dim) {
        std::vector<Fel> e(m.dim, F.zero());
        e[probe++] = F.one();
        if (sp.insert(e)) continue;
        gens.push_back(e);
        queue.clear();
        queue.push_back(e);
        for (uint32_t head = 0; head < queue.size(); ++head)
            for (uint32_t gi = 0; gi < m.G->num_gens(); ++gi) {
                std::vector<Fel> nxt(m.dim, F.zero());
                for (uint32_t k = 0; k < m.dim; ++k) row_axpy(F, nxt.data(), m.gen[gi].row(k), queue[head][k], m.dim);
                if (!sp.insert(nxt)) queue.push_back(std::move(nxt));
            }
    }
    Mat out(uint32_t(gens.size()), m.dim, F.zero());
    for (uint32_t i = 0; i < gens.size(); ++i)
        for (uint32_t j = 0; j < m.dim; ++j) out.at(i, j) = gens[i][j];
    return out;
}

// relation method: spin A from generating rows, solve for the seed images in B
inline std::vector<Mat> hom_by_relations(const Module& A, const Module& B) {
    const Gf& F = *A.F;
    Mat seeds = greedy_generators(A);
    SpinStructure st = spin_structure(A, seeds);
    uint32_t h = 0;
    for (auto p : st.parent)
        if (p == -1) ++h;
    uint32_t nA = uint32_t(st.basis.size());
    if (nA != A.dim) throw InternalError("generators do not span");
    // L_k = rho_B(word_k), built along the tree
    std::vector<Mat> L(nA);
    std::vector<uint32_t> seed_block(nA);
    {
        uint32_t s = 0;
        for (uint32_t k = 0; k < nA; ++k) {
            if (st.parent[k] == -1) {
                L[k] = mat_identity(F, B.dim);
                seed_block[k] = s++;
            } else {
                L[k] = mat_mul(F, L[uint32_t(st.parent[k])], B.gen[uint32_t(st.via_gen[k])]);
                seed_block[k] = seed_block[uint32_t(st.parent[k])];
            }
        }
    }
    // unknowns u = (u_0 .. u_{h-1}) in k^{h*dimB}; relation rows
    uint32_t ncols = h * B.dim;
    RowSpace sys(F, ncols);
    for (auto& rel : st.relations) {
        // u_{s(node)} * L_node * rho_B(gen)  =  sum_m c_m u_{s(m)} * L_m
        Mat lhs = mat_mul(F, L[rel.node], B.gen[rel.gen]);
        // one scalar constraint row per output coordinate beta
        for (uint32_t beta = 0; beta < B.dim; ++beta) {
            std::vector<Fel> row(ncols, F.zero());
            for (uint32_t alpha = 0; alpha < B.dim; ++alpha)
                row[seed_block[rel.node] * B.dim + alpha] = lhs.at(alpha, beta);
            for (uint32_t mIdx = 0; mIdx < rel.coeffs.size(); ++mIdx) {
                Fel c = rel.coeffs[mIdx];
                if (F.is_zero(c)) continue;
                const Mat& Lm = L[mIdx];
                for (uint32_t alpha = 0; alpha < B.dim; ++alpha) {
                    uint32_t pos = seed_block[mIdx] * B.dim + alpha;
                    row[pos] = F.sub(row[pos], F.mul(c, Lm.at(alpha, beta)));
                }
            }
            sys.insert(std::move(row));
        }
    }
    // kernel of the stacked system
    Mat sysm = sys.echelon_basis();
    // solutions u with sysm * u^T = 0
    Mat ker = sysm.rows() ? kernel_right(F, sysm) : mat_identity(F, ncols);
    std::vector<Mat> homs;
    for (uint32_t t = 0; t < ker.rows(); ++t) {
        // reconstruct the full map: T rows are images of the raw spin basis,
        // then change basis back to the standard coordinates of A
        Mat img(nA, B.dim, F.zero());
        for (uint32_t k = 0; k < nA; ++k) {
            const Fel* u = ker.row(t) + seed_block[k] * B.dim;
            for (uint32_t beta = 0; beta < B.dim; ++beta) {
                Fel acc = F.zero();
                for (uint32_t alpha = 0; alpha < B.dim; ++alpha) acc = F.add(acc, F.mul(u[alpha], L[k].at(alpha, beta)));
                img.at(k, beta) = acc;
            }
        }
        // raw basis rows of A as a matrix; solve raw * T = img
        Mat raw(nA, A.dim, F.zero());
        for (uint32_t k = 0; k < nA; ++k)
            for (uint32_t j = 0; j < A.dim; ++j) raw.at(k, j) = st.basis[k][j];
        auto sol = solve_right(F, raw, img);
        if (!sol.consistent) throw InternalError("hom reconstruction failed");
        homs.push_back(sol.particular);
    }
    return homs;
}

}  // namespace homdetail

// basis of Hom_G(A, B) as matrices T with rho_A(g) T = T rho_B(g)
inline std::vector<Mat> hom_space(const Module& A, const Module& B);

namespace homdetail {

// Frobenius reciprocity: Hom(Ind_H lambda, B) from the lambda-isotypic rows of B
inline std::vector<Mat> hom_from_induced(const Module& A, const Module& B) {
    const Gf& F = *A.F;
    const InducedInfo& info = *A.induced;
    // rows w with w * rho_B(h) = lambda(h) w for all H-generators
    uint32_t ng = uint32_t(info.hgen_parent_ids.size());
    Mat stacked(B.dim, B.dim * std::max<uint32_t>(ng, 1), F.zero());
    if (ng == 0) {
        stacked = mat_zero(F, B.dim, 0);
    }
    for (uint32_t k = 0; k < ng; ++k) {
        Mat d = B.rho(info.hgen_parent_ids[k]);
        Fel lam = info.lambda_on_hgens[k];
        for (uint32_t i = 0; i < B.dim; ++i) {
            for (uint32_t j = 0; j < B.dim; ++j) {
                Fel v = d.at(i, j);
                if (i == j) v = F.sub(v, lam);
                stacked.at(i, k * B.dim + j) = v;
            }
        }
    }
    Mat W = ng == 0 ? mat_identity(F, B.dim) : kernel_left(F, stacked);
    std::vector<Mat> homs;
    const RightCosets& rc = info.cosets;
    for (uint32_t t = 0; t < W.rows(); ++t) {
        Mat T(A.dim, B.dim, F.zero());
        // row i = w * rho_B(t_i), along the coset tree
        std::vector<std::vector<Fel>> rows(rc.count);
        rows[0].assign(W.row(t), W.row(t) + B.dim);
        for (uint32_t i = 1; i < rc.count; ++i) {
            uint32_t par = uint32_t(rc.parent[i]);
            uint32_t gi = uint32_t(rc.via_gen[i]);
            rows[i].assign(B.dim, F.zero());
            for (uint32_t k = 0; k < B.dim; ++k) row_axpy(F, rows[i].data(), B.gen[gi].row(k), rows[par][k], B.dim);
        }
        for (uint32_t i = 0; i < rc.count; ++i)
            for (uint32_t j = 0; j < B.dim; ++j) T.at(i, j) = rows[i][j];
        homs.push_back(std::move(T));
    }
    return homs;
}

// Hom(B, Ind_H lambda) from the lambda-eigencolumns of B
inline std::vector<Mat> hom_into_induced(const Module& B, const Module& A) {
    const Gf& F = *A.F;
    const InducedInfo& info = *A.induced;
    uint32_t ng = uint32_t(info.hgen_parent_ids.size());
    // columns u with rho_B(h) u = lambda(h) u: left-kernel over the transposes
    Mat stacked(B.dim, B.dim * std::max<uint32_t>(ng, 1), F.zero());
    for (uint32_t k = 0; k < ng; ++k) {
        Mat d = transpose(B.rho(info.hgen_parent_ids[k]));
        Fel lam = info.lambda_on_hgens[k];
        for (uint32_t i = 0; i < B.dim; ++i)
            for (uint32_t j = 0; j < B.dim; ++j) {
                Fel v = d.at(i, j);
                if (i == j) v = F.sub(v, lam);
                stacked.at(i, k * B.dim + j) = v;
            }
    }
    Mat U = ng == 0 ? mat_identity(F, B.dim) : kernel_left(F, stacked);
    const RightCosets& rc = info.cosets;
    // inverse generator matrices of B
    std::vector<Mat> geninv;
    for (uint32_t gi = 0; gi < B.G->num_gens(); ++gi) {
        auto iv = mat_inverse(F, B.gen[gi]);
        if (!iv) throw InternalError("generator action not invertible");
        geninv.push_back(std::move(*iv));
    }
    std::vector<Mat> homs;
    for (uint32_t t = 0; t < U.rows(); ++t) {
        // column j of T = rho_B(t_j^{-1}) u, along the coset tree
        std::vector<std::vector<Fel>> cols(rc.count);
        cols[0].assign(U.row(t), U.row(t) + B.dim);
        for (uint32_t j = 1; j < rc.count; ++j) {
            uint32_t par = uint32_t(rc.parent[j]);
            uint32_t gi = uint32_t(rc.via_gen[j]);
            // t_j = t_par * g  =>  rho(t_j^{-1}) = rho(g^{-1}) rho(t_par^{-1});
            // columns transform by left multiplication
            cols[j].assign(B.dim, F.zero());
            const Mat& gm = geninv[gi];
            for (uint32_t a = 0; a < B.dim; ++a) {
                Fel acc = F.zero();
                for (uint32_t b = 0; b < B.dim; ++b) acc = F.add(acc, F.mul(gm.at(a, b), cols[par][b]));
                cols[j][a] = acc;
            }
        }
        Mat T(B.dim, A.dim, F.zero());
        for (uint32_t j = 0; j < rc.count; ++j)
            for (uint32_t a = 0; a < B.dim; ++a) T.at(a, j) = cols[j][a];
        homs.push_back(std::move(T));
    }
    return homs;
}

}  // namespace homdetail

inline std::vector<Mat> hom_space(const Module& A, const Module& B) {
    if (A.G != B.G || !A.F->same(*B.F)) throw ConfigError("hom across groups or fields");
    if (A.dim == 0 || B.dim == 0) return {};
    if (A.induced) return homdetail::hom_from_induced(A, B);
    if (B.induced) return homdetail::hom_into_induced(A, B);
    if (B.dim > A.dim) {
        // work with the duals so the spun target is the smaller module
        auto duals = homdetail::hom_by_relations(dual(B), dual(A));
        std::vector<Mat> out;
        for (auto& T : duals) out.push_back(transpose(T));
        return out;
    }
    return homdetail::hom_by_relations(A, B);
}

inline uint32_t hom_dim(const Module& A, const Module& B) { return uint32_t(hom_space(A, B).size()); }

// ---------- isomorphism testing ----------

inline std::optional<Mat> is_isomorphic(const Module& A, const Module& B, Rng rng) {
    if (A.dim != B.dim) return std::nullopt;
    if (A.dim == 0) return Mat(0, 0, A.F->zero());
    const Gf& F = *A.F;
    auto homs = hom_space(A, B);
    if (homs.empty()) return std::nullopt;
    for (auto& T : homs) {
        if (mat_rank(F, T) == A.dim) return T;
    }
    for (int t = 0; t < 64; ++t) {
        Mat T = mat_zero(F, A.dim, B.dim);
        for (auto& H : homs) {
            Fel c = Fel(rng.below(F.size()));
            if (c >= F.size() - 1) c = F.zero();
            T = mat_add(F, T, mat_scale(F, H, c));
        }
        if (mat_rank(F, T) == A.dim) return T;
    }
    // exhaustive fallback over small coefficient spaces
    uint64_t total = 1;
    bool small = true;
    for (size_t i = 0; i < homs.size() && small; ++i) {
        total *= F.size();
        if (total > 4096) small = false;
    }
    if (small) {
        std::vector<uint32_t> pick(homs.size(), 0);
        while (true) {
            Mat T = mat_zero(F, A.dim, B.dim);
            for (size_t i = 0; i < homs.size(); ++i) {
                Fel c = pick[i] + 1 == F.size() ? F.zero() : Fel(pick[i]);
                T = mat_add(F, T, mat_scale(F, homs[i], c));
            }
            if (mat_rank(F, T) == A.dim) return T;
            size_t i = 0;
            while (i < pick.size() && pick[i] + 1 == F.size()) pick[i++] = 0;
            if (i == pick.size()) break;
            ++pick[i];
        }
        return std::nullopt;
    }
    // a non-isomorphism verdict for indecomposables needs dim Hom(A,B) < dim End(A)
    // or exhaustion; escalate sampling before conceding
    if (homs.size() < hom_space(A, A).size()) return std::nullopt;
    for (int t = 0; t < 512; ++t) {
        Mat T = mat_zero(F, A.dim, B.dim);
        for (auto& H : homs) {
            Fel c = Fel(rng.below(F.size()));
            if (c >= F.size() - 1) c = F.zero();
            T = mat_add(F, T, mat_scale(F, H, c));
        }
        if (mat_rank(F, T) == A.dim) return T;
    }
    return std::nullopt;
}

}  // namespace crosschar
