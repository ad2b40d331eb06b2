#pragma once

#include "module.hpp"

namespace crosschar {

// Low-degree cohomology computed independently of projective covers: degree 0
// and 1 from cocycle/coboundary spaces parametrized by values on generators,
// degree 2 from a free presentation with a runtime exactness certificate.
//
// Modules here are row modules (v * rho(g)); cohomology is taken with the
// standard left action g.v = v * rho(g^{-1}), matching Ext over the antipode.

struct Presentation {
    std::vector<uint32_t> gen_ids;             // generating elements of G
    std::vector<std::vector<int32_t>> relators; // letters: +j for x_j, -(j+1) for x_j^{-1}
};

namespace bardetail {

constexpr uint64_t kBarLimit = 400;

inline uint32_t eval_word(const GroupInstance& G, const Presentation& pres, const std::vector<int32_t>& word) {
    uint32_t cur = G.identity_id();
    for (int32_t L : word) {
        uint32_t g = L >= 0 ? pres.gen_ids[size_t(L)] : G.inv(pres.gen_ids[size_t(-L - 1)]);
        cur = G.mul(cur, g);
    }
    return cur;
}

// group-algebra elements as coefficient vectors indexed by element id
using AlgEl = std::vector<int64_t>;  // integer coefficients, reduced mod r on use

// Fox derivatives of a relator word with respect to each presentation generator
inline std::vector<AlgEl> fox_derivatives(const GroupInstance& G, const Presentation& pres,
                                          const std::vector<int32_t>& word) {
    uint32_t d = uint32_t(pres.gen_ids.size());
    std::vector<AlgEl> der(d, AlgEl(G.order(), 0));
    uint32_t prefix = G.identity_id();
    for (int32_t L : word) {
        if (L >= 0) {
            der[size_t(L)][prefix] += 1;
            prefix = G.mul(prefix, pres.gen_ids[size_t(L)]);
        } else {
            uint32_t j = uint32_t(-L - 1);
            prefix = G.mul(prefix, G.inv(pres.gen_ids[j]));
            der[j][prefix] -= 1;
        }
    }
    return der;
}

// left action matrix of a group-algebra element on a row module:
// v |-> v * sum c_g rho(g^{-1})
inline Mat left_action(const Module& V, const AlgEl& w) {
    const Gf& F = *V.F;
    Mat acc = mat_zero(F, V.dim, V.dim);
    for (uint32_t g = 0; g < w.size(); ++g) {
        if (w[g] == 0) continue;
        Fel c = F.from_int(w[g]);
        if (F.is_zero(c)) continue;
        acc = mat_add(F, acc, mat_scale(F, V.rho(V.G->inv(g)), c));
    }
    return acc;
}

}  // namespace bardetail

inline uint32_t bar_h0(const Module& V) { return fixed_points_all(V).rows(); }

// H^1 via cocycles determined by their values on the group generators
inline uint32_t bar_h1(const Module& V) {
    const GroupInstance& G = *V.G;
    if (G.order() > bardetail::kBarLimit) throw RefusalError("bar cohomology limited to |G| <= 400");
    const Gf& F = *V.F;
    uint32_t d = G.num_gens(), n = V.dim;
    // rho'(g) = rho(g^{-1})
    std::vector<Mat> rhoInv;
    for (uint32_t gi = 0; gi < d; ++gi) rhoInv.push_back(V.rho(G.inv(G.id_of(G.gen(gi)))));
    // c(elem) = sum_j u_j * M_j(elem); build along the BFS tree
    std::vector<std::vector<Mat>> M(G.order(), std::vector<Mat>());
    M[0].assign(d, mat_zero(F, n, n));
    for (uint32_t e = 1; e < G.order(); ++e) {
        uint32_t par = uint32_t(G.word_parent(e));
        uint32_t gi = uint32_t(G.word_gen(e));
        // c(x*p) = c(p) * rho'(x) + u_x
        M[e].resize(d);
        for (uint32_t j = 0; j < d; ++j) {
            M[e][j] = mat_mul(F, M[par][j], rhoInv[gi]);
            if (j == gi) M[e][j] = mat_add(F, M[e][j], mat_identity(F, n));
        }
    }
    RowSpace sys(F, d * n);
    for (uint32_t e = 0; e < G.order(); ++e) {
        for (uint32_t gi = 0; gi < d; ++gi) {
            uint32_t xe = G.id_of(G.gen(gi) * G.perm_of(e));
            // constraint: c(p)*rho'(x) + u_x - c(x p) = 0 (trivial on tree edges)
            if (xe > e && uint32_t(G.word_parent(xe)) == e && uint32_t(G.word_gen(xe)) == gi) continue;
            for (uint32_t row = 0; row < n; ++row) {
                std::vector<Fel> r(size_t(d) * n, F.zero());
                bool nonzero = false;
                for (uint32_t j = 0; j < d; ++j) {
                    Mat diff = mat_sub(F, mat_mul(F, M[e][j], rhoInv[gi]), M[xe][j]);
                    if (j == gi) diff = mat_add(F, diff, mat_identity(F, n));
                    for (uint32_t col = 0; col < n; ++col) {
                        Fel v = diff.at(row, col);
                        r[size_t(j) * n + col] = v;
                        nonzero |= !F.is_zero(v);
                    }
                }
                if (nonzero) sys.insert(std::move(r));
            }
        }
    }
    uint32_t z1 = d * n - sys.dim();
    // coboundaries: u_j = v * (rho'(x_j) - 1)
    Mat cob(n, d * n, F.zero());
    for (uint32_t j = 0; j < d; ++j) {
        Mat diff = mat_sub(F, rhoInv[j], mat_identity(F, n));
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t col = 0; col < n; ++col) cob.at(i, size_t(j) * n + col) = diff.at(i, col);
    }
    uint32_t b1 = mat_rank(F, cob);
    return z1 - b1;
}

// Schreier presentation from the BFS tree: one relator per non-tree edge
inline Presentation schreier_presentation(const GroupInstance& G) {
    Presentation p;
    for (uint32_t gi = 0; gi < G.num_gens(); ++gi) p.gen_ids.push_back(G.id_of(G.gen(gi)));
    // word for element e: product of tree generators, leftmost letter applied last
    std::function<void(uint32_t, std::vector<int32_t>&)> word_of = [&](uint32_t e, std::vector<int32_t>& out) {
        if (e == 0) return;
        word_of(uint32_t(G.word_parent(e)), out);
        // elems[e] = gen * parent: as a word, gen acts on the left; with our
        // right-to-left evaluation order, append at the front
        out.insert(out.begin(), G.word_gen(e));
    };
    for (uint32_t e = 0; e < G.order(); ++e) {
        for (uint32_t gi = 0; gi < G.num_gens(); ++gi) {
            uint32_t xe = G.id_of(G.gen(gi) * G.perm_of(e));
            if (xe > e && uint32_t(G.word_parent(xe)) == e && uint32_t(G.word_gen(xe)) == gi) continue;
            // relator: word(xe)^{-1} . x_gi . word(e)
            std::vector<int32_t> we, wxe;
            word_of(e, we);
            word_of(xe, wxe);
            std::vector<int32_t> rel;
            for (auto it = wxe.rbegin(); it != wxe.rend(); ++it) rel.push_back(-(*it) - 1);
            rel.push_back(int32_t(gi));
            for (int32_t L : we) rel.push_back(L);
            p.relators.push_back(std::move(rel));
        }
    }
    return p;
}

// short presentations for the groups whose degree-2 cohomology we certify
inline Presentation find_presentation(const GroupInstance& G) {
    auto spec = G.spec();
    struct Shape {
        uint64_t ord_a, ord_b;
        std::vector<std::vector<int32_t>> words;  // relators in letters a=0, b=1
    };
    auto power = [](int32_t letter, int count) {
        std::vector<int32_t> w;
        for (int i = 0; i < count; ++i) w.push_back(letter);
        return w;
    };
    auto concat = [](std::vector<std::vector<int32_t>> parts) {
        std::vector<int32_t> w;
        for (auto& p : parts) w.insert(w.end(), p.begin(), p.end());
        return w;
    };
    std::vector<Shape> shapes;
    uint64_t n = G.order();
    if (spec.family == Family::PSL2 && spec.q == 5)
        shapes.push_back({2, 3, {power(0, 2), power(1, 3), concat({{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}})}});
    else if (spec.family == Family::PSL2 && spec.q == 7) {
        std::vector<int32_t> ab7, comm4;
        for (int i = 0; i < 7; ++i) {
            ab7.push_back(0);
            ab7.push_back(1);
        }
        std::vector<int32_t> comm{0, 1, -1, -2};
        for (int i = 0; i < 4; ++i) comm4.insert(comm4.end(), comm.begin(), comm.end());
        shapes.push_back({2, 3, {power(0, 2), power(1, 3), ab7, comm4}});
    } else if (spec.family == Family::SL2 && spec.q == 5) {
        // s^3 = t^5 = (st)^2, the deficiency-zero binary icosahedral presentation
        std::vector<int32_t> r1{0, 0, 0, -2, -2, -2, -2, -2};
        std::vector<int32_t> r2{0, 0, 0, -2, -1, -2, -1};
        shapes.push_back({6, 10, {r1, r2}});
    } else if (spec.family == Family::PGL2 && spec.q == 5) {
        std::vector<int32_t> ab4{0, 1, 0, 1, 0, 1, 0, 1};
        std::vector<int32_t> comm{0, 1, -1, -2}, comm3;
        for (int i = 0; i < 3; ++i) comm3.insert(comm3.end(), comm.begin(), comm.end());
        shapes.push_back({2, 5, {power(0, 2), power(1, 5), ab4, comm3}});
    }
    for (auto& sh : shapes) {
        for (uint32_t a = 1; a < n; ++a) {
            if (G.element_order(a) != sh.ord_a) continue;
            for (uint32_t b = 1; b < n; ++b) {
                if (G.element_order(b) != sh.ord_b) continue;
                Presentation p;
                p.gen_ids = {a, b};
                bool ok = true;
                for (auto& w : sh.words)
                    if (bardetail::eval_word(G, p, w) != G.identity_id()) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                // generation check
                auto h = G.subgroup_from_gen_ids("pres", {a, b});
                if (h.order != n) continue;
                p.relators = sh.words;
                return p;
            }
        }
    }
    if (G.order() <= 64) return schreier_presentation(G);
    throw RefusalError("no certified presentation available for this group");
}

// H^2 from the Fox complex of a presentation, with exactness certified by the
// rank identity over the prime field
inline uint32_t bar_h2(const Module& V, const Presentation& pres) {
    const GroupInstance& G = *V.G;
    if (G.order() > bardetail::kBarLimit) throw RefusalError("bar cohomology limited to |G| <= 400");
    const Gf& F = *V.F;
    uint32_t d = uint32_t(pres.gen_ids.size());
    uint32_t s = uint32_t(pres.relators.size());
    uint64_t n = G.order();
    // Fox matrix D2[i][j] in kG
    std::vector<std::vector<bardetail::AlgEl>> D2(s);
    for (uint32_t i = 0; i < s; ++i) D2[i] = bardetail::fox_derivatives(G, pres, pres.relators[i]);
    // exactness certificate over the prime field
    auto Fp = get_field(F.characteristic(), 1);
    {
        Mat M2(uint32_t(s * n), uint32_t(d * n), Fp->zero());
        for (uint32_t i = 0; i < s; ++i)
            for (uint32_t g = 0; g < n; ++g)
                for (uint32_t j = 0; j < d; ++j)
                    for (uint32_t h = 0; h < n; ++h) {
                        int64_t c = D2[i][j][h];
                        if (!c) continue;
                        uint32_t gh = G.mul(g, h);
                        M2.at(uint32_t(i * n + g), uint32_t(j * n + gh)) = Fp->from_int(c);
                    }
        uint32_t want = uint32_t(n * (d - 1) + 1);
        Mat M2copy = M2;
        uint32_t rk = echelonize(*Fp, M2copy).rank;
        if (rk != want) throw InternalError("presentation fails the exactness certificate");
        // kernel generators over the prime field span the kernel over any extension
        Mat ker = kernel_left(*Fp, M2);
        // dual maps on V
        // D2*: V^d -> V^s with blocks L(D2[i][j]);   D3*: V^s -> V^t from ker rows
        uint32_t vn = V.dim;
        Mat D2s(uint32_t(d * vn), uint32_t(s * vn), F.zero());
        for (uint32_t i = 0; i < s; ++i)
            for (uint32_t j = 0; j < d; ++j) {
                Mat L = bardetail::left_action(V, D2[i][j]);
                for (uint32_t a = 0; a < vn; ++a)
                    for (uint32_t b = 0; b < vn; ++b) D2s.at(j * vn + a, i * vn + b) = L.at(a, b);
            }
        uint32_t t = ker.rows();
        Mat D3s(uint32_t(s * vn), uint32_t(size_t(t) * vn), F.zero());
        for (uint32_t kk = 0; kk < t; ++kk) {
            // kernel row is an element of kG^s: coefficient at (i, g)
            for (uint32_t i = 0; i < s; ++i) {
                bardetail::AlgEl w(n, 0);
                bool nz = false;
                for (uint32_t g = 0; g < n; ++g) {
                    Fel c = ker.at(kk, uint32_t(i * n + g));
                    if (!Fp->is_zero(c)) {
                        w[g] = int64_t(Fp->vec_index(c));
                        nz = true;
                    }
                }
                if (!nz) continue;
                Mat L = bardetail::left_action(V, w);
                for (uint32_t a = 0; a < vn; ++a)
                    for (uint32_t b = 0; b < vn; ++b) D3s.at(i * vn + a, kk * vn + b) = L.at(a, b);
            }
        }
        uint32_t rank2 = mat_rank(F, D2s);
        uint32_t kerD3 = uint32_t(s * vn) - mat_rank(F, D3s);
        return kerD3 - rank2;
    }
}

inline uint32_t bar_cohomology(const Module& V, uint32_t nDeg) {
    if (V.G->order() > bardetail::kBarLimit) throw RefusalError("bar cohomology limited to |G| <= 400");
    if (nDeg == 0) return bar_h0(V);
    if (nDeg == 1) return bar_h1(V);
    if (nDeg == 2) return bar_h2(V, find_presentation(*V.G));
    throw RefusalError("bar cohomology implemented for degree <= 2");
}

}  // namespace crosschar
