#pragma once

#include "meataxe.hpp"

namespace crosschar {

struct ProjectiveCover {
    Module P;                                        // direct sum of pims, canonical block order
    std::vector<std::pair<int, uint32_t>> pim_mults; // (simple index, multiplicity)
    Mat cover;                                       // dimP x dimM, surjective
    Mat kernel;                                      // rows: Omega(m) inside P
    Module omega;
};

class HellerEngine {
  public:
    explicit HellerEngine(const Catalog& cat) : cat_(&cat) {}

    const Catalog& catalog() const { return *cat_; }

    // basis of Hom(PC(S_idx), B), memoized per target
    const std::vector<Mat>& pim_homs(size_t idx, const Module& B) {
        uint64_t key = hash_combine(uint64_t(idx), B.content_hash());
        auto it = pim_hom_cache_.find(key);
        if (it != pim_hom_cache_.end()) return it->second;
        auto res = pim_hom_cache_.emplace(key, hom_from_pim(*cat_, idx, B));
        return res.first->second;
    }

    ProjectiveCover projective_cover(const Module& m) {
        const Catalog& cat = *cat_;
        const Gf& F = *cat.F;
        ProjectiveCover pc;
        if (m.dim == 0) {
            pc.P = zero_module(m.G, m.F);
            pc.cover = Mat(0, 0, F.zero());
            pc.kernel = Mat(0, 0, F.zero());
            pc.omega = pc.P;
            return pc;
        }
        // maps onto simples, reused for head multiplicities and the radical
        std::vector<std::vector<Mat>> toS(cat.simples.size());
        std::vector<uint32_t> heads(cat.simples.size(), 0);
        uint32_t total_cols = 0;
        for (size_t s = 0; s < cat.simples.size(); ++s) {
            if (cat.simples[s].dim > m.dim) continue;
            toS[s] = hom_space(m, cat.simples[s]);
            heads[s] = uint32_t(toS[s].size());
            total_cols += heads[s] * cat.simples[s].dim;
        }
        Mat rad;
        if (total_cols == 0)
            rad = mat_identity(F, m.dim);
        else {
            Mat stacked(m.dim, total_cols, F.zero());
            uint32_t off2 = 0;
            for (size_t s = 0; s < cat.simples.size(); ++s)
                for (auto& T : toS[s]) {
                    for (uint32_t i = 0; i < m.dim; ++i)
                        for (uint32_t j = 0; j < T.cols(); ++j) stacked.at(i, off2 + j) = T.at(i, j);
                    off2 += T.cols();
                }
            rad = kernel_left(F, stacked);
        }
        auto headq = quotient_by_basis(m, rad);
        std::vector<std::vector<Mat>> chosen(cat.simples.size());
        for (size_t s = 0; s < cat.simples.size(); ++s) {
            if (!heads[s]) continue;
            const auto& homs = pim_homs(s, m);
            if (homs.size() < heads[s]) throw InternalError("hom space smaller than head multiplicity");
            // head-component coordinates of each hom: T * headproj expressed in
            // the basis pi_S . psi_t, psi_t a basis of Hom(S, head)
            auto psis = hom_space(cat.simples[s], headq.module);
            if (psis.size() != heads[s]) throw InternalError("isotypic head dimension mismatch");
            Mat pcrad = radical_basis(cat, cat.pims[s].pim);
            auto pcHead = quotient_by_basis(cat.pims[s].pim, pcrad);
            // pi_S: PC(S) -> S via the unique head map; fix the catalog copy
            auto pis = hom_space(pcHead.module, cat.simples[s]);
            if (pis.size() != 1) throw InternalError("pim head is not the expected simple");
            Mat piS = mat_mul(F, pcHead.projection, pis[0]);  // dimPC x dimS
            // beta(T): solve T*headproj = piS * (sum beta_t psi_t)
            uint32_t a = heads[s];
            Mat betas(uint32_t(homs.size()), a, F.zero());
            {
                // flattened solve
                uint32_t fl = cat.pims[s].pim.dim * headq.module.dim;
                Mat lhs(a, fl, F.zero());
                for (uint32_t t = 0; t < a; ++t) {
                    Mat img = mat_mul(F, piS, psis[t]);
                    for (uint32_t i = 0; i < img.rows(); ++i)
                        for (uint32_t j = 0; j < img.cols(); ++j) lhs.at(t, i * img.cols() + j) = img.at(i, j);
                }
                for (size_t h = 0; h < homs.size(); ++h) {
                    Mat img = mat_mul(F, homs[h], headq.projection);
                    Mat rhs(1, fl, F.zero());
                    for (uint32_t i = 0; i < img.rows(); ++i)
                        for (uint32_t j = 0; j < img.cols(); ++j) rhs.at(0, i * img.cols() + j) = img.at(i, j);
                    auto sol = solve_right(F, transpose(lhs), transpose(rhs));
                    if (!sol.consistent) throw InternalError("hom does not factor through the head");
                    for (uint32_t t = 0; t < a; ++t) betas.at(uint32_t(h), t) = sol.particular.at(t, 0);
                }
            }
            // greedy subset with independent head components
            RowSpace sel(F, a);
            for (size_t h = 0; h < homs.size() && chosen[s].size() < a; ++h) {
                std::vector<Fel> row(betas.row(uint32_t(h)), betas.row(uint32_t(h)) + a);
                if (!sel.insert(row)) chosen[s].push_back(homs[h]);
            }
            if (chosen[s].size() != a) throw InternalError("could not assemble a head-bijective cover");
        }
        // assemble P and the cover matrix
        Module P = zero_module(m.G, m.F);
        std::vector<Mat> blocks;
        for (size_t s = 0; s < cat.simples.size(); ++s) {
            if (!heads[s]) continue;
            pc.pim_mults.push_back({int(s), heads[s]});
            for (uint32_t c = 0; c < heads[s]; ++c) {
                P = P.dim == 0 ? cat.pims[s].pim : direct_sum(P, cat.pims[s].pim);
                blocks.push_back(chosen[s][c]);
            }
        }
        Mat cover(P.dim, m.dim, F.zero());
        uint32_t off = 0;
        for (auto& blk : blocks) {
            for (uint32_t i = 0; i < blk.rows(); ++i)
                for (uint32_t j = 0; j < m.dim; ++j) cover.at(off + i, j) = blk.at(i, j);
            off += blk.rows();
        }
        if (mat_rank(F, cover) != m.dim) throw InternalError("cover map is not surjective");
        pc.P = std::move(P);
        pc.cover = std::move(cover);
        pc.kernel = kernel_left(F, pc.cover);
        pc.omega = pc.kernel.rows() ? submodule_from_basis(pc.P, pc.kernel).module : zero_module(m.G, m.F);
        return pc;
    }

    // Omega with content-addressed caching
    Module omega(const Module& m) {
        uint64_t h = m.content_hash();
        auto it = omega_cache_.find(h);
        if (it != omega_cache_.end() && it->second.first.dim == m.dim && modules_equal(it->second.first, m))
            return it->second.second;
        Module om = projective_cover(m).omega;
        omega_cache_[h] = {m, om};
        return om;
    }

    Module omega_power(const Module& m, uint32_t n) {
        Module cur = m;
        for (uint32_t i = 0; i < n; ++i) cur = omega(cur);
        return cur;
    }

    // dim Ext^n(U, S) = multiplicity of the simple S in head(Omega^n U)
    uint32_t ext_dim(const Module& u, size_t simple_idx, uint32_t n) {
        Module om = omega_power(u, n);
        if (om.dim == 0) return 0;
        return hom_dim(om, cat_->simples[simple_idx]);
    }

    // dim H^n(G, v) = multiplicity of k in head(Omega^n v*)
    uint32_t cohomology_dim(const Module& v, uint32_t n) {
        return ext_dim(dual(v), size_t(cat_->trivial_index()), n);
    }

    struct Orbit {
        std::vector<Module> translates;  // Omega^0 .. Omega^N
        uint32_t period = 0;             // least d>=1 with Omega^d == base, 0 if none found
    };

    Orbit omega_orbit(const Module& m, uint32_t max_n, Rng rng) {
        Orbit orb;
        orb.translates.push_back(m);
        for (uint32_t i = 1; i <= max_n; ++i) {
            orb.translates.push_back(omega(orb.translates.back()));
            if (orb.period == 0 && orb.translates.back().dim == m.dim &&
                is_isomorphic(orb.translates.back(), m, rng.fork(i)))
                orb.period = i;
        }
        return orb;
    }

    // ---------- general Ext via the Hom complex on the minimal resolution ----------

    struct Resolution {
        std::vector<ProjectiveCover> steps;  // steps[j] covers Omega^j(base)
    };

    Resolution resolution(const Module& base, uint32_t length) {
        Resolution res;
        Module cur = base;
        for (uint32_t j = 0; j <= length; ++j) {
            res.steps.push_back(projective_cover(cur));
            cur = res.steps.back().omega;
        }
        return res;
    }

    // dim Ext^j(A, B) for 0 <= j <= jmax, arbitrary B
    std::vector<uint32_t> ext_dims_general(const Module& A, const Module& B, uint32_t jmax) {
        const Gf& F = *cat_->F;
        Resolution res = resolution(A, jmax + 1);
        // Hom(P_j, B) bases, blockwise from the pim homs
        std::vector<std::vector<Mat>> homBasis(jmax + 2);
        for (uint32_t j = 0; j <= jmax + 1; ++j) {
            const auto& pcj = res.steps[j];
            uint32_t off = 0;
            for (auto& [sidx, mult] : pcj.pim_mults) {
                const auto& hs = pim_homs(size_t(sidx), B);
                uint32_t d = cat_->pims[size_t(sidx)].pim.dim;
                for (uint32_t c = 0; c < mult; ++c) {
                    for (auto& T : hs) {
                        Mat full(pcj.P.dim, B.dim, F.zero());
                        for (uint32_t i = 0; i < d; ++i)
                            for (uint32_t jj = 0; jj < B.dim; ++jj) full.at(off + i, jj) = T.at(i, jj);
                        homBasis[j].push_back(std::move(full));
                    }
                    off += d;
                }
            }
        }
        // differentials d_{j+1} = cover_{j+1} * kernel_j : P_{j+1} -> P_j
        std::vector<uint32_t> rankD(jmax + 1, 0);
        for (uint32_t j = 0; j <= jmax; ++j) {
            if (homBasis[j].empty()) continue;
            Mat d = mat_mul(F, res.steps[j + 1].cover, res.steps[j].kernel);
            // matrix of phi -> d * phi in the flattened bases
            RowSpace imspace(F, res.steps[j + 1].P.dim * B.dim);
            uint32_t rk = 0;
            for (auto& phi : homBasis[j]) {
                Mat img = mat_mul(F, d, phi);
                std::vector<Fel> flat(img.data());
                if (!imspace.insert(flat)) ++rk;
            }
            rankD[j] = rk;
        }
        std::vector<uint32_t> out(jmax + 1, 0);
        for (uint32_t j = 0; j <= jmax; ++j) {
            uint32_t dimHom = uint32_t(homBasis[j].size());
            uint32_t kerd = dimHom - rankD[j];
            uint32_t imPrev = 0;
            if (j > 0) {
                // rank of D_{j-1} as a map into Hom(P_j, B)
                imPrev = rankD[j - 1];
            }
            out[j] = kerd - imPrev;
        }
        return out;
    }

  private:
    static bool modules_equal(const Module& a, const Module& b) {
        if (a.dim != b.dim || a.gen.size() != b.gen.size()) return false;
        for (size_t i = 0; i < a.gen.size(); ++i)
            if (!(a.gen[i] == b.gen[i])) return false;
        return true;
    }

    const Catalog* cat_;
    std::unordered_map<uint64_t, std::vector<Mat>> pim_hom_cache_;
    std::unordered_map<uint64_t, std::pair<Module, Module>> omega_cache_;
};

}  // namespace crosschar
