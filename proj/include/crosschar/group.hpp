#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "gf.hpp"

namespace crosschar {

struct Perm {
    std::vector<uint16_t> img;

    uint32_t degree() const { return uint32_t(img.size()); }
    uint16_t operator()(uint16_t x) const { return img[x]; }
    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }

    static Perm identity(uint32_t n) {
        Perm p;
        p.img.resize(n);
        std::iota(p.img.begin(), p.img.end(), 0);
        return p;
    }
    // (a*b)(x) = a(b(x))
    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm c;
        c.img.resize(a.img.size());
        for (size_t x = 0; x < a.img.size(); ++x) c.img[x] = a.img[b.img[x]];
        return c;
    }
    Perm inverse() const {
        Perm p;
        p.img.resize(img.size());
        for (size_t x = 0; x < img.size(); ++x) p.img[img[x]] = uint16_t(x);
        return p;
    }
    bool is_identity() const {
        for (size_t x = 0; x < img.size(); ++x)
            if (img[x] != x) return false;
        return true;
    }
    uint64_t order() const {
        std::vector<bool> seen(img.size(), false);
        uint64_t o = 1;
        for (size_t x = 0; x < img.size(); ++x) {
            if (seen[x]) continue;
            uint64_t len = 0;
            size_t y = x;
            do {
                seen[y] = true;
                y = img[y];
                ++len;
            } while (y != x);
            o = o / gcd_u64(o, len) * len;
        }
        return o;
    }
};

struct PermHash {
    size_t operator()(const Perm& p) const {
        uint64_t h = 1469598103934665603ull;
        for (uint16_t v : p.img) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

enum class Family { PSL2, PGL2, SL2, Sym };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::PSL2: return "psl2";
        case Family::PGL2: return "pgl2";
        case Family::SL2: return "sl2";
        case Family::Sym: return "sym";
    }
    return "?";
}

struct GroupSpec {
    Family family;
    uint32_t q;  // prime power for Lie-type families, degree for Sym
};

class GroupInstance;
using GroupPtr = std::shared_ptr<const GroupInstance>;

struct SubgroupHandle {
    std::string name;
    const GroupInstance* parent = nullptr;
    std::vector<uint32_t> gen_ids;
    std::vector<uint32_t> elem_ids;  // sorted
    uint64_t order = 0;

    bool contains(uint32_t id) const { return std::binary_search(elem_ids.begin(), elem_ids.end(), id); }
};

struct CosetAction {
    uint32_t degree = 0;
    std::vector<Perm> gen_action;          // one permutation of cosets per parent generator
    std::vector<uint32_t> transversal;     // element ids, transversal[0] = identity
    std::vector<int32_t> parent_coset;     // BFS tree over cosets
    std::vector<int32_t> via_gen;
};

struct CoreCheckResult {
    SubgroupHandle o_rprime;
    SubgroupHandle o_upper_r;
    bool hypothesis_holds = false;
};

class GroupInstance {
  public:
    static GroupPtr build(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    uint32_t degree() const { return degree_; }
    uint64_t order() const { return elems_.size(); }
    uint32_t num_gens() const { return uint32_t(gens_.size()); }
    const Perm& gen(uint32_t i) const { return gens_[i]; }
    const Perm& perm_of(uint32_t id) const { return elems_[id]; }
    uint32_t identity_id() const { return 0; }

    uint32_t id_of(const Perm& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw ArgumentError("permutation not in group");
        return it->second;
    }
    bool has(const Perm& p) const { return index_.count(p) != 0; }

    uint32_t mul(uint32_t a, uint32_t b) const { return id_of(elems_[a] * elems_[b]); }
    uint32_t inv(uint32_t a) const { return id_of(elems_[a].inverse()); }
    uint64_t element_order(uint32_t a) const { return elems_[a].order(); }

    // BFS word structure: elems_[i] = gen(via_gen_[i]) * elems_[parent_[i]]
    int32_t word_parent(uint32_t id) const { return parent_[id]; }
    int32_t word_gen(uint32_t id) const { return via_gen_[id]; }

    // conjugacy classes
    uint32_t num_classes() const {
        ensure_classes();
        return uint32_t(class_reps_.size());
    }
    uint32_t class_of(uint32_t id) const {
        ensure_classes();
        return class_of_[id];
    }
    uint32_t class_rep(uint32_t c) const {
        ensure_classes();
        return class_reps_[c];
    }
    uint32_t count_r_regular_classes(uint32_t r) const {
        ensure_classes();
        uint32_t n = 0;
        for (uint32_t rep : class_reps_)
            if (element_order(rep) % r != 0) ++n;
        return n;
    }

    uint64_t exponent() const {
        ensure_classes();
        uint64_t e = 1;
        for (uint32_t rep : class_reps_) {
            uint64_t o = element_order(rep);
            e = e / gcd_u64(e, o) * o;
        }
        return e;
    }

    SubgroupHandle subgroup_from_perm_gens(const std::string& name, const std::vector<Perm>& gens) const;
    SubgroupHandle subgroup_from_gen_ids(const std::string& name, std::vector<uint32_t> gen_ids) const;

    // named subgroups; r only matters for "sylow" and "borel-rprime"
    SubgroupHandle subgroup(const std::string& name, uint32_t r = 0) const;

    CoreCheckResult core_check(const SubgroupHandle& h, uint32_t r) const;
    CosetAction coset_action(const SubgroupHandle& h) const;

    // the subgroup as a group of its own, with a map back to parent ids
    struct Materialized {
        GroupPtr group;
        std::vector<uint32_t> to_parent;  // by child element id
    };
    Materialized materialize(const SubgroupHandle& h) const;

  private:
    void enumerate();
    void ensure_classes() const;
    SubgroupHandle close(const std::string& name, std::vector<uint32_t> gen_ids) const;
    std::vector<Perm> family_gens() const;
    void check_order() const;

    GroupSpec spec_;
    uint32_t degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
    std::unordered_map<Perm, uint32_t, PermHash> index_;
    std::vector<int32_t> parent_, via_gen_;
    mutable std::vector<uint32_t> class_of_, class_reps_;

    // field data for Lie families (p, n with q = p^n)
    GfPtr fq_;

    friend struct EmbeddedPgl;
};

// ---------- P^1 and matrix actions ----------

namespace groupdetail {

// P^1(F_q): points 0..q-1 are field elements by vector index, q is infinity
inline uint32_t p1_size(const Gf& F) { return uint32_t(F.size()) + 1; }

// Moebius permutation of [[a,b],[c,d]] acting as x -> (ax+b)/(cx+d)
inline Perm moebius(const Gf& F, Fel a, Fel b, Fel c, Fel d) {
    uint32_t q = uint32_t(F.size());
    Perm p;
    p.img.resize(q + 1);
    auto pt = [&](Fel num, Fel den) -> uint16_t {
        if (F.is_zero(den)) return uint16_t(q);
        return uint16_t(F.vec_index(F.div(num, den)));
    };
    for (uint32_t i = 0; i < q; ++i) {
        Fel x = F.from_vec_index(i);
        p.img[i] = pt(F.add(F.mul(a, x), b), F.add(F.mul(c, x), d));
    }
    p.img[q] = pt(a, c);  // image of infinity
    return p;
}

// SL2 on nonzero column vectors of F_q^2; point index = vi(x)*q + vi(y) - 1
inline Perm matrix_on_vectors(const Gf& F, Fel a, Fel b, Fel c, Fel d) {
    uint32_t q = uint32_t(F.size());
    Perm p;
    p.img.resize(q * q - 1);
    for (uint32_t ix = 0; ix < q; ++ix)
        for (uint32_t iy = 0; iy < q; ++iy) {
            if (ix == 0 && iy == 0) continue;
            Fel x = F.from_vec_index(ix), y = F.from_vec_index(iy);
            Fel nx = F.add(F.mul(a, x), F.mul(b, y));
            Fel ny = F.add(F.mul(c, x), F.mul(d, y));
            p.img[ix * q + iy - 1] = uint16_t(F.vec_index(nx) * q + F.vec_index(ny) - 1);
        }
    return p;
}

// companion matrix of a primitive quadratic over F_q: multiplication by a
// generator zeta of F_{q^2}^* in the basis {1, zeta}
inline void primitive_quadratic(const Gf& F, Fel& c0, Fel& c1) {
    uint64_t q = F.size();
    uint64_t target = q * q - 1;
    auto factors = prime_factors(target);
    for (uint64_t i0 = 0; i0 < q; ++i0)
        for (uint64_t i1 = 0; i1 < q; ++i1) {
            Fel a0 = F.from_vec_index(uint32_t(i0)), a1 = F.from_vec_index(uint32_t(i1));
            // x^2 + c1 x + c0 must be irreducible: no roots
            bool root = false;
            for (uint64_t ix = 0; ix < q && !root; ++ix) {
                Fel x = F.from_vec_index(uint32_t(ix));
                Fel v = F.add(F.add(F.mul(x, x), F.mul(a1, x)), a0);
                root = F.is_zero(v);
            }
            if (root) continue;
            // order of the companion matrix must be q^2-1: check via prime factors
            // represent alpha = (u + v*zeta); mult by zeta: (u,v) -> (-c0*v, u - c1*v)
            auto mulz = [&](std::pair<Fel, Fel> t) {
                return std::make_pair(F.mul(F.neg(a0), t.second), F.sub(t.first, F.mul(a1, t.second)));
            };
            auto powz = [&](uint64_t n) {
                // zeta^n in basis coords, computed by square-and-multiply over the quadratic ring
                std::pair<Fel, Fel> acc{F.one(), F.zero()};
                std::pair<Fel, Fel> base{F.zero(), F.one()};  // zeta
                auto mul2 = [&](std::pair<Fel, Fel> s, std::pair<Fel, Fel> t) {
                    // (s0 + s1 z)(t0 + t1 z) with z^2 = -c1 z - c0
                    Fel z2c = F.mul(s.second, t.second);
                    Fel u = F.sub(F.mul(s.first, t.first), F.mul(z2c, a0));
                    Fel v = F.add(F.add(F.mul(s.first, t.second), F.mul(s.second, t.first)), F.mul(z2c, F.neg(a1)));
                    return std::make_pair(u, v);
                };
                uint64_t n2 = n;
                while (n2) {
                    if (n2 & 1) acc = mul2(acc, base);
                    base = mul2(base, base);
                    n2 >>= 1;
                }
                return acc;
            };
            bool primitive = true;
            for (uint64_t pf : factors) {
                auto t = powz(target / pf);
                if (F.is_zero(t.second) && t.first == F.one()) {
                    primitive = false;
                    break;
                }
            }
            (void)mulz;
            if (primitive) {
                c0 = a0;
                c1 = a1;
                return;
            }
        }
    throw InternalError("no primitive quadratic found");
}

}  // namespace groupdetail

// ---------- construction ----------

inline std::vector<Perm> GroupInstance::family_gens() const {
    using namespace groupdetail;
    const Gf& F = *fq_;
    switch (spec_.family) {
        case Family::PSL2: {
            Fel g = F.gen();
            return {moebius(F, F.one(), F.one(), F.zero(), F.one()),        // x+1
                    moebius(F, F.mul(g, g), F.zero(), F.zero(), F.one()),   // g^2 x
                    moebius(F, F.zero(), F.neg(F.one()), F.one(), F.zero())};  // -1/x
        }
        case Family::PGL2: {
            Fel g = F.gen();
            return {moebius(F, F.one(), F.one(), F.zero(), F.one()),
                    moebius(F, g, F.zero(), F.zero(), F.one()),
                    moebius(F, F.zero(), F.one(), F.one(), F.zero())};  // 1/x
        }
        case Family::SL2: {
            Fel g = F.gen();
            return {matrix_on_vectors(F, F.one(), F.one(), F.zero(), F.one()),
                    matrix_on_vectors(F, g, F.zero(), F.zero(), F.inv(g)),
                    matrix_on_vectors(F, F.zero(), F.neg(F.one()), F.one(), F.zero())};
        }
        case Family::Sym: {
            uint32_t n = spec_.q;
            Perm a = Perm::identity(n), b = Perm::identity(n);
            a.img[0] = 1;
            a.img[1] = 0;
            for (uint32_t i = 0; i < n; ++i) b.img[i] = uint16_t((i + 1) % n);
            return {a, b};
        }
    }
    throw ArgumentError("unknown family");
}

inline void GroupInstance::check_order() const {
    uint64_t q = spec_.q, expect = 0;
    switch (spec_.family) {
        case Family::PSL2: expect = q * (q - 1) * (q + 1) / gcd_u64(2, q - 1); break;
        case Family::PGL2: expect = q * (q - 1) * (q + 1); break;
        case Family::SL2: expect = q * (q - 1) * (q + 1); break;
        case Family::Sym: {
            expect = 1;
            for (uint64_t i = 2; i <= q; ++i) expect *= i;
            break;
        }
    }
    if (order() != expect) throw InternalError("group order mismatch: got " + std::to_string(order()) + " expected " + std::to_string(expect));
}

inline void GroupInstance::enumerate() {
    Perm id = Perm::identity(degree_);
    elems_.push_back(id);
    index_[id] = 0;
    parent_.push_back(-1);
    via_gen_.push_back(-1);
    for (uint32_t head = 0; head < elems_.size(); ++head) {
        Perm cur = elems_[head];
        for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
            Perm nxt = gens_[gi] * cur;
            if (index_.count(nxt)) continue;
            uint32_t nid = uint32_t(elems_.size());
            index_[nxt] = nid;
            elems_.push_back(std::move(nxt));
            parent_.push_back(int32_t(head));
            via_gen_.push_back(int32_t(gi));
            if (elems_.size() > 2000000) throw RefusalError("group too large to enumerate");
        }
    }
}

inline GroupPtr GroupInstance::build(GroupSpec spec) {
    auto g = std::make_shared<GroupInstance>();
    g->spec_ = spec;
    if (spec.family == Family::Sym) {
        if (spec.q != 5) throw ArgumentError("only degree-5 symmetric groups are supported");
        g->degree_ = spec.q;
    } else {
        // q = p^n with p prime
        uint32_t q = spec.q;
        uint32_t p = 0;
        for (uint32_t d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        if (p == 0) p = q;
        uint32_t n = 0;
        uint64_t t = 1;
        while (t < q) {
            t *= p;
            ++n;
        }
        if (t != q || !is_prime(p)) throw ArgumentError("q must be a prime power");
        if ((spec.family == Family::SL2 || spec.family == Family::PGL2) && q % 2 == 0)
            throw ArgumentError("SL2/PGL2 cells require odd q");
        g->fq_ = get_field(p, n);
        g->degree_ = (spec.family == Family::SL2) ? q * q - 1 : q + 1;
    }
    g->gens_ = g->family_gens();
    g->enumerate();
    g->check_order();
    return g;
}

inline void GroupInstance::ensure_classes() const {
    if (!class_of_.empty()) return;
    uint32_t n = uint32_t(elems_.size());
    std::vector<uint32_t> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
        while (uf[x] != x) {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        return x;
    };
    std::vector<Perm> gen_inv;
    for (auto& gp : gens_) gen_inv.push_back(gp.inverse());
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
            Perm conj = gens_[gi] * (elems_[i] * gen_inv[gi]);
            uint32_t j = index_.at(conj);
            uint32_t a = find(i), b = find(j);
            if (a != b) uf[a] = b;
        }
    }
    class_of_.assign(n, 0);
    std::unordered_map<uint32_t, uint32_t> root_to_class;
    for (uint32_t i = 0; i < n; ++i) {
        uint32_t r = find(i);
        auto it = root_to_class.find(r);
        if (it == root_to_class.end()) {
            uint32_t c = uint32_t(class_reps_.size());
            root_to_class[r] = c;
            class_reps_.push_back(i);
            class_of_[i] = c;
        } else {
            class_of_[i] = it->second;
            if (i < class_reps_[it->second]) class_reps_[it->second] = i;
        }
    }
}

inline SubgroupHandle GroupInstance::close(const std::string& name, std::vector<uint32_t> gen_ids) const {
    std::sort(gen_ids.begin(), gen_ids.end());
    gen_ids.erase(std::unique(gen_ids.begin(), gen_ids.end()), gen_ids.end());
    std::vector<uint32_t> elems{0};
    std::vector<bool> seen(elems_.size(), false);
    seen[0] = true;
    for (uint32_t head = 0; head < elems.size(); ++head) {
        for (uint32_t gid : gen_ids) {
            Perm nxt = elems_[gid] * elems_[elems[head]];
            uint32_t nid = index_.at(nxt);
            if (!seen[nid]) {
                seen[nid] = true;
                elems.push_back(nid);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    SubgroupHandle h;
    h.name = name;
    h.parent = this;
    h.gen_ids = std::move(gen_ids);
    h.elem_ids = std::move(elems);
    h.order = h.elem_ids.size();
    return h;
}

inline SubgroupHandle GroupInstance::subgroup_from_perm_gens(const std::string& name, const std::vector<Perm>& gens) const {
    std::vector<uint32_t> ids;
    for (auto& p : gens) ids.push_back(id_of(p));
    return close(name, std::move(ids));
}

inline SubgroupHandle GroupInstance::subgroup_from_gen_ids(const std::string& name, std::vector<uint32_t> gen_ids) const {
    return close(name, std::move(gen_ids));
}

inline SubgroupHandle GroupInstance::subgroup(const std::string& name, uint32_t r) const {
    using namespace groupdetail;
    const bool lie = spec_.family != Family::Sym;
    const Gf* F = fq_ ? fq_.get() : nullptr;

    auto translations = [&]() {
        std::vector<Perm> ps;
        Fel b = F->one();
        for (uint32_t i = 0; i < F->degree(); ++i) {
            if (spec_.family == Family::SL2)
                ps.push_back(matrix_on_vectors(*F, F->one(), b, F->zero(), F->one()));
            else
                ps.push_back(moebius(*F, F->one(), b, F->zero(), F->one()));
            b = F->mul(b, F->gen());
        }
        return ps;
    };
    auto torus_gen = [&]() -> Perm {
        Fel g = F->gen();
        if (spec_.family == Family::SL2) return matrix_on_vectors(*F, g, F->zero(), F->zero(), F->inv(g));
        if (spec_.family == Family::PGL2) return moebius(*F, g, F->zero(), F->zero(), F->one());
        return moebius(*F, F->mul(g, g), F->zero(), F->zero(), F->one());
    };
    auto weyl = [&]() -> Perm {
        if (spec_.family == Family::SL2) return matrix_on_vectors(*F, F->zero(), F->neg(F->one()), F->one(), F->zero());
        return moebius(*F, F->zero(), F->neg(F->one()), F->one(), F->zero());
    };
    auto singer_gen = [&]() -> Perm {
        Fel c0, c1;
        primitive_quadratic(*F, c0, c1);
        // companion matrix C of x^2 + c1 x + c0; C^(q-1) lands in SL2
        Fel a = F->zero(), b = F->neg(c0), c = F->one(), d = F->neg(c1);
        // compute C^(q-1) by repeated 2x2 multiplication
        Fel ra = F->one(), rb = F->zero(), rc = F->zero(), rd = F->one();
        uint64_t n = F->size() - 1;
        Fel xa = a, xb = b, xc = c, xd = d;
        while (n) {
            if (n & 1) {
                Fel na = F->add(F->mul(ra, xa), F->mul(rb, xc));
                Fel nb = F->add(F->mul(ra, xb), F->mul(rb, xd));
                Fel nc = F->add(F->mul(rc, xa), F->mul(rd, xc));
                Fel nd = F->add(F->mul(rc, xb), F->mul(rd, xd));
                ra = na, rb = nb, rc = nc, rd = nd;
            }
            Fel ya = F->add(F->mul(xa, xa), F->mul(xb, xc));
            Fel yb = F->add(F->mul(xa, xb), F->mul(xb, xd));
            Fel yc = F->add(F->mul(xc, xa), F->mul(xd, xc));
            Fel yd = F->add(F->mul(xc, xb), F->mul(xd, xd));
            xa = ya, xb = yb, xc = yc, xd = yd;
            n >>= 1;
        }
        if (spec_.family == Family::SL2) return matrix_on_vectors(*F, ra, rb, rc, rd);
        if (spec_.family == Family::PGL2) return moebius(*F, a, b, c, d);  // full order q+1 in PGL
        return moebius(*F, ra, rb, rc, rd);
    };

    if (name == "trivial") return close(name, {});
    if (name == "center") {
        std::vector<uint32_t> zs;
        for (uint32_t i = 0; i < elems_.size(); ++i) {
            bool cent = true;
            for (auto& gp : gens_)
                if (!((gp * elems_[i]) == (elems_[i] * gp))) {
                    cent = false;
                    break;
                }
            if (cent) zs.push_back(i);
        }
        return close(name, zs);
    }
    if (name == "derived") {
        // normal closure of commutators of the generators
        std::vector<uint32_t> comms;
        for (auto& a : gens_)
            for (auto& b : gens_) comms.push_back(id_of((a * b) * (a.inverse() * b.inverse())));
        SubgroupHandle h = close(name, comms);
        // normal closure: conjugate generators until stable
        while (true) {
            std::vector<uint32_t> extra;
            for (uint32_t gid : h.gen_ids)
                for (auto& gp : gens_) {
                    Perm c = gp * (elems_[gid] * gp.inverse());
                    uint32_t cid = index_.at(c);
                    if (!h.contains(cid)) extra.push_back(cid);
                }
            if (extra.empty()) break;
            auto gens2 = h.gen_ids;
            gens2.insert(gens2.end(), extra.begin(), extra.end());
            h = close(name, gens2);
        }
        return h;
    }
    if (name == "sylow") {
        if (r == 0) throw ArgumentError("sylow subgroup needs a prime");
        uint64_t target = p_part(order(), r);
        if (target == 1) return close("sylow", {});
        // grow an r-subgroup by adjoining r-elements while it stays an r-group
        std::vector<uint32_t> rels;
        for (uint32_t i = 0; i < elems_.size(); ++i) {
            uint64_t o = element_order(i);
            if (o > 1 && p_part(o, r) == o) rels.push_back(i);
        }
        SubgroupHandle h = close("sylow", {rels.at(0)});
        while (h.order < target) {
            bool grown = false;
            for (uint32_t x : rels) {
                if (h.contains(x)) continue;
                auto gens2 = h.gen_ids;
                gens2.push_back(x);
                SubgroupHandle h2 = close("sylow", gens2);
                if (p_part(h2.order, r) == h2.order && h2.order <= target) {
                    h = h2;
                    grown = true;
                    if (h.order == target) break;
                }
            }
            if (!grown) throw InternalError("sylow construction stalled");
        }
        return h;
    }

    if (!lie) {
        // symmetric group of degree 5
        uint32_t n = spec_.q;
        if (name == "point-stabilizer") {
            // stabilizer of the last point
            Perm a = Perm::identity(n), b = Perm::identity(n);
            a.img[0] = 1;
            a.img[1] = 0;
            for (uint32_t i = 0; i + 1 < n; ++i) b.img[i] = uint16_t((i + 1) % (n - 1));
            return subgroup_from_perm_gens(name, {a, b});
        }
        if (name == "f20") {
            Perm b = Perm::identity(n), m = Perm::identity(n);
            for (uint32_t i = 0; i < n; ++i) b.img[i] = uint16_t((i + 1) % n);
            for (uint32_t i = 0; i < n; ++i) m.img[i] = uint16_t((2 * i) % n);
            return subgroup_from_perm_gens(name, {b, m});
        }
        throw ArgumentError("unknown subgroup name for Sym: " + name);
    }

    if (name == "borel") {
        auto ps = translations();
        ps.push_back(torus_gen());
        return subgroup_from_perm_gens(name, ps);
    }
    if (name == "unipotent") return subgroup_from_perm_gens(name, translations());
    if (name == "torus") return subgroup_from_perm_gens(name, {torus_gen()});
    if (name == "singer") return subgroup_from_perm_gens(name, {singer_gen()});
    if (name == "torus-normalizer") return subgroup_from_perm_gens(name, {torus_gen(), weyl()});
    if (name == "singer-normalizer") {
        SubgroupHandle s = subgroup("singer");
        for (uint32_t i = 0; i < elems_.size(); ++i) {
            if (s.contains(i)) continue;
            bool normalizes = true;
            for (uint32_t gid : s.gen_ids) {
                Perm c = elems_[i] * (elems_[gid] * elems_[i].inverse());
                if (!s.contains(index_.at(c))) {
                    normalizes = false;
                    break;
                }
            }
            if (normalizes) {
                auto gens2 = s.gen_ids;
                gens2.push_back(i);
                return close(name, gens2);
            }
        }
        throw InternalError("singer normalizer not found");
    }
    if (name == "borel-rprime") {
        if (r == 0) throw ArgumentError("borel-rprime needs a prime");
        auto ps = translations();
        std::vector<uint32_t> ids;
        for (auto& p : ps) ids.push_back(id_of(p));
        // r'-part of the torus generator: t^(r-part of its order)
        Perm t = torus_gen();
        uint64_t rp = p_part(t.order(), r);
        Perm trp = t;
        for (uint64_t i = 1; i < rp; ++i) trp = trp * t;
        ids.push_back(id_of(trp));
        return close(name, ids);
    }
    throw ArgumentError("unknown subgroup name: " + name);
}

inline CoreCheckResult GroupInstance::core_check(const SubgroupHandle& h, uint32_t r) const {
    // O^r(H): generated by all r'-elements of H
    std::vector<uint32_t> rprime_elems;
    for (uint32_t id : h.elem_ids)
        if (element_order(id) % r != 0) rprime_elems.push_back(id);
    // closure inside H (subgroup of G generated by them lies in H anyway)
    SubgroupHandle oupper = close("O^r(" + h.name + ")", rprime_elems);

    // O_{r'}(H): product of class closures of r'-order
    std::vector<uint32_t> core_gens;
    std::vector<bool> done(elems_.size(), false);
    for (uint32_t id : h.elem_ids) {
        if (done[id]) continue;
        // H-conjugacy class of id
        std::vector<uint32_t> cls{id};
        done[id] = true;
        for (uint32_t head = 0; head < cls.size(); ++head) {
            for (uint32_t gid : h.gen_ids) {
                Perm c = elems_[gid] * (elems_[cls[head]] * elems_[gid].inverse());
                uint32_t cid = index_.at(c);
                if (!done[cid]) {
                    done[cid] = true;
                    cls.push_back(cid);
                }
            }
        }
        SubgroupHandle ncl = close("ncl", cls);
        bool rprime = true;
        for (uint32_t x : ncl.elem_ids)
            if (element_order(x) % r == 0 && x != 0) {
                rprime = false;
                break;
            }
        if (ncl.order % r == 0) rprime = false;
        if (rprime)
            for (uint32_t x : cls) core_gens.push_back(x);
    }
    SubgroupHandle orp = close("O_{r'}(" + h.name + ")", core_gens);
    CoreCheckResult res;
    res.hypothesis_holds = orp.elem_ids == oupper.elem_ids;
    res.o_rprime = std::move(orp);
    res.o_upper_r = std::move(oupper);
    return res;
}

inline CosetAction GroupInstance::coset_action(const SubgroupHandle& h) const {
    // canonical coset key: minimal element id in the coset
    auto coset_key = [&](uint32_t x) {
        uint32_t best = UINT32_MAX;
        const Perm& px = elems_[x];
        for (uint32_t hid : h.elem_ids) {
            uint32_t y = index_.at(px * elems_[hid]);
            best = std::min(best, y);
        }
        return best;
    };
    CosetAction act;
    std::unordered_map<uint32_t, uint32_t> key_to_idx;
    std::vector<uint32_t> keys;
    act.transversal.push_back(0);
    act.parent_coset.push_back(-1);
    act.via_gen.push_back(-1);
    keys.push_back(coset_key(0));
    key_to_idx[keys[0]] = 0;
    for (uint32_t head = 0; head < act.transversal.size(); ++head) {
        for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
            uint32_t x = index_.at(gens_[gi] * elems_[act.transversal[head]]);
            uint32_t key = coset_key(x);
            if (!key_to_idx.count(key)) {
                uint32_t idx = uint32_t(act.transversal.size());
                key_to_idx[key] = idx;
                act.transversal.push_back(x);
                act.parent_coset.push_back(int32_t(head));
                act.via_gen.push_back(int32_t(gi));
                keys.push_back(key);
            }
        }
    }
    act.degree = uint32_t(act.transversal.size());
    for (uint32_t gi = 0; gi < gens_.size(); ++gi) {
        Perm p;
        p.img.resize(act.degree);
        for (uint32_t i = 0; i < act.degree; ++i) {
            uint32_t x = index_.at(gens_[gi] * elems_[act.transversal[i]]);
            p.img[i] = uint16_t(key_to_idx.at(coset_key(x)));
        }
        act.gen_action.push_back(std::move(p));
    }
    if (uint64_t(act.degree) * h.order != order()) throw InternalError("coset action degree mismatch");
    return act;
}

struct PglInPsl {
    GroupPtr big;          // PSL2(q^2) on its projective line
    SubgroupHandle small;  // image of PGL2(q)
};

// Realize PGL2(q) inside PSL2(q^2): map the GL2(q) generator matrices through
// a fixed embedding F_q -> F_{q^2} and act by Moebius transformations. Every
// determinant of F_q^* is a square in F_{q^2}, so the images land in PSL.
inline PglInPsl embed_pgl_in_psl(uint32_t q) {
    if (q % 2 == 0) throw ArgumentError("embedding requires odd q");
    GroupPtr big = GroupInstance::build({Family::PSL2, q * q});
    uint32_t p = 0;
    for (uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    uint32_t n = 0;
    for (uint64_t t = 1; t < q; t *= p) ++n;
    auto Fq = get_field(p, n);
    auto Fbig = get_field(p, 2 * n);
    // root of the small field's canonical polynomial inside the big field,
    // chosen with minimal log so the embedding is deterministic
    const auto& mod = Fq->modulus();
    Fel root = Fbig->zero();
    bool found = false;
    for (uint64_t L = 0; L < Fbig->size() - 1; ++L) {
        Fel z = Fel(L);
        Fel val = Fbig->zero(), pw = Fbig->one();
        for (uint32_t i = 0; i < mod.size(); ++i) {
            val = Fbig->add(val, Fbig->mul(Fbig->from_int(int64_t(mod[i])), pw));
            pw = Fbig->mul(pw, z);
        }
        if (Fbig->is_zero(val)) {
            root = z;
            found = true;
            break;
        }
    }
    if (!found) throw InternalError("no embedding root found");
    auto phi = [&](Fel a) {
        uint32_t idx = Fq->vec_index(a);
        Fel val = Fbig->zero(), pw = Fbig->one();
        for (uint32_t i = 0; i < Fq->degree(); ++i) {
            uint32_t digit = idx % Fq->characteristic();
            idx /= Fq->characteristic();
            val = Fbig->add(val, Fbig->mul(Fbig->from_int(int64_t(digit)), pw));
            pw = Fbig->mul(pw, root);
        }
        return val;
    };
    Fel g = Fq->gen();
    std::vector<std::array<Fel, 4>> mats = {
        {Fq->one(), Fq->one(), Fq->zero(), Fq->one()},   // x+1
        {g, Fq->zero(), Fq->zero(), Fq->one()},          // g x (determinant a nonsquare of F_q)
        {Fq->zero(), Fq->one(), Fq->one(), Fq->zero()},  // 1/x
    };
    std::vector<Perm> images;
    for (auto& m : mats) images.push_back(groupdetail::moebius(*Fbig, phi(m[0]), phi(m[1]), phi(m[2]), phi(m[3])));
    SubgroupHandle h = big->subgroup_from_perm_gens("pgl2(" + std::to_string(q) + ")", images);
    uint64_t expect = uint64_t(q) * (q - 1) * (q + 1);
    if (h.order != expect) throw InternalError("embedded PGL2 has wrong order");
    return {big, h};
}

inline GroupInstance::Materialized GroupInstance::materialize(const SubgroupHandle& h) const {
    auto g = std::make_shared<GroupInstance>();
    g->spec_ = spec_;  // family tag retained; order checks skipped for subgroups
    g->degree_ = degree_;
    g->fq_ = fq_;
    for (uint32_t gid : h.gen_ids) g->gens_.push_back(elems_[gid]);
    if (g->gens_.empty()) g->gens_.push_back(Perm::identity(degree_));
    g->enumerate();
    if (g->order() != h.order) throw InternalError("materialized subgroup order mismatch");
    Materialized m;
    m.to_parent.resize(g->order());
    for (uint32_t i = 0; i < g->order(); ++i) m.to_parent[i] = index_.at(g->elems_[i]);
    m.group = g;
    return m;
}

}  // namespace crosschar
