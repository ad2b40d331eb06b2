#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "common.hpp"

namespace crosschar {

// Field elements in discrete-log representation: a nonzero element g^L is
// stored as its log L in [0, q-2]; zero is the sentinel q-1. Multiplication
// is index addition mod q-1, addition is one Zech-table lookup.
using Fel = uint32_t;

namespace gfdetail {

// dense polynomials over the prime field, coefficients as residues 0..r-1
using PP = std::vector<uint32_t>;

inline void pp_trim(PP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PP pp_mulmod(const PP& a, const PP& b, const PP& f, uint32_t r) {
    PP c(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % r;
    }
    // reduce mod monic f
    size_t e = f.size() - 1;
    for (size_t i = c.size(); i-- > e;) {
        if (!c[i]) continue;
        uint32_t t = c[i];
        c[i] = 0;
        for (size_t j = 0; j < e; ++j) c[i - e + j] = (c[i - e + j] + t * (r - f[j]) % r) % r;
    }
    c.resize(e);
    pp_trim(c);
    return c;
}

inline PP pp_powmod(PP base, uint64_t n, const PP& f, uint32_t r) {
    PP acc{1};
    while (n) {
        if (n & 1) acc = pp_mulmod(acc, base, f, r);
        base = pp_mulmod(base, base, f, r);
        n >>= 1;
    }
    return acc;
}

inline PP pp_mod(PP a, const PP& b, uint32_t r) {
    pp_trim(a);
    uint32_t il = 1;
    while (il * b.back() % r != 1) ++il;  // inverse of the lead coefficient in Z_r
    while (a.size() >= b.size()) {
        uint32_t c = a.back();
        if (c) {
            uint32_t t = c * il % r;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[off + j] = (a[off + j] + t * (r - b[j])) % r;
        }
        a.pop_back();
        pp_trim(a);
    }
    return a;
}

inline PP pp_gcd(PP a, PP b, uint32_t r) {
    pp_trim(a);
    pp_trim(b);
    while (!b.empty()) {
        PP t = pp_mod(a, b, r);
        a = b;
        b = t;
    }
    return a;
}

inline bool pp_is_irreducible(const PP& f, uint32_t r) {
    uint32_t e = uint32_t(f.size() - 1);
    // x^{r^e} == x mod f, and gcd(x^{r^{e/p}} - x, f) = 1 for prime p | e
    uint64_t re = 1;
    for (uint32_t i = 0; i < e; ++i) re *= r;
    PP x{0, 1};
    auto sub_x_mod = [&](PP v) {
        v.resize(std::max<size_t>(v.size(), 2), 0);
        v[1] = (v[1] + r - 1) % r;
        pp_trim(v);
        if (v.size() >= f.size()) v = pp_mod(std::move(v), f, r);
        return v;
    };
    PP diff = sub_x_mod(pp_powmod(x, re, f, r));
    if (!diff.empty()) return false;
    for (uint64_t p : prime_factors(e)) {
        uint64_t rd = 1;
        for (uint64_t i = 0; i < e / p; ++i) rd *= r;
        PP xd = sub_x_mod(pp_powmod(x, rd, f, r));
        PP g = pp_gcd(f, xd, r);
        if (g.size() != 1) return false;
    }
    return true;
}

inline bool pp_is_primitive(const PP& f, uint32_t r, uint64_t q) {
    if (f[0] == 0) return false;
    if (!pp_is_irreducible(f, r)) return false;
    PP x{0, 1};
    for (uint64_t p : prime_factors(q - 1)) {
        PP t = pp_powmod(x, (q - 1) / p, f, r);
        if (t.size() == 1 && t[0] == 1) return false;
    }
    return true;
}

}  // namespace gfdetail

// GF(r^e) with a fixed canonical primitive polynomial: the lexicographically
// smallest (in coefficients c_0..c_{e-1}) monic primitive polynomial of
// degree e over GF(r). x is then a generator of the multiplicative group.
class Gf {
  public:
    static constexpr uint64_t kMaxSize = 1ull << 24;

    Gf(uint32_t r, uint32_t e) : r_(r), e_(e) {
        if (!is_prime(r)) throw ArgumentError("field characteristic must be prime");
        if (e < 1) throw ArgumentError("extension degree must be >= 1");
        q_ = 1;
        for (uint32_t i = 0; i < e; ++i) {
            q_ *= r;
            if (q_ > kMaxSize) throw RefusalError("field size exceeds table limit");
        }
        zero_ = Fel(q_ - 1);
        find_modulus();
        build_tables();
        pf_.assign(r_, zero_);
        pf_[0] = zero_;
        if (r_ > 1) pf_[1] = 0;
        for (uint32_t k = 2; k < r_; ++k) pf_[k] = add(pf_[k - 1], 0);
        m1_ = (r_ == 2) ? 0 : Fel((q_ - 1) / 2);
    }

    uint32_t characteristic() const { return r_; }
    uint32_t degree() const { return e_; }
    uint64_t size() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return poly_; }

    Fel zero() const { return zero_; }
    Fel one() const { return 0; }
    // multiplicative generator (x itself, or the primitive root for e=1)
    Fel gen() const { return q_ > 2 ? 1 : 0; }
    bool is_zero(Fel a) const { return a == zero_; }

    Fel mul(Fel a, Fel b) const {
        if (a == zero_ || b == zero_) return zero_;
        uint64_t s = uint64_t(a) + b;
        if (s >= q_ - 1) s -= q_ - 1;
        return Fel(s);
    }
    Fel add(Fel a, Fel b) const {
        if (a == zero_) return b;
        if (b == zero_) return a;
        uint64_t d = (b >= a) ? (b - a) : (b + q_ - 1 - a);
        Fel z = zech_[d];
        if (z == zero_) return zero_;
        uint64_t s = uint64_t(a) + z;
        if (s >= q_ - 1) s -= q_ - 1;
        return Fel(s);
    }
    Fel neg(Fel a) const { return (a == zero_ || r_ == 2) ? a : mul(a, m1_); }
    Fel sub(Fel a, Fel b) const { return add(a, neg(b)); }
    Fel inv(Fel a) const {
        if (a == zero_) throw ArgumentError("inverse of zero");
        return a == 0 ? 0 : Fel(q_ - 1 - a);
    }
    Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
    Fel pow(Fel a, int64_t n) const {
        if (a == zero_) {
            if (n == 0) return 0;
            if (n < 0) throw ArgumentError("inverse of zero");
            return zero_;
        }
        int64_t m = int64_t(q_ - 1);
        int64_t l = (int64_t(a) % m * (n % m)) % m;
        if (l < 0) l += m;
        return Fel(l);
    }
    Fel from_int(int64_t n) const {
        int64_t v = n % int64_t(r_);
        if (v < 0) v += r_;
        return pf_[size_t(v)];
    }
    // image under the r-power Frobenius
    Fel frobenius(Fel a) const {
        if (a == zero_) return a;
        return Fel((uint64_t(a) * r_) % (q_ - 1));
    }

    // coefficient-vector index sum c_i r^i of the element
    uint32_t vec_index(Fel a) const { return a == zero_ ? 0 : vec_of_log_[a]; }
    Fel from_vec_index(uint32_t idx) const {
        if (idx >= q_) throw ArgumentError("vector index out of range");
        return log_of_vec_[idx];
    }

    bool same(const Gf& o) const { return r_ == o.r_ && e_ == o.e_; }

  private:
    void find_modulus() {
        using namespace gfdetail;
        // enumerate monic degree-e polynomials by ascending coefficient vector
        PP f(e_ + 1, 0);
        f[e_] = 1;
        while (true) {
            if (pp_is_primitive(f, r_, q_)) {
                poly_ = f;
                return;
            }
            size_t i = 0;
            while (i < e_ && f[i] == r_ - 1) f[i++] = 0;
            if (i == e_) throw InternalError("no primitive polynomial found");
            ++f[i];
        }
    }

    void build_tables() {
        log_of_vec_.assign(q_, zero_);
        vec_of_log_.assign(q_ - 1, 0);
        std::vector<uint32_t> cur(e_, 0);
        cur[0] = 1;
        for (uint64_t L = 0; L < q_ - 1; ++L) {
            uint32_t idx = 0;
            for (uint32_t i = e_; i-- > 0;) idx = idx * r_ + cur[i];
            if (log_of_vec_[idx] != zero_ || idx == 0) throw InternalError("modulus is not primitive");
            log_of_vec_[idx] = Fel(L);
            vec_of_log_[L] = idx;
            // multiply by x
            uint32_t carry = cur[e_ - 1];
            for (uint32_t i = e_; i-- > 1;) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (carry) {
                for (uint32_t i = 0; i < e_; ++i) cur[i] = (cur[i] + carry * (r_ - poly_[i])) % r_;
            }
        }
        log_of_vec_[0] = zero_;
        zech_.assign(q_ - 1, 0);
        for (uint64_t d = 0; d < q_ - 1; ++d) {
            uint32_t idx = vec_of_log_[d];
            uint32_t c0 = idx % r_;
            uint32_t idx1 = idx - c0 + (c0 + 1) % r_;
            zech_[d] = log_of_vec_[idx1];
        }
    }

    uint32_t r_, e_;
    uint64_t q_;
    Fel zero_, m1_;
    std::vector<uint32_t> poly_;
    std::vector<Fel> zech_, log_of_vec_, vec_of_log_, pf_;
};

using GfPtr = std::shared_ptr<const Gf>;

// process-wide field cache; fields are immutable
inline GfPtr get_field(uint32_t r, uint32_t e) {
    static std::map<std::pair<uint32_t, uint32_t>, GfPtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(r, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = std::make_shared<Gf>(r, e);
    cache[key] = f;
    return f;
}

}  // namespace crosschar
