#pragma once

#include <algorithm>

#include "matrix.hpp"

namespace crosschar {

// dense univariate polynomials over GF(q), constant term first
using Poly = std::vector<Fel>;

inline void poly_trim(const Gf& F, Poly& a) {
    while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

inline int poly_deg(const Poly& a) { return int(a.size()) - 1; }

inline Poly poly_add(const Gf& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = F.add(c[i], b[i]);
    poly_trim(F, c);
    return c;
}

inline Poly poly_scale(const Gf& F, Poly a, Fel s) {
    for (auto& x : a) x = F.mul(x, s);
    poly_trim(F, a);
    return a;
}

inline Poly poly_sub(const Gf& F, const Poly& a, const Poly& b) { return poly_add(F, a, poly_scale(F, b, F.neg(F.one()))); }

inline Poly poly_mul(const Gf& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(F, c);
    return c;
}

// (quotient, remainder) with b != 0
inline std::pair<Poly, Poly> poly_divmod(const Gf& F, Poly a, const Poly& b) {
    poly_trim(F, a);
    if (b.empty()) throw ArgumentError("division by zero polynomial");
    Fel il = F.inv(b.back());
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1, F.zero());
    while (a.size() >= b.size()) {
        Fel t = F.mul(a.back(), il);
        size_t off = a.size() - b.size();
        q[off] = t;
        if (!F.is_zero(t))
            for (size_t j = 0; j < b.size(); ++j) a[off + j] = F.sub(a[off + j], F.mul(t, b[j]));
        a.pop_back();
        poly_trim(F, a);
        if (a.size() < b.size()) break;
    }
    poly_trim(F, q);
    return {q, a};
}

inline Poly poly_mod(const Gf& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

inline Poly poly_monic(const Gf& F, Poly a) {
    poly_trim(F, a);
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

inline Poly poly_gcd(const Gf& F, Poly a, Poly b) {
    poly_trim(F, a);
    poly_trim(F, b);
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

inline Poly poly_powmod(const Gf& F, Poly base, uint64_t n, const Poly& m) {
    Poly acc{F.one()};
    base = poly_mod(F, base, m);
    while (n) {
        if (n & 1) acc = poly_mod(F, poly_mul(F, acc, base), m);
        base = poly_mod(F, poly_mul(F, base, base), m);
        n >>= 1;
    }
    return acc;
}

inline Poly poly_derivative(const Gf& F, const Poly& a) {
    Poly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(a[i], F.from_int(int64_t(i))));
    poly_trim(F, d);
    return d;
}

namespace polydetail {

// equal-degree splitting of a squarefree product of degree-d irreducibles
inline void edf(const Gf& F, const Poly& f, uint32_t d, Rng& rng, std::vector<Poly>& out) {
    uint32_t n = uint32_t(poly_deg(f));
    if (n == d) {
        out.push_back(poly_monic(F, f));
        return;
    }
    uint64_t q = F.size();
    while (true) {
        // random polynomial of degree < n
        Poly a(n, F.zero());
        for (uint32_t i = 0; i < n; ++i) a[i] = Fel(rng.below(q));  // uniform over log reps incl zero sentinel? fix below
        for (uint32_t i = 0; i < n; ++i)
            if (a[i] >= q - 1) a[i] = F.zero();
        poly_trim(F, a);
        if (poly_deg(a) < 1) continue;
        Poly g = poly_gcd(F, f, a);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(f)) {
            edf(F, g, d, rng, out);
            edf(F, poly_divmod(F, f, g).first, d, rng, out);
            return;
        }
        Poly b;
        if (F.characteristic() == 2) {
            // absolute trace map into GF(2)
            uint32_t m = F.degree() * d;
            b = poly_mod(F, a, f);
            Poly acc = b;
            Poly cur = b;
            for (uint32_t i = 1; i < m; ++i) {
                cur = poly_mod(F, poly_mul(F, cur, cur), f);
                acc = poly_add(F, acc, cur);
            }
            b = acc;
        } else {
            uint64_t e = 1;
            for (uint32_t i = 0; i < d; ++i) e *= q;
            b = poly_powmod(F, a, (e - 1) / 2, f);
            b = poly_sub(F, b, Poly{F.one()});
        }
        g = poly_gcd(F, f, b);
        if (poly_deg(g) > 0 && poly_deg(g) < poly_deg(f)) {
            edf(F, g, d, rng, out);
            edf(F, poly_divmod(F, f, g).first, d, rng, out);
            return;
        }
    }
}

}  // namespace polydetail

// full factorization into monic irreducibles with multiplicities
inline std::vector<std::pair<Poly, uint32_t>> poly_factor(const Gf& F, Poly f, Rng& rng) {
    std::vector<std::pair<Poly, uint32_t>> result;
    f = poly_monic(F, f);
    if (poly_deg(f) < 1) return result;
    // peel repeated factors via gcd with the derivative
    std::vector<std::pair<Poly, uint32_t>> stack{{f, 1}};
    std::vector<std::pair<Poly, uint32_t>> squarefree;
    while (!stack.empty()) {
        auto [g, mult] = stack.back();
        stack.pop_back();
        if (poly_deg(g) < 1) continue;
        Poly dg = poly_derivative(F, g);
        if (dg.empty()) {
            // g = h(x^p); coefficients need p-th roots
            uint32_t p = F.characteristic();
            Poly h((g.size() - 1) / p + 1, F.zero());
            for (size_t i = 0; i < h.size(); ++i) {
                Fel c = g[i * p];
                // p-th root: c^(q/p)
                h[i] = F.pow(c, int64_t(F.size() / p));
            }
            stack.push_back({h, mult * p});
            continue;
        }
        Poly c = poly_gcd(F, g, dg);
        Poly sf = poly_divmod(F, g, c).first;  // one copy of each factor with exponent prime to p
        if (poly_deg(sf) >= 1) squarefree.push_back({sf, mult});
        if (poly_deg(c) >= 1) stack.push_back({c, mult});  // residual powers, merged at the end
    }
    // distinct-degree then equal-degree on each squarefree piece
    for (auto& [sf, mult] : squarefree) {
        Poly g = sf;
        uint32_t d = 1;
        Poly x{F.zero(), F.one()};
        Poly xq = x;
        while (poly_deg(g) >= 1) {
            if (int(d) * 2 > poly_deg(g)) {
                result.push_back({poly_monic(F, g), mult});
                break;
            }
            xq = poly_powmod(F, xq, F.size(), g);
            Poly diff = poly_sub(F, xq, x);
            Poly dd = poly_gcd(F, g, poly_mod(F, diff, g));
            if (poly_deg(dd) >= 1) {
                std::vector<Poly> irr;
                polydetail::edf(F, dd, d, rng, irr);
                for (auto& p : irr) result.push_back({p, mult});
                g = poly_divmod(F, g, dd).first;
                xq = poly_mod(F, xq, g);
            }
            ++d;
        }
    }
    // deterministic order: by degree then lexicographic coefficients
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    // merge equal factors
    std::vector<std::pair<Poly, uint32_t>> merged;
    for (auto& pr : result) {
        if (!merged.empty() && merged.back().first == pr.first)
            merged.back().second += pr.second;
        else
            merged.push_back(pr);
    }
    return merged;
}

// evaluate p(A) applied to row vector v:  v * p(A)
inline std::vector<Fel> poly_apply_vec(const Gf& F, const Poly& p, const Mat& A, const std::vector<Fel>& v) {
    uint32_t n = A.cols();
    std::vector<Fel> acc(n, F.zero());
    std::vector<Fel> cur = v;
    for (size_t i = 0; i < p.size(); ++i) {
        row_axpy(F, acc.data(), cur.data(), p[i], n);
        if (i + 1 < p.size()) {
            std::vector<Fel> nxt(n, F.zero());
            for (uint32_t k = 0; k < n; ++k) row_axpy(F, nxt.data(), A.row(k), cur[k], n);
            cur = std::move(nxt);
        }
    }
    return acc;
}

inline Mat poly_apply_mat(const Gf& F, const Poly& p, const Mat& A) {
    Mat acc = mat_zero(F, A.rows(), A.cols());
    Mat cur = mat_identity(F, A.rows());
    for (size_t i = 0; i < p.size(); ++i) {
        if (!F.is_zero(p[i])) acc = mat_add(F, acc, mat_scale(F, cur, p[i]));
        if (i + 1 < p.size()) cur = mat_mul(F, cur, A);
    }
    return acc;
}

}  // namespace crosschar
