#include <catch2/catch_amalgamated.hpp>

#include "crosschar/gf.hpp"
#include "crosschar/gfpoly.hpp"

using namespace crosschar;

static void check_field_axioms(const Gf& F, Rng& rng, int samples) {
    for (int t = 0; t < samples; ++t) {
        Fel a = Fel(rng.below(F.size()));
        Fel b = Fel(rng.below(F.size()));
        Fel c = Fel(rng.below(F.size()));
        if (a >= F.size() - 1) a = F.zero();
        if (b >= F.size() - 1) b = F.zero();
        if (c >= F.size() - 1) c = F.zero();
        REQUIRE(F.add(a, b) == F.add(b, a));
        REQUIRE(F.mul(a, b) == F.mul(b, a));
        REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        REQUIRE(F.add(a, F.neg(a)) == F.zero());
        REQUIRE(F.sub(a, b) == F.add(a, F.neg(b)));
        if (!F.is_zero(a)) {
            REQUIRE(F.mul(a, F.inv(a)) == F.one());
        }
        REQUIRE(F.add(a, F.zero()) == a);
        REQUIRE(F.mul(a, F.one()) == a);
        REQUIRE(F.mul(a, F.zero()) == F.zero());
        // Frobenius is additive
        REQUIRE(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
    }
}

TEST_CASE("field arithmetic over a spread of sizes") {
    Rng rng(42);
    for (auto [r, e] : std::vector<std::pair<uint32_t, uint32_t>>{
             {2, 1}, {2, 2}, {2, 4}, {2, 6}, {2, 12}, {3, 1}, {3, 2}, {3, 4}, {3, 6}, {5, 1}, {5, 2}, {7, 1}, {13, 1}}) {
        auto F = get_field(r, e);
        uint64_t q = 1;
        for (uint32_t i = 0; i < e; ++i) q *= r;
        REQUIRE(F->size() == q);
        check_field_axioms(*F, rng, 200);
        // generator has full multiplicative order: log representation makes
        // this automatic, but the table construction would have thrown if the
        // canonical polynomial were not primitive.
        REQUIRE(F->modulus().size() == e + 1);
    }
}

TEST_CASE("prime subfield embedding and integer lifts") {
    auto F = get_field(3, 2);
    REQUIRE(F->from_int(0) == F->zero());
    REQUIRE(F->from_int(1) == F->one());
    REQUIRE(F->add(F->from_int(1), F->from_int(2)) == F->zero());
    REQUIRE(F->from_int(-1) == F->neg(F->one()));
    auto F2 = get_field(2, 1);
    REQUIRE(F2->add(F2->one(), F2->one()) == F2->zero());
}

TEST_CASE("vector index round trip") {
    auto F = get_field(2, 4);
    for (uint64_t i = 0; i < F->size(); ++i) {
        Fel a = F->from_vec_index(uint32_t(i));
        REQUIRE(F->vec_index(a) == i);
    }
}

TEST_CASE("polynomial factorization recovers random products") {
    Rng rng(7);
    for (auto [r, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {2, 2}, {3, 1}, {5, 1}, {3, 2}}) {
        auto Fp = get_field(r, e);
        const Gf& F = *Fp;
        for (int trial = 0; trial < 10; ++trial) {
            // random monic polynomial of moderate degree
            uint32_t deg = 2 + uint32_t(rng.below(8));
            Poly f(deg + 1, F.zero());
            for (uint32_t i = 0; i < deg; ++i) {
                Fel c = Fel(rng.below(F.size()));
                f[i] = (c >= F.size() - 1) ? F.zero() : c;
            }
            f[deg] = F.one();
            auto factors = poly_factor(F, f, rng);
            Poly prod{F.one()};
            for (auto& [p, m] : factors) {
                for (uint32_t i = 0; i < m; ++i) prod = poly_mul(F, prod, p);
                // each reported factor is irreducible: no root splitting for deg <= 3
                if (poly_deg(p) >= 2) {
                    for (uint64_t x = 0; x < F.size() && poly_deg(p) <= 3; ++x) {
                        Fel xv = (x == F.size() - 1) ? F.zero() : Fel(x);
                        Fel val = F.zero();
                        Fel pw = F.one();
                        for (auto c : p) {
                            val = F.add(val, F.mul(c, pw));
                            pw = F.mul(pw, xv);
                        }
                        REQUIRE(!F.is_zero(val));
                    }
                }
            }
            REQUIRE(prod == f);
        }
    }
}

TEST_CASE("x^q - x factors into all linear polynomials") {
    Rng rng(11);
    auto Fp = get_field(5, 1);
    const Gf& F = *Fp;
    Poly f(6, F.zero());
    f[1] = F.neg(F.one());
    f[5] = F.one();
    auto factors = poly_factor(F, f, rng);
    REQUIRE(factors.size() == 5);
    for (auto& [p, m] : factors) {
        REQUIRE(m == 1);
        REQUIRE(poly_deg(p) == 1);
    }
}
