#include <catch2/catch_amalgamated.hpp>

#include "crosschar/gfpoly.hpp"
#include "crosschar/matrix.hpp"

using namespace crosschar;

static Mat random_mat(const Gf& F, Rng& rng, uint32_t r, uint32_t c) {
    Mat A(r, c, F.zero());
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < c; ++j) {
            Fel x = Fel(rng.below(F.size()));
            A.at(i, j) = (x >= F.size() - 1) ? F.zero() : x;
        }
    return A;
}

TEST_CASE("rank and kernel basics") {
    auto F2 = get_field(2, 1);
    Mat I3 = mat_identity(*F2, 3);
    REQUIRE(mat_rank(*F2, I3) == 3);
    REQUIRE(kernel_left(*F2, I3).rows() == 0);

    auto F3 = get_field(3, 1);
    Mat Z = mat_zero(*F3, 2, 5);
    REQUIRE(mat_rank(*F3, Z) == 0);
    REQUIRE(kernel_left(*F3, Z).rows() == 2);

    // [[1,1],[1,1]] over GF(2): rank 1, kernel spanned by (1,1)
    Mat A(2, 2, F2->one());
    REQUIRE(mat_rank(*F2, A) == 1);
    Mat K = kernel_left(*F2, A);
    REQUIRE(K.rows() == 1);
    REQUIRE(K.at(0, 0) == F2->one());
    REQUIRE(K.at(0, 1) == F2->one());
}

TEST_CASE("rank-nullity on all 2x2 matrices over GF(2)") {
    auto F = get_field(2, 1);
    for (int bits = 0; bits < 16; ++bits) {
        Mat A(2, 2, F->zero());
        for (int k = 0; k < 4; ++k)
            if (bits & (1 << k)) A.at(k / 2, k % 2) = F->one();
        uint32_t r = mat_rank(*F, A);
        Mat K = kernel_left(*F, A);
        REQUIRE(r + K.rows() == 2);
        // every kernel row maps to zero
        Mat img = mat_mul(*F, K, A);
        for (auto x : img.data()) REQUIRE(F->is_zero(x));
    }
}

TEST_CASE("solve reports exact solutions and detects inconsistency") {
    Rng rng(5);
    for (auto [r, e] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto Fp = get_field(r, e);
        const Gf& F = *Fp;
        for (int t = 0; t < 30; ++t) {
            uint32_t n = 2 + uint32_t(rng.below(5));
            uint32_t m = 2 + uint32_t(rng.below(5));
            Mat A = random_mat(F, rng, n, m);
            Mat X0 = random_mat(F, rng, m, 2);
            Mat B = mat_mul(F, A, X0);
            auto res = solve_right(F, A, B);
            REQUIRE(res.consistent);
            REQUIRE(mat_mul(F, A, res.particular) == B);
            // every nullspace row v satisfies A v^T = 0
            if (res.nullspace.rows()) {
                Mat prod = mat_mul(F, A, transpose(res.nullspace));
                for (auto x : prod.data()) REQUIRE(F.is_zero(x));
            }
        }
    }
    // inconsistent case: a = [[1,1],[0,0]] over GF(2), b = (1,1)^T has no solution
    auto F2 = get_field(2, 1);
    Mat a(2, 2, F2->zero());
    a.at(0, 0) = a.at(0, 1) = F2->one();
    Mat bad(2, 1, F2->one());
    REQUIRE(!solve_right(*F2, a, bad).consistent);
    // b = (1,0)^T: particular (1,0), nullspace spanned by (1,1)
    Mat b(2, 1, F2->zero());
    b.at(0, 0) = F2->one();
    auto res = solve_right(*F2, a, b);
    REQUIRE(res.consistent);
    REQUIRE(mat_mul(*F2, a, res.particular) == b);
    REQUIRE(res.nullspace.rows() == 1);
}

TEST_CASE("kron dimensions, identities and associativity") {
    auto F2 = get_field(2, 1);
    Mat I2 = mat_identity(*F2, 2);
    Mat I3 = mat_identity(*F2, 3);
    REQUIRE(kron(*F2, I2, I3) == mat_identity(*F2, 6));

    // swap pattern [[0,1],[1,0]] tensor I2 = 4x4 block swap
    Mat S(2, 2, F2->zero());
    S.at(0, 1) = S.at(1, 0) = F2->one();
    Mat K = kron(*F2, S, I2);
    REQUIRE(K.rows() == 4);
    REQUIRE(K.at(0, 2) == F2->one());
    REQUIRE(K.at(1, 3) == F2->one());
    REQUIRE(K.at(2, 0) == F2->one());
    REQUIRE(F2->is_zero(K.at(0, 0)));

    Rng rng(9);
    auto F = get_field(3, 2);
    Mat A = random_mat(*F, rng, 2, 3), B = random_mat(*F, rng, 3, 2), C = random_mat(*F, rng, 2, 2);
    REQUIRE(kron(*F, kron(*F, A, B), C) == kron(*F, A, kron(*F, B, C)));
    // mixed-product sanity: (A kron B)(A' kron B') = AA' kron BB'
    Mat A2 = random_mat(*F, rng, 3, 2), B2 = random_mat(*F, rng, 2, 3);
    REQUIRE(mat_mul(*F, kron(*F, A, B), kron(*F, A2, B2)) ==
            kron(*F, mat_mul(*F, A, A2), mat_mul(*F, B, B2)));
}

TEST_CASE("1x1 scalar kron scales") {
    auto F = get_field(5, 1);
    Rng rng(3);
    Mat M = random_mat(*F, rng, 3, 3);
    Mat lam(1, 1, F->from_int(3));
    REQUIRE(kron(*F, lam, M) == mat_scale(*F, M, F->from_int(3)));
}

TEST_CASE("minimal polynomial of a companion-like action") {
    auto F = get_field(2, 1);
    // nilpotent Jordan block: minpoly on e_? is x^k
    Mat N = mat_zero(*F, 4, 4);
    for (uint32_t i = 0; i + 1 < 4; ++i) N.at(i, i + 1) = F->one();
    std::vector<Fel> e0(4, F->zero());
    e0[0] = F->one();
    auto mp = minpoly_on_vector(*F, N, e0);
    REQUIRE(poly_deg(mp) == 4);
    for (int i = 0; i < 4; ++i) REQUIRE(F->is_zero(mp[size_t(i)]));
    // inverse: A * A^{-1} = I over a few random invertible matrices
    Rng rng(17);
    auto F9 = get_field(3, 2);
    int found = 0;
    while (found < 5) {
        Mat A = random_mat(*F9, rng, 4, 4);
        auto inv = mat_inverse(*F9, A);
        if (!inv) continue;
        ++found;
        REQUIRE(mat_mul(*F9, A, *inv) == mat_identity(*F9, 4));
    }
}

TEST_CASE("row space tracks membership coordinates") {
    auto F = get_field(3, 1);
    RowSpace sp(*F, 3);
    std::vector<Fel> v1{F->one(), F->from_int(2), F->zero()};
    std::vector<Fel> v2{F->zero(), F->one(), F->one()};
    REQUIRE(!sp.insert(v1));
    REQUIRE(!sp.insert(v2));
    // v = 2*v1 + v2
    std::vector<Fel> v(3);
    for (int j = 0; j < 3; ++j) v[size_t(j)] = F->add(F->mul(F->from_int(2), v1[size_t(j)]), v2[size_t(j)]);
    auto dep = sp.insert(v);
    REQUIRE(dep);
    REQUIRE((*dep)[0] == F->from_int(2));
    REQUIRE((*dep)[1] == F->one());
}
