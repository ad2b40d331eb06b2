#pragma once

#include <optional>

#include "gf.hpp"

namespace crosschar {

// Dense row-major matrix. Vectors are rows throughout; a module action is
// v |-> v * rho(g) and rho(gh) = rho(g) * rho(h).
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(uint32_t rows, uint32_t cols, Fel fill) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, fill) {}

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    Fel& at(uint32_t i, uint32_t j) { return a_[size_t(i) * cols_ + j]; }
    Fel at(uint32_t i, uint32_t j) const { return a_[size_t(i) * cols_ + j]; }
    Fel* row(uint32_t i) { return a_.data() + size_t(i) * cols_; }
    const Fel* row(uint32_t i) const { return a_.data() + size_t(i) * cols_; }
    const std::vector<Fel>& data() const { return a_; }
    std::vector<Fel>& data() { return a_; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  private:
    uint32_t rows_, cols_;
    std::vector<Fel> a_;
};

inline Mat mat_zero(const Gf& F, uint32_t r, uint32_t c) { return Mat(r, c, F.zero()); }

inline Mat mat_identity(const Gf& F, uint32_t n) {
    Mat m = mat_zero(F, n, n);
    for (uint32_t i = 0; i < n; ++i) m.at(i, i) = F.one();
    return m;
}

// dst += c * src (rows of equal width)
inline void row_axpy(const Gf& F, Fel* dst, const Fel* src, Fel c, uint32_t n) {
    if (F.is_zero(c)) return;
    for (uint32_t j = 0; j < n; ++j) {
        if (!F.is_zero(src[j])) dst[j] = F.add(dst[j], F.mul(c, src[j]));
    }
}

inline void row_scale(const Gf& F, Fel* r, Fel c, uint32_t n) {
    for (uint32_t j = 0; j < n; ++j) r[j] = F.mul(r[j], c);
}

inline Mat mat_mul(const Gf& F, const Mat& A, const Mat& B) {
    if (A.cols() != B.rows()) throw ArgumentError("matrix product shape mismatch");
    Mat C = mat_zero(F, A.rows(), B.cols());
    for (uint32_t i = 0; i < A.rows(); ++i) {
        const Fel* ai = A.row(i);
        Fel* ci = C.row(i);
        for (uint32_t k = 0; k < A.cols(); ++k) row_axpy(F, ci, B.row(k), ai[k], B.cols());
    }
    return C;
}

inline Mat mat_add(const Gf& F, const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ArgumentError("matrix sum shape mismatch");
    Mat C = A;
    for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.add(C.data()[i], B.data()[i]);
    return C;
}

inline Mat mat_sub(const Gf& F, const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw ArgumentError("matrix diff shape mismatch");
    Mat C = A;
    for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] = F.sub(C.data()[i], B.data()[i]);
    return C;
}

inline Mat mat_scale(const Gf& F, const Mat& A, Fel c) {
    Mat C = A;
    for (auto& x : C.data()) x = F.mul(x, c);
    return C;
}

inline Mat transpose(const Mat& A) {
    Mat T(A.cols(), A.rows(), 0);
    for (uint32_t i = 0; i < A.rows(); ++i)
        for (uint32_t j = 0; j < A.cols(); ++j) T.at(j, i) = A.at(i, j);
    return T;
}

inline Mat kron(const Gf& F, const Mat& A, const Mat& B) {
    Mat C = mat_zero(F, A.rows() * B.rows(), A.cols() * B.cols());
    for (uint32_t i1 = 0; i1 < A.rows(); ++i1)
        for (uint32_t j1 = 0; j1 < A.cols(); ++j1) {
            Fel c = A.at(i1, j1);
            if (F.is_zero(c)) continue;
            for (uint32_t i2 = 0; i2 < B.rows(); ++i2)
                for (uint32_t j2 = 0; j2 < B.cols(); ++j2)
                    C.at(i1 * B.rows() + i2, j1 * B.cols() + j2) = F.mul(c, B.at(i2, j2));
        }
    return C;
}

inline Mat mat_pow(const Gf& F, Mat A, uint64_t n) {
    Mat R = mat_identity(F, A.rows());
    while (n) {
        if (n & 1) R = mat_mul(F, R, A);
        A = mat_mul(F, A, A);
        n >>= 1;
    }
    return R;
}

// in-place full reduced row echelon form; deterministic leftmost pivots
struct EchelonInfo {
    uint32_t rank = 0;
    std::vector<uint32_t> pivot_cols;
};

inline EchelonInfo echelonize(const Gf& F, Mat& A) {
    EchelonInfo info;
    uint32_t r = 0;
    for (uint32_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        uint32_t sel = r;
        while (sel < A.rows() && F.is_zero(A.at(sel, c))) ++sel;
        if (sel == A.rows()) continue;
        if (sel != r)
            for (uint32_t j = 0; j < A.cols(); ++j) std::swap(A.at(sel, j), A.at(r, j));
        Fel iv = F.inv(A.at(r, c));
        row_scale(F, A.row(r), iv, A.cols());
        for (uint32_t i = 0; i < A.rows(); ++i) {
            if (i != r && !F.is_zero(A.at(i, c))) row_axpy(F, A.row(i), A.row(r), F.neg(A.at(i, c)), A.cols());
        }
        info.pivot_cols.push_back(c);
        ++r;
    }
    info.rank = r;
    return info;
}

inline uint32_t mat_rank(const Gf& F, Mat A) { return echelonize(F, A).rank; }

// basis of { v : v * A = 0 } as rows
inline Mat kernel_left(const Gf& F, const Mat& A) {
    // reduce [A | I]; rows whose A-part vanished carry the kernel in the I-part
    uint32_t n = A.rows();
    Mat aug(n, A.cols() + n, F.zero());
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols() + i) = F.one();
    }
    uint32_t r = 0;
    for (uint32_t c = 0; c < A.cols() && r < n; ++c) {
        uint32_t sel = r;
        while (sel < n && F.is_zero(aug.at(sel, c))) ++sel;
        if (sel == n) continue;
        if (sel != r)
            for (uint32_t j = 0; j < aug.cols(); ++j) std::swap(aug.at(sel, j), aug.at(r, j));
        Fel iv = F.inv(aug.at(r, c));
        row_scale(F, aug.row(r), iv, aug.cols());
        for (uint32_t i = 0; i < n; ++i)
            if (i != r && !F.is_zero(aug.at(i, c))) row_axpy(F, aug.row(i), aug.row(r), F.neg(aug.at(i, c)), aug.cols());
        ++r;
    }
    Mat K(n - r, n, F.zero());
    for (uint32_t i = r; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) K.at(i - r, j) = aug.at(i, A.cols() + j);
    return K;
}

// basis of { v : A * v^T = 0 }, returned as rows
inline Mat kernel_right(const Gf& F, const Mat& A) { return kernel_left(F, transpose(A)); }

struct SolveResult {
    bool consistent = false;
    Mat particular;  // one X with A*X = B (cols of X per col of B)
    Mat nullspace;   // rows span { v : A * v^T = 0 }
};

// solve A * X = B exactly
inline SolveResult solve_right(const Gf& F, const Mat& A, const Mat& B) {
    if (A.rows() != B.rows()) throw ArgumentError("solve: row mismatch");
    Mat aug(A.rows(), A.cols() + B.cols(), F.zero());
    for (uint32_t i = 0; i < A.rows(); ++i) {
        for (uint32_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        for (uint32_t j = 0; j < B.cols(); ++j) aug.at(i, A.cols() + j) = B.at(i, j);
    }
    EchelonInfo info = echelonize(F, aug);
    SolveResult res;
    res.consistent = true;
    for (uint32_t k = 0; k < info.rank; ++k)
        if (info.pivot_cols[k] >= A.cols()) res.consistent = false;
    res.nullspace = kernel_right(F, A);
    if (!res.consistent) return res;
    res.particular = mat_zero(F, A.cols(), B.cols());
    for (uint32_t k = 0; k < info.rank; ++k) {
        uint32_t pc = info.pivot_cols[k];
        for (uint32_t j = 0; j < B.cols(); ++j) res.particular.at(pc, j) = aug.at(k, A.cols() + j);
    }
    return res;
}

inline std::optional<Mat> mat_inverse(const Gf& F, const Mat& A) {
    if (A.rows() != A.cols()) return std::nullopt;
    uint32_t n = A.rows();
    Mat aug(n, 2 * n, F.zero());
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = F.one();
    }
    EchelonInfo info = echelonize(F, aug);
    if (info.rank != n) return std::nullopt;
    Mat inv(n, n, F.zero());
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Incremental row space with membership coordinates relative to the caller's
// raw basis (the order rows were successfully inserted).
class RowSpace {
  public:
    RowSpace(const Gf& F, uint32_t width) : F_(&F), width_(width) {}

    uint32_t dim() const { return uint32_t(ech_.size()); }
    uint32_t width() const { return width_; }

    // nullopt: row was independent and is now part of the space (a new raw
    // basis vector). Otherwise: coordinates of the row in the raw basis.
    std::optional<std::vector<Fel>> insert(std::vector<Fel> v) {
        const Gf& F = *F_;
        // coords of (v - reduced v) in the raw basis
        std::vector<Fel> acc(ech_.size(), F.zero());
        for (size_t k = 0; k < ech_.size(); ++k) {
            Fel c = v[piv_[k]];
            if (F.is_zero(c)) continue;
            row_axpy(F, v.data(), ech_[k].data(), F.neg(c), width_);
            for (size_t j = 0; j < comb_[k].size(); ++j) acc[j] = F.add(acc[j], F.mul(c, comb_[k][j]));
        }
        uint32_t p = width_;
        for (uint32_t j = 0; j < width_; ++j)
            if (!F.is_zero(v[j])) {
                p = j;
                break;
            }
        if (p == width_) return acc;
        Fel iv = F.inv(v[p]);
        row_scale(F, v.data(), iv, width_);
        // ech_new = iv * (raw_new - acc . raws)
        std::vector<Fel> cm(ech_.size() + 1, F.zero());
        for (size_t j = 0; j < acc.size(); ++j) cm[j] = F.neg(F.mul(iv, acc[j]));
        cm[ech_.size()] = iv;
        ech_.push_back(std::move(v));
        piv_.push_back(p);
        comb_.push_back(std::move(cm));
        return std::nullopt;
    }

    bool contains(std::vector<Fel> v) const {
        const Gf& F = *F_;
        for (size_t k = 0; k < ech_.size(); ++k) {
            Fel c = v[piv_[k]];
            if (!F.is_zero(c)) row_axpy(F, v.data(), ech_[k].data(), F.neg(c), width_);
        }
        for (uint32_t j = 0; j < width_; ++j)
            if (!F.is_zero(v[j])) return false;
        return true;
    }

    Mat echelon_basis() const {
        Mat B(dim(), width_, F_->zero());
        for (uint32_t i = 0; i < dim(); ++i)
            for (uint32_t j = 0; j < width_; ++j) B.at(i, j) = ech_[i][j];
        return B;
    }

  private:
    const Gf* F_;
    uint32_t width_;
    std::vector<std::vector<Fel>> ech_;
    std::vector<std::vector<Fel>> comb_;
    std::vector<uint32_t> piv_;
};

// monic minimal polynomial of the action of A on the row vector v
// (low-degree coefficients first)
inline std::vector<Fel> minpoly_on_vector(const Gf& F, const Mat& A, std::vector<Fel> v) {
    uint32_t n = A.cols();
    RowSpace sp(F, n);
    std::vector<Fel> cur = std::move(v);
    while (true) {
        auto dep = sp.insert(cur);
        if (dep) {
            // cur = sum dep_i * krylov_i ; minpoly = x^m - sum dep_i x^i
            std::vector<Fel> mp(dep->size() + 1, F.zero());
            for (size_t i = 0; i < dep->size(); ++i) mp[i] = F.neg((*dep)[i]);
            mp[dep->size()] = F.one();
            return mp;
        }
        // next = cur * A
        std::vector<Fel> nxt(n, F.zero());
        for (uint32_t k = 0; k < n; ++k) row_axpy(F, nxt.data(), A.row(k), cur[k], n);
        cur = std::move(nxt);
    }
}

inline uint64_t mat_hash(const Mat& A) {
    uint64_t h = hash_combine(A.rows(), A.cols());
    for (Fel x : A.data()) h = hash_combine(h, x);
    return h;
}

}  // namespace crosschar
