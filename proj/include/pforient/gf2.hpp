#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pforient/errors.hpp"

namespace pforient {

/// Dense bit vector over GF(2), packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec ones(std::size_t n) {
        BitVec v(n);
        for (std::size_t k = 0; k < v.w_.size(); ++k) v.w_[k] = ~std::uint64_t(0);
        v.clear_tail();
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool b) {
        const std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (b) w_[i >> 6] |= mask;
        else w_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        if (o.n_ != n_) throw LengthMismatch("BitVec xor: size mismatch");
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool any() const {
        for (std::uint64_t w : w_)
            if (w) return true;
        return false;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }

    /// Index of the lowest set bit, or size() if none.
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
        return n_;
    }

    bool operator==(const BitVec& o) const = default;

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

private:
    void clear_tail() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (std::uint64_t(1) << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Bit-packed binary matrix with row-major word storage.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool b) {
        const std::uint64_t mask = std::uint64_t(1) << (c & 63);
        if (b) w_[r * wpr_ + (c >> 6)] |= mask;
        else w_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    void xor_row(std::size_t dst, std::size_t src) {
        for (std::size_t k = 0; k < wpr_; ++k) w_[dst * wpr_ + k] ^= w_[src * wpr_ + k];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < wpr_; ++k)
            std::swap(w_[a * wpr_ + k], w_[b * wpr_ + k]);
    }

    BitVec row(std::size_t r) const {
        BitVec v(cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) v.set(c, true);
        return v;
    }

    void set_row(std::size_t r, const BitVec& v) {
        for (std::size_t c = 0; c < cols_; ++c) set(r, c, v.get(c));
    }

    bool row_any(std::size_t r) const {
        for (std::size_t k = 0; k < wpr_; ++k)
            if (w_[r * wpr_ + k]) return true;
        return false;
    }

    /// Lowest set column in row r, or cols() if the row is zero.
    std::size_t row_first_set(std::size_t r) const {
        for (std::size_t k = 0; k < wpr_; ++k)
            if (w_[r * wpr_ + k]) return k * 64 + std::countr_zero(w_[r * wpr_ + k]);
        return cols_;
    }

    /// Matrix-vector product over GF(2).
    BitVec multiply(const BitVec& x) const {
        if (x.size() != cols_) throw LengthMismatch("Gf2Matrix::multiply: size mismatch");
        BitVec y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::size_t parity = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                parity ^= std::size_t(get(r, c) & x.get(c));
            y.set(r, parity != 0);
        }
        return y;
    }

    bool operator==(const Gf2Matrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Reduce m to reduced row echelon form in place; row operations are mirrored
/// on rhs when given. Pivot choice is the first nonzero entry in a
/// column-major scan with rows swapped upward, so the result is deterministic.
/// Returns the pivot column of each pivot row, in row order.
inline std::vector<std::size_t> rref_inplace(Gf2Matrix& m, BitVec* rhs = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t sel = m.rows();
        for (std::size_t r = pr; r < m.rows(); ++r)
            if (m.get(r, c)) { sel = r; break; }
        if (sel == m.rows()) continue;
        m.swap_rows(pr, sel);
        if (rhs && sel != pr) {
            const bool t = rhs->get(pr);
            rhs->set(pr, rhs->get(sel));
            rhs->set(sel, t);
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != pr && m.get(r, c)) {
                m.xor_row(r, pr);
                if (rhs && rhs->get(pr)) rhs->flip(r);
            }
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

/// Row rank over GF(2).
inline std::size_t rank_gf2(Gf2Matrix m) { return rref_inplace(m).size(); }

/// Affine solution set of m x = rhs: one particular solution plus a basis of
/// ker(m). Every solution is particular xor a subset of the basis, and the
/// basis has cols - rank elements (free columns in increasing order).
struct Gf2Solution {
    BitVec particular;
    std::vector<BitVec> nullspace_basis;
};

inline std::optional<Gf2Solution> solve_affine(const Gf2Matrix& m, const BitVec& rhs) {
    if (rhs.size() != m.rows()) throw LengthMismatch("solve_affine: rhs length != rows");
    Gf2Matrix a = m;
    BitVec b = rhs;
    const std::vector<std::size_t> pivots = rref_inplace(a, &b);
    for (std::size_t r = pivots.size(); r < a.rows(); ++r)
        if (b.get(r)) return std::nullopt; // rhs outside the column space

    Gf2Solution sol;
    sol.particular = BitVec(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        sol.particular.set(pivots[i], b.get(i));

    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        BitVec v(a.cols());
        v.set(c, true);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (a.get(i, c)) v.set(pivots[i], true);
        sol.nullspace_basis.push_back(std::move(v));
    }
    return sol;
}

/// Dense integer matrix with exact entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    long long& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    long long at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<long long> e_;
};

/// Entry-wise reduction mod 2.
inline Gf2Matrix to_gf2(const IntMatrix& m) {
    Gf2Matrix g(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c) % 2 != 0) g.set(r, c, true);
    return g;
}

/// Exact determinant via fraction-free (Bareiss) elimination. All divisions
/// are exact; intermediate products use 128-bit arithmetic.
inline long long det_int(IntMatrix a) {
    if (a.rows() != a.cols()) throw NotSquare("det_int: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1; // empty product convention
    long long sign = 1;
    long long prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const __int128 t = static_cast<__int128>(a.at(i, j)) * a.at(k, k) -
                                   static_cast<__int128>(a.at(i, k)) * a.at(k, j);
                a.at(i, j) = static_cast<long long>(t / prev);
            }
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

} // namespace pforient
