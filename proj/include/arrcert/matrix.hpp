#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "arrcert/cyclotomic.hpp"

namespace arrcert::geom {

// Dense matrix over a single cyclotomic field. Arithmetic is exact, so
// elimination pivots on the first nonzero entry; no pivot strategy needed.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Cyclotomic> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, unsigned order)
        : rows(r), cols(c), a(r * c, Cyclotomic::zero(order)) {}

    Cyclotomic& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Cyclotomic& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref_inplace(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
        std::size_t sel = r;
        while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(r, c));
        Cyclotomic inv = m.at(r, col).inverse();
        for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col).is_zero()) continue;
            Cyclotomic f = m.at(i, col);
            for (std::size_t c = col; c < m.cols; ++c) m.at(i, c) -= f * m.at(r, c);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Mat m) { return rref_inplace(m).size(); }

// Basis of the right null space, one vector per free column, ascending.
inline std::vector<std::vector<Cyclotomic>> nullspace(Mat m, unsigned order) {
    std::vector<std::size_t> pivots = rref_inplace(m);
    std::vector<char> is_pivot(m.cols, 0);
    for (std::size_t c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<Cyclotomic>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Cyclotomic> v(m.cols, Cyclotomic::zero(order));
        v[f] = Cyclotomic::one(order);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental eliminator that keeps its stored rows in reduced echelon form.
// Suited to scans that add one row at a time and ask for the rank or, at
// corank one, the null vector.
class Eliminator {
  public:
    explicit Eliminator(std::size_t cols, unsigned order) : cols_(cols), order_(order) {}

    // Reduces the row against the current basis; keeps it if independent.
    // Returns true when the rank grew.
    bool add_row(std::vector<Cyclotomic> row) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Cyclotomic& f = row[pivot_[k]];
            if (f.is_zero()) continue;
            Cyclotomic factor = f;
            for (std::size_t c = 0; c < cols_; ++c) row[c] -= factor * rows_[k][c];
        }
        std::size_t p = 0;
        while (p < cols_ && row[p].is_zero()) ++p;
        if (p == cols_) return false;
        Cyclotomic inv = row[p].inverse();
        for (std::size_t c = p; c < cols_; ++c) row[c] *= inv;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Cyclotomic f = rows_[k][p];
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < cols_; ++c) rows_[k][c] -= f * row[c];
        }
        std::size_t pos = 0;
        while (pos < pivot_.size() && pivot_[pos] < p) ++pos;
        pivot_.insert(pivot_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(row));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::size_t>& pivots() const { return pivot_; }
    const std::vector<std::vector<Cyclotomic>>& basis_rows() const { return rows_; }

    // Requires rank == cols - 1; the kernel is then one-dimensional.
    std::vector<Cyclotomic> null_vector() const {
        std::vector<char> is_pivot(cols_, 0);
        for (std::size_t c : pivot_) is_pivot[c] = 1;
        std::size_t f = 0;
        while (f < cols_ && is_pivot[f]) ++f;
        std::vector<Cyclotomic> v(cols_, Cyclotomic::zero(order_));
        v[f] = Cyclotomic::one(order_);
        for (std::size_t k = 0; k < rows_.size(); ++k) v[pivot_[k]] = -rows_[k][f];
        return v;
    }

  private:
    std::size_t cols_;
    unsigned order_;
    std::vector<std::size_t> pivot_;
    std::vector<std::vector<Cyclotomic>> rows_;
};

}  // namespace arrcert::geom
