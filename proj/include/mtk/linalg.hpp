#pragma once

#include <vector>

#include "mtk/arith.hpp"

namespace mtk {

using RatVec = std::vector<Rat>;

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    RatVec row(int i) const;
    void append_row(const RatVec& r);

    RatMatrix transpose() const;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    RatVec apply(const RatVec& v) const;        // M v
    RatVec apply_left(const RatVec& v) const;   // v M

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

struct Echelon {
    RatMatrix rref;            // reduced row echelon form, zero rows dropped
    std::vector<int> pivots;   // pivot column of each row
};

// Row reduction: each row is scaled to integers and eliminated fraction-free
// (Bareiss), then normalised and back-substituted over Q.
Echelon row_reduce(const RatMatrix& m);
// Basis of {v : M v = 0}, one vector per free column.
std::vector<RatVec> kernel(const RatMatrix& m);
// Solve x with sum_i x_i basis[i] = v; returns false if v is not in the span.
bool solve_in_span(const std::vector<RatVec>& basis, const RatVec& v, RatVec& x);

// Scale a nonzero rational vector to a primitive integral one, first nonzero
// entry positive.  Returns the scale factor applied.
Rat make_primitive(RatVec& v);

}  // namespace mtk
