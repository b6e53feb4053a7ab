#pragma once

// Dense square matrices over an arbitrary ring, plus an exact determinant
// over the rationals. The determinant is deliberately implemented by
// Gaussian elimination so it shares nothing with the permutation-sum
// machinery it cross-checks.

#include <vector>

#include "virasoro/rational.hpp"

namespace virasoro {

template <class T>
class SquareMatrix {
  public:
    explicit SquareMatrix(int n, T init = T{})
        : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n), init) {
        if (n < 0)
            throw DomainError("negative matrix size");
    }

    int size() const { return n_; }

    T& at(int i, int j) { return a_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)]; }
    const T& at(int i, int j) const {
        return a_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)];
    }

  private:
    int n_;
    std::vector<T> a_;
};

inline Rational determinant(SquareMatrix<Rational> m) {
    int n = m.size();
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (m.at(row, col) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0)
            return 0;
        if (pivot != col) {
            for (int j = col; j < n; ++j)
                std::swap(m.at(pivot, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        for (int row = col + 1; row < n; ++row) {
            if (m.at(row, col) == 0)
                continue;
            Rational f = m.at(row, col) / m.at(col, col);
            for (int j = col; j < n; ++j)
                m.at(row, j) -= f * m.at(col, j);
        }
    }
    return det;
}

} // namespace virasoro
