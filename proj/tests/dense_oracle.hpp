#pragma once

// Test-only reference routines, deliberately naive and independent of the
// library's sparse elimination and basis enumeration.

#include <cstddef>
#include <map>
#include <vector>

#include "stringss/linalg.hpp"

namespace oracle {

using stringss::Scalar;

/// Dense Gauss-Jordan row reduction over the matrix's field.
inline std::size_t dense_rank(const stringss::SparseMatrix& m) {
    const auto zero = Scalar::zero(m.field);
    std::vector<std::vector<Scalar>> a(m.rows, std::vector<Scalar>(m.cols(), zero));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.columns[c]) a[r][c] = v;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows && a[pivot][c].is_zero()) ++pivot;
        if (pivot == m.rows) continue;
        std::swap(a[pivot], a[rank]);
        const Scalar inv = a[rank][c].inv();
        for (auto& x : a[rank]) x = x * inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || a[r][c].is_zero()) continue;
            const Scalar f = a[r][c];
            for (std::size_t j = 0; j < m.cols(); ++j) a[r][j] = a[r][j] - f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Exponent vectors in a box with the given degree and weight, by brute force.
/// `degrees`, `weights`, `lo`, `hi` are per generator.
inline std::vector<std::vector<int>> box_search(const std::vector<int>& degrees, const std::vector<int>& weights,
                                                const std::vector<int>& lo, const std::vector<int>& hi, int degree,
                                                int weight) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(lo);
    while (true) {
        int d = 0, w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            d += degrees[i] * e[i];
            w += weights[i] * e[i];
        }
        if (d == degree && w == weight) out.push_back(e);
        std::size_t i = e.size();
        while (i-- > 0) {
            if (e[i] < hi[i]) {
                ++e[i];
                break;
            }
            e[i] = lo[i];
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

}  // namespace oracle
