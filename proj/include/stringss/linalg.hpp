#pragma once

/**
 * @file linalg.hpp
 * @brief Exact sparse linear algebra over Q and F_p.
 *
 * Matrices are stored by columns. Ranks are computed by column echelon
 * reduction: columns are processed in order of increasing support size and
 * each is reduced against the stored pivots (keyed by leading row) until its
 * leading row is free. Over F_p entries are machine residues; over Q the rank
 * uses fraction-free integer elimination (each column scaled to a primitive
 * integer vector, combinations a*x - b*y followed by content removal). Kernel
 * computations track the combinations and use exact field arithmetic.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "stringss/scalars.hpp"

namespace stringss {

/// Sparse vector: (index, nonzero value) sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

struct SparseMatrix {
    Field field = Field::rational();
    std::size_t rows = 0;
    std::vector<SparseVector> columns;

    std::size_t cols() const { return columns.size(); }

    bool is_zero() const {
        return std::all_of(columns.begin(), columns.end(), [](const SparseVector& c) { return c.empty(); });
    }

    Scalar at(std::size_t r, std::size_t c) const {
        for (const auto& [row, v] : columns.at(c))
            if (row == r) return v;
        return Scalar::zero(field);
    }
};

namespace detail {

struct PrimeOps {
    using value_type = std::uint64_t;
    std::uint64_t p;
    static constexpr bool is_field = true;

    value_type add(value_type a, value_type b) const { return (a + b) % p; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p; }
    bool is_zero(value_type a) const { return a == 0; }
    std::pair<value_type, value_type> cancel(value_type lead_col, value_type lead_piv) const {
        const auto f = mul(lead_col, Scalar::inverse_mod(lead_piv, p));
        return {1, (p - f) % p};
    }
    template <class Col> void normalize(Col&) const {}
};

struct RationalOps {
    using value_type = mpq_class;
    static constexpr bool is_field = true;

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    std::pair<value_type, value_type> cancel(const value_type& lead_col, const value_type& lead_piv) const {
        return {mpq_class(1), mpq_class(-lead_col / lead_piv)};
    }
    template <class Col> void normalize(Col&) const {}
};

/// Integer arithmetic; eliminations stay in Z.
struct FractionFreeOps {
    using value_type = mpz_class;
    static constexpr bool is_field = false;

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    std::pair<value_type, value_type> cancel(const value_type& lead_col, const value_type& lead_piv) const {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lead_col.get_mpz_t(), lead_piv.get_mpz_t());
        return {mpz_class(lead_piv / g), mpz_class(-lead_col / g)};
    }
    template <class Col> void normalize(Col& col) const {
        mpz_class g = 0;
        for (const auto& [r, v] : col) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        if (g > 1)
            for (auto& [r, v] : col) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
};

template <class Ops>
using Col = std::vector<std::pair<std::size_t, typename Ops::value_type>>;

/// a*x + b*y, dropping zeros.
template <class Ops>
Col<Ops> combine(const Ops& ops, const Col<Ops>& x, const typename Ops::value_type& a, const Col<Ops>& y,
                 const typename Ops::value_type& b) {
    Col<Ops> out;
    out.reserve(x.size() + y.size());
    auto ix = x.begin(), iy = y.begin();
    while (ix != x.end() || iy != y.end()) {
        if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
            auto v = ops.mul(a, ix->second);
            if (!ops.is_zero(v)) out.emplace_back(ix->first, std::move(v));
            ++ix;
        } else if (ix == x.end() || iy->first < ix->first) {
            auto v = ops.mul(b, iy->second);
            if (!ops.is_zero(v)) out.emplace_back(iy->first, std::move(v));
            ++iy;
        } else {
            auto v = ops.add(ops.mul(a, ix->second), ops.mul(b, iy->second));
            if (!ops.is_zero(v)) out.emplace_back(ix->first, std::move(v));
            ++ix;
            ++iy;
        }
    }
    return out;
}

/// Column echelon reduction with pivots keyed by leading (smallest) row.
/// When Track is set, each column carries its combination of input columns.
template <class Ops, bool Track = false>
class ColumnReducer {
public:
    using V = typename Ops::value_type;
    static_assert(!Track || Ops::is_field, "kernel tracking needs field arithmetic");

    explicit ColumnReducer(Ops ops) : ops_(std::move(ops)) {}

    /// Reduces `col`; returns true if it was independent of the columns so far.
    /// With tracking, `track` is the column's combination and, when the column
    /// reduces to zero, ends up as a kernel vector.
    bool add(Col<Ops> col, Col<Ops>* track = nullptr) {
        while (!col.empty()) {
            auto it = pivots_.find(col.front().first);
            if (it == pivots_.end()) break;
            const auto& piv = it->second;
            auto [a, b] = ops_.cancel(col.front().second, piv.column.front().second);
            col = combine(ops_, col, a, piv.column, b);
            if constexpr (Track) *track = combine(ops_, *track, a, piv.track, b);
            ops_.normalize(col);
        }
        if (col.empty()) return false;
        Pivot p;
        p.column = std::move(col);
        if constexpr (Track) p.track = *track;
        const auto lead = p.column.front().first;
        pivots_.emplace(lead, std::move(p));
        return true;
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    struct Pivot {
        Col<Ops> column;
        Col<Ops> track;
    };
    Ops ops_;
    std::unordered_map<std::size_t, Pivot> pivots_;
};

inline Col<PrimeOps> to_prime(const SparseVector& v) {
    Col<PrimeOps> out;
    out.reserve(v.size());
    for (const auto& [r, s] : v)
        if (!s.is_zero()) out.emplace_back(r, s.residue());
    return out;
}

inline Col<RationalOps> to_rational(const SparseVector& v) {
    Col<RationalOps> out;
    out.reserve(v.size());
    for (const auto& [r, s] : v)
        if (!s.is_zero()) out.emplace_back(r, s.rational());
    return out;
}

/// Scales a rational column to a primitive integer column.
inline Col<FractionFreeOps> to_integer(const SparseVector& v) {
    mpz_class l = 1;
    for (const auto& [r, s] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
    Col<FractionFreeOps> out;
    out.reserve(v.size());
    for (const auto& [r, s] : v)
        if (!s.is_zero()) out.emplace_back(r, mpz_class(s.rational().get_num() * (l / s.rational().get_den())));
    FractionFreeOps{}.normalize(out);
    return out;
}

/// Column order with sparser columns first; ties keep input order.
inline std::vector<std::size_t> order_by_support(const std::vector<SparseVector>& cols) {
    std::vector<std::size_t> order(cols.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cols[a].size() < cols[b].size(); });
    return order;
}

template <class Ops, class Convert>
std::size_t rank_with(const Ops& ops, const std::vector<SparseVector>& cols, Convert convert) {
    ColumnReducer<Ops> reducer(ops);
    for (auto c : order_by_support(cols))
        if (!cols[c].empty()) reducer.add(convert(cols[c]));
    return reducer.rank();
}

template <class Ops, class Convert, class Back>
std::vector<SparseVector> kernel_with(const Ops& ops, const std::vector<SparseVector>& cols, Convert convert,
                                      Back back) {
    ColumnReducer<Ops, true> reducer(ops);
    std::vector<SparseVector> kernel;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Col<Ops> track;
        track.emplace_back(c, typename Ops::value_type(1));
        if (!reducer.add(convert(cols[c]), &track)) {
            SparseVector v;
            for (auto& [r, x] : track) v.emplace_back(r, back(x));
            kernel.push_back(std::move(v));
        }
    }
    return kernel;
}

}  // namespace detail

inline std::size_t rank_of_columns(const Field& field, const std::vector<SparseVector>& cols) {
    if (field.is_rational()) return detail::rank_with(detail::FractionFreeOps{}, cols, detail::to_integer);
    return detail::rank_with(detail::PrimeOps{field.characteristic()}, cols, detail::to_prime);
}

inline std::size_t rank(const SparseMatrix& m) { return rank_of_columns(m.field, m.columns); }

/// Basis of {x : m x = 0}, as sparse vectors indexed by column.
inline std::vector<SparseVector> kernel(const SparseMatrix& m) {
    const Field f = m.field;
    if (f.is_rational())
        return detail::kernel_with(detail::RationalOps{}, m.columns, detail::to_rational,
                                   [&](const mpq_class& q) { return Scalar::from_rational(f, q); });
    return detail::kernel_with(detail::PrimeOps{f.characteristic()}, m.columns, detail::to_prime,
                               [&](std::uint64_t r) { return Scalar::from_int(f, static_cast<long long>(r)); });
}

/// Applies m to a sparse vector indexed by column.
inline SparseVector apply(const SparseMatrix& m, const SparseVector& x) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [c, xv] : x)
        for (const auto& [r, v] : m.columns.at(c)) {
            auto [it, inserted] = acc.try_emplace(r, v * xv);
            if (!inserted) it->second += v * xv;
        }
    SparseVector out;
    for (auto& [r, v] : acc)
        if (!v.is_zero()) out.emplace_back(r, std::move(v));
    return out;
}

/// True when v lies in the span of cols.
inline bool in_span(const Field& field, const std::vector<SparseVector>& cols, const SparseVector& v) {
    if (v.empty()) return true;
    auto extended = cols;
    extended.push_back(v);
    return rank_of_columns(field, extended) == rank_of_columns(field, cols);
}

}  // namespace stringss
