#pragma once

/**
 * @file graded_algebra.hpp
 * @brief Bigraded graded-commutative algebras over an exact field.
 *
 * Every generator carries a homological degree (negative for cohomology
 * classes of the base) and a weight (the component / map degree). Monomials
 * are stored sparsely with generator ids strictly increasing; products pick
 * up the Koszul sign (-1)^{|a||b|} for every transposition of generators.
 *
 * Basis enumeration at a fixed (degree, weight) is finite whenever the
 * generators satisfy the finiteness certificate checked by
 * GradedAlgebra::check_finite():
 *   - negative-degree generators have bounded exponents (Truncated/Exterior);
 *   - at most one unbounded degree-0 generator (Laurent or Polynomial), and it
 *     carries nonzero weight. Its exponent is solved from the weight rather
 *     than scanned.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stringss/errors.hpp"
#include "stringss/scalars.hpp"

namespace stringss {

using GeneratorId = std::size_t;

enum class GeneratorKind { Polynomial, Laurent, Exterior, Truncated };

struct Generator {
    GeneratorId id = 0;
    std::string name;
    int degree = 0;
    int weight = 0;
    GeneratorKind kind = GeneratorKind::Polynomial;
    int truncation = 0;  // largest nonzero power for Truncated

    bool bounded() const { return kind == GeneratorKind::Exterior || kind == GeneratorKind::Truncated; }
    int max_exponent() const { return kind == GeneratorKind::Exterior ? 1 : truncation; }

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// A monomial prod g_i^{e_i}; factors sorted by id, no zero exponents.
class Monomial {
public:
    using Factor = std::pair<GeneratorId, int>;

    Monomial() = default;

    std::span<const Factor> factors() const { return factors_; }
    int degree() const { return degree_; }
    int weight() const { return weight_; }
    bool is_unit() const { return factors_.empty(); }

    int exponent(GeneratorId id) const {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), id,
                                   [](const Factor& f, GeneratorId g) { return f.first < g; });
        return it != factors_.end() && it->first == id ? it->second : 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

    /// Lexicographic on exponent vectors (generator 0 most significant).
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        auto ia = a.factors_.begin(), ib = b.factors_.begin();
        while (ia != a.factors_.end() || ib != b.factors_.end()) {
            GeneratorId id;
            if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first))
                id = ia->first;
            else
                id = ib->first;
            const int ea = (ia != a.factors_.end() && ia->first == id) ? (ia++)->second : 0;
            const int eb = (ib != b.factors_.end() && ib->first == id) ? (ib++)->second : 0;
            if (ea != eb) return ea <=> eb;
        }
        return std::strong_ordering::equal;
    }

private:
    friend class GradedAlgebra;
    std::vector<Factor> factors_;
    int degree_ = 0;
    int weight_ = 0;
};

class Element;

class GradedAlgebra {
public:
    explicit GradedAlgebra(Field field) : field_(field) {}

    const Field& field() const { return field_; }
    std::span<const Generator> generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }

    const Generator& generator(GeneratorId id) const {
        if (id >= generators_.size()) throw UnknownGenerator("generator id " + std::to_string(id));
        return generators_[id];
    }

    const Generator& generator(const std::string& name) const {
        for (const auto& g : generators_)
            if (g.name == name) return g;
        throw UnknownGenerator("no generator named '" + name + "'");
    }

    bool has_generator(const std::string& name) const {
        return std::any_of(generators_.begin(), generators_.end(), [&](const Generator& g) { return g.name == name; });
    }

    const Generator& declare_generator(std::string name, int degree, int weight, GeneratorKind kind,
                                       int truncation = 0) {
        if (has_generator(name)) throw DuplicateName("generator '" + name + "' already declared");
        if (kind == GeneratorKind::Laurent && degree != 0)
            throw LaurentNonzeroDegree("Laurent generator '" + name + "' has degree " + std::to_string(degree));
        if (kind == GeneratorKind::Truncated && truncation < 1)
            throw std::invalid_argument("Truncated generator '" + name + "' needs truncation >= 1");
        if (field_.characteristic() != 2) {
            const bool odd = degree % 2 != 0;
            if (kind == GeneratorKind::Exterior && !odd)
                throw ParityViolation("exterior generator '" + name + "' has even degree over " + field_.name());
            if (kind != GeneratorKind::Exterior && odd)
                throw ParityViolation("generator '" + name + "' of odd degree must be exterior over " + field_.name());
        }
        Generator g{generators_.size(), std::move(name), degree, weight, kind,
                    kind == GeneratorKind::Truncated ? truncation : 0};
        generators_.push_back(std::move(g));
        return generators_.back();
    }

    /// Records that generators of degree >= floor exist but were not declared.
    void set_omitted_degree_floor(std::optional<int> floor) { omitted_floor_ = floor; }
    std::optional<int> omitted_degree_floor() const { return omitted_floor_; }

    /// Sum over negative-degree generators of |degree| * max exponent.
    int negative_depth() const {
        int depth = 0;
        for (const auto& g : generators_)
            if (g.degree < 0 && g.bounded()) depth += -g.degree * g.max_exponent();
        return depth;
    }

    /// Largest degree through which enumerate_basis sees every monomial of
    /// the untruncated algebra; nullopt when no generators were omitted.
    std::optional<int> complete_through() const {
        if (!omitted_floor_) return std::nullopt;
        return *omitted_floor_ - 1 - negative_depth();
    }

    /// Canonical monomial from (id, exponent) pairs, or nullopt (zero) when an
    /// Exterior or Truncated exponent is out of range.
    std::optional<Monomial> monomial(std::span<const std::pair<GeneratorId, int>> exps) const {
        std::map<GeneratorId, int> merged;
        for (auto [id, e] : exps) {
            generator(id);
            merged[id] += e;
        }
        Monomial m;
        for (auto [id, e] : merged) {
            if (e == 0) continue;
            const auto& g = generators_[id];
            if (e < 0 && g.kind != GeneratorKind::Laurent)
                throw std::invalid_argument("negative exponent on non-Laurent generator '" + g.name + "'");
            if (g.bounded() && e > g.max_exponent()) return std::nullopt;
            m.factors_.emplace_back(id, e);
            m.degree_ += g.degree * e;
            m.weight_ += g.weight * e;
        }
        return m;
    }

    std::optional<Monomial> monomial(std::initializer_list<std::pair<GeneratorId, int>> exps) const {
        return monomial(std::span<const std::pair<GeneratorId, int>>(exps.begin(), exps.size()));
    }

    /// Same as monomial() but keyed by generator name.
    std::optional<Monomial> monomial(std::initializer_list<std::pair<std::string, int>> exps) const {
        std::vector<std::pair<GeneratorId, int>> ids;
        for (const auto& [name, e] : exps) ids.emplace_back(generator(name).id, e);
        return monomial(ids);
    }

    Monomial unit() const { return Monomial{}; }

    /// Product a*b as (monomial, sign), or nullopt when it vanishes.
    std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) const {
        int sign = 1;
        if (field_.characteristic() != 2) {
            // moving each factor of b left past the factors of a with larger id
            for (auto [ib, eb] : b.factors_) {
                const int db = generators_[ib].degree * eb;
                if (db % 2 == 0) continue;
                for (auto [ia, ea] : a.factors_)
                    if (ia > ib && (generators_[ia].degree * ea) % 2 != 0) sign = -sign;
            }
        }
        std::vector<std::pair<GeneratorId, int>> all(a.factors_.begin(), a.factors_.end());
        all.insert(all.end(), b.factors_.begin(), b.factors_.end());
        auto m = monomial(all);
        if (!m) return std::nullopt;
        return std::pair{std::move(*m), sign};
    }

    /// Throws InfiniteBasis unless every (degree, weight) piece is finite.
    void check_finite() const { (void)solved_generator(); }

    /// All canonical monomials of the given degree and weight, sorted.
    std::vector<Monomial> enumerate_basis(int degree, int weight) const {
        const auto solved = solved_generator();
        std::vector<GeneratorId> order;
        for (const auto& g : generators_)
            if (!solved || g.id != *solved) order.push_back(g.id);

        // remaining_neg[i]: how far generators order[i..] can still lower the degree
        std::vector<int> remaining_neg(order.size() + 1, 0);
        for (std::size_t i = order.size(); i-- > 0;) {
            const auto& g = generators_[order[i]];
            remaining_neg[i] = remaining_neg[i + 1] + (g.degree < 0 ? -g.degree * g.max_exponent() : 0);
        }

        std::vector<Monomial> out;
        std::vector<std::pair<GeneratorId, int>> current;
        auto emit = [&](int wt) {
            std::vector<std::pair<GeneratorId, int>> exps = current;
            if (solved) {
                const auto& s = generators_[*solved];
                const int diff = weight - wt;
                if (diff % s.weight != 0) return;
                const int e = diff / s.weight;
                if (e < 0 && s.kind != GeneratorKind::Laurent) return;
                exps.emplace_back(s.id, e);
            } else if (wt != weight) {
                return;
            }
            if (auto m = monomial(exps)) out.push_back(std::move(*m));
        };

        auto recurse = [&](auto&& self, std::size_t i, int deg, int wt) -> void {
            if (deg - remaining_neg[i] > degree) return;
            if (i == order.size()) {
                if (deg == degree) emit(wt);
                return;
            }
            const auto& g = generators_[order[i]];
            int max_e;
            if (g.bounded()) {
                max_e = g.max_exponent();
            } else {
                // unbounded, positive degree (certificate)
                const int room = degree + remaining_neg[i + 1] - deg;
                if (room < 0) return;
                max_e = room / g.degree;
            }
            for (int e = 0; e <= max_e; ++e) {
                if (e > 0) current.emplace_back(g.id, e);
                self(self, i + 1, deg + g.degree * e, wt + g.weight * e);
                if (e > 0) current.pop_back();
            }
        };
        recurse(recurse, 0, 0, 0);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string to_string(const Monomial& m) const {
        if (m.is_unit()) return "1";
        std::string s;
        for (auto [id, e] : m.factors()) {
            if (!s.empty()) s += ' ';
            s += generators_[id].name;
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
        return a.field_ == b.field_ && a.generators_ == b.generators_;
    }

private:
    std::optional<GeneratorId> solved_generator() const {
        std::optional<GeneratorId> solved;
        for (const auto& g : generators_) {
            if (g.bounded()) continue;
            if (g.degree < 0)
                throw InfiniteBasis("negative-degree generator '" + g.name + "' has unbounded exponents");
            if (g.degree > 0) continue;
            if (g.weight == 0)
                throw InfiniteBasis("degree-0 generator '" + g.name + "' has weight 0 and unbounded exponents");
            if (solved)
                throw InfiniteBasis("more than one unbounded degree-0 generator ('" + generators_[*solved].name +
                                    "', '" + g.name + "')");
            solved = g.id;
        }
        return solved;
    }

    Field field_;
    std::vector<Generator> generators_;
    std::optional<int> omitted_floor_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// A finite linear combination of canonical monomials; zero terms are never stored.
class Element {
public:
    explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

    Element(AlgebraPtr alg, const Monomial& m) : alg_(std::move(alg)) {
        terms_.emplace(m, Scalar::one(alg_->field()));
    }

    Element(AlgebraPtr alg, const Monomial& m, Scalar c) : alg_(std::move(alg)) { add_term(m, std::move(c)); }

    static Element generator(const AlgebraPtr& alg, const std::string& name) {
        return Element(alg, *alg->monomial({{name, 1}}));
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar::zero(alg_->field()) : it->second;
    }

    void add_term(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// (degree, weight) if every term shares one bidegree; zero has none.
    std::optional<std::pair<int, int>> bidegree() const {
        if (terms_.empty()) return std::nullopt;
        const auto& first = terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            if (m.degree() != first.degree() || m.weight() != first.weight()) return std::nullopt;
        return std::pair{first.degree(), first.weight()};
    }

    bool is_homogeneous() const { return terms_.empty() || bidegree().has_value(); }

    Element operator+(const Element& o) const {
        check_same(o);
        Element r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Element operator-() const {
        Element r(alg_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Element operator-(const Element& o) const { return *this + (-o); }

    Element operator*(const Scalar& s) const {
        Element r(alg_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }

    Element operator*(const Element& o) const {
        check_same(o);
        Element r(alg_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_)
                if (auto p = alg_->multiply(ma, mb)) {
                    Scalar c = ca * cb;
                    r.add_term(p->first, p->second < 0 ? -c : c);
                }
        return r;
    }

    friend bool operator==(const Element& a, const Element& b) {
        return same_algebra(a.alg_, b.alg_) && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.to_string() + "*" + alg_->to_string(m);
        }
        return s;
    }

private:
    void check_same(const Element& o) const {
        if (!same_algebra(alg_, o.alg_)) throw AlgebraMismatch("elements belong to different algebras");
    }

    AlgebraPtr alg_;
    std::map<Monomial, Scalar> terms_;
};

inline Element multiply(const Element& x, const Element& y) { return x * y; }

/// A ⊗ B: generators of A followed by those of B. Names must be disjoint.
inline GradedAlgebra tensor_product(const GradedAlgebra& a, const GradedAlgebra& b) {
    if (a.field() != b.field()) throw FieldMismatch("tensor factors over different fields");
    GradedAlgebra out(a.field());
    for (const auto& g : a.generators()) out.declare_generator(g.name, g.degree, g.weight, g.kind, g.truncation);
    for (const auto& g : b.generators()) out.declare_generator(g.name, g.degree, g.weight, g.kind, g.truncation);
    const auto fa = a.omitted_degree_floor(), fb = b.omitted_degree_floor();
    if (fa && fb) out.set_omitted_degree_floor(std::min(*fa, *fb));
    else out.set_omitted_degree_floor(fa ? fa : fb);
    return out;
}

/// Iterated Dyer-Lashof family on a class of odd degree `base_degree`:
/// deg Q^{i+1} = p * deg Q^i + (p - 1). Odd primes also carry beta Q^i (degree one less).
struct DyerLashofFamily {
    int base_degree = 1;
    int prime = 2;
    bool with_bockstein = false;

    long long degree(int i) const {
        long long d = base_degree;
        for (int j = 0; j < i; ++j) d = prime * d + (prime - 1);
        return d;
    }

    long long weight(int i, long long base_weight = 1) const {
        long long w = base_weight;
        for (int j = 0; j < i; ++j) w *= prime;
        return w;
    }

    /// Smallest degree among the index-i generators.
    long long min_degree(int i) const { return degree(i) - (with_bockstein && i > 0 ? 1 : 0); }
};

/// Smallest i_max such that every family member of index > i_max has degree > cutoff.
inline int generator_horizon(const DyerLashofFamily& family, int degree_cutoff) {
    if (degree_cutoff < 0) throw std::invalid_argument("degree cutoff must be >= 0");
    int i = 0;
    while (family.min_degree(i + 1) <= degree_cutoff) ++i;
    return i;
}

}  // namespace stringss
