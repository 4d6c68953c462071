#pragma once

/**
 * @file dga.hpp
 * @brief Derivation differentials on bigraded algebras and their homology.
 *
 * A Derivation is given by the images of generators and extended by the
 * signed Leibniz rule d(ab) = d(a) b + (-1)^{|a|} a d(b). It has degree -1
 * and weight 0. Homology is computed one (degree, weight) block at a time
 * from exact ranks of the differential matrices between monomial bases.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stringss/errors.hpp"
#include "stringss/graded_algebra.hpp"
#include "stringss/linalg.hpp"
#include "stringss/parallel.hpp"

namespace stringss {

class Derivation {
public:
    /// Validates homogeneity, bidegree (-1, 0) and d∘d = 0 on generators.
    static Derivation from_generator_images(AlgebraPtr alg, const std::map<std::string, Element>& images) {
        Derivation d(alg);
        for (const auto& [name, img] : images) {
            const auto& g = alg->generator(name);
            if (!same_algebra(img.algebra(), alg)) throw AlgebraMismatch("image of '" + name + "' in another algebra");
            if (img.is_zero()) continue;
            const auto bd = img.bidegree();
            if (!bd) throw InhomogeneousImage("image of '" + name + "' is not homogeneous: " + img.to_string());
            if (bd->first != g.degree - 1 || bd->second != g.weight)
                throw WrongBidegree("image of '" + name + "' has bidegree (" + std::to_string(bd->first) + ", " +
                                    std::to_string(bd->second) + "), expected (" + std::to_string(g.degree - 1) +
                                    ", " + std::to_string(g.weight) + ")");
            d.images_[g.id] = img;
        }
        // d² is a derivation when d is odd, so checking generators suffices
        for (const auto& g : alg->generators()) {
            const auto dd = d.apply(d.image(g.id));
            if (!dd.is_zero())
                throw NotSquareZero("d(d(" + g.name + ")) = " + dd.to_string());
        }
        return d;
    }

    static Derivation zero(AlgebraPtr alg) { return Derivation(std::move(alg)); }

    const AlgebraPtr& algebra() const { return alg_; }

    Element image(GeneratorId id) const {
        const auto& img = images_.at(id);
        return img ? *img : Element(alg_);
    }

    bool is_zero() const {
        for (const auto& img : images_)
            if (img && !img->is_zero()) return false;
        return true;
    }

    /// d of a single monomial prod g_i^{e_i}.
    Element apply(const Monomial& m) const {
        const auto& alg = *alg_;
        Element out(alg_);
        const auto factors = m.factors();
        int prefix_degree = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto [id, e] = factors[i];
            const auto& g = alg.generator(id);
            const auto dg = image(id);
            if (!dg.is_zero()) {
                // d(g^e) = e g^{e-1} d(g); for odd g this only occurs with e = 1 (or in char 2)
                std::vector<std::pair<GeneratorId, int>> before(factors.begin(), factors.begin() + i);
                std::vector<std::pair<GeneratorId, int>> after(factors.begin() + i + 1, factors.end());
                before.emplace_back(id, e - 1);
                const auto left = alg.monomial(before);
                const auto right = alg.monomial(after);
                if (left && right) {
                    Scalar coeff = Scalar::from_int(alg.field(), e);
                    if (prefix_degree % 2 != 0) coeff = -coeff;
                    if (!coeff.is_zero()) {
                        const Element term = Element(alg_, *left) * dg * Element(alg_, *right) * coeff;
                        out = out + term;
                    }
                }
            }
            prefix_degree += g.degree * e;
        }
        return out;
    }

    Element apply(const Element& x) const {
        if (!same_algebra(x.algebra(), alg_)) throw AlgebraMismatch("element not in the derivation's algebra");
        Element out(alg_);
        for (const auto& [m, c] : x.terms()) out = out + apply(m) * c;
        return out;
    }

private:
    explicit Derivation(AlgebraPtr alg) : alg_(std::move(alg)), images_(alg_->size()) {}

    AlgebraPtr alg_;
    std::vector<std::optional<Element>> images_;
};

inline Element apply_derivation(const Derivation& d, const Element& x) { return d.apply(x); }

enum class PageLabel { E2, EInfinity };

struct DgaPage {
    AlgebraPtr algebra;
    Derivation differential;
    PageLabel label = PageLabel::E2;
};

/// d restricted to (degree, weight) -> (degree - 1, weight), with both bases.
struct DifferentialBlock {
    std::vector<Monomial> source;
    std::vector<Monomial> target;
    SparseMatrix matrix;
};

inline std::size_t basis_index(const std::vector<Monomial>& basis, const Monomial& m) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || !(*it == m)) throw std::logic_error("monomial missing from enumerated basis");
    return static_cast<std::size_t>(it - basis.begin());
}

/// Coordinates of a homogeneous element in a sorted basis.
inline SparseVector coordinates(const std::vector<Monomial>& basis, const Element& x) {
    SparseVector v;
    for (const auto& [m, c] : x.terms()) v.emplace_back(basis_index(basis, m), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

inline DifferentialBlock differential_block(const Derivation& d, int degree, int weight) {
    const auto& alg = *d.algebra();
    DifferentialBlock b;
    b.source = alg.enumerate_basis(degree, weight);
    b.target = alg.enumerate_basis(degree - 1, weight);
    b.matrix.field = alg.field();
    b.matrix.rows = b.target.size();
    b.matrix.columns.reserve(b.source.size());
    for (const auto& m : b.source) b.matrix.columns.push_back(coordinates(b.target, d.apply(m)));
    return b;
}

inline SparseMatrix differential_matrix(const Derivation& d, int degree, int weight) {
    return differential_block(d, degree, weight).matrix;
}

struct RankProfile {
    int degree = 0;
    int weight = 0;
    std::size_t dim_source = 0;
    std::size_t rank_d_here = 0;   // rank of d out of this block
    std::size_t rank_d_above = 0;  // rank of d into this block
    std::size_t betti = 0;

    friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

/// Throws CutoffTooTight unless bases are complete through `degree`.
inline void require_complete(const GradedAlgebra& alg, int degree) {
    if (const auto through = alg.complete_through(); through && degree > *through)
        throw CutoffTooTight("bases complete only through degree " + std::to_string(*through) + ", need " +
                             std::to_string(degree));
}

/// Betti numbers for every degree in [degree_lo, degree_hi] and every weight,
/// ordered by (weight as given, degree ascending).
inline std::vector<RankProfile> homology_dimensions(const DgaPage& page, int degree_lo, int degree_hi,
                                                    const std::vector<int>& weights) {
    const auto& alg = *page.algebra;
    alg.check_finite();
    require_complete(alg, degree_hi + 1);
    const std::size_t span = degree_hi >= degree_lo ? static_cast<std::size_t>(degree_hi - degree_lo + 1) : 0;
    std::vector<RankProfile> out(weights.size() * span);
    parallel_for(weights.size(), [&](std::size_t wi) {
        const int w = weights[wi];
        // ranks[j]: rank of d out of degree degree_lo + j, for j in [0, span]
        std::vector<std::size_t> ranks(span + 1), dims(span + 1);
        for (std::size_t j = 0; j <= span; ++j) {
            const auto block = differential_block(page.differential, degree_lo + static_cast<int>(j), w);
            dims[j] = block.source.size();
            ranks[j] = rank(block.matrix);
        }
        for (std::size_t j = 0; j < span; ++j) {
            RankProfile& r = out[wi * span + j];
            r.degree = degree_lo + static_cast<int>(j);
            r.weight = w;
            r.dim_source = dims[j];
            r.rank_d_here = ranks[j];
            r.rank_d_above = ranks[j + 1];
            r.betti = dims[j] - ranks[j] - ranks[j + 1];
        }
    });
    return out;
}

/// Maps generators of a subalgebra to equally named generators of a bigger one.
class SubalgebraInclusion {
public:
    /// Checks matching (degree, weight, kind) data and that the inclusion
    /// commutes with both differentials on generators.
    static SubalgebraInclusion make(const DgaPage& sub, const DgaPage& big) {
        const auto& s = *sub.algebra;
        const auto& b = *big.algebra;
        if (s.field() != b.field()) throw FieldMismatch("inclusion between algebras over different fields");
        SubalgebraInclusion inc(sub, big);
        for (const auto& g : s.generators()) {
            if (!b.has_generator(g.name)) throw NotAChainMap("generator '" + g.name + "' missing from target");
            const auto& h = b.generator(g.name);
            const bool kind_ok = g.kind == h.kind || (g.kind == GeneratorKind::Polynomial && h.kind == GeneratorKind::Laurent);
            if (g.degree != h.degree || g.weight != h.weight || !kind_ok || g.truncation != h.truncation)
                throw NotAChainMap("generator '" + g.name + "' has different data in target");
            inc.ids_.push_back(h.id);
        }
        for (const auto& g : s.generators()) {
            const auto lhs = inc.map(sub.differential.image(g.id));
            const auto rhs = big.differential.apply(inc.map(Element(sub.algebra, *s.monomial({{g.id, 1}}))));
            if (!(lhs == rhs))
                throw NotAChainMap("inclusion does not commute with d on '" + g.name + "'");
        }
        return inc;
    }

    const DgaPage& sub() const { return sub_; }
    const DgaPage& big() const { return big_; }

    Element map(const Monomial& m) const {
        Element out(big_.algebra, big_.algebra->unit());
        for (auto [id, e] : m.factors()) {
            const auto img = big_.algebra->monomial({{ids_[id], e}});
            if (!img) return Element(big_.algebra);
            out = out * Element(big_.algebra, *img);
        }
        return out;
    }

    Element map(const Element& x) const {
        Element out(big_.algebra);
        for (const auto& [m, c] : x.terms()) out = out + map(m) * c;
        return out;
    }

    /// The monomial of the subalgebra that maps onto m, if any.
    std::optional<Monomial> preimage(const Monomial& m) const {
        std::vector<std::pair<GeneratorId, int>> exps;
        for (auto [id, e] : m.factors()) {
            auto it = std::find(ids_.begin(), ids_.end(), id);
            if (it == ids_.end()) return std::nullopt;
            const auto sub_id = static_cast<GeneratorId>(it - ids_.begin());
            if (e < 0 && sub_.algebra->generator(sub_id).kind != GeneratorKind::Laurent) return std::nullopt;
            exps.emplace_back(sub_id, e);
        }
        return sub_.algebra->monomial(exps);
    }

private:
    SubalgebraInclusion(DgaPage sub, DgaPage big) : sub_(std::move(sub)), big_(std::move(big)) {}

    DgaPage sub_;
    DgaPage big_;
    std::vector<GeneratorId> ids_;
};

struct InducedMapEntry {
    int degree = 0;
    int weight = 0;
    std::size_t source_betti = 0;
    std::size_t target_betti = 0;
    std::size_t rank = 0;
    bool injective = true;
};

/// Rank of H(sub) -> H(big) at each (degree, weight), from
/// rank [B_big | i(Z_sub)] - rank B_big.
inline std::vector<InducedMapEntry> induced_map_on_homology(const SubalgebraInclusion& inc, int degree_lo,
                                                           int degree_hi, const std::vector<int>& weights) {
    const auto& sub = inc.sub();
    const auto& big = inc.big();
    require_complete(*sub.algebra, degree_hi + 1);
    require_complete(*big.algebra, degree_hi + 1);
    const Field field = big.algebra->field();
    const std::size_t span = degree_hi >= degree_lo ? static_cast<std::size_t>(degree_hi - degree_lo + 1) : 0;
    std::vector<InducedMapEntry> out(weights.size() * span);
    parallel_for(weights.size() * span, [&](std::size_t idx) {
        const int w = weights[idx / span];
        const int deg = degree_lo + static_cast<int>(idx % span);
        const auto sub_here = differential_block(sub.differential, deg, w);
        const auto sub_above = differential_block(sub.differential, deg + 1, w);
        const auto big_above = differential_block(big.differential, deg + 1, w);
        const auto big_here = differential_block(big.differential, deg, w);

        const auto cycles = kernel(sub_here.matrix);
        std::vector<SparseVector> images;
        images.reserve(cycles.size());
        for (const auto& z : cycles) {
            Element x(sub.algebra);
            for (const auto& [i, c] : z) x.add_term(sub_here.source[i], c);
            images.push_back(coordinates(big_above.target, inc.map(x)));
        }
        const std::size_t boundary_rank = rank(big_above.matrix);
        auto combined = big_above.matrix.columns;
        combined.insert(combined.end(), images.begin(), images.end());

        InducedMapEntry& e = out[idx];
        e.degree = deg;
        e.weight = w;
        e.source_betti = cycles.size() - rank(sub_above.matrix);
        e.target_betti = big_here.source.size() - rank(big_here.matrix) - boundary_rank;
        e.rank = rank_of_columns(field, combined) - boundary_rank;
        e.injective = e.rank == e.source_betti;
    });
    return out;
}

/// d(x) == 0 for a homogeneous x.
inline bool is_cycle(const DgaPage& page, const Element& x) { return page.differential.apply(x).is_zero(); }

/// x lies in the image of d. x must be homogeneous.
inline bool is_boundary(const DgaPage& page, const Element& x) {
    if (x.is_zero()) return true;
    const auto bd = x.bidegree();
    if (!bd) throw InhomogeneousImage("boundary test needs a homogeneous element: " + x.to_string());
    require_complete(*page.algebra, bd->first + 1);
    const auto block = differential_block(page.differential, bd->first + 1, bd->second);
    return in_span(page.algebra->field(), block.matrix.columns, coordinates(block.target, x));
}

/// x is a cycle representing a nonzero homology class.
inline bool is_nonzero_class(const DgaPage& page, const Element& x) {
    return !x.is_zero() && is_cycle(page, x) && !is_boundary(page, x);
}

}  // namespace stringss
