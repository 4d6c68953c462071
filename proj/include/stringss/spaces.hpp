#pragma once

/**
 * @file spaces.hpp
 * @brief Builders for the mapping-space algebras and their E2 pages.
 *
 * Generators of H_*(Ω²Pⁿ) and of its holomorphic part H_*(Rat(n)):
 *
 *   field   generator   degree          weight   kind
 *   any     iota        0               1        Laurent (loop) / Polynomial (hol)
 *   any     u           2n - 1          1        Polynomial over F_2, else Exterior
 *   F_2     Q^i u       2^{i+1} n - 1   2^i      Polynomial
 *   F_p     Q^i u       2 p^i n - 1     p^i      Exterior
 *   F_p     beta Q^i u  2 p^i n - 2     p^i      Polynomial
 *
 * The odd-prime degrees follow the recursion deg Q(y) = p deg(y) + (p - 1)
 * with the Bockstein lowering degree by one. This is a derived convention:
 * at p = 2 it reproduces 2^{i+1} n - 1.
 *
 * H*(Pⁿ) = k[c]/c^{n+1} is graded negatively, c in degree -2, weight 0.
 * The E2 page is the tensor product with d(iota) = (n+1) u c^n and d = 0 on
 * every other generator.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stringss/dga.hpp"
#include "stringss/graded_algebra.hpp"
#include "stringss/scalars.hpp"

namespace stringss {

enum class Variant { Loop, Hol };

inline std::string to_string(Variant v) { return v == Variant::Loop ? "loop" : "hol"; }

struct SpaceSpec {
    int n = 1;
    Field field = Field::rational();
    Variant variant = Variant::Loop;

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

struct GeneratorSpec {
    std::string name;
    int degree = 0;
    int weight = 0;
    GeneratorKind kind = GeneratorKind::Polynomial;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct GeneratorSchedule {
    std::vector<GeneratorSpec> generators;
    /// Smallest degree of a family member left out, if any.
    std::optional<int> omitted_floor;
};

inline DyerLashofFamily dyer_lashof_family(int n, const Field& field) {
    const int p = static_cast<int>(field.characteristic());
    return DyerLashofFamily{2 * n - 1, p, p != 2};
}

inline std::string dyer_lashof_name(int i, bool bockstein) {
    std::string q = i == 1 ? "Qu" : "Q" + std::to_string(i) + "u";
    return bockstein ? "b" + q : q;
}

inline GeneratorSchedule generator_schedule(int n, const Field& field, Variant variant, int cutoff) {
    if (n < 1) throw std::invalid_argument("target dimension n must be >= 1");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    GeneratorSchedule s;
    const bool mod2 = field.characteristic() == 2;
    s.generators.push_back({"iota", 0, 1, variant == Variant::Loop ? GeneratorKind::Laurent : GeneratorKind::Polynomial});
    s.generators.push_back({"u", 2 * n - 1, 1, mod2 ? GeneratorKind::Polynomial : GeneratorKind::Exterior});
    if (field.is_rational()) return s;

    const auto family = dyer_lashof_family(n, field);
    const int horizon = generator_horizon(family, cutoff);
    for (int i = 1; i <= horizon; ++i) {
        const int deg = static_cast<int>(family.degree(i));
        const int wt = static_cast<int>(family.weight(i));
        if (mod2) {
            s.generators.push_back({dyer_lashof_name(i, false), deg, wt, GeneratorKind::Polynomial});
        } else {
            s.generators.push_back({dyer_lashof_name(i, false), deg, wt, GeneratorKind::Exterior});
            s.generators.push_back({dyer_lashof_name(i, true), deg - 1, wt, GeneratorKind::Polynomial});
        }
    }
    s.omitted_floor = static_cast<int>(family.min_degree(horizon + 1));
    return s;
}

/// H_*(Ω²Pⁿ) (Loop, iota inverted) or H_*(Rat(n)) (Hol), with family
/// generators of degree up to `cutoff`.
inline GradedAlgebra pontrjagin_algebra(int n, const Field& field, Variant variant, int cutoff) {
    const auto schedule = generator_schedule(n, field, variant, cutoff);
    GradedAlgebra alg(field);
    for (const auto& g : schedule.generators) alg.declare_generator(g.name, g.degree, g.weight, g.kind);
    alg.set_omitted_degree_floor(schedule.omitted_floor);
    return alg;
}

inline GradedAlgebra projective_cohomology(int n, const Field& field) {
    if (n < 1) throw std::invalid_argument("target dimension n must be >= 1");
    GradedAlgebra alg(field);
    alg.declare_generator("c", -2, 0, GeneratorKind::Truncated, n);
    return alg;
}

/// E2 page H_*(Ω²Pⁿ) ⊗ H*(Pⁿ) (or its Rat subalgebra) with d(iota) = (n+1) u c^n.
/// `cutoff` is the largest ordinary degree whose homology will be requested;
/// generators are instantiated through degree cutoff + 1 unless
/// `generator_cutoff` says otherwise (a smaller value makes high-degree
/// homology queries fail with CutoffTooTight).
inline DgaPage e2_page(int n, const Field& field, Variant variant, int cutoff,
                       std::optional<int> generator_cutoff = std::nullopt) {
    const int gen_cutoff = generator_cutoff.value_or(cutoff + 1);
    auto alg = std::make_shared<const GradedAlgebra>(
        tensor_product(pontrjagin_algebra(n, field, variant, gen_cutoff), projective_cohomology(n, field)));
    const Element image = Element::generator(alg, "u") * Element(alg, *alg->monomial({{"c", n}})) *
                          Scalar::from_int(field, n + 1);
    auto d = Derivation::from_generator_images(alg, {{"iota", image}});
    return DgaPage{alg, std::move(d), PageLabel::E2};
}

inline DgaPage e2_page(const SpaceSpec& space, int cutoff, std::optional<int> generator_cutoff = std::nullopt) {
    return e2_page(space.n, space.field, space.variant, cutoff, generator_cutoff);
}

/// Ordinary degree = internal degree + 2n.
inline int ordinary_shift(int n) { return 2 * n; }

/// Internal degrees covering ordinary degrees [0, cutoff].
inline std::pair<int, int> internal_degree_range(int n, int cutoff) {
    return {-ordinary_shift(n), cutoff - ordinary_shift(n)};
}

/// Inclusion of the Hol page into the Loop page, checked to be a chain map.
inline SubalgebraInclusion hol_to_loop_inclusion(int n, const Field& field, int cutoff) {
    return SubalgebraInclusion::make(e2_page(n, field, Variant::Hol, cutoff),
                                     e2_page(n, field, Variant::Loop, cutoff));
}

using BettiColumn = std::map<int, std::size_t>;

/// Rational Betti numbers of Hol_k(n) in ordinary grading:
/// P^{n-1} plus a copy of the reduced homology of Pⁿ shifted up by 2n - 1.
inline BettiColumn closed_form_rational_hol_betti(int n, int k) {
    if (n < 1) throw std::invalid_argument("target dimension n must be >= 1");
    if (k < 0) throw std::invalid_argument("holomorphic components are indexed by k >= 0");
    BettiColumn col;
    if (k == 0) {
        for (int d = 0; d <= 2 * n; d += 2) col[d] = 1;
        return col;
    }
    for (int d = 0; d <= 2 * n - 2; d += 2) col[d] = 1;
    for (int d = 2 * n + 1; d <= 4 * n - 1; d += 2) col[d] = 1;
    return col;
}

}  // namespace stringss
