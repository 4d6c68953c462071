#pragma once

/**
 * @file scalars.hpp
 * @brief Exact coefficient fields: the rationals and prime fields F_p.
 *
 * A Field is a small runtime descriptor (characteristic 0 or a prime p).
 * A Scalar is an immutable value tagged with its field. Rational values are
 * GMP fractions kept in lowest terms; prime-field values are residues in
 * [0, p). Mixing fields in one operation throws FieldMismatch.
 */

#include <cstdint>
#include <compare>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "stringss/errors.hpp"

namespace stringss {

enum class FieldKind { Rational, PrimeField };

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f <= n / f; f += 2)
        if (n % f == 0) return false;
    return true;
}

class Field {
public:
    static Field rational() { return Field(0); }

    /// Prime field F_p. Throws CompositeCharacteristic if p is not prime.
    static Field prime(std::uint64_t p) {
        if (!is_prime(p))
            throw CompositeCharacteristic("characteristic " + std::to_string(p) + " is not prime");
        // products of two residues must fit in 64 bits
        if (p >= (std::uint64_t{1} << 32))
            throw std::invalid_argument("prime characteristic must fit in 32 bits");
        return Field(p);
    }

    FieldKind kind() const { return characteristic_ == 0 ? FieldKind::Rational : FieldKind::PrimeField; }
    std::uint64_t characteristic() const { return characteristic_; }
    bool is_rational() const { return characteristic_ == 0; }

    /// "Q" or "F<p>".
    std::string name() const { return is_rational() ? "Q" : "F" + std::to_string(characteristic_); }

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t c) : characteristic_(c) {}
    std::uint64_t characteristic_;
};

/// Accepts "rational" or a decimal integer >= 2 (verified prime).
inline Field make_field(std::string_view spec) {
    if (spec == "rational") return Field::rational();
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), p);
    if (ec != std::errc{} || ptr != spec.data() + spec.size() || p < 2)
        throw std::invalid_argument("field spec must be 'rational' or an integer >= 2, got '" +
                                    std::string(spec) + "'");
    return Field::prime(p);
}

inline Field make_field(std::uint64_t p) { return Field::prime(p); }

class Scalar {
public:
    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }

    static Scalar from_int(const Field& f, long long v) {
        if (f.is_rational()) return Scalar(f, mpq_class(mpz_class(static_cast<long>(v))));
        const auto p = static_cast<long long>(f.characteristic());
        long long r = v % p;
        if (r < 0) r += p;
        return Scalar(f, static_cast<std::uint64_t>(r));
    }

    /// num/den in Q; reduced to lowest terms.
    static Scalar fraction(const Field& f, long long num, long long den) {
        if (den == 0) throw DivisionByZero("zero denominator");
        if (!f.is_rational()) return from_int(f, num) * from_int(f, den).inv();
        mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        q.canonicalize();
        return Scalar(f, std::move(q));
    }

    static Scalar from_rational(const Field& f, mpq_class q) {
        if (!f.is_rational()) throw FieldMismatch("rational value for prime field " + f.name());
        q.canonicalize();
        return Scalar(f, std::move(q));
    }

    const Field& field() const { return field_; }

    bool is_zero() const {
        if (auto r = std::get_if<std::uint64_t>(&value_)) return *r == 0;
        return sgn(std::get<mpq_class>(value_)) == 0;
    }

    /// Residue in [0, p); only for prime fields.
    std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }
    /// Lowest-terms fraction; only for the rationals.
    const mpq_class& rational() const { return std::get<mpq_class>(value_); }

    Scalar operator+(const Scalar& o) const {
        check_same(o);
        if (field_.is_rational()) return Scalar(field_, mpq_class(rational() + o.rational()));
        return Scalar(field_, (residue() + o.residue()) % field_.characteristic());
    }

    Scalar operator-() const {
        if (field_.is_rational()) return Scalar(field_, mpq_class(-rational()));
        const auto p = field_.characteristic();
        return Scalar(field_, (p - residue()) % p);
    }

    Scalar operator-(const Scalar& o) const { return *this + (-o); }

    Scalar operator*(const Scalar& o) const {
        check_same(o);
        if (field_.is_rational()) return Scalar(field_, mpq_class(rational() * o.rational()));
        return Scalar(field_, (residue() * o.residue()) % field_.characteristic());
    }

    Scalar inv() const {
        if (is_zero()) throw DivisionByZero("inverse of zero in " + field_.name());
        if (field_.is_rational()) return Scalar(field_, mpq_class(1 / rational()));
        return Scalar(field_, inverse_mod(residue(), field_.characteristic()));
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.field_ != b.field_) return false;
        if (a.field_.is_rational()) return a.rational() == b.rational();
        return a.residue() == b.residue();
    }

    std::string to_string() const {
        if (field_.is_rational()) return rational().get_str();
        return std::to_string(residue());
    }

    static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
        // extended Euclid on signed 64-bit; p < 2^32
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t -= q * new_t;
            std::swap(t, new_t);
            r -= q * new_r;
            std::swap(r, new_r);
        }
        if (t < 0) t += static_cast<std::int64_t>(p);
        return static_cast<std::uint64_t>(t);
    }

private:
    Scalar(Field f, std::uint64_t r) : field_(f), value_(r) {}
    Scalar(Field f, mpq_class q) : field_(f), value_(std::move(q)) {}

    void check_same(const Scalar& o) const {
        if (field_ != o.field_)
            throw FieldMismatch("operands in " + field_.name() + " and " + o.field_.name());
    }

    Field field_;
    std::variant<std::uint64_t, mpq_class> value_;
};

}  // namespace stringss
