#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <tuple>

#include "errors.hpp"

namespace mathieu {

using bigint = boost::multiprecision::cpp_int;

inline bigint gcd(const bigint& a, const bigint& b) {
    return boost::multiprecision::gcd(a, b);
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0.
inline std::tuple<bigint, bigint, bigint> xgcd(bigint a, bigint b) {
    bigint s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        bigint q = a / b;
        bigint r = a - q * b;
        a = b;
        b = r;
        bigint s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        bigint t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    return {a, s0, t0};
}

/// Inverse of a modulo n; requires gcd(a, n) = 1 and n >= 2.
inline bigint mod_inverse(const bigint& a, const bigint& n) {
    auto [g, s, t] = xgcd(a % n, n);
    require(g == 1, errc::solve_failed, "mod_inverse: element is not a unit");
    bigint r = s % n;
    if (r < 0) r += n;
    return r;
}

/// Primality by trial division; adequate for the moduli this library handles.
inline bool is_prime(const bigint& p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (bigint d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

enum class ring_kind { rationals, prime_field, modular_ints };

/// Descriptor of a supported exact base ring: the rationals, a prime field
/// F_p, or the modular integers Z/nZ (which may have zero divisors).
class ring_spec {
public:
    ring_spec() : kind_(ring_kind::rationals), modulus_(0) {}

    static ring_spec rationals() { return ring_spec(); }

    static ring_spec prime_field(const bigint& p) {
        require(is_prime(p), errc::bad_parameter,
                "prime_field: modulus " + p.str() + " is not prime");
        return ring_spec(ring_kind::prime_field, p);
    }

    static ring_spec modular_ints(const bigint& n) {
        require(n >= 2, errc::bad_parameter, "modular_ints: modulus must be >= 2");
        return ring_spec(ring_kind::modular_ints, n);
    }

    [[nodiscard]] ring_kind kind() const { return kind_; }
    [[nodiscard]] const bigint& modulus() const { return modulus_; }

    [[nodiscard]] bool is_field() const { return kind_ != ring_kind::modular_ints; }
    [[nodiscard]] bool is_finite() const { return kind_ != ring_kind::rationals; }

    bool operator==(const ring_spec& o) const {
        return kind_ == o.kind_ && modulus_ == o.modulus_;
    }
    bool operator!=(const ring_spec& o) const { return !(*this == o); }

    [[nodiscard]] std::string to_string() const {
        switch (kind_) {
        case ring_kind::rationals: return "Q";
        case ring_kind::prime_field: return "F_" + modulus_.str();
        case ring_kind::modular_ints: return "Z/" + modulus_.str();
        }
        return "?";
    }

private:
    ring_spec(ring_kind k, bigint m) : kind_(k), modulus_(std::move(m)) {}

    ring_kind kind_;
    bigint modulus_;
};

inline void require_same_ring(const ring_spec& a, const ring_spec& b) {
    require(a == b, errc::ring_mismatch,
            "ring mismatch: " + a.to_string() + " vs " + b.to_string());
}

enum class unit_kind { unit, zero_divisor, zero };

/// An exact base-ring element. Rationals are kept in lowest terms with a
/// positive denominator; modular values are canonical residues in [0, n).
class scalar {
public:
    scalar() : ring_(ring_spec::rationals()), num_(0), den_(1) {}

    scalar(ring_spec ring, const bigint& value) : ring_(std::move(ring)), num_(value), den_(1) {
        if (ring_.is_finite()) {
            num_ %= ring_.modulus();
            if (num_ < 0) num_ += ring_.modulus();
        }
    }

    /// Rational p/q in lowest terms; q must be nonzero.
    static scalar fraction(const bigint& p, const bigint& q) {
        require(q != 0, errc::bad_parameter, "fraction: zero denominator");
        scalar s;
        s.num_ = p;
        s.den_ = q;
        s.normalize_fraction();
        return s;
    }

    static scalar zero(const ring_spec& ring) { return scalar(ring, 0); }
    static scalar one(const ring_spec& ring) { return scalar(ring, 1); }

    [[nodiscard]] const ring_spec& ring() const { return ring_; }
    [[nodiscard]] const bigint& numerator() const { return num_; }
    [[nodiscard]] const bigint& denominator() const { return den_; }

    /// Canonical residue; only meaningful for finite rings.
    [[nodiscard]] const bigint& residue() const { return num_; }

    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] bool is_one() const { return num_ == 1 && den_ == 1; }

    scalar operator+(const scalar& o) const {
        require_same_ring(ring_, o.ring_);
        if (ring_.is_finite()) return scalar(ring_, num_ + o.num_);
        return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    scalar operator-(const scalar& o) const {
        require_same_ring(ring_, o.ring_);
        if (ring_.is_finite()) return scalar(ring_, num_ - o.num_);
        return fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }

    scalar operator*(const scalar& o) const {
        require_same_ring(ring_, o.ring_);
        if (ring_.is_finite()) return scalar(ring_, num_ * o.num_);
        return fraction(num_ * o.num_, den_ * o.den_);
    }

    scalar operator-() const {
        if (ring_.is_finite()) return scalar(ring_, -num_);
        return fraction(-num_, den_);
    }

    scalar& operator+=(const scalar& o) { return *this = *this + o; }
    scalar& operator-=(const scalar& o) { return *this = *this - o; }
    scalar& operator*=(const scalar& o) { return *this = *this * o; }

    bool operator==(const scalar& o) const {
        return ring_ == o.ring_ && num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const scalar& o) const { return !(*this == o); }

    [[nodiscard]] unit_kind unit_status() const {
        if (is_zero()) return unit_kind::zero;
        if (ring_.is_field()) return unit_kind::unit;
        return gcd(num_, ring_.modulus()) == 1 ? unit_kind::unit : unit_kind::zero_divisor;
    }

    [[nodiscard]] bool is_unit() const { return unit_status() == unit_kind::unit; }

    /// Multiplicative inverse when it exists.
    [[nodiscard]] std::optional<scalar> inverse() const {
        switch (unit_status()) {
        case unit_kind::zero:
        case unit_kind::zero_divisor:
            return std::nullopt;
        case unit_kind::unit:
            if (ring_.is_field() && ring_.kind() == ring_kind::rationals)
                return fraction(den_, num_);
            if (ring_.kind() == ring_kind::prime_field)
                return scalar(ring_, mod_inverse(num_, ring_.modulus()));
            return scalar(ring_, mod_inverse(num_, ring_.modulus()));
        }
        return std::nullopt;
    }

    /// Exact division; fails when o does not divide *this in the ring.
    [[nodiscard]] scalar divide_exact(const scalar& o) const {
        require_same_ring(ring_, o.ring_);
        auto inv = o.inverse();
        require(inv.has_value(), errc::solve_failed, "divide_exact: divisor is not a unit");
        return *this * *inv;
    }

    /// Serialized form: decimal string, "p/q" with q > 1 for rationals.
    [[nodiscard]] std::string to_string() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses the serialized form back into a canonical scalar of `ring`.
    static scalar parse(const ring_spec& ring, const std::string& text) {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return scalar(ring, bigint(text));
            require(ring.kind() == ring_kind::rationals, errc::schema_error,
                    "fractional scalar over a finite ring: " + text);
            return fraction(bigint(text.substr(0, slash)), bigint(text.substr(slash + 1)));
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const error*>(&e)) throw;
            fail(errc::schema_error, "bad scalar literal: '" + text + "'");
        }
    }

private:
    void normalize_fraction() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        bigint g = gcd(num_ < 0 ? bigint(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    ring_spec ring_;
    bigint num_;
    bigint den_;
};

enum class ring_op { add, sub, mul };

/// Spec-level entry point for exact ring arithmetic on two scalars.
inline scalar ring_arithmetic(const scalar& x, const scalar& y, ring_op op) {
    switch (op) {
    case ring_op::add: return x + y;
    case ring_op::sub: return x - y;
    case ring_op::mul: return x * y;
    }
    fail(errc::bad_parameter, "ring_arithmetic: unknown op");
}

struct scalar_unit_report {
    unit_kind kind;
    std::optional<scalar> inverse; // set exactly when kind == unit
};

inline scalar_unit_report scalar_unit_status(const scalar& x) {
    scalar_unit_report r{x.unit_status(), std::nullopt};
    if (r.kind == unit_kind::unit) r.inverse = x.inverse();
    return r;
}

} // namespace mathieu
