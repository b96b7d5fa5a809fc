#pragma once

#include <string>
#include <vector>

#include "algebra.hpp"

namespace mathieu {

/// Dense univariate polynomial over a base ring, ascending coefficients,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
class poly {
public:
    explicit poly(ring_spec ring) : ring_(std::move(ring)) {}

    poly(ring_spec ring, std::vector<scalar> coeffs)
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
        for (const auto& c : coeffs_) require_same_ring(c.ring(), ring_);
        trim();
    }

    static poly zero(const ring_spec& ring) { return poly(ring); }
    static poly constant(const scalar& c) { return poly(c.ring(), {c}); }
    static poly one(const ring_spec& ring) { return constant(scalar::one(ring)); }
    static poly t(const ring_spec& ring) {
        return poly(ring, {scalar::zero(ring), scalar::one(ring)});
    }

    [[nodiscard]] const ring_spec& ring() const { return ring_; }
    [[nodiscard]] const std::vector<scalar>& coeffs() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    [[nodiscard]] std::ptrdiff_t degree() const {
        return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1;
    }

    [[nodiscard]] scalar coefficient(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : scalar::zero(ring_);
    }

    poly operator+(const poly& o) const {
        require_same_ring(ring_, o.ring_);
        std::vector<scalar> out(std::max(coeffs_.size(), o.coeffs_.size()),
                                scalar::zero(ring_));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = coefficient(i) + o.coefficient(i);
        return poly(ring_, std::move(out));
    }

    poly operator-(const poly& o) const {
        require_same_ring(ring_, o.ring_);
        std::vector<scalar> out(std::max(coeffs_.size(), o.coeffs_.size()),
                                scalar::zero(ring_));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = coefficient(i) - o.coefficient(i);
        return poly(ring_, std::move(out));
    }

    poly operator*(const poly& o) const {
        require_same_ring(ring_, o.ring_);
        if (is_zero() || o.is_zero()) return zero(ring_);
        std::vector<scalar> out(coeffs_.size() + o.coeffs_.size() - 1, scalar::zero(ring_));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                out[i + j] += coeffs_[i] * o.coeffs_[j];
        return poly(ring_, std::move(out));
    }

    [[nodiscard]] poly pow(std::size_t n) const {
        poly acc = one(ring_);
        for (std::size_t i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    /// p * t^k
    [[nodiscard]] poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<scalar> out(k, scalar::zero(ring_));
        out.insert(out.end(), coeffs_.begin(), coeffs_.end());
        return poly(ring_, std::move(out));
    }

    /// True when t^k divides the polynomial.
    [[nodiscard]] bool divisible_by_t_power(std::size_t k) const {
        for (std::size_t i = 0; i < k && i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return false;
        return true;
    }

    bool operator==(const poly& o) const { return ring_ == o.ring_ && coeffs_ == o.coeffs_; }
    bool operator!=(const poly& o) const { return !(*this == o); }

    [[nodiscard]] std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += coeffs_[i].to_string();
            if (i >= 1) s += "*t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    ring_spec ring_;
    std::vector<scalar> coeffs_;
};

/// p(a) = sum c_i a^i inside the algebra (a^0 = 1).
inline element eval_at(const poly& p, const element& a) {
    element acc = element::zero(a.alg());
    element apow = element::one(a.alg());
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (!p.coefficient(i).is_zero()) acc = acc + apow.scaled(p.coefficient(i));
        if (i + 1 < p.coeffs().size()) apow = apow * a;
    }
    return acc;
}

} // namespace mathieu
