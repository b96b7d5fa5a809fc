#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "matrix.hpp"

namespace mathieu {

class algebra;
using algebra_ptr = std::shared_ptr<const algebra>;

/// Structure-constant presentation of a finite-dimensional unital
/// associative algebra over an exact base ring: e_i * e_j = sum_k c[i][j][k] e_k.
/// Associativity and the unit axiom are verified at construction; a failure
/// names the offending basis triple.
class algebra {
public:
    [[nodiscard]] const ring_spec& ring() const { return ring_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const std::vector<scalar>& one_coords() const { return one_; }
    [[nodiscard]] const scalar& c(std::size_t i, std::size_t j, std::size_t k) const {
        return sc_[(i * dim_ + j) * dim_ + k];
    }

    /// coordinate vector of e_i * e_j
    [[nodiscard]] std::vector<scalar> basis_product(std::size_t i, std::size_t j) const {
        std::vector<scalar> out;
        out.reserve(dim_);
        for (std::size_t k = 0; k < dim_; ++k) out.push_back(c(i, j, k));
        return out;
    }

    static algebra_ptr make(const ring_spec& ring,
                            const std::vector<std::vector<std::vector<scalar>>>& constants,
                            const std::vector<scalar>& one);

    /// Unvalidated constructor used by make(); kept public for std::make_shared.
    algebra(ring_spec ring, std::size_t dim, std::vector<scalar> sc, std::vector<scalar> one)
        : ring_(std::move(ring)), dim_(dim), sc_(std::move(sc)), one_(std::move(one)) {}

private:
    ring_spec ring_;
    std::size_t dim_;
    std::vector<scalar> sc_; // d*d*d, index (i*d + j)*d + k
    std::vector<scalar> one_;
};

inline bool same_algebra(const algebra_ptr& a, const algebra_ptr& b) {
    if (a == b) return true;
    return a->ring() == b->ring() && a->dim() == b->dim() &&
           a->one_coords() == b->one_coords() &&
           [&] {
               for (std::size_t i = 0; i < a->dim(); ++i)
                   for (std::size_t j = 0; j < a->dim(); ++j)
                       for (std::size_t k = 0; k < a->dim(); ++k)
                           if (a->c(i, j, k) != b->c(i, j, k)) return false;
               return true;
           }();
}

inline void require_same_algebra(const algebra_ptr& a, const algebra_ptr& b) {
    require(same_algebra(a, b), errc::algebra_mismatch, "elements live in different algebras");
}

/// Element of an algebra as a coordinate vector over the algebra's basis.
class element {
public:
    element(algebra_ptr alg, std::vector<scalar> coords)
        : alg_(std::move(alg)), coords_(std::move(coords)) {
        require(coords_.size() == alg_->dim(), errc::dimension_mismatch,
                "element: coordinate count != algebra dimension");
        for (const auto& s : coords_) require_same_ring(s.ring(), alg_->ring());
    }

    [[nodiscard]] const algebra_ptr& alg() const { return alg_; }
    [[nodiscard]] const std::vector<scalar>& coords() const { return coords_; }

    [[nodiscard]] bool is_zero() const {
        return detail::vec_is_zero(coords_);
    }
    [[nodiscard]] bool is_one() const { return coords_ == alg_->one_coords(); }

    element operator+(const element& o) const {
        require_same_algebra(alg_, o.alg_);
        std::vector<scalar> out = coords_;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.coords_[i];
        return element(alg_, std::move(out));
    }

    element operator-(const element& o) const {
        require_same_algebra(alg_, o.alg_);
        std::vector<scalar> out = coords_;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= o.coords_[i];
        return element(alg_, std::move(out));
    }

    element operator*(const element& o) const {
        require_same_algebra(alg_, o.alg_);
        const std::size_t d = alg_->dim();
        std::vector<scalar> out(d, scalar::zero(alg_->ring()));
        for (std::size_t i = 0; i < d; ++i) {
            if (coords_[i].is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (o.coords_[j].is_zero()) continue;
                scalar w = coords_[i] * o.coords_[j];
                for (std::size_t k = 0; k < d; ++k) {
                    const scalar& cc = alg_->c(i, j, k);
                    if (!cc.is_zero()) out[k] += w * cc;
                }
            }
        }
        return element(alg_, std::move(out));
    }

    element scaled(const scalar& r) const {
        std::vector<scalar> out;
        out.reserve(coords_.size());
        for (const auto& x : coords_) out.push_back(x * r);
        return element(alg_, std::move(out));
    }

    /// a^n with a^0 = 1.
    [[nodiscard]] element pow(std::size_t n) const {
        element acc = one(alg_);
        for (std::size_t i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    bool operator==(const element& o) const {
        return same_algebra(alg_, o.alg_) && coords_ == o.coords_;
    }
    bool operator!=(const element& o) const { return !(*this == o); }

    static element zero(const algebra_ptr& a) {
        return element(a, std::vector<scalar>(a->dim(), scalar::zero(a->ring())));
    }
    static element one(const algebra_ptr& a) { return element(a, a->one_coords()); }
    static element basis(const algebra_ptr& a, std::size_t i) {
        auto coords = std::vector<scalar>(a->dim(), scalar::zero(a->ring()));
        coords[i] = scalar::one(a->ring());
        return element(a, std::move(coords));
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i)
            s += (i ? "," : "") + coords_[i].to_string();
        return s + ")";
    }

private:
    algebra_ptr alg_;
    std::vector<scalar> coords_;
};

inline element multiply(const element& x, const element& y) { return x * y; }

inline algebra_ptr algebra::make(const ring_spec& ring,
                                 const std::vector<std::vector<std::vector<scalar>>>& constants,
                                 const std::vector<scalar>& one) {
    const std::size_t d = constants.size();
    require(one.size() == d, errc::dimension_mismatch, "make_algebra: bad unit vector size");
    std::vector<scalar> flat;
    flat.reserve(d * d * d);
    for (const auto& plane : constants) {
        require(plane.size() == d, errc::dimension_mismatch, "make_algebra: ragged constants");
        for (const auto& line : plane) {
            require(line.size() == d, errc::dimension_mismatch, "make_algebra: ragged constants");
            for (const auto& s : line) {
                require_same_ring(s.ring(), ring);
                flat.push_back(s);
            }
        }
    }
    for (const auto& s : one) require_same_ring(s.ring(), ring);

    auto a = std::make_shared<algebra>(ring, d, std::move(flat), one);

    // associativity: (e_i e_j) e_k == e_i (e_j e_k) for all basis triples
    std::vector<element> basis;
    for (std::size_t i = 0; i < d; ++i) basis.push_back(element::basis(a, i));
    std::vector<std::vector<element>> prod(d, std::vector<element>());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            prod[i].push_back(element(a, a->basis_product(i, j)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                require(prod[i][j] * basis[k] == basis[i] * prod[j][k],
                        errc::not_associative,
                        "make_algebra: associativity fails at basis triple (" +
                            std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + ")");
    element e1(a, one);
    for (std::size_t i = 0; i < d; ++i)
        require(e1 * basis[i] == basis[i] && basis[i] * e1 == basis[i], errc::bad_unit,
                "make_algebra: unit axiom fails at basis index " + std::to_string(i));
    return a;
}

inline algebra_ptr make_algebra(const ring_spec& ring,
                                const std::vector<std::vector<std::vector<scalar>>>& constants,
                                const std::vector<scalar>& one) {
    return algebra::make(ring, constants, one);
}

// ---------------------------------------------------------------------------
// Builtin algebra families (the test corpus for every theorem).
// ---------------------------------------------------------------------------

/// Z/nZ as a rank-1 algebra over itself.
inline algebra_ptr builtin_zn(const bigint& n) {
    auto ring = ring_spec::modular_ints(n);
    return algebra::make(ring, {{{scalar::one(ring)}}}, {scalar::one(ring)});
}

/// F_p as a rank-1 algebra over itself.
inline algebra_ptr builtin_field(const bigint& p) {
    auto ring = ring_spec::prime_field(p);
    return algebra::make(ring, {{{scalar::one(ring)}}}, {scalar::one(ring)});
}

/// Q as a rank-1 algebra over itself.
inline algebra_ptr builtin_rationals() {
    auto ring = ring_spec::rationals();
    return algebra::make(ring, {{{scalar::one(ring)}}}, {scalar::one(ring)});
}

/// F_p[x]/(f) with monic f given by ascending coefficients (degree = size-1);
/// basis 1, x, ..., x^{deg-1}.
inline algebra_ptr builtin_field_poly_quotient(const bigint& p, const std::vector<bigint>& f) {
    auto ring = ring_spec::prime_field(p);
    require(f.size() >= 2, errc::bad_parameter, "field_poly_quotient: degree must be >= 1");
    const std::size_t d = f.size() - 1;
    require(scalar(ring, f[d]).is_one(), errc::bad_parameter,
            "field_poly_quotient: modulus polynomial must be monic");

    // reduce x^m mod f for m = 0 .. 2d-2
    std::vector<std::vector<scalar>> xpow;
    std::vector<scalar> cur(d, scalar::zero(ring));
    cur[0] = scalar::one(ring);
    xpow.push_back(cur);
    for (std::size_t m = 1; m <= 2 * d - 2; ++m) {
        std::vector<scalar> nxt(d, scalar::zero(ring));
        for (std::size_t i = 0; i + 1 < d; ++i) nxt[i + 1] = cur[i];
        const scalar& top = cur[d - 1];
        if (!top.is_zero())
            for (std::size_t i = 0; i < d; ++i) nxt[i] -= top * scalar(ring, f[i]);
        cur = nxt;
        xpow.push_back(cur);
    }
    std::vector<std::vector<std::vector<scalar>>> sc(
        d, std::vector<std::vector<scalar>>(d, std::vector<scalar>(d, scalar::zero(ring))));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) sc[i][j] = xpow[i + j];
    std::vector<scalar> one(d, scalar::zero(ring));
    one[0] = scalar::one(ring);
    return algebra::make(ring, sc, one);
}

/// Full k x k matrix algebra; basis = matrix units in row-major order.
inline algebra_ptr builtin_matrix(std::size_t k, const ring_spec& ring) {
    require(k >= 1, errc::bad_parameter, "matrix: size must be >= 1");
    const std::size_t d = k * k;
    auto idx = [k](std::size_t r, std::size_t c) { return r * k + c; };
    std::vector<std::vector<std::vector<scalar>>> sc(
        d, std::vector<std::vector<scalar>>(d, std::vector<scalar>(d, scalar::zero(ring))));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t e = 0; e < k; ++e)
                    if (b == c) sc[idx(a, b)][idx(c, e)][idx(a, e)] = scalar::one(ring);
    std::vector<scalar> one(d, scalar::zero(ring));
    for (std::size_t a = 0; a < k; ++a) one[idx(a, a)] = scalar::one(ring);
    return algebra::make(ring, sc, one);
}

/// Upper-triangular k x k matrices; basis e_{rc} for r <= c in row-major order.
inline algebra_ptr builtin_upper_triangular(std::size_t k, const ring_spec& ring) {
    require(k >= 1, errc::bad_parameter, "upper_triangular: size must be >= 1");
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = r; c < k; ++c) cells.emplace_back(r, c);
    const std::size_t d = cells.size();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;
    for (std::size_t i = 0; i < d; ++i) pos[cells[i]] = i;
    std::vector<std::vector<std::vector<scalar>>> sc(
        d, std::vector<std::vector<scalar>>(d, std::vector<scalar>(d, scalar::zero(ring))));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            auto [a, b] = cells[i];
            auto [c, e] = cells[j];
            if (b == c) sc[i][j][pos[{a, e}]] = scalar::one(ring);
        }
    std::vector<scalar> one(d, scalar::zero(ring));
    for (std::size_t a = 0; a < k; ++a) one[pos[{a, a}]] = scalar::one(ring);
    return algebra::make(ring, sc, one);
}

/// Direct product with componentwise operations; all factors share one ring.
inline algebra_ptr builtin_product(const std::vector<algebra_ptr>& factors) {
    require(!factors.empty(), errc::bad_parameter, "product: empty factor list");
    const ring_spec ring = factors[0]->ring();
    std::size_t d = 0;
    for (const auto& f : factors) {
        require_same_ring(f->ring(), ring);
        d += f->dim();
    }
    std::vector<std::vector<std::vector<scalar>>> sc(
        d, std::vector<std::vector<scalar>>(d, std::vector<scalar>(d, scalar::zero(ring))));
    std::vector<scalar> one(d, scalar::zero(ring));
    std::size_t off = 0;
    for (const auto& f : factors) {
        for (std::size_t i = 0; i < f->dim(); ++i) {
            one[off + i] = f->one_coords()[i];
            for (std::size_t j = 0; j < f->dim(); ++j)
                for (std::size_t k = 0; k < f->dim(); ++k)
                    sc[off + i][off + j][off + k] = f->c(i, j, k);
        }
        off += f->dim();
    }
    return algebra::make(ring, sc, one);
}

/// R[eps]/(eps^2); basis 1, eps.
inline algebra_ptr builtin_dual_numbers(const ring_spec& ring) {
    auto z = scalar::zero(ring), o = scalar::one(ring);
    return algebra::make(ring, {{{o, z}, {z, o}}, {{z, o}, {z, z}}}, {o, z});
}

/// Group algebra of the cyclic group of order k; basis g^0, ..., g^{k-1}.
inline algebra_ptr builtin_group_algebra_cyclic(const ring_spec& ring, std::size_t k) {
    require(k >= 1, errc::bad_parameter, "group_algebra_cyclic: order must be >= 1");
    std::vector<std::vector<std::vector<scalar>>> sc(
        k, std::vector<std::vector<scalar>>(k, std::vector<scalar>(k, scalar::zero(ring))));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sc[i][j][(i + j) % k] = scalar::one(ring);
    std::vector<scalar> one(k, scalar::zero(ring));
    one[0] = scalar::one(ring);
    return algebra::make(ring, sc, one);
}

// ---------------------------------------------------------------------------
// Power cycles
// ---------------------------------------------------------------------------

/// Eventually periodic power data of an element. Over finite rings the
/// minimal preperiod rho >= 1 and period pi >= 1 satisfy a^{rho+pi} = a^rho
/// and `powers` lists a^1 ... a^{rho+pi-1}. Over Q only the span bound is
/// available: span{1, a, ..., a^K} = span of all powers of a.
struct power_cycle_data {
    element base;
    std::optional<std::size_t> preperiod;
    std::optional<std::size_t> period;
    std::vector<element> powers;
    std::size_t span_bound = 0;

    /// a^m for m >= 1, folded into the cycle when one exists.
    [[nodiscard]] element power(std::size_t m) const {
        require(m >= 1, errc::bad_parameter, "power: exponent must be >= 1");
        if (m <= powers.size()) return powers[m - 1];
        require(preperiod && period, errc::bad_parameter,
                "power: exponent beyond tabulated range without a cycle");
        std::size_t rho = *preperiod, pi = *period;
        std::size_t folded = rho + (m - rho) % pi;
        return powers[folded - 1];
    }
};

namespace detail {

inline std::string coord_key(const std::vector<scalar>& coords) {
    std::string k;
    for (const auto& s : coords) {
        k += s.to_string();
        k += '|';
    }
    return k;
}

/// First K with span{1, ..., a^K} = span{1, ..., a^{K+1}}.
inline std::size_t power_span_bound(const element& a, const budget& b) {
    const auto& alg = a.alg();
    std::vector<std::vector<scalar>> rows{element::one(alg).coords()};
    element cur = element::one(alg);
    scalar_matrix prev = canonical_form(
        scalar_matrix::from_rows(alg->ring(), rows, alg->dim()));
    for (std::size_t k = 0;; ++k) {
        require(k <= b.max_steps, errc::too_large, "power_span_bound: step budget exceeded");
        cur = cur * a;
        rows.push_back(cur.coords());
        scalar_matrix next = canonical_form(
            scalar_matrix::from_rows(alg->ring(), rows, alg->dim()));
        if (next == prev) return k;
        prev = next;
    }
}

} // namespace detail

/// Minimal (rho, pi) with a^{rho+pi} = a^rho over finite rings, by direct
/// tabulation with a first-repeat map; over Q, the span bound only.
inline power_cycle_data power_cycle(const element& a, const budget& b = {}) {
    power_cycle_data out{a, std::nullopt, std::nullopt, {}, 0};
    out.span_bound = detail::power_span_bound(a, b);
    if (!a.alg()->ring().is_finite()) {
        element cur = element::one(a.alg());
        for (std::size_t m = 1; m <= out.span_bound + 1; ++m) {
            cur = cur * a;
            out.powers.push_back(cur);
        }
        return out;
    }
    std::map<std::string, std::size_t> seen; // coord key -> exponent
    element cur = a;
    std::size_t m = 1;
    for (;;) {
        require(m <= b.max_steps, errc::too_large, "power_cycle: step budget exceeded");
        auto key = detail::coord_key(cur.coords());
        auto it = seen.find(key);
        if (it != seen.end()) {
            std::size_t rho = it->second, s = m;
            out.preperiod = rho;
            out.period = s - rho;
            out.powers.resize(s - 1, a); // placeholder, rewritten below
            break;
        }
        seen[key] = m;
        cur = cur * a;
        ++m;
    }
    element p = element::one(a.alg());
    for (std::size_t i = 1; i < m; ++i) {
        p = p * a;
        out.powers[i - 1] = p;
    }
    return out;
}

} // namespace mathieu
