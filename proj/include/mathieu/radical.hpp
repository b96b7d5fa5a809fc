#pragma once

#include <optional>
#include <vector>

#include "poly.hpp"
#include "subspace.hpp"

namespace mathieu {

/// Stabilized span of the high powers of an element: span{a^m : m >= start},
/// certified by a * span = span.
struct tail_span_data {
    element base;
    std::size_t start; // M
    subspace span;     // span{a^m : m >= M}
};

namespace detail {

inline subspace multiply_span(const element& a, const subspace& s, bool on_left) {
    std::vector<element> gens;
    for (std::size_t i = 0; i < s.rank(); ++i)
        gens.push_back(on_left ? a * s.basis_element(i) : s.basis_element(i) * a);
    return subspace::span(a.alg(), gens);
}

} // namespace detail

/// Descending chain S_{k+1} = a * S_k from S_1 = span{a, a^2, ...}; the first
/// k with S_k = S_{k+1} is sound because the chain stays constant afterwards.
inline tail_span_data tail_span(const element& a, const budget& b = {}) {
    std::size_t bound = detail::power_span_bound(a, b);
    std::vector<element> gens;
    element cur = element::one(a.alg());
    for (std::size_t m = 1; m <= bound + 1; ++m) {
        cur = cur * a;
        gens.push_back(cur);
    }
    subspace s = subspace::span(a.alg(), gens); // S_1
    std::size_t k = 1;
    for (;;) {
        subspace next = detail::multiply_span(a, s, true);
        if (next.equals(s)) break;
        s = next;
        ++k;
        require(k <= b.max_steps, errc::too_large, "tail_span: step budget exceeded");
    }
    return {a, k, s};
}

/// a in r(V): all sufficiently high powers of a lie in V. Equivalent to
/// tail_span(a).span being contained in V because that span is generated by
/// the tail powers.
inline bool is_in_radical(const element& a, const subspace& v, const budget& b = {}) {
    require_same_algebra(a.alg(), v.alg());
    return v.contains(tail_span(a, b).span);
}

/// Certificate of co-integrality: the minimal N with a^N R[a] = a^{N+1} R[a],
/// the witnessing chain M_k = a^k R[a], the solved g with a^N = a^{N+1} g(a),
/// and the derived polynomials h = 1 - t*g (so f = t^N h kills a) and
/// p = (t*g)^N, whose evaluation p(a) is the idempotent attached to a.
struct cointegral_certificate {
    element base;
    std::size_t index = 0;           // N
    std::vector<subspace> chain;     // M_0 .. M_{N+1}
    poly g, h, p;
    element p_of_a;

    cointegral_certificate(element base_, const ring_spec& ring)
        : base(std::move(base_)), g(ring), h(ring), p(ring),
          p_of_a(element::zero(base.alg())) {}

    [[nodiscard]] poly f() const { return h.shifted(index); } // t^N h(t)
};

/// Builds and verifies the certificate. Every element here has a finite
/// index: the chain M_{k+1} = a * M_k descends in a finite-length lattice.
inline cointegral_certificate cointegral_certificate_of(const element& a, const budget& b = {}) {
    const auto& alg = a.alg();
    const ring_spec& ring = alg->ring();
    cointegral_certificate cert(a, ring);

    std::size_t bound = detail::power_span_bound(a, b);

    subspace m0 = generated_subalgebra(a, b); // M_0 = R[a]
    cert.chain.push_back(m0);
    std::size_t n = 0;
    subspace cur = m0;
    for (;;) {
        subspace next = detail::multiply_span(a, cur, true);
        cert.chain.push_back(next);
        if (next.equals(cur)) break;
        cur = next;
        ++n;
        require(n <= b.max_steps, errc::too_large, "cointegral: step budget exceeded");
    }
    cert.index = n;

    std::vector<element> pw{element::one(alg)};
    for (std::size_t m = 1; m <= n + 1 + bound; ++m) pw.push_back(pw.back() * a);

    // solve a^N = a^{N+1} g(a): membership of a^N in the row span of
    // a^{N+1}, ..., a^{N+1+bound}
    std::vector<std::vector<scalar>> rows;
    for (std::size_t j = 0; j <= bound; ++j) rows.push_back(pw[n + 1 + j].coords());
    auto sol = solve_membership(
        scalar_matrix::from_rows(ring, rows, alg->dim()), pw[n].coords());
    require(sol.has_value(), errc::solve_failed,
            "cointegral: a^N not in a^{N+1} R[a] at the stabilized index");
    cert.g = poly(ring, *sol);

    cert.h = poly::one(ring) - poly::t(ring) * cert.g;
    cert.p = (poly::t(ring) * cert.g).pow(n);
    cert.p_of_a = eval_at(cert.p, a);

    // certificate invariants, all exact
    require(cert.h.coefficient(0).is_one(), errc::solve_failed, "cointegral: h(0) != 1");
    require(cert.p.divisible_by_t_power(n), errc::solve_failed, "cointegral: p != 0 mod t^N");
    require(eval_at(cert.f(), a).is_zero(), errc::solve_failed, "cointegral: f(a) != 0");
    require(cert.p_of_a * cert.p_of_a == cert.p_of_a, errc::solve_failed,
            "cointegral: p(a) is not idempotent");
    element an = pw[n];
    require(an * cert.p_of_a == an && cert.p_of_a * an == an, errc::solve_failed,
            "cointegral: a^N p(a) != a^N");
    if (n >= 1)
        require(!cert.chain[n - 1].equals(cert.chain[n]), errc::solve_failed,
                "cointegral: index is not minimal");
    return cert;
}

enum class element_class_kind { nilpotent, unit, neither };

/// Outcome of the idempotent construction: a is nilpotent iff p(a) = 0,
/// a unit iff p(a) = 1 (with inverse recovered from 1 in a R[a]), and
/// otherwise p(a) is a nontrivial idempotent of R[a].
struct element_classification {
    element_class_kind kind;
    std::optional<element> inverse;    // set for units
    std::optional<element> idempotent; // set for "neither": the nontrivial p(a)
    cointegral_certificate certificate;
};

inline element_classification classify_element(const element& a, const budget& b = {}) {
    auto cert = cointegral_certificate_of(a, b);
    const auto& alg = a.alg();
    if (cert.p_of_a.is_zero()) {
        require(a.pow(cert.index).is_zero(), errc::solve_failed,
                "classify: p(a) = 0 but a^N != 0");
        return {element_class_kind::nilpotent, std::nullopt, std::nullopt, cert};
    }
    if (cert.p_of_a.is_one()) {
        // 1 in a R[a]: solve 1 = sum c_j a^{j+1}, inverse = sum c_j a^j
        std::size_t bound = detail::power_span_bound(a, b);
        std::vector<std::vector<scalar>> rows;
        std::vector<element> pw{element::one(alg)};
        for (std::size_t m = 1; m <= bound + 1; ++m) pw.push_back(pw.back() * a);
        for (std::size_t j = 0; j <= bound; ++j) rows.push_back(pw[j + 1].coords());
        auto sol = solve_membership(scalar_matrix::from_rows(alg->ring(), rows, alg->dim()),
                                    element::one(alg).coords());
        require(sol.has_value(), errc::solve_failed, "classify: p(a) = 1 but 1 not in a R[a]");
        element inv = element::zero(alg);
        for (std::size_t j = 0; j <= bound; ++j)
            if (!(*sol)[j].is_zero()) inv = inv + pw[j].scaled((*sol)[j]);
        require((a * inv).is_one() && (inv * a).is_one(), errc::solve_failed,
                "classify: recovered inverse fails");
        return {element_class_kind::unit, inv, std::nullopt, cert};
    }
    return {element_class_kind::neither, std::nullopt, cert.p_of_a, cert};
}

/// The three idempotency grades: a = a^2, a = r a^2 with r a unit of R, and
/// a = r a^2 with r in R.
struct idempotency_report {
    bool idempotent = false;
    bool quasi_idempotent = false;
    bool semi_idempotent = false;
    std::optional<scalar> semi_witness;  // some r with a = r a^2
    std::optional<scalar> quasi_witness; // some unit r with a = r a^2
};

inline idempotency_report idempotent_predicates(const element& a, const budget& b = {}) {
    idempotency_report rep;
    element a2 = a * a;
    rep.idempotent = a2 == a;
    const ring_spec& ring = a.alg()->ring();

    if (ring.is_field()) {
        // over a field the solver's r is the unique witness for a != 0
        auto sol = solve_membership(
            scalar_matrix::from_rows(ring, {a2.coords()}, a.alg()->dim()), a.coords());
        if (sol.has_value()) {
            scalar r = (*sol)[0];
            if (a.is_zero()) r = scalar::one(ring); // 0 = r * 0 for any r
            rep.semi_idempotent = true;
            rep.semi_witness = r;
            if (!r.is_zero() || a.is_zero()) {
                rep.quasi_idempotent = true;
                rep.quasi_witness = a.is_zero() ? scalar::one(ring) : r;
            }
        }
        return rep;
    }

    // over Z/nZ scan all residues, filtering by unit status for quasi
    std::size_t n = ring.modulus().convert_to<std::size_t>();
    require(n <= b.max_scan_elements, errc::too_large,
            "idempotent_predicates: residue scan budget exceeded");
    for (std::size_t r = 0; r < n; ++r) {
        scalar rs(ring, bigint(r));
        if (a2.scaled(rs) != a) continue;
        if (!rep.semi_idempotent) {
            rep.semi_idempotent = true;
            rep.semi_witness = rs;
        }
        if (!rep.quasi_idempotent && rs.is_unit()) {
            rep.quasi_idempotent = true;
            rep.quasi_witness = rs;
        }
        if (rep.quasi_idempotent) break;
    }
    return rep;
}

/// Harness for the tail-membership lemma: given that b a^m c lands in V for
/// all m >> 0 and that the co-integrality index of a is at most N, checks
/// b a^m c in V for every m >= N and returns the verdict. Exact over finite
/// rings via the cycle window, exact over Q via the tail-from-N span.
inline bool verify_lemma_tail_membership(const element& a, const element& bb, const element& cc,
                                         const subspace& v, std::size_t n_index,
                                         const budget& b = {}) {
    require_same_algebra(a.alg(), v.alg());
    require_same_algebra(bb.alg(), v.alg());
    require_same_algebra(cc.alg(), v.alg());

    auto cert = cointegral_certificate_of(a, b);
    require(cert.index <= n_index, errc::precondition_failed,
            "tail membership: co-integrality index exceeds N");
    auto tail = tail_span(a, b);
    for (std::size_t i = 0; i < tail.span.rank(); ++i)
        require(v.member(bb * tail.span.basis_element(i) * cc), errc::precondition_failed,
                "tail membership: hypothesis b a^m c in V (m >> 0) fails");

    if (a.alg()->ring().is_finite()) {
        auto cyc = power_cycle(a, b);
        std::size_t hi = std::max(n_index, *cyc.preperiod) + *cyc.period - 1;
        for (std::size_t m = n_index; m <= hi; ++m) {
            element am = m == 0 ? element::one(a.alg()) : cyc.power(m);
            if (!v.member(bb * am * cc)) return false;
        }
        return true;
    }
    // over Q: b * span{a^m : m >= N} * c must lie in V, and that span is
    // R[a] for N = 0, else the (N-1)-fold shift of span{a, a^2, ...}
    subspace from_n = subspace::zero(a.alg());
    if (n_index == 0) {
        from_n = generated_subalgebra(a, b);
    } else {
        std::size_t bound = detail::power_span_bound(a, b);
        std::vector<element> gens;
        element cur = element::one(a.alg());
        for (std::size_t m = 1; m <= bound + 1; ++m) {
            cur = cur * a;
            gens.push_back(cur);
        }
        from_n = subspace::span(a.alg(), gens); // span{a^m : m >= 1}
        for (std::size_t m = 1; m < n_index; ++m) {
            subspace next = detail::multiply_span(a, from_n, true);
            if (next.equals(from_n)) break;
            from_n = next;
        }
    }
    for (std::size_t i = 0; i < from_n.rank(); ++i)
        if (!v.member(bb * from_n.basis_element(i) * cc)) return false;
    return true;
}

} // namespace mathieu
