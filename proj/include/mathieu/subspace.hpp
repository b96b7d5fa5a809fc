#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace mathieu {

/// The four theta values of the Mathieu subspace definition.
enum class mathieu_variant { left, right, pre_two_sided, two_sided };

inline constexpr mathieu_variant all_variants[] = {
    mathieu_variant::left, mathieu_variant::right,
    mathieu_variant::pre_two_sided, mathieu_variant::two_sided};

inline std::string variant_name(mathieu_variant v) {
    switch (v) {
    case mathieu_variant::left: return "left";
    case mathieu_variant::right: return "right";
    case mathieu_variant::pre_two_sided: return "pre";
    case mathieu_variant::two_sided: return "two";
    }
    return "?";
}

/// R-submodule of an algebra, held as the canonical form of a spanning
/// matrix, so equality of subspaces is structural equality.
class subspace {
public:
    static subspace span(const algebra_ptr& alg, const std::vector<element>& gens) {
        std::vector<std::vector<scalar>> rows;
        rows.reserve(gens.size());
        for (const auto& g : gens) {
            require_same_algebra(g.alg(), alg);
            rows.push_back(g.coords());
        }
        return from_rows(alg, rows);
    }

    static subspace from_rows(const algebra_ptr& alg,
                              const std::vector<std::vector<scalar>>& rows) {
        auto m = scalar_matrix::from_rows(alg->ring(), rows, alg->dim());
        return subspace(alg, canonical_form(m));
    }

    static subspace zero(const algebra_ptr& alg) {
        return subspace(alg, scalar_matrix(alg->ring(), 0, alg->dim()));
    }

    static subspace full(const algebra_ptr& alg) {
        std::vector<element> gens;
        for (std::size_t i = 0; i < alg->dim(); ++i) gens.push_back(element::basis(alg, i));
        return span(alg, gens);
    }

    [[nodiscard]] const algebra_ptr& alg() const { return alg_; }
    [[nodiscard]] const scalar_matrix& basis() const { return basis_; }
    [[nodiscard]] std::size_t rank() const { return basis_.rows(); }
    [[nodiscard]] bool is_zero() const { return basis_.rows() == 0; }

    [[nodiscard]] element basis_element(std::size_t i) const {
        return element(alg_, basis_.row(i));
    }

    [[nodiscard]] bool member(const element& x) const {
        require_same_algebra(x.alg(), alg_);
        if (basis_.rows() == 0) return x.is_zero();
        return solve_membership(basis_, x.coords()).has_value();
    }

    [[nodiscard]] bool contains(const subspace& w) const {
        require_same_algebra(w.alg_, alg_);
        for (std::size_t i = 0; i < w.rank(); ++i)
            if (!member(w.basis_element(i))) return false;
        return true;
    }

    [[nodiscard]] bool equals(const subspace& w) const {
        require_same_algebra(w.alg_, alg_);
        return basis_ == w.basis_;
    }

    [[nodiscard]] subspace sum(const subspace& w) const {
        require_same_algebra(w.alg_, alg_);
        return subspace(alg_, canonical_form(basis_.stacked(w.basis_)));
    }

    /// Intersection via the kernel of the stacked system: solutions of
    /// y_V * B_V = y_W * B_W.
    [[nodiscard]] subspace intersect(const subspace& w) const {
        require_same_algebra(w.alg_, alg_);
        const std::size_t kv = rank(), kw = w.rank();
        if (kv == 0 || kw == 0) return zero(alg_);
        scalar_matrix stacked = basis_.stacked(w.basis_);
        for (std::size_t i = kv; i < kv + kw; ++i)
            for (std::size_t j = 0; j < stacked.cols(); ++j)
                stacked.at(i, j) = -stacked.at(i, j);
        scalar_matrix ker = row_kernel(stacked);
        std::vector<std::vector<scalar>> gens;
        for (std::size_t i = 0; i < ker.rows(); ++i) {
            std::vector<scalar> v(alg_->dim(), scalar::zero(alg_->ring()));
            for (std::size_t r = 0; r < kv; ++r)
                if (!ker.at(i, r).is_zero())
                    detail::add_scaled(v, basis_.row(r), ker.at(i, r));
            gens.push_back(std::move(v));
        }
        return from_rows(alg_, gens);
    }

    bool operator==(const subspace& o) const { return equals(o); }
    bool operator!=(const subspace& o) const { return !equals(o); }

    [[nodiscard]] std::string key() const { return basis_.to_string(); }

private:
    subspace(algebra_ptr alg, scalar_matrix basis)
        : alg_(std::move(alg)), basis_(std::move(basis)) {}

    algebra_ptr alg_;
    scalar_matrix basis_;
};

/// R[a]: the unital subalgebra generated by a, as the stabilized span of
/// 1, a, a^2, ... (once stable it stays stable because a * span lies in span).
inline subspace generated_subalgebra(const element& a, const budget& b = {}) {
    std::size_t k = detail::power_span_bound(a, b);
    std::vector<element> gens;
    element cur = element::one(a.alg());
    gens.push_back(cur);
    for (std::size_t i = 0; i < k; ++i) {
        cur = cur * a;
        gens.push_back(cur);
    }
    return subspace::span(a.alg(), gens);
}

/// The theta-ideal generated by a: A*a, a*A, A*a*A, or A*a + a*A. Spanning
/// sets use basis elements only, which suffices by bilinearity.
inline subspace theta_ideal(const element& a, mathieu_variant v) {
    const auto& alg = a.alg();
    const std::size_t d = alg->dim();
    std::vector<element> gens;
    auto left_gens = [&] {
        for (std::size_t i = 0; i < d; ++i) gens.push_back(element::basis(alg, i) * a);
    };
    auto right_gens = [&] {
        for (std::size_t j = 0; j < d; ++j) gens.push_back(a * element::basis(alg, j));
    };
    switch (v) {
    case mathieu_variant::left: left_gens(); break;
    case mathieu_variant::right: right_gens(); break;
    case mathieu_variant::pre_two_sided:
        left_gens();
        right_gens();
        break;
    case mathieu_variant::two_sided:
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                gens.push_back(element::basis(alg, i) * a * element::basis(alg, j));
        break;
    }
    return subspace::span(alg, gens);
}

/// Whether V is a theta-ideal. A "pre-two-sided ideal" is the same as a
/// two-sided ideal.
inline bool is_theta_ideal(const subspace& v, mathieu_variant var) {
    const auto& alg = v.alg();
    const std::size_t d = alg->dim();
    bool need_left = var != mathieu_variant::right;
    bool need_right = var != mathieu_variant::left;
    for (std::size_t r = 0; r < v.rank(); ++r) {
        element w = v.basis_element(r);
        for (std::size_t i = 0; i < d; ++i) {
            element e = element::basis(alg, i);
            if (need_left && !v.member(e * w)) return false;
            if (need_right && !v.member(w * e)) return false;
        }
    }
    return true;
}

namespace detail {

/// {x : x * op in W} where op maps coordinates linearly (rows of op_matrix
/// are the images of the basis elements). Computed through the kernel of the
/// stacked system (x | y) with x*op = y*B_W.
inline subspace linear_preimage(const algebra_ptr& alg, const scalar_matrix& op_rows,
                                const subspace& w) {
    const ring_spec& ring = alg->ring();
    const std::size_t ds = op_rows.rows();
    const std::size_t dt = op_rows.cols();
    const std::size_t k = w.rank();
    scalar_matrix sys(ring, ds + k, dt);
    for (std::size_t i = 0; i < ds; ++i)
        for (std::size_t j = 0; j < dt; ++j) sys.at(i, j) = op_rows.at(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < dt; ++j) sys.at(ds + i, j) = -w.basis().at(i, j);
    scalar_matrix ker = row_kernel(sys);
    std::vector<std::vector<scalar>> gens;
    for (std::size_t i = 0; i < ker.rows(); ++i) {
        std::vector<scalar> x;
        x.reserve(ds);
        for (std::size_t j = 0; j < ds; ++j) x.push_back(ker.at(i, j));
        gens.push_back(std::move(x));
    }
    return subspace::from_rows(alg, gens);
}

/// Matrix of left multiplication by e (row i = coords of e * e_i).
inline scalar_matrix left_mult_matrix(const element& e) {
    const auto& alg = e.alg();
    scalar_matrix m(alg->ring(), alg->dim(), alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i)
        m.set_row(i, (e * element::basis(alg, i)).coords());
    return m;
}

inline scalar_matrix right_mult_matrix(const element& e) {
    const auto& alg = e.alg();
    scalar_matrix m(alg->ring(), alg->dim(), alg->dim());
    for (std::size_t i = 0; i < alg->dim(); ++i)
        m.set_row(i, (element::basis(alg, i) * e).coords());
    return m;
}

} // namespace detail

/// Largest theta-ideal of A contained in V: the greatest fixed point of one
/// refinement round W -> {w in W : e_i w in W (and/or w e_i in W)}, descending
/// from V in a finite-length lattice. The pre-two-sided value is defined as
/// I_left + I_right.
inline subspace largest_theta_ideal(const subspace& v, mathieu_variant var) {
    const auto& alg = v.alg();
    if (var == mathieu_variant::pre_two_sided) {
        return largest_theta_ideal(v, mathieu_variant::left)
            .sum(largest_theta_ideal(v, mathieu_variant::right));
    }
    bool need_left = var != mathieu_variant::right;
    bool need_right = var != mathieu_variant::left;
    subspace w = v;
    for (;;) {
        subspace next = w;
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            element e = element::basis(alg, i);
            if (need_left)
                next = next.intersect(
                    detail::linear_preimage(alg, detail::left_mult_matrix(e), w));
            if (need_right)
                next = next.intersect(
                    detail::linear_preimage(alg, detail::right_mult_matrix(e), w));
        }
        if (next.equals(w)) return w;
        w = next;
    }
}

// ---------------------------------------------------------------------------
// Finite enumeration helpers
// ---------------------------------------------------------------------------

/// Number of elements |R|^dim of a finite-ring algebra, or nullopt over Q.
inline std::optional<std::size_t> element_count(const algebra_ptr& alg,
                                                std::size_t cap) {
    if (!alg->ring().is_finite()) return std::nullopt;
    bigint q = alg->ring().modulus();
    bigint total = 1;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        total *= q;
        if (total > cap) return std::nullopt;
    }
    return total.convert_to<std::size_t>();
}

/// Element with the given enumeration index; coordinate 0 is the most
/// significant digit, so index order is lexicographic coordinate order.
inline element element_at(const algebra_ptr& alg, std::size_t index) {
    const std::size_t d = alg->dim();
    std::vector<scalar> coords(d, scalar::zero(alg->ring()));
    std::size_t qi = alg->ring().modulus().convert_to<std::size_t>();
    for (std::size_t i = d; i-- > 0;) {
        coords[i] = scalar(alg->ring(), bigint(index % qi));
        index /= qi;
    }
    return element(alg, coords);
}

/// All elements of a finite-ring algebra in enumeration order.
inline std::vector<element> enumerate_elements(const algebra_ptr& alg, const budget& b = {}) {
    require(alg->ring().is_finite(), errc::infinite_ring,
            "enumerate_elements: base ring is infinite");
    auto n = element_count(alg, b.max_scan_elements);
    require(n.has_value(), errc::too_large, "enumerate_elements: element budget exceeded");
    std::vector<element> out;
    out.reserve(*n);
    for (std::size_t i = 0; i < *n; ++i) out.push_back(element_at(alg, i));
    return out;
}

/// All elements of a subspace (as |R|^rank coefficient combinations; may
/// repeat over Z/nZ, callers dedupe when needed).
inline std::vector<element> enumerate_subspace_elements(const subspace& v, const budget& b = {}) {
    const auto& alg = v.alg();
    require(alg->ring().is_finite(), errc::infinite_ring,
            "enumerate_subspace_elements: base ring is infinite");
    const std::size_t q = alg->ring().modulus().convert_to<std::size_t>();
    const std::size_t k = v.rank();
    double combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= static_cast<double>(q);
    require(combos <= static_cast<double>(b.max_scan_elements), errc::too_large,
            "enumerate_subspace_elements: element budget exceeded");
    std::vector<element> out;
    std::vector<std::size_t> digits(k, 0);
    for (;;) {
        std::vector<scalar> coords(alg->dim(), scalar::zero(alg->ring()));
        for (std::size_t i = 0; i < k; ++i)
            if (digits[i] != 0)
                detail::add_scaled(coords, v.basis().row(i),
                                   scalar(alg->ring(), bigint(digits[i])));
        out.emplace_back(alg, coords);
        std::size_t pos = k;
        while (pos > 0 && digits[pos - 1] + 1 == q) digits[--pos] = 0;
        if (pos == 0) break;
        ++digits[pos - 1];
    }
    return out;
}

/// Every R-submodule of the algebra, produced by closing single-element
/// extensions and deduplicating on canonical bases; sorted by (rank, key)
/// so the output order is reproducible.
inline std::vector<subspace> enumerate_subspaces(const algebra_ptr& alg, const budget& b = {}) {
    require(alg->ring().is_finite(), errc::infinite_ring,
            "enumerate_subspaces: base ring is infinite");
    require(alg->dim() <= b.max_subspace_dim, errc::too_large,
            "enumerate_subspaces: dimension cap exceeded");
    auto n = element_count(alg, b.max_subspace_elements);
    require(n.has_value(), errc::too_large, "enumerate_subspaces: element budget exceeded");

    std::vector<element> elems;
    elems.reserve(*n);
    for (std::size_t i = 0; i < *n; ++i) elems.push_back(element_at(alg, i));

    std::map<std::string, subspace> seen;
    std::vector<subspace> frontier{subspace::zero(alg)};
    seen.emplace(frontier[0].key(), frontier[0]);
    while (!frontier.empty()) {
        std::vector<subspace> next;
        for (const auto& s : frontier) {
            for (const auto& x : elems) {
                if (x.is_zero() || s.member(x)) continue;
                std::vector<std::vector<scalar>> rows;
                for (std::size_t r = 0; r < s.rank(); ++r) rows.push_back(s.basis().row(r));
                rows.push_back(x.coords());
                subspace bigger = subspace::from_rows(alg, rows);
                auto [it, inserted] = seen.emplace(bigger.key(), bigger);
                if (inserted) next.push_back(bigger);
            }
        }
        frontier = std::move(next);
    }
    std::vector<subspace> out;
    out.reserve(seen.size());
    for (auto& [k, s] : seen) out.push_back(s);
    std::sort(out.begin(), out.end(), [](const subspace& a, const subspace& c) {
        if (a.rank() != c.rank()) return a.rank() < c.rank();
        return a.key() < c.key();
    });
    return out;
}

} // namespace mathieu
