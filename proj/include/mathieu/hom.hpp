#pragma once

#include <utility>
#include <vector>

#include "subspace.hpp"

namespace mathieu {

/// R-algebra homomorphism between structure-constant algebras, stored as the
/// (target.dim x source.dim) coordinate matrix. The hom axioms phi(1) = 1 and
/// phi(e_i e_j) = phi(e_i) phi(e_j) are verified at construction, as is the
/// surjectivity flag (image span must be the full target module).
class algebra_hom {
public:
    static algebra_hom make(algebra_ptr source, algebra_ptr target, scalar_matrix matrix) {
        require(matrix.rows() == target->dim() && matrix.cols() == source->dim(),
                errc::dimension_mismatch, "algebra_hom: matrix shape must be target.dim x source.dim");
        require_same_ring(source->ring(), target->ring());
        require_same_ring(matrix.ring(), source->ring());
        algebra_hom h(std::move(source), std::move(target), std::move(matrix));

        require(h.apply(element::one(h.source_)).is_one(), errc::bad_parameter,
                "algebra_hom: phi(1) != 1");
        for (std::size_t i = 0; i < h.source_->dim(); ++i)
            for (std::size_t j = 0; j < h.source_->dim(); ++j) {
                element lhs = h.apply(element(h.source_, h.source_->basis_product(i, j)));
                element rhs = h.apply(element::basis(h.source_, i)) *
                              h.apply(element::basis(h.source_, j));
                require(lhs == rhs, errc::bad_parameter,
                        "algebra_hom: multiplicativity fails at basis pair (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
            }

        std::vector<element> image;
        for (std::size_t i = 0; i < h.source_->dim(); ++i)
            image.push_back(h.apply(element::basis(h.source_, i)));
        h.surjective_ = subspace::span(h.target_, image).equals(subspace::full(h.target_));
        return h;
    }

    [[nodiscard]] const algebra_ptr& source() const { return source_; }
    [[nodiscard]] const algebra_ptr& target() const { return target_; }
    [[nodiscard]] const scalar_matrix& matrix() const { return matrix_; }
    [[nodiscard]] bool surjective() const { return surjective_; }

    [[nodiscard]] element apply(const element& x) const {
        require_same_algebra(x.alg(), source_);
        std::vector<scalar> out(target_->dim(), scalar::zero(target_->ring()));
        for (std::size_t k = 0; k < target_->dim(); ++k) {
            scalar acc = scalar::zero(target_->ring());
            for (std::size_t i = 0; i < source_->dim(); ++i)
                acc += matrix_.at(k, i) * x.coords()[i];
            out[k] = acc;
        }
        return element(target_, std::move(out));
    }

    /// Row i = coords of phi(e_i); the row-vector form of the matrix.
    [[nodiscard]] scalar_matrix image_rows() const {
        scalar_matrix m(source_->ring(), source_->dim(), target_->dim());
        for (std::size_t i = 0; i < source_->dim(); ++i)
            m.set_row(i, apply(element::basis(source_, i)).coords());
        return m;
    }

private:
    algebra_hom(algebra_ptr s, algebra_ptr t, scalar_matrix m)
        : source_(std::move(s)), target_(std::move(t)), matrix_(std::move(m)) {}

    algebra_ptr source_;
    algebra_ptr target_;
    scalar_matrix matrix_;
    bool surjective_ = false;
};

inline element hom_image(const algebra_hom& phi, const element& x) { return phi.apply(x); }

/// phi^{-1}(V): every source vector whose image lies in V, canonicalized.
inline subspace hom_preimage_subspace(const algebra_hom& phi, const subspace& v) {
    require_same_algebra(v.alg(), phi.target());
    return detail::linear_preimage(phi.source(), phi.image_rows(), v);
}

/// Quotient A/I by a two-sided ideal, presented on the complement basis of
/// the non-pivot coordinates of I's canonical form, with the canonical
/// surjection. Requires every pivot of I to be a unit so that the quotient
/// module is free (automatic over fields); over Z/nZ a non-unit pivot is
/// rejected because no structure-constant presentation exists.
inline std::pair<algebra_ptr, algebra_hom> quotient_algebra(const algebra_ptr& a,
                                                            const subspace& ideal) {
    require_same_algebra(ideal.alg(), a);
    require(is_theta_ideal(ideal, mathieu_variant::two_sided), errc::not_an_ideal,
            "quotient_algebra: subspace is not a two-sided ideal");

    const ring_spec& ring = a->ring();
    auto canon = canonical_form_with_transform(ideal.basis());
    for (std::size_t i = 0; i < canon.form.rows(); ++i)
        require(canon.form.at(i, canon.pivot_cols[i]).is_unit(), errc::bad_parameter,
                "quotient_algebra: quotient module is not free over " + ring.to_string());

    std::vector<bool> is_pivot(a->dim(), false);
    for (auto j : canon.pivot_cols) is_pivot[j] = true;
    std::vector<std::size_t> comp; // greedy complement: the non-pivot coordinates
    for (std::size_t j = 0; j < a->dim(); ++j)
        if (!is_pivot[j]) comp.push_back(j);
    const std::size_t qd = comp.size();

    // reduce x modulo I onto the complement coordinates
    auto reduce = [&](std::vector<scalar> x) {
        for (std::size_t i = 0; i < canon.form.rows(); ++i) {
            std::size_t j = canon.pivot_cols[i];
            if (x[j].is_zero()) continue;
            scalar q = x[j].divide_exact(canon.form.at(i, j));
            detail::add_scaled(x, canon.form.row(i), -q);
        }
        std::vector<scalar> out;
        out.reserve(qd);
        for (auto j : comp) out.push_back(x[j]);
        return out;
    };

    // embed complement coordinates back into A
    auto lift = [&](const std::vector<scalar>& y) {
        std::vector<scalar> x(a->dim(), scalar::zero(ring));
        for (std::size_t t = 0; t < qd; ++t) x[comp[t]] = y[t];
        return element(a, x);
    };

    std::vector<std::vector<std::vector<scalar>>> sc(
        qd, std::vector<std::vector<scalar>>(qd, std::vector<scalar>(qd, scalar::zero(ring))));
    std::vector<scalar> unit_y(qd, scalar::zero(ring));
    for (std::size_t i = 0; i < qd; ++i) {
        std::vector<scalar> yi(qd, scalar::zero(ring));
        yi[i] = scalar::one(ring);
        for (std::size_t j = 0; j < qd; ++j) {
            std::vector<scalar> yj(qd, scalar::zero(ring));
            yj[j] = scalar::one(ring);
            sc[i][j] = reduce((lift(yi) * lift(yj)).coords());
        }
    }
    unit_y = reduce(a->one_coords());
    algebra_ptr quo = algebra::make(ring, sc, unit_y);

    scalar_matrix proj(ring, qd, a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i) {
        auto y = reduce(element::basis(a, i).coords());
        for (std::size_t t = 0; t < qd; ++t) proj.at(t, i) = y[t];
    }
    return {quo, algebra_hom::make(a, quo, proj)};
}

} // namespace mathieu
