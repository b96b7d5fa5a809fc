#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"

namespace mathieu {

/// Dense row-major matrix of scalars sharing one base ring. Zero rows and
/// even zero-by-n shapes are legal; canonical forms drop zero rows.
class scalar_matrix {
public:
    scalar_matrix(ring_spec ring, std::size_t rows, std::size_t cols)
        : ring_(std::move(ring)), rows_(rows), cols_(cols),
          entries_(rows * cols, scalar::zero(ring_)) {}

    static scalar_matrix from_rows(const ring_spec& ring,
                                   const std::vector<std::vector<scalar>>& rows,
                                   std::size_t cols) {
        scalar_matrix m(ring, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            require(rows[i].size() == cols, errc::dimension_mismatch,
                    "from_rows: ragged row");
            for (std::size_t j = 0; j < cols; ++j) {
                require_same_ring(rows[i][j].ring(), ring);
                m.at(i, j) = rows[i][j];
            }
        }
        return m;
    }

    static scalar_matrix identity(const ring_spec& ring, std::size_t n) {
        scalar_matrix m(ring, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = scalar::one(ring);
        return m;
    }

    [[nodiscard]] const ring_spec& ring() const { return ring_; }
    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    scalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    [[nodiscard]] const scalar& at(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    [[nodiscard]] std::vector<scalar> row(std::size_t r) const {
        return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    void set_row(std::size_t r, const std::vector<scalar>& v) {
        for (std::size_t j = 0; j < cols_; ++j) at(r, j) = v[j];
    }

    [[nodiscard]] bool row_is_zero(std::size_t r) const {
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(r, j).is_zero()) return false;
        return true;
    }

    /// Rows of `other` appended below the rows of *this.
    [[nodiscard]] scalar_matrix stacked(const scalar_matrix& other) const {
        require(cols_ == other.cols_ && ring_ == other.ring_, errc::dimension_mismatch,
                "stacked: incompatible shapes");
        scalar_matrix m(ring_, rows_ + other.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < other.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = other.at(i, j);
        return m;
    }

    bool operator==(const scalar_matrix& o) const {
        return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ &&
               entries_ == o.entries_;
    }
    bool operator!=(const scalar_matrix& o) const { return !(*this == o); }

    [[nodiscard]] std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < cols_; ++j)
                s += (j ? "," : "") + at(i, j).to_string();
        }
        return s + "]";
    }

private:
    ring_spec ring_;
    std::size_t rows_, cols_;
    std::vector<scalar> entries_;
};

namespace detail {

inline std::vector<scalar> scaled_row(const std::vector<scalar>& v, const scalar& c) {
    std::vector<scalar> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x * c);
    return out;
}

inline void add_scaled(std::vector<scalar>& v, const std::vector<scalar>& w, const scalar& c) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += w[j] * c;
}

inline bool vec_is_zero(const std::vector<scalar>& v) {
    return std::all_of(v.begin(), v.end(), [](const scalar& x) { return x.is_zero(); });
}

/// Unit u of Z/nZ with u*x = gcd(x, n) (canonical pivot normalizer).
inline bigint normalizing_unit(const bigint& x, const bigint& n) {
    bigint g = gcd(x, n);
    bigint xr = x / g;
    bigint m = n / g;
    bigint u = mod_inverse(xr % m, m);
    while (gcd(u, n) != 1) u += m;
    return u % n;
}

/// Working state for elimination: matrix rows paired with transform rows so
/// that every working row stays an explicit combination of the input rows.
struct work_rows {
    std::vector<std::vector<scalar>> mat;   // length cols
    std::vector<std::vector<scalar>> trans; // length = input row count
};

inline void eliminate_field(work_rows& w, std::size_t cols) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < w.mat.size(); ++col) {
        std::size_t sel = w.mat.size();
        for (std::size_t r = pivot_row; r < w.mat.size(); ++r)
            if (!w.mat[r][col].is_zero()) { sel = r; break; }
        if (sel == w.mat.size()) continue;
        std::swap(w.mat[sel], w.mat[pivot_row]);
        std::swap(w.trans[sel], w.trans[pivot_row]);
        scalar inv = *w.mat[pivot_row][col].inverse();
        w.mat[pivot_row] = scaled_row(w.mat[pivot_row], inv);
        w.trans[pivot_row] = scaled_row(w.trans[pivot_row], inv);
        for (std::size_t r = 0; r < w.mat.size(); ++r) {
            if (r == pivot_row || w.mat[r][col].is_zero()) continue;
            scalar c = -w.mat[r][col];
            add_scaled(w.mat[r], w.mat[pivot_row], c);
            add_scaled(w.trans[r], w.trans[pivot_row], c);
        }
        ++pivot_row;
    }
}

inline void echelon_modular(work_rows& w, std::size_t cols, const ring_spec& ring) {
    const bigint& n = ring.modulus();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < w.mat.size(); ++col) {
        std::size_t sel = w.mat.size();
        for (std::size_t r = pivot_row; r < w.mat.size(); ++r)
            if (!w.mat[r][col].is_zero()) { sel = r; break; }
        if (sel == w.mat.size()) continue;
        std::swap(w.mat[sel], w.mat[pivot_row]);
        std::swap(w.trans[sel], w.trans[pivot_row]);
        for (std::size_t r = pivot_row + 1; r < w.mat.size(); ++r) {
            if (w.mat[r][col].is_zero()) continue;
            bigint a = w.mat[pivot_row][col].residue();
            bigint b = w.mat[r][col].residue();
            auto [g, s, t] = xgcd(a, b);
            scalar sa(ring, s), sb(ring, t);
            scalar qa(ring, b / g), qb(ring, a / g);
            auto new_p = scaled_row(w.mat[pivot_row], sa);
            add_scaled(new_p, w.mat[r], sb);
            auto new_pt = scaled_row(w.trans[pivot_row], sa);
            add_scaled(new_pt, w.trans[r], sb);
            auto new_r = scaled_row(w.mat[pivot_row], qa);
            add_scaled(new_r, w.mat[r], -qb);
            auto new_rt = scaled_row(w.trans[pivot_row], qa);
            add_scaled(new_rt, w.trans[r], -qb);
            w.mat[pivot_row] = std::move(new_p);
            w.trans[pivot_row] = std::move(new_pt);
            w.mat[r] = std::move(new_r);
            w.trans[r] = std::move(new_rt);
        }
        // pivot := gcd of the column entries and n, via a unit scale
        bigint x = w.mat[pivot_row][col].residue();
        bigint u = normalizing_unit(x, n);
        scalar su(ring, u);
        w.mat[pivot_row] = scaled_row(w.mat[pivot_row], su);
        w.trans[pivot_row] = scaled_row(w.trans[pivot_row], su);
        ++pivot_row;
    }
}

/// Greedy reduction of v against echelon rows; returns true when v reduces
/// to zero. Valid as a membership test only on a full Howell form.
inline bool reduces_to_zero(const std::vector<std::vector<scalar>>& rows,
                            const std::vector<std::size_t>& pivot_cols,
                            std::vector<scalar> v, const ring_spec& ring) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t j = pivot_cols[i];
        if (v[j].is_zero()) continue;
        if (ring.is_field()) {
            scalar q = -v[j];
            add_scaled(v, rows[i], q);
        } else {
            const bigint& g = rows[i][j].residue();
            if (v[j].residue() % g != 0) return false;
            scalar q(ring, -(v[j].residue() / g));
            add_scaled(v, rows[i], q);
        }
    }
    return vec_is_zero(v);
}

} // namespace detail

/// Canonical form plus the transform expressing each canonical row as a
/// combination of the input rows, and the kernel of "combine the input
/// rows": rows z with z * input = 0 (complete over fields and over Z/nZ).
struct canonical_data {
    scalar_matrix form;                        // canonical, zero rows dropped
    std::vector<std::vector<scalar>> transform; // form.rows() x input.rows()
    std::vector<std::size_t> pivot_cols;       // per form row
};

/// Unique canonical representative of the row span: reduced row echelon form
/// over fields, Howell normal form over Z/nZ. Span equality of two matrices
/// is equality of their canonical forms.
inline canonical_data canonical_form_with_transform(const scalar_matrix& m) {
    const ring_spec& ring = m.ring();
    const std::size_t cols = m.cols();

    detail::work_rows w;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        w.mat.push_back(m.row(i));
        std::vector<scalar> t(m.rows(), scalar::zero(ring));
        t[i] = scalar::one(ring);
        w.trans.push_back(std::move(t));
    }

    auto collect = [&](detail::work_rows& rows) {
        // drop zero rows, keep order
        detail::work_rows out;
        for (std::size_t i = 0; i < rows.mat.size(); ++i) {
            if (!detail::vec_is_zero(rows.mat[i])) {
                out.mat.push_back(rows.mat[i]);
                out.trans.push_back(rows.trans[i]);
            }
        }
        return out;
    };

    if (ring.is_field()) {
        detail::eliminate_field(w, cols);
        w = collect(w);
    } else {
        const bigint& n = ring.modulus();
        detail::echelon_modular(w, cols, ring);
        w = collect(w);
        // Howell closure: the annihilator shift (n/g) * row must lie in the
        // span of the later rows; append and re-eliminate until stable.
        for (int guard = 0;; ++guard) {
            require(guard < 256, errc::solve_failed, "howell: no fixpoint");
            std::vector<std::size_t> pcols;
            for (const auto& r : w.mat) {
                std::size_t j = 0;
                while (j < cols && r[j].is_zero()) ++j;
                pcols.push_back(j);
            }
            bool grew = false;
            std::size_t row_count = w.mat.size();
            for (std::size_t i = 0; i < row_count; ++i) {
                const bigint& g = w.mat[i][pcols[i]].residue();
                if (g == 0) continue;
                scalar k(ring, n / g);
                auto shift = detail::scaled_row(w.mat[i], k);
                if (detail::vec_is_zero(shift)) continue;
                if (detail::reduces_to_zero(w.mat, pcols, shift, ring)) continue;
                w.mat.push_back(shift);
                w.trans.push_back(detail::scaled_row(w.trans[i], k));
                grew = true;
            }
            if (!grew) break;
            detail::echelon_modular(w, cols, ring);
            w = collect(w);
        }
        // reduce entries above each pivot into [0, pivot)
        std::vector<std::size_t> pcols;
        for (const auto& r : w.mat) {
            std::size_t j = 0;
            while (j < cols && r[j].is_zero()) ++j;
            pcols.push_back(j);
        }
        for (std::size_t i = 0; i < w.mat.size(); ++i) {
            const bigint& g = w.mat[i][pcols[i]].residue();
            for (std::size_t k = 0; k < i; ++k) {
                const bigint& above = w.mat[k][pcols[i]].residue();
                if (above == 0) continue;
                scalar q(ring, -(above / g));
                detail::add_scaled(w.mat[k], w.mat[i], q);
                detail::add_scaled(w.trans[k], w.trans[i], q);
            }
        }
    }

    canonical_data out{scalar_matrix(ring, w.mat.size(), cols), {}, {}};
    for (std::size_t i = 0; i < w.mat.size(); ++i) {
        out.form.set_row(i, w.mat[i]);
        out.transform.push_back(w.trans[i]);
        std::size_t j = 0;
        while (j < cols && w.mat[i][j].is_zero()) ++j;
        out.pivot_cols.push_back(j);
    }
    return out;
}

inline scalar_matrix canonical_form(const scalar_matrix& m) {
    return canonical_form_with_transform(m).form;
}

/// Coefficients c with c * rows = target, if target lies in the row span.
/// The returned coefficients refer to the original rows.
inline std::optional<std::vector<scalar>> solve_membership(
    const scalar_matrix& rows, const std::vector<scalar>& target) {
    require(target.size() == rows.cols(), errc::dimension_mismatch,
            "solve_membership: target length != column count");
    for (const auto& t : target) require_same_ring(t.ring(), rows.ring());

    const ring_spec& ring = rows.ring();
    auto canon = canonical_form_with_transform(rows);

    std::vector<scalar> v = target;
    std::vector<scalar> coef(canon.form.rows(), scalar::zero(ring));
    for (std::size_t i = 0; i < canon.form.rows(); ++i) {
        std::size_t j = canon.pivot_cols[i];
        if (v[j].is_zero()) continue;
        scalar q = scalar::zero(ring);
        if (ring.is_field()) {
            q = v[j]; // pivots are 1 in rref
        } else {
            const bigint& g = canon.form.at(i, j).residue();
            if (v[j].residue() % g != 0) return std::nullopt;
            q = scalar(ring, v[j].residue() / g);
        }
        coef[i] = q;
        auto r = canon.form.row(i);
        detail::add_scaled(v, r, -q);
    }
    if (!detail::vec_is_zero(v)) return std::nullopt;

    std::vector<scalar> c(rows.rows(), scalar::zero(ring));
    for (std::size_t i = 0; i < coef.size(); ++i)
        if (!coef[i].is_zero())
            detail::add_scaled(c, canon.transform[i], coef[i]);

    // paranoia: the certificate must multiply back exactly
    std::vector<scalar> check(rows.cols(), scalar::zero(ring));
    for (std::size_t i = 0; i < rows.rows(); ++i)
        if (!c[i].is_zero())
            detail::add_scaled(check, rows.row(i), c[i]);
    require(check == target, errc::solve_failed, "solve_membership: bad certificate");
    return c;
}

/// Canonical basis of the left kernel {z : z * m = 0}. Complete over Z/nZ
/// because the Howell form of [m | I] captures every span element vanishing
/// on the m-part.
inline scalar_matrix row_kernel(const scalar_matrix& m) {
    const ring_spec& ring = m.ring();
    std::size_t k = m.rows(), c = m.cols();
    scalar_matrix aug(ring, k, c + k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < c; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, c + i) = scalar::one(ring);
    }
    scalar_matrix h = canonical_form(aug);
    std::vector<std::vector<scalar>> gens;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool zero_left = true;
        for (std::size_t j = 0; j < c && zero_left; ++j)
            if (!h.at(i, j).is_zero()) zero_left = false;
        if (!zero_left) continue;
        std::vector<scalar> z;
        z.reserve(k);
        for (std::size_t j = 0; j < k; ++j) z.push_back(h.at(i, c + j));
        gens.push_back(std::move(z));
    }
    return canonical_form(scalar_matrix::from_rows(ring, gens, k));
}

} // namespace mathieu
