#pragma once

#include <cstdint>
#include <vector>

#include "subspace.hpp"

namespace mathieu {

/// Explicit element set of a subspace, indexed by enumeration order.
class element_bitset {
public:
    explicit element_bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    [[nodiscard]] bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    [[nodiscard]] std::size_t size() const { return n_; }

    [[nodiscard]] std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool operator==(const element_bitset& o) const { return words_ == o.words_; }

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

/// Fully tabulated finite algebra: every element enumerated, products and
/// sums precomputed, and the eventually periodic power sequence of every
/// element recorded. This is the substrate for the exhaustive brute-force
/// oracles; beyond the index arithmetic it only ever consults the tables.
class finite_algebra_table {
public:
    static finite_algebra_table build(const algebra_ptr& alg, const budget& b = {}) {
        require(alg->ring().is_finite(), errc::infinite_ring,
                "finite_algebra_table: base ring is infinite");
        auto n = element_count(alg, b.max_table_elements);
        require(n.has_value(), errc::too_large,
                "finite_algebra_table: table budget exceeded (raise max_table_elements)");
        finite_algebra_table t;
        t.alg_ = alg;
        t.dim_ = alg->dim();
        t.q_ = alg->ring().is_finite() ? alg->ring().modulus().convert_to<std::size_t>() : 0;
        t.size_ = *n;

        const std::size_t d = t.dim_;
        const std::size_t q = t.q_;
        const auto nmod = static_cast<std::uint64_t>(q);

        // structure constants and digits as machine ints
        std::vector<std::uint64_t> sc(d * d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    sc[(i * d + j) * d + k] =
                        alg->c(i, j, k).residue().convert_to<std::uint64_t>();

        std::vector<std::uint32_t> digits(t.size_ * d);
        for (std::size_t idx = 0; idx < t.size_; ++idx) {
            std::size_t rest = idx;
            for (std::size_t i = d; i-- > 0;) {
                digits[idx * d + i] = static_cast<std::uint32_t>(rest % q);
                rest /= q;
            }
        }

        auto index_of_digits = [&](const std::vector<std::uint64_t>& c) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < d; ++i) idx = idx * q + static_cast<std::size_t>(c[i]);
            return idx;
        };

        t.mul_.resize(t.size_ * t.size_);
        t.add_.resize(t.size_ * t.size_);
        std::vector<std::uint64_t> acc(d);
        for (std::size_t x = 0; x < t.size_; ++x) {
            const std::uint32_t* xd = &digits[x * d];
            for (std::size_t y = 0; y < t.size_; ++y) {
                const std::uint32_t* yd = &digits[y * d];
                std::fill(acc.begin(), acc.end(), 0);
                for (std::size_t i = 0; i < d; ++i) {
                    if (xd[i] == 0) continue;
                    for (std::size_t j = 0; j < d; ++j) {
                        if (yd[j] == 0) continue;
                        std::uint64_t w = (std::uint64_t(xd[i]) * yd[j]) % nmod;
                        if (w == 0) continue;
                        const std::uint64_t* c = &sc[(i * d + j) * d];
                        for (std::size_t k = 0; k < d; ++k)
                            acc[k] = (acc[k] + w * c[k]) % nmod;
                    }
                }
                t.mul_[x * t.size_ + y] = static_cast<std::uint32_t>(index_of_digits(acc));
                for (std::size_t k = 0; k < d; ++k) acc[k] = (std::uint64_t(xd[k]) + yd[k]) % nmod;
                t.add_[x * t.size_ + y] = static_cast<std::uint32_t>(index_of_digits(acc));
            }
        }

        {
            std::vector<std::uint64_t> onec(d);
            for (std::size_t i = 0; i < d; ++i)
                onec[i] = alg->one_coords()[i].residue().convert_to<std::uint64_t>();
            t.one_ = index_of_digits(onec);
        }

        // power cycles by direct tabulation: first repeated index closes it
        t.cyc_.resize(t.size_);
        std::vector<std::int64_t> seen(t.size_, -1);
        std::vector<std::uint32_t> touched;
        for (std::size_t a = 0; a < t.size_; ++a) {
            touched.clear();
            std::uint32_t cur = static_cast<std::uint32_t>(a);
            std::size_t m = 1;
            std::size_t off = t.pow_.size();
            for (;;) {
                if (seen[cur] >= 0) {
                    std::size_t rho = static_cast<std::size_t>(seen[cur]);
                    t.cyc_[a] = {static_cast<std::uint32_t>(rho),
                                 static_cast<std::uint32_t>(m - rho),
                                 static_cast<std::uint32_t>(off),
                                 static_cast<std::uint32_t>(m - 1)};
                    break;
                }
                seen[cur] = static_cast<std::int64_t>(m);
                touched.push_back(cur);
                t.pow_.push_back(cur);
                cur = t.mul_[cur * t.size_ + a];
                ++m;
            }
            for (auto i : touched) seen[i] = -1;
        }
        return t;
    }

    [[nodiscard]] const algebra_ptr& alg() const { return alg_; }
    [[nodiscard]] std::size_t size() const { return size_; }
    [[nodiscard]] std::size_t one_index() const { return one_; }

    [[nodiscard]] std::uint32_t mul(std::size_t x, std::size_t y) const {
        return mul_[x * size_ + y];
    }
    [[nodiscard]] std::uint32_t add(std::size_t x, std::size_t y) const {
        return add_[x * size_ + y];
    }

    [[nodiscard]] std::size_t preperiod(std::size_t a) const { return cyc_[a].rho; }
    [[nodiscard]] std::size_t period(std::size_t a) const { return cyc_[a].pi; }

    /// a^m for m >= 1, folded into the cycle.
    [[nodiscard]] std::uint32_t power(std::size_t a, std::size_t m) const {
        const auto& c = cyc_[a];
        if (m <= c.len) return pow_[c.off + m - 1];
        std::size_t folded = c.rho + (m - c.rho) % c.pi;
        return pow_[c.off + folded - 1];
    }

    /// All powers a^1 ... a^{rho+pi-1} lie in the set.
    [[nodiscard]] bool all_powers_in(std::size_t a, const element_bitset& s) const {
        const auto& c = cyc_[a];
        for (std::size_t i = 0; i < c.len; ++i)
            if (!s.test(pow_[c.off + i])) return false;
        return true;
    }

    /// The cycle part a^rho ... a^{rho+pi-1} lies in the set (radical test).
    [[nodiscard]] bool tail_powers_in(std::size_t a, const element_bitset& s) const {
        const auto& c = cyc_[a];
        for (std::size_t i = c.rho - 1; i < c.len; ++i)
            if (!s.test(pow_[c.off + i])) return false;
        return true;
    }

    [[nodiscard]] element element_of(std::size_t idx) const { return element_at(alg_, idx); }

    [[nodiscard]] std::size_t index_of(const element& x) const {
        require_same_algebra(x.alg(), alg_);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < dim_; ++i)
            idx = idx * q_ + x.coords()[i].residue().convert_to<std::size_t>();
        return idx;
    }

    /// Element set of a subspace: all |R|^rank coefficient combinations of
    /// the basis rows, evaluated with table sums and digit scaling only.
    [[nodiscard]] element_bitset bits_of(const subspace& v) const {
        require_same_algebra(v.alg(), alg_);
        element_bitset out(size_);
        const std::size_t k = v.rank();
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < k; ++i) rows.push_back(index_of(v.basis_element(i)));
        std::vector<std::size_t> digitv(k, 0);
        for (;;) {
            std::size_t acc = 0; // zero element has index 0
            for (std::size_t i = 0; i < k; ++i)
                if (digitv[i] != 0) acc = add_[acc * size_ + scale(digitv[i], rows[i])];
            out.set(acc);
            std::size_t pos = k;
            while (pos > 0 && digitv[pos - 1] + 1 == q_) digitv[--pos] = 0;
            if (pos == 0) break;
            ++digitv[pos - 1];
        }
        return out;
    }

    /// r * x by repeated table addition (r is a residue).
    [[nodiscard]] std::size_t scale(std::size_t r, std::size_t x) const {
        std::size_t acc = 0;
        std::size_t base = x;
        while (r > 0) {
            if (r & 1) acc = add_[acc * size_ + base];
            base = add_[base * size_ + base];
            r >>= 1;
        }
        return acc;
    }

private:
    struct cycle_rec {
        std::uint32_t rho = 0, pi = 0, off = 0, len = 0;
    };

    algebra_ptr alg_;
    std::size_t dim_ = 0, q_ = 0, size_ = 0, one_ = 0;
    std::vector<std::uint32_t> mul_, add_, pow_;
    std::vector<cycle_rec> cyc_;
};

} // namespace mathieu
