#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"

namespace mathieu {

/// The totally ordered abelian value groups handled here: Z, lexicographic
/// Z^k with coordinate 1 most significant, and Z[t] ordered by the sign of
/// the leading coefficient of a difference.
enum class group_family { integers, lex_powers, int_polynomials };

class ordered_group_spec {
public:
    static ordered_group_spec integers() { return {group_family::integers, 1}; }
    static ordered_group_spec lex_powers(std::size_t k) {
        require(k >= 1, errc::bad_parameter, "lex_powers: rank must be >= 1");
        return {group_family::lex_powers, k};
    }
    static ordered_group_spec int_polynomials() {
        return {group_family::int_polynomials, 0};
    }

    [[nodiscard]] group_family family() const { return family_; }
    [[nodiscard]] std::size_t rank() const { return rank_; }

    bool operator==(const ordered_group_spec& o) const {
        return family_ == o.family_ && rank_ == o.rank_;
    }
    bool operator!=(const ordered_group_spec& o) const { return !(*this == o); }

    [[nodiscard]] std::string to_string() const {
        switch (family_) {
        case group_family::integers: return "Z";
        case group_family::lex_powers: return "lex Z^" + std::to_string(rank_);
        case group_family::int_polynomials: return "Z[t]";
        }
        return "?";
    }

private:
    ordered_group_spec(group_family f, std::size_t k) : family_(f), rank_(k) {}
    group_family family_;
    std::size_t rank_;
};

/// Element of a value group. For lex Z^k the coefficients are the k
/// coordinates (coordinate 1 first and most significant); for Z[t] they are
/// ascending polynomial coefficients with trailing zeros trimmed.
class group_element {
public:
    group_element(ordered_group_spec spec, std::vector<bigint> coeffs)
        : spec_(std::move(spec)), coeffs_(std::move(coeffs)) {
        switch (spec_.family()) {
        case group_family::integers:
            require(coeffs_.size() == 1, errc::bad_parameter, "integers: one coordinate");
            break;
        case group_family::lex_powers:
            require(coeffs_.size() == spec_.rank(), errc::bad_parameter,
                    "lex_powers: coordinate count != rank");
            break;
        case group_family::int_polynomials:
            while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
            break;
        }
    }

    static group_element zero(const ordered_group_spec& spec) {
        switch (spec.family()) {
        case group_family::integers: return {spec, {bigint(0)}};
        case group_family::lex_powers:
            return {spec, std::vector<bigint>(spec.rank(), bigint(0))};
        case group_family::int_polynomials: return {spec, {}};
        }
        fail(errc::bad_parameter, "zero: unknown family");
    }

    [[nodiscard]] const ordered_group_spec& spec() const { return spec_; }
    [[nodiscard]] const std::vector<bigint>& coeffs() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    group_element operator+(const group_element& o) const {
        require(spec_ == o.spec_, errc::spec_mismatch, "group elements from different groups");
        std::vector<bigint> out(std::max(coeffs_.size(), o.coeffs_.size()), bigint(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < coeffs_.size()) out[i] += coeffs_[i];
            if (i < o.coeffs_.size()) out[i] += o.coeffs_[i];
        }
        return {spec_, std::move(out)};
    }

    group_element operator-(const group_element& o) const {
        require(spec_ == o.spec_, errc::spec_mismatch, "group elements from different groups");
        std::vector<bigint> out(std::max(coeffs_.size(), o.coeffs_.size()), bigint(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < coeffs_.size()) out[i] += coeffs_[i];
            if (i < o.coeffs_.size()) out[i] -= o.coeffs_[i];
        }
        return {spec_, std::move(out)};
    }

    [[nodiscard]] group_element times(const bigint& n) const {
        std::vector<bigint> out = coeffs_;
        for (auto& c : out) c *= n;
        return {spec_, std::move(out)};
    }

    bool operator==(const group_element& o) const {
        return spec_ == o.spec_ && (*this - o).is_zero();
    }
    bool operator!=(const group_element& o) const { return !(*this == o); }

    [[nodiscard]] std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            s += (i ? "," : "") + coeffs_[i].str();
        return s + ")";
    }

private:
    ordered_group_spec spec_;
    std::vector<bigint> coeffs_;
};

enum class group_order { less, equal, greater };

/// Total order of the group. Integers: usual. Lex powers: coordinate 1
/// decides first. Z[t]: the sign of the leading coefficient of g - h.
inline group_order group_compare(const group_element& g, const group_element& h) {
    require(g.spec() == h.spec(), errc::spec_mismatch, "group_compare: spec mismatch");
    group_element d = g - h;
    switch (g.spec().family()) {
    case group_family::integers:
    case group_family::lex_powers:
        for (const auto& c : d.coeffs()) {
            if (c > 0) return group_order::greater;
            if (c < 0) return group_order::less;
        }
        return group_order::equal;
    case group_family::int_polynomials: {
        if (d.coeffs().empty()) return group_order::equal;
        return d.coeffs().back() > 0 ? group_order::greater : group_order::less;
    }
    }
    return group_order::equal;
}

inline bool group_gt(const group_element& g, const group_element& h) {
    return group_compare(g, h) == group_order::greater;
}
inline bool group_ge(const group_element& g, const group_element& h) {
    return group_compare(g, h) != group_order::less;
}

struct domination_report {
    bool dominating = false;
    // when not dominating: an h with n*g <= h for every n >= 1
    std::optional<group_element> witness;
};

/// Whether g dominates the group: for every h some multiple n*g exceeds h.
/// Integers and lex Z^k have dominating elements (positive leading
/// coordinate); Z[t] has none, because some higher-degree polynomial with
/// positive leading coefficient beats every n*g.
inline domination_report is_dominating(const group_element& g) {
    const auto& spec = g.spec();
    group_element zero = group_element::zero(spec);
    switch (spec.family()) {
    case group_family::integers:
        if (g.coeffs()[0] > 0) return {true, std::nullopt};
        return {false, zero};
    case group_family::lex_powers:
        if (g.coeffs()[0] > 0) return {true, std::nullopt};
        if (group_compare(g, zero) != group_order::greater) return {false, zero};
        {
            std::vector<bigint> w(spec.rank(), bigint(0));
            w[0] = 1;
            return {false, group_element(spec, std::move(w))};
        }
    case group_family::int_polynomials: {
        if (group_compare(g, zero) != group_order::greater) return {false, zero};
        std::vector<bigint> w(g.coeffs().size() + 1, bigint(0));
        w.back() = 1; // t^{deg g + 1}
        return {false, group_element(spec, std::move(w))};
    }
    }
    fail(errc::bad_parameter, "is_dominating: unknown family");
}

/// Whether the valuation domain with this value group is strongly simple:
/// exactly when no dominating element exists.
inline bool strongly_simple_verdict(const ordered_group_spec& spec) {
    switch (spec.family()) {
    case group_family::integers: return false;        // g = 1 dominates
    case group_family::lex_powers: return false;      // (1, 0, ..., 0) dominates
    case group_family::int_polynomials: return true;  // every n*g is bounded by t^{deg g + 1}
    }
    fail(errc::bad_parameter, "strongly_simple_verdict: unknown family");
}

struct anti_archimedean_report {
    bool anti_archimedean = false;
    std::optional<group_element> bound; // an h with h >= n*g for all n >= 1
};

/// Value-level anti-Archimedean test for a ring-element value g >= 0: some
/// h bounds every multiple n*g.
inline anti_archimedean_report is_anti_archimedean(const group_element& g) {
    const auto& spec = g.spec();
    group_element zero = group_element::zero(spec);
    require(group_ge(g, zero), errc::negative_value,
            "is_anti_archimedean: g must be a nonnegative value");
    if (g.is_zero()) return {true, zero};
    switch (spec.family()) {
    case group_family::integers:
        return {false, std::nullopt};
    case group_family::lex_powers: {
        if (g.coeffs()[0] != 0) return {false, std::nullopt};
        std::vector<bigint> w(spec.rank(), bigint(0));
        w[0] = 1;
        return {true, group_element(spec, std::move(w))};
    }
    case group_family::int_polynomials: {
        std::vector<bigint> w(g.coeffs().size() + 1, bigint(0));
        w.back() = 1; // t^{deg g + 1}
        return {true, group_element(spec, std::move(w))};
    }
    }
    fail(errc::bad_parameter, "is_anti_archimedean: unknown family");
}

/// Value of the monomial x_1^{a_1} ... x_n^{a_n} in the worked valuation
/// example: v = a_n t^{n-1} + ... + a_2 t + a_1, i.e. ascending coefficients
/// (a_1, ..., a_n) in Z[t].
inline group_element example_value(const std::vector<bigint>& exponents) {
    return {ordered_group_spec::int_polynomials(), exponents};
}

} // namespace mathieu
