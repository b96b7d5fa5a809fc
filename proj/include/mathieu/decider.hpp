#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "radical.hpp"
#include "table.hpp"

namespace mathieu {

struct bad_idempotent {
    element e; // e^2 = e, e in V, (e)_theta not contained in V
};

struct bad_tail {
    element a, b, c; // full power tail of a in V, C_theta(b,c), b a^m c escapes V
    std::size_t m;   // one escaping exponent inside the cycle window
};

using counter_witness = std::variant<bad_idempotent, bad_tail>;

enum class mathieu_method { idempotent_criterion, brute_force };
enum class strong_method { direct, radical_equality };

/// Quantifier shape of the brute-force scan: Def-style "a^m in M for all
/// m >= 1", or radical-style "a in r(M)". The two are equivalent for the
/// verdict; both are kept so the equivalence itself can be tested.
enum class radical_filter { all_powers, radical };

struct budgets_consumed {
    std::uint64_t steps = 0;
    std::uint64_t elements_scanned = 0;
};

struct mathieu_verdict {
    subspace subject;
    mathieu_variant variant;
    bool is_ideal = false;
    bool is_mathieu = false;
    bool is_strong_mathieu = false;
    mathieu_method method = mathieu_method::idempotent_criterion;
    std::optional<counter_witness> witness;
    budgets_consumed consumed;
};

struct strong_verdict {
    bool is_strong = false;
    strong_method method = strong_method::direct;
    std::optional<element> witness; // an a in r(M) with no (a^N)_theta inside M
    budgets_consumed consumed;
};

// ---------------------------------------------------------------------------
// Idempotent enumeration
// ---------------------------------------------------------------------------

/// All e with e^2 = e in the algebra, or inside a subspace, by exhaustive
/// scan in enumeration order.
inline std::vector<element> enumerate_idempotents(const algebra_ptr& alg,
                                                  const std::optional<subspace>& restrict_to = {},
                                                  const budget& b = {}) {
    require(alg->ring().is_finite(), errc::infinite_ring,
            "enumerate_idempotents: base ring is infinite");
    std::vector<element> out;
    if (!restrict_to) {
        for (const auto& x : enumerate_elements(alg, b))
            if (x * x == x) out.push_back(x);
        return out;
    }
    require_same_algebra(restrict_to->alg(), alg);
    std::map<std::string, element> seen;
    for (const auto& x : enumerate_subspace_elements(*restrict_to, b))
        if (x * x == x) seen.emplace(detail::coord_key(x.coords()), x);
    // combos repeat over Z/nZ; dedupe, then restore enumeration order
    std::vector<std::pair<std::size_t, element>> ordered;
    for (auto& [k, e] : seen) {
        std::size_t idx = 0;
        std::size_t q = alg->ring().modulus().convert_to<std::size_t>();
        for (std::size_t i = 0; i < alg->dim(); ++i)
            idx = idx * q + e.coords()[i].residue().convert_to<std::size_t>();
        ordered.emplace_back(idx, e);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    for (auto& [i, e] : ordered) out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------
// Mathieu decision
// ---------------------------------------------------------------------------

namespace detail {

inline bool ideal_for_variant(const subspace& v, mathieu_variant var) {
    // Def 1.1 with "m >= 1" everywhere collapses pre-two-sided and two-sided
    // to plain ideals, so those two variants ask for a two-sided ideal.
    switch (var) {
    case mathieu_variant::left: return is_theta_ideal(v, mathieu_variant::left);
    case mathieu_variant::right: return is_theta_ideal(v, mathieu_variant::right);
    case mathieu_variant::pre_two_sided:
    case mathieu_variant::two_sided: return is_theta_ideal(v, mathieu_variant::two_sided);
    }
    return false;
}

/// Runs one (b, c) pair against the cycle window of a.
inline bool tail_products_in(const finite_algebra_table& t, std::size_t a, std::size_t b,
                             std::size_t c, const element_bitset& bits, std::size_t& bad_m,
                             budgets_consumed& used) {
    const std::size_t rho = t.preperiod(a), pi = t.period(a);
    for (std::size_t m = rho; m < rho + pi; ++m) {
        used.steps += 1;
        std::uint32_t x = t.mul(t.mul(b, t.power(a, m)), c);
        if (!bits.test(x)) {
            bad_m = m;
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Exhaustive decision straight from the definition: scan every a whose
/// powers lie in V (or every a in r(V) under the radical filter), then every
/// (b, c) obeying the variant constraint, and follow b a^m c around the
/// cycle. Independent of the canonical-form machinery except for reading V's
/// basis.
inline std::optional<counter_witness> brute_force_obstruction(
    const finite_algebra_table& t, const element_bitset& bits, mathieu_variant var,
    radical_filter filter, budgets_consumed& used) {
    const std::size_t n = t.size();
    const std::size_t one = t.one_index();
    for (std::size_t a = 0; a < n; ++a) {
        used.elements_scanned += 1;
        bool admitted = filter == radical_filter::all_powers ? t.all_powers_in(a, bits)
                                                             : t.tail_powers_in(a, bits);
        if (!admitted) continue;
        std::size_t bad_m = 0;
        auto witness = [&](std::size_t b, std::size_t c) {
            return counter_witness(bad_tail{t.element_of(a), t.element_of(b), t.element_of(c),
                                            bad_m});
        };
        switch (var) {
        case mathieu_variant::left:
            for (std::size_t b = 0; b < n; ++b)
                if (!detail::tail_products_in(t, a, b, one, bits, bad_m, used))
                    return witness(b, one);
            break;
        case mathieu_variant::right:
            for (std::size_t c = 0; c < n; ++c)
                if (!detail::tail_products_in(t, a, one, c, bits, bad_m, used))
                    return witness(one, c);
            break;
        case mathieu_variant::pre_two_sided:
            for (std::size_t b = 0; b < n; ++b)
                if (!detail::tail_products_in(t, a, b, one, bits, bad_m, used))
                    return witness(b, one);
            for (std::size_t c = 0; c < n; ++c)
                if (!detail::tail_products_in(t, a, one, c, bits, bad_m, used))
                    return witness(one, c);
            break;
        case mathieu_variant::two_sided:
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (!detail::tail_products_in(t, a, b, c, bits, bad_m, used))
                        return witness(b, c);
            break;
        }
    }
    return std::nullopt;
}

/// Th 4.2 route: V fails exactly when some idempotent e in V has
/// (e)_theta escaping V.
inline std::optional<counter_witness> idempotent_obstruction(const subspace& v,
                                                             mathieu_variant var,
                                                             const std::vector<element>& idems,
                                                             budgets_consumed& used) {
    for (const auto& e : idems) {
        used.elements_scanned += 1;
        require(e * e == e, errc::precondition_failed, "idempotent_obstruction: e^2 != e");
        if (!v.member(e)) continue;
        if (!v.contains(theta_ideal(e, var))) return counter_witness(bad_idempotent{e});
    }
    return std::nullopt;
}

inline strong_verdict is_strong_mathieu(const subspace& v, mathieu_variant var,
                                        strong_method method, const budget& b = {});

/// Decides theta-Mathieu status over a finite base ring. Witnesses are
/// re-validated before the verdict is emitted, and the strong verdict is
/// computed independently and asserted equal (they coincide in this
/// universe: r' = r and R[a] is theta-friendly for every theta).
inline mathieu_verdict is_mathieu(const subspace& v, mathieu_variant var,
                                  mathieu_method method, const budget& b = {}) {
    require(v.alg()->ring().is_finite(), errc::infinite_ring,
            "is_mathieu: decision over an infinite base ring (use the certificate "
            "predicates instead)");
    mathieu_verdict out{v, var, false, false, false, method, std::nullopt, {}};
    out.is_ideal = detail::ideal_for_variant(v, var);

    if (method == mathieu_method::idempotent_criterion) {
        auto idems = enumerate_idempotents(v.alg(), v, b);
        out.witness = idempotent_obstruction(v, var, idems, out.consumed);
    } else {
        auto t = finite_algebra_table::build(v.alg(), b);
        auto bits = t.bits_of(v);
        out.witness = brute_force_obstruction(t, bits, var, radical_filter::all_powers,
                                              out.consumed);
    }
    out.is_mathieu = !out.witness.has_value();

    // re-validate the witness before emitting it
    if (out.witness) {
        if (auto* w = std::get_if<bad_idempotent>(&*out.witness)) {
            require(w->e * w->e == w->e && v.member(w->e) &&
                        !v.contains(theta_ideal(w->e, var)),
                    errc::solve_failed, "is_mathieu: bad_idempotent witness fails recheck");
        } else {
            auto* w = std::get_if<bad_tail>(&*out.witness);
            auto cyc = power_cycle(w->a, b);
            for (const auto& p : cyc.powers)
                require(v.member(p), errc::solve_failed,
                        "is_mathieu: bad_tail witness power escapes V");
            bool cok = false;
            switch (var) {
            case mathieu_variant::left: cok = w->c.is_one(); break;
            case mathieu_variant::right: cok = w->b.is_one(); break;
            case mathieu_variant::pre_two_sided: cok = w->b.is_one() || w->c.is_one(); break;
            case mathieu_variant::two_sided: cok = true; break;
            }
            require(cok, errc::solve_failed, "is_mathieu: bad_tail witness violates C_theta");
            require(!v.member(w->b * cyc.power(w->m) * w->c), errc::solve_failed,
                    "is_mathieu: bad_tail witness product is in V");
        }
    }

    out.is_strong_mathieu = is_strong_mathieu(v, var, strong_method::direct, b).is_strong;
    require(out.is_strong_mathieu == out.is_mathieu, errc::solve_failed,
            "is_mathieu: Mathieu and strong Mathieu disagree (impossible here)");
    require(!out.is_ideal || out.is_mathieu, errc::solve_failed,
            "is_mathieu: ideal that is not Mathieu (impossible)");
    return out;
}

/// Strong theta-Mathieu decision: either directly (every a in r(M) admits an
/// N with (a^N)_theta inside M, N searched through the cycle window) or via
/// the radical-equality characterization r(M) = r(I_{theta,M}).
inline strong_verdict is_strong_mathieu(const subspace& v, mathieu_variant var,
                                        strong_method method, const budget& b) {
    require(v.alg()->ring().is_finite(), errc::infinite_ring,
            "is_strong_mathieu: decision over an infinite base ring");
    strong_verdict out;
    out.method = method;
    auto t = finite_algebra_table::build(v.alg(), b);
    auto bits = t.bits_of(v);

    if (method == strong_method::direct) {
        subspace full = subspace::full(v.alg());
        for (std::size_t a = 0; a < t.size(); ++a) {
            out.consumed.elements_scanned += 1;
            if (!t.tail_powers_in(a, bits)) continue;
            bool found = false;
            std::size_t window = t.preperiod(a) + t.period(a);
            for (std::size_t n = 0; n < window && !found; ++n) {
                out.consumed.steps += 1;
                if (n == 0) {
                    found = v.equals(full); // (a^0)_theta = (1)_theta = A
                } else {
                    element an = t.element_of(t.power(a, n));
                    found = v.contains(theta_ideal(an, var));
                }
            }
            if (!found) {
                out.is_strong = false;
                out.witness = t.element_of(a);
                return out;
            }
        }
        out.is_strong = true;
        return out;
    }

    subspace ideal = largest_theta_ideal(v, var);
    auto ibits = t.bits_of(ideal);
    for (std::size_t a = 0; a < t.size(); ++a) {
        out.consumed.elements_scanned += 1;
        bool in_rv = t.tail_powers_in(a, bits);
        bool in_ri = t.tail_powers_in(a, ibits);
        if (in_rv != in_ri) {
            out.is_strong = false;
            out.witness = t.element_of(a);
            return out;
        }
    }
    out.is_strong = true;
    return out;
}

// ---------------------------------------------------------------------------
// Derived classifications
// ---------------------------------------------------------------------------

/// Th 4.10 second part: every subspace sandwiched between I_{theta,M} and a
/// strong Mathieu M is strong Mathieu with the same radical as I.
inline bool sandwich_check(const subspace& m, mathieu_variant var, const budget& b = {}) {
    require(is_strong_mathieu(m, var, strong_method::direct, b).is_strong,
            errc::precondition_failed, "sandwich_check: M is not strong Mathieu");
    subspace ideal = largest_theta_ideal(m, var);
    auto t = finite_algebra_table::build(m.alg(), b);
    auto ibits = t.bits_of(ideal);
    for (const auto& v : enumerate_subspaces(m.alg(), b)) {
        if (!v.contains(ideal) || !m.contains(v)) continue;
        if (!is_strong_mathieu(v, var, strong_method::direct, b).is_strong) return false;
        auto vbits = t.bits_of(v);
        for (std::size_t a = 0; a < t.size(); ++a)
            if (t.tail_powers_in(a, vbits) != t.tail_powers_in(a, ibits)) return false;
    }
    return true;
}

/// The four statements of the cyclic-subspace chain for Ra, evaluated
/// independently; the implication chain 1 => 2 => 3 => 4 is asserted.
struct cyclic_classification {
    bool generates_its_ideal_or_no_semi_idempotent = false; // (1)
    bool strong_mathieu = false;                            // (2)
    bool mathieu = false;                                   // (3)
    bool ideal_or_not_quasi_idempotent = false;             // (4)
};

inline cyclic_classification classify_cyclic(const element& a, mathieu_variant var,
                                             const budget& b = {}) {
    require(!a.is_zero(), errc::precondition_failed, "classify_cyclic: a must be nonzero");
    const auto& alg = a.alg();
    subspace ra = subspace::span(alg, {a});

    cyclic_classification out;

    bool generates = ra.equals(theta_ideal(a, var));
    bool no_semi = true;
    for (const auto& x : enumerate_elements(alg, b)) {
        if (x.is_zero()) continue;
        if (!idempotent_predicates(x, b).semi_idempotent) continue;
        if (is_in_radical(x, ra, b)) {
            no_semi = false;
            break;
        }
    }
    out.generates_its_ideal_or_no_semi_idempotent = generates || no_semi;
    out.strong_mathieu = is_strong_mathieu(ra, var, strong_method::direct, b).is_strong;
    out.mathieu = is_mathieu(ra, var, mathieu_method::idempotent_criterion, b).is_mathieu;
    bool quasi = idempotent_predicates(a, b).quasi_idempotent;
    out.ideal_or_not_quasi_idempotent = is_theta_ideal(ra, var) || !quasi;

    require(!out.generates_its_ideal_or_no_semi_idempotent || out.strong_mathieu,
            errc::solve_failed, "classify_cyclic: 1 => 2 fails");
    require(!out.strong_mathieu || out.mathieu, errc::solve_failed,
            "classify_cyclic: 2 => 3 fails");
    require(!out.mathieu || out.ideal_or_not_quasi_idempotent, errc::solve_failed,
            "classify_cyclic: 3 => 4 fails");
    return out;
}

/// Locality check by scan: the non-units form a set closed under addition
/// and under multiplication by arbitrary elements.
inline bool is_local(const algebra_ptr& alg, const budget& b = {}) {
    auto t = finite_algebra_table::build(alg, b);
    const std::size_t n = t.size();
    const std::size_t one = t.one_index();
    std::vector<bool> unit(n, false);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (t.mul(x, y) == one && t.mul(y, x) == one) {
                unit[x] = true;
                break;
            }
    for (std::size_t x = 0; x < n; ++x) {
        if (unit[x]) continue;
        for (std::size_t y = 0; y < n; ++y) {
            if (!unit[y] && unit[t.add(x, y)]) return false;
            if (unit[t.mul(x, y)] || unit[t.mul(y, x)]) return false;
        }
    }
    return true;
}

/// The three statements of the local-algebra lemma, evaluated independently;
/// 1 => 2 => 3 asserted.
struct local_chain {
    bool every_nonunit_nilpotent = false;
    bool local = false;
    bool no_nontrivial_idempotents = false;
};

inline local_chain lemma_local_chain(const algebra_ptr& alg, const budget& b = {}) {
    auto t = finite_algebra_table::build(alg, b);
    const std::size_t n = t.size();
    const std::size_t one = t.one_index();
    local_chain out;

    out.every_nonunit_nilpotent = true;
    for (std::size_t x = 0; x < n && out.every_nonunit_nilpotent; ++x) {
        bool is_unit = false;
        for (std::size_t y = 0; y < n; ++y)
            if (t.mul(x, y) == one && t.mul(y, x) == one) {
                is_unit = true;
                break;
            }
        if (is_unit) continue;
        bool nil = false;
        std::size_t window = t.preperiod(x) + t.period(x);
        for (std::size_t m = 1; m <= window && !nil; ++m)
            if (t.power(x, m) == 0) nil = true;
        if (!nil) out.every_nonunit_nilpotent = false;
    }

    out.local = is_local(alg, b);
    auto idems = enumerate_idempotents(alg, std::nullopt, b);
    out.no_nontrivial_idempotents = true;
    for (const auto& e : idems)
        if (!e.is_zero() && !e.is_one()) out.no_nontrivial_idempotents = false;

    require(!out.every_nonunit_nilpotent || out.local, errc::solve_failed,
            "local chain: 1 => 2 fails");
    require(!out.local || out.no_nontrivial_idempotents, errc::solve_failed,
            "local chain: 2 => 3 fails");
    return out;
}

/// Quasi-stability: every subspace containing 1 is theta-Mathieu, decided
/// exhaustively; reported next to the sufficient condition (locality, which
/// implies quasi-stability here because r'(A) = A).
struct quasi_stability_report {
    bool quasi_stable = false;
    std::optional<subspace> witness; // a subspace with 1 that is not Mathieu
    bool local_sufficient = false;
};

inline quasi_stability_report is_quasi_stable(const algebra_ptr& alg, mathieu_variant var,
                                              const budget& b = {}) {
    quasi_stability_report out;
    out.local_sufficient = is_local(alg, b);
    out.quasi_stable = true;
    element one = element::one(alg);
    for (const auto& v : enumerate_subspaces(alg, b)) {
        if (!v.member(one)) continue;
        if (!is_mathieu(v, var, mathieu_method::idempotent_criterion, b).is_mathieu) {
            out.quasi_stable = false;
            out.witness = v;
            break;
        }
    }
    if (var == mathieu_variant::two_sided)
        require(!out.local_sufficient || out.quasi_stable, errc::solve_failed,
                "quasi-stable: local algebra failed the exhaustive check");
    return out;
}

/// One-sided refutation available over any base ring, including Q: a listed
/// idempotent inside V whose theta-ideal escapes V disproves Mathieu status.
inline std::optional<counter_witness> refute_with_idempotents(
    const subspace& v, mathieu_variant var, const std::vector<element>& candidate_idempotents) {
    budgets_consumed used;
    return idempotent_obstruction(v, var, candidate_idempotents, used);
}

} // namespace mathieu
