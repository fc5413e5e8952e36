#pragma once

// Superpotential and derivation-quotient checks, diagonal (Nakayama-type)
// maps, the beta-criterion property report, the ascending chain of right
// ideals for a zero beta, and piecewise-domain probes on H.

#include "qdu/maps.hpp"
#include "qdu/rewrite.hpp"
#include "qdu/sampling.hpp"
#include "qdu/span.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdu {

// ---------------------------------------------------------------- words

/// x_m = d_m u_m, a cycle at m+1.
inline Path x_word(int n, int m) { return Path::of(n, {d(mod(m, n)), u(mod(m, n))}); }

/// U = u_i u_{i+1} ... u_{i+n-1}, a cycle at i.
inline Path u_cycle(int n, int i) {
    std::vector<Arrow> w;
    for (int t = 0; t < n; ++t) w.push_back(u(i + t));
    return Path::make(n, i, w);
}

inline Element path_power(const Path& p, int e) {
    Element r = Element::of(Path::trivial(p.n(), p.source()));
    for (int k = 0; k < e; ++k) r = r * Element::of(p);
    return r;
}

// ---------------------------------------------------------------- twist

/// Diagonal automorphism eta: a -> w_a a.
struct TwistWeights {
    int n = 1;
    std::vector<Scalar> w;  // indexed by Arrow::id

    static TwistWeights from(const std::vector<Scalar>& su, const std::vector<Scalar>& sd) {
        TwistWeights t;
        t.n = static_cast<int>(su.size());
        if (sd.size() != su.size() || su.empty()) throw InputError("twist weights: length mismatch");
        t.w.resize(2 * t.n);
        for (int i = 0; i < t.n; ++i) {
            t.w[u(i).id(t.n)] = su[i];
            t.w[d(i).id(t.n)] = sd[i];
        }
        for (const auto& c : t.w)
            if (is_zero(c)) throw InputError("twist weights: zero weight");
        return t;
    }

    /// eta(u_i) = beta_{i-1} u_i, eta(d_i) = beta_{i-1} d_i
    static TwistWeights printed(const Parameters& p) {
        std::vector<Scalar> su, sd;
        for (int i = 0; i < p.n; ++i) {
            su.push_back(p.b(i - 1));
            sd.push_back(p.b(i - 1));
        }
        return from(su, sd);
    }
    /// eta(u_i) = beta_i u_i, eta(d_i) = beta_i^{-1} d_i
    static TwistWeights derived(const Parameters& p) {
        std::vector<Scalar> su, sd;
        for (int i = 0; i < p.n; ++i) {
            if (is_zero(p.b(i))) throw InputError("twist weights: zero weight");
            su.push_back(p.b(i));
            sd.push_back(1 / p.b(i));
        }
        return from(su, sd);
    }
    /// eta(u_i) = beta_{i-1} u_i, eta(d_i) = beta_{i-1}^{-1} d_i
    static TwistWeights shifted(const Parameters& p) {
        std::vector<Scalar> su, sd;
        for (int i = 0; i < p.n; ++i) {
            if (is_zero(p.b(i - 1))) throw InputError("twist weights: zero weight");
            su.push_back(p.b(i - 1));
            sd.push_back(1 / p.b(i - 1));
        }
        return from(su, sd);
    }

    const Scalar& operator()(const Arrow& a) const { return w[a.id(n)]; }
};

/// a_1 ... a_d -> (-1)^{d+1} eta(a_d) a_1 ... a_{d-1}, for cycles.
inline Element twist(const Element& x, const TwistWeights& eta) {
    Element r(x.n());
    for (const auto& [p, c] : x.terms()) {
        if (p.is_trivial()) {
            r.add(p, -c);
            continue;
        }
        if (p.source() != p.target()) throw InputError("twist: " + p.str() + " is not a cycle");
        std::vector<Arrow> w;
        w.push_back(p.arrows().back());
        w.insert(w.end(), p.arrows().begin(), p.arrows().end() - 1);
        const Scalar sign = p.length() % 2 == 1 ? 1 : -1;
        r.add(Path::make(p.n(), w.front().source(p.n()), w), sign * eta(w.front()) * c);
    }
    return r;
}

/// Smallest s > 0 with the cyclic rotation by s fixing the word.
inline std::size_t rotation_period(const Path& p) {
    const auto& a = p.arrows();
    const std::size_t len = a.size();
    for (std::size_t s = 1; s < len; ++s) {
        if (len % s) continue;
        bool same = true;
        for (std::size_t k = 0; k < len && same; ++k) same = a[k] == a[(k + s) % len];
        if (same) return s;
    }
    return len;
}

struct CompactTerm {
    Path word;
    Scalar coefficient;
    std::size_t period = 0;
    Scalar closure;  // twist^period(word) = closure * word
};

struct Superpotential {
    Element omega;
    std::vector<CompactTerm> terms;
    bool closes() const {
        for (const auto& t : terms)
            if (t.closure != 1) return false;
        return true;
    }
};

/// [p] = p + T(p) + ... + T^{period-1}(p).
inline CompactTerm compact_form(const Path& word, const Scalar& coefficient, const TwistWeights& eta, Element& into) {
    CompactTerm t{word, coefficient, rotation_period(word), 0};
    Element cur = Element::of(word);
    for (std::size_t s = 0; s < t.period; ++s) {
        into += coefficient * cur;
        cur = twist(cur, eta);
    }
    t.closure = cur.coefficient(word);
    return t;
}

/// Omega = sum_i [d_i d_{i-1} u_{i-1} u_i] - alpha_i [d_i u_i d_i u_i].
inline Superpotential build_superpotential(const Parameters& p, const TwistWeights& eta) {
    const int n = p.n;
    if (eta.n != n) throw InputError("superpotential: weight size mismatch");
    Superpotential s{Element(n), {}};
    for (int i = 0; i < n; ++i) {
        s.terms.push_back(compact_form(Path::of(n, {d(i), d(i - 1), u(i - 1), u(i)}), 1, eta, s.omega));
        if (!is_zero(p.a(i))) s.terms.push_back(compact_form(Path::of(n, {d(i), u(i), d(i), u(i)}), -p.a(i), eta, s.omega));
    }
    return s;
}

struct TwistInvarianceReport {
    bool invariant = true;
    Element defect;  // twist(omega) - omega
};

inline TwistInvarianceReport check_twist_invariance(const Element& omega, const TwistWeights& eta) {
    TwistInvarianceReport r{true, twist(omega, eta) - omega};
    r.invariant = r.defect.is_zero();
    return r;
}

/// Deletes a leading arrow equal to a.
inline Element cyclic_derivative(const Element& omega, const Arrow& a) {
    Element r(omega.n());
    for (const auto& [p, c] : omega.terms())
        if (!p.is_trivial() && p.arrows().front() == a) r.add(p.slice(1, p.length() - 1), c);
    return r;
}

struct DerivationQuotientReport {
    std::size_t derivative_rank = 0;
    std::size_t relation_rank = 0;
    std::size_t joint_rank = 0;
    bool equal() const { return derivative_rank == relation_rank && joint_rank == relation_rank; }
};

/// span{d_a Omega : a in Q_1} == span{defining relations}, by exact ranks.
inline DerivationQuotientReport check_derivation_quotient(const Element& omega, const Parameters& p) {
    const int n = p.n;
    std::vector<Element> derivs;
    for (int id = 0; id < 2 * n; ++id) derivs.push_back(cyclic_derivative(omega, Arrow::from_id(id, n)));
    const auto rels = ReductionSystem::build(Preset::QuiverDownUp, p).relations();
    DerivationQuotientReport r;
    r.derivative_rank = span_rank(n, derivs);
    r.relation_rank = span_rank(n, rels);
    std::vector<Element> all = derivs;
    all.insert(all.end(), rels.begin(), rels.end());
    r.joint_rank = span_rank(n, all);
    return r;
}

// ---------------------------------------------------------------- diagonal maps

/// Printed candidate: u_i, d_i -> -beta_{i-1}^{-1}.
inline GradedMap nakayama_printed(const Parameters& p) {
    std::vector<Scalar> s;
    for (int i = 0; i < p.n; ++i) {
        if (is_zero(p.b(i - 1))) throw InputError("nakayama map: zero beta");
        s.push_back(-1 / p.b(i - 1));
    }
    return GradedMap::diagonal(s, s);
}

/// u_i -> -beta_i^{-1} u_i, d_i -> -beta_i d_i.
inline GradedMap nakayama_derived(const Parameters& p) {
    std::vector<Scalar> su, sd;
    for (int i = 0; i < p.n; ++i) {
        if (is_zero(p.b(i))) throw InputError("nakayama map: zero beta");
        su.push_back(-1 / p.b(i));
        sd.push_back(-p.b(i));
    }
    return GradedMap::diagonal(su, sd);
}

struct RelationImage {
    std::string label;
    bool in_span = false;
    std::optional<Scalar> scalar;  // image = scalar * (target relation with the same label)
    /// word scalar / leading-word scalar for each lower term of the source relation
    std::vector<std::pair<Path, Scalar>> ratios;
    Element defect;
};

struct DiagonalMapReport {
    std::vector<RelationImage> relations;
    bool bijective = true;
    bool ok() const {
        if (!bijective) return false;
        for (const auto& r : relations)
            if (!r.in_span) return false;
        return true;
    }
};

inline Scalar word_scalar(const GradedMap& f, const Path& p) {
    Scalar c = 1;
    for (const Arrow& a : p.arrows()) c *= f.scalar(a);
    return c;
}

/// Applies f to every relation of H(src) and tests membership of the image in
/// the span of the relations of H(tgt).
inline DiagonalMapReport check_diagonal_map(const GradedMap& f, const Parameters& src, const Parameters& tgt) {
    if (f.n() != src.n || src.n != tgt.n) throw InputError("check_diagonal_map: size mismatch");
    const int n = src.n;
    const auto s_sys = ReductionSystem::build(Preset::QuiverDownUp, src);
    const auto t_sys = ReductionSystem::build(Preset::QuiverDownUp, tgt);
    const auto t_rels = t_sys.relations();
    ElementSpan span(n);
    for (const auto& r : t_rels) span.insert(r);
    DiagonalMapReport rep;
    rep.bijective = f.is_bijective();
    for (const auto& rule : s_sys.rules()) {
        RelationImage img;
        img.label = rule.label;
        const Element image = f.apply(rule.relation());
        img.defect = span.reduce(image);
        img.in_span = img.defect.is_zero();
        for (const auto& tr : t_rels) {
            const Path& lead = tr.terms().rbegin()->first;
            const Scalar c = image.coefficient(lead);
            if (!is_zero(c) && image == c * tr) img.scalar = c;
        }
        const Scalar lead = word_scalar(f, rule.lhs);
        for (const auto& [q, c] : rule.rhs.terms()) img.ratios.emplace_back(q, word_scalar(f, q) / lead);
        rep.relations.push_back(std::move(img));
    }
    return rep;
}

// ---------------------------------------------------------------- properties

struct PropertyReport {
    bool noetherian = false;
    bool piecewise_domain = false;
    bool polynomial_subalgebra = false;
    std::size_t monomials_checked = 0;
    std::size_t monomial_rank = 0;
    std::optional<int> index;  // first i with beta_i = 0
    Element witness_a;
    Element witness_b;
    bool zero_divisor_verified = false;  // a*b = 0, a != 0, b != 0
    bool dependence_verified = false;    // a * u_i d_i = 0
    bool consistent() const {
        if (index) return zero_divisor_verified && dependence_verified && !noetherian && !piecewise_domain && !polynomial_subalgebra;
        return noetherian && piecewise_domain && polynomial_subalgebra && monomial_rank == monomials_checked;
    }
};

/// a = d_{i-1} u_{i-1} - alpha_i u_i d_i - gamma_i e_i
inline Element zero_divisor_left(const Parameters& p, int i) {
    const int n = p.n;
    return Element::of(Path::of(n, {d(i - 1), u(i - 1)})) - p.a(i) * Element::of(Path::of(n, {u(i), d(i)})) -
           p.g(i) * Element::of(Path::trivial(n, i));
}

inline PropertyReport property_report(const Parameters& p, int max_degree = 4) {
    const int n = p.n;
    const auto sys = build_certified(Preset::QuiverDownUp, p);
    PropertyReport rep;
    rep.witness_a = Element(n);
    rep.witness_b = Element(n);
    if (p.beta_nonzero()) {
        rep.noetherian = rep.piecewise_domain = rep.polynomial_subalgebra = true;
        ElementSpan span(n);
        for (int i = 0; i < n; ++i) {
            const Element x = Element::of(Path::of(n, {u(i), d(i)}));
            const Element y = Element::of(Path::of(n, {d(i - 1), u(i - 1)}));
            Element xa = Element::of(Path::trivial(n, i));
            for (int a = 0; a <= max_degree; ++a) {
                Element m = xa;
                for (int b = 0; a + b <= max_degree; ++b) {
                    ++rep.monomials_checked;
                    span.insert(m);
                    m = normal_form(sys, m * y);
                }
                xa = normal_form(sys, xa * x);
            }
        }
        rep.monomial_rank = span.rank();
        rep.polynomial_subalgebra = rep.monomial_rank == rep.monomials_checked;
        return rep;
    }
    const int i = p.first_zero_beta();
    rep.index = i;
    rep.witness_a = zero_divisor_left(p, i);
    rep.witness_b = Element::of(Path::of(n, {u(i)}));
    rep.zero_divisor_verified = is_zero_in_quotient(sys, rep.witness_a * rep.witness_b) &&
                                !is_zero_in_quotient(sys, rep.witness_a) && !is_zero_in_quotient(sys, rep.witness_b);
    rep.dependence_verified = is_zero_in_quotient(sys, rep.witness_a * Element::of(Path::of(n, {u(i), d(i)})));
    return rep;
}

// ---------------------------------------------------------------- chain of ideals

struct ChainStep {
    int s = 0;
    bool strict = false;  // g_{s+1} not in span{g_m b}
    std::size_t spanning = 0;
    std::size_t rank = 0;
    bool support_ok = true;
    std::string bad_support;
};

struct NoetherianReport {
    int index = 0;
    bool annihilation = true;
    std::vector<ChainStep> steps;
    bool ok() const {
        if (!annihilation) return false;
        for (const auto& s : steps)
            if (!s.strict || !s.support_ok) return false;
        return true;
    }
};

/// (a, j, c) with word = u^a (d u)^j d^c; nullopt if the word has another shape.
inline std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> shape_of(const Path& p) {
    const auto& w = p.arrows();
    std::size_t k = 0, a = 0, j = 0, c = 0;
    while (k < w.size() && w[k].family == Family::U) ++a, ++k;
    while (k + 1 < w.size() && w[k].family == Family::D && w[k + 1].family == Family::U) ++j, k += 2;
    while (k < w.size() && w[k].family == Family::D) ++c, ++k;
    if (k != w.size()) return std::nullopt;
    return std::make_tuple(a, j, c);
}

/// g_m = U^m (alpha_i u_i d_i + gamma_i e_i - d_{i-1} u_{i-1}).
inline Element chain_generator(const Parameters& p, int i, int m) {
    return path_power(u_cycle(p.n, i), m) * (Scalar(-1) * zero_divisor_left(p, i));
}

inline NoetherianReport noetherian_chain_check(const Parameters& p, int i, int s_max, int bound) {
    const int n = p.n;
    i = mod(i, n);
    if (!is_zero(p.b(i))) throw InputError("noetherian_chain_check: beta_" + std::to_string(i) + " is nonzero");
    if (bound < (s_max + 1) * n + 2) throw InputError("noetherian_chain_check: degree bound too small");
    const auto sys = build_certified(Preset::QuiverDownUp, p);
    NoetherianReport rep;
    rep.index = i;
    const Element c = Scalar(-1) * zero_divisor_left(p, i);
    const Element uc = Element::of(u_cycle(n, i)) * c;
    for (int m = 0; m < n; ++m)
        if (!is_zero_in_quotient(sys, uc * Element::of(Path::of(n, {u(m)})))) rep.annihilation = false;

    std::vector<std::vector<Path>> basis_from_i;
    for (int k = 0; k <= bound; ++k) {
        std::vector<Path> b;
        for (const auto& q : enumerate_basis(sys, k))
            if (q.source() == i) b.push_back(q);
        basis_from_i.push_back(std::move(b));
    }
    ElementSpan span(n);
    std::size_t spanning = 0;
    std::vector<Element> gens;
    for (int m = 1; m <= s_max + 1; ++m) gens.push_back(normal_form(sys, chain_generator(p, i, m)));
    for (int s = 1; s <= s_max; ++s) {
        ChainStep step;
        step.s = s;
        const int m = s;
        const int deg = m * n + 2;
        for (int k = 0; deg + k <= bound; ++k)
            for (const auto& b : basis_from_i[k]) {
                const Element prod = normal_form(sys, gens[m - 1] * Element::of(b));
                ++spanning;
                span.insert(prod);
                for (const auto& [q, coeff] : prod.terms()) {
                    const auto sh = shape_of(q);
                    bool fits = false;
                    if (sh) {
                        const auto [a, j, cc] = *sh;
                        const std::size_t mn = static_cast<std::size_t>(m * n);
                        fits = (a == mn && j >= 1) || (a == mn + 1 && cc >= 1) || (!is_zero(p.g(i)) && a == mn && j == 0);
                    }
                    if (!fits && step.support_ok) {
                        step.support_ok = false;
                        step.bad_support = q.str() + " in g_" + std::to_string(m) + " * " + b.str();
                    }
                }
            }
        step.spanning = spanning;
        step.rank = span.rank();
        step.strict = !span.contains(gens[s]);
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

// ---------------------------------------------------------------- PWD on H

struct PwdReport {
    int trials = 0;
    int zero_products = 0;
    bool beta_nonzero = true;
    std::string first_zero;
    std::optional<std::pair<Element, Element>> counterexample;
    bool counterexample_verified = false;
    bool ok() const { return beta_nonzero ? zero_products == 0 : counterexample_verified; }
};

/// Random nonzero element of e_i H e_k: 1-3 normal paths i -> k of degree <= bound.
inline Element random_sandwiched(Rng& rng, const std::vector<std::vector<Path>>& by_degree, int n, int i, int k) {
    std::vector<const Path*> pool;
    for (const auto& layer : by_degree)
        for (const auto& q : layer)
            if (q.source() == i && q.target() == k) pool.push_back(&q);
    Element e(n);
    while (e.is_zero()) {
        const int terms = random_int(rng, 1, 3);
        for (int t = 0; t < terms; ++t)
            e.add(*pool[random_int(rng, 0, static_cast<int>(pool.size()) - 1)], random_scalar(rng, 5, true));
    }
    return e;
}

inline PwdReport pwd_probe_H(const Parameters& p, int bound, int trials, std::uint64_t seed) {
    const int n = p.n;
    const auto sys = build_certified(Preset::QuiverDownUp, p);
    std::vector<std::vector<Path>> by_degree;
    for (int k = 0; k <= bound; ++k) by_degree.push_back(enumerate_basis(sys, k));
    Rng rng(seed);
    PwdReport rep;
    rep.beta_nonzero = p.beta_nonzero();
    for (int t = 0; t < trials; ++t) {
        const int i = random_int(rng, 0, n - 1), k = random_int(rng, 0, n - 1), j = random_int(rng, 0, n - 1);
        const Element a = random_sandwiched(rng, by_degree, n, i, k);
        const Element b = random_sandwiched(rng, by_degree, n, k, j);
        ++rep.trials;
        if (normal_form(sys, a * b).is_zero()) {
            ++rep.zero_products;
            if (rep.first_zero.empty()) rep.first_zero = "(" + a.str() + ") * (" + b.str() + ")";
        }
    }
    if (!rep.beta_nonzero) {
        const int i = p.first_zero_beta();
        const Element a = zero_divisor_left(p, i), b = Element::of(Path::of(n, {u(i)}));
        rep.counterexample = std::make_pair(a, b);
        rep.counterexample_verified =
            !normal_form(sys, a).is_zero() && !normal_form(sys, b).is_zero() && normal_form(sys, a * b).is_zero();
    }
    return rep;
}

}  // namespace qdu
