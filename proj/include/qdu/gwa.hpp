#pragma once

// The generalized Weyl algebra T = R(sigma, h) over R = (+)_i k[x_i, y_i]
// and the maps theta: H -> T, theta': T -> H.
//
// Conventions. A term r X^m with r supported at vertex i runs from i to
// i - m (paths compose left to right). theta(u_i) = e_i X^-, theta(d_i) =
// e_{i+1} X^+, so the X-degree of theta(p) is #d - #u.

#include "qdu/element.hpp"
#include "qdu/params.hpp"
#include "qdu/rewrite.hpp"
#include "qdu/sampling.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace qdu {

/// sum_i p_i(x_i, y_i) e_i, stored as (vertex, deg x, deg y) -> coefficient.
class BaseElement {
public:
    using Key = std::tuple<int, int, int>;

    explicit BaseElement(int n = 1) : n_(n) {}

    static BaseElement monomial(int n, int v, int a, int b, const Scalar& c = 1) {
        BaseElement r(n);
        r.add({mod(v, n), a, b}, c);
        return r;
    }
    static BaseElement idempotent(int n, int v) { return monomial(n, v, 0, 0); }
    static BaseElement x(int n, int v) { return monomial(n, v, 1, 0); }
    static BaseElement y(int n, int v) { return monomial(n, v, 0, 1); }
    static BaseElement one(int n) {
        BaseElement r(n);
        for (int v = 0; v < n; ++v) r.add({v, 0, 0}, 1);
        return r;
    }
    /// h = sum_i x_i
    static BaseElement h(int n) {
        BaseElement r(n);
        for (int v = 0; v < n; ++v) r.add({v, 1, 0}, 1);
        return r;
    }

    int n() const { return n_; }
    const std::map<Key, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& k, const Scalar& c) {
        if (qdu::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (qdu::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// Vertices carrying a nonzero component.
    std::vector<int> support() const {
        std::vector<int> v;
        for (const auto& [k, c] : terms_)
            if (v.empty() || v.back() != std::get<0>(k)) v.push_back(std::get<0>(k));
        return v;
    }

    BaseElement& operator+=(const BaseElement& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    BaseElement& operator-=(const BaseElement& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    friend BaseElement operator+(BaseElement a, const BaseElement& b) { return a += b; }
    friend BaseElement operator-(BaseElement a, const BaseElement& b) { return a -= b; }
    friend BaseElement operator*(const Scalar& s, const BaseElement& a) {
        BaseElement r(a.n_);
        for (const auto& [k, c] : a.terms_) r.add(k, s * c);
        return r;
    }
    friend BaseElement operator*(const BaseElement& a, const BaseElement& b) {
        BaseElement r(a.n_);
        for (const auto& [k1, c1] : a.terms_)
            for (const auto& [k2, c2] : b.terms_)
                if (std::get<0>(k1) == std::get<0>(k2))
                    r.add({std::get<0>(k1), std::get<1>(k1) + std::get<1>(k2), std::get<2>(k1) + std::get<2>(k2)}, c1 * c2);
        return r;
    }
    friend bool operator==(const BaseElement& a, const BaseElement& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms_) {
            const auto [v, a, b] = k;
            if (!s.empty()) s += " + ";
            std::string mono;
            auto power = [&](char sym, int e) {
                if (e == 0) return;
                if (!mono.empty()) mono += "*";
                mono += sym + std::to_string(v);
                if (e > 1) mono += "^" + std::to_string(e);
            };
            power('x', a);
            power('y', b);
            if (mono.empty()) mono = "e" + std::to_string(v);
            s += c == 1 ? mono : to_string(c) + " " + mono;
        }
        return s;
    }

private:
    int n_;
    std::map<Key, Scalar> terms_;
};

inline BaseElement power(const BaseElement& p, int e) {
    BaseElement r = BaseElement::one(p.n());
    for (int k = 0; k < e; ++k) r = r * p;
    return r;
}

/// sigma(e_i) = e_{i+1}, sigma(x_i) = y_{i+1},
/// sigma(y_i) = alpha_i y_{i+1} + beta_i x_{i+1} + gamma_i e_{i+1}.
inline BaseElement sigma(const Parameters& p, const BaseElement& r) {
    const int n = p.n;
    BaseElement out(n);
    for (const auto& [k, c] : r.terms()) {
        const auto [i, a, b] = k;
        const int j = mod(i + 1, n);
        BaseElement sy(n);
        sy.add({j, 0, 1}, p.a(i));
        sy.add({j, 1, 0}, p.b(i));
        sy.add({j, 0, 0}, p.g(i));
        out += c * (BaseElement::monomial(n, j, 0, a) * power(sy, b));
    }
    return out;
}

/// sigma^{-1}(e_{i+1}) = e_i, sigma^{-1}(y_{i+1}) = x_i,
/// sigma^{-1}(x_{i+1}) = beta_i^{-1}(y_i - alpha_i x_i - gamma_i e_i).
inline BaseElement sigma_inverse(const Parameters& p, const BaseElement& r) {
    if (!p.beta_nonzero()) throw NotInvertibleError("sigma is not invertible: beta_" + std::to_string(p.first_zero_beta()) + " = 0");
    const int n = p.n;
    BaseElement out(n);
    for (const auto& [k, c] : r.terms()) {
        const auto [j, a, b] = k;
        const int i = mod(j - 1, n);
        const Scalar inv = 1 / p.b(i);
        BaseElement sx(n);
        sx.add({i, 0, 1}, inv);
        sx.add({i, 1, 0}, -inv * p.a(i));
        sx.add({i, 0, 0}, -inv * p.g(i));
        out += c * (power(sx, a) * BaseElement::monomial(n, i, b, 0));
    }
    return out;
}

inline BaseElement sigma_power(const Parameters& p, BaseElement r, int m) {
    for (; m > 0; --m) r = sigma(p, r);
    for (; m < 0; ++m) r = sigma_inverse(p, r);
    return r;
}

/// sum_m r_m X^m with X^m = (X^+)^m for m > 0 and (X^-)^{-m} for m < 0.
class GwaElement {
public:
    explicit GwaElement(int n = 1) : n_(n) {}

    static GwaElement of(const BaseElement& r, int m = 0) {
        GwaElement g(r.n());
        g.add(m, r);
        return g;
    }
    static GwaElement x_plus(int n) { return of(BaseElement::one(n), 1); }
    static GwaElement x_minus(int n) { return of(BaseElement::one(n), -1); }

    int n() const { return n_; }
    const std::map<int, BaseElement>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int top_degree() const { return terms_.rbegin()->first; }
    int bottom_degree() const { return terms_.begin()->first; }

    BaseElement coefficient(int m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? BaseElement(n_) : it->second;
    }

    void add(int m, const BaseElement& r) {
        if (r.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, r);
        if (!inserted) {
            it->second += r;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GwaElement& operator+=(const GwaElement& o) {
        for (const auto& [m, r] : o.terms_) add(m, r);
        return *this;
    }
    GwaElement& operator-=(const GwaElement& o) {
        for (const auto& [m, r] : o.terms_) add(m, Scalar(-1) * r);
        return *this;
    }
    friend GwaElement operator+(GwaElement a, const GwaElement& b) { return a += b; }
    friend GwaElement operator-(GwaElement a, const GwaElement& b) { return a -= b; }
    friend GwaElement operator*(const Scalar& s, const GwaElement& a) {
        GwaElement r(a.n_);
        for (const auto& [m, b] : a.terms_) r.add(m, s * b);
        return r;
    }
    friend bool operator==(const GwaElement& a, const GwaElement& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ")";
            if (it->first != 0) s += " X^" + std::to_string(it->first);
        }
        return s;
    }

private:
    int n_;
    std::map<int, BaseElement> terms_;
};

/// (r X^m)(s X^l) = r sigma^m(s) X^m X^l, contracting
/// (X^+)^a (X^-)^b = sigma^a(h) (X^+)^{a-1} (X^-)^{b-1} and
/// (X^-)^a (X^+)^b = sigma^{-(a-1)}(h) (X^-)^{a-1} (X^+)^{b-1}.
inline GwaElement gwa_multiply(const Parameters& p, const GwaElement& a, const GwaElement& b) {
    const int n = p.n;
    if (a.n() != n || b.n() != n) throw InputError("gwa_multiply: size mismatch");
    std::map<std::pair<int, int>, BaseElement> contraction;
    auto contract = [&](int m, int l) -> const BaseElement& {
        auto [it, inserted] = contraction.try_emplace({m, l}, BaseElement::one(n));
        if (!inserted) return it->second;
        BaseElement c = BaseElement::one(n);
        if (m > 0 && l < 0) {
            for (int t = 0; t < std::min(m, -l); ++t) c = c * sigma_power(p, BaseElement::h(n), m - t);
        } else if (m < 0 && l > 0) {
            for (int t = 0; t < std::min(-m, l); ++t) c = c * sigma_power(p, BaseElement::h(n), m + 1 + t);
        }
        return it->second = c;
    };
    GwaElement r(n);
    for (const auto& [m, ra] : a.terms())
        for (const auto& [l, rb] : b.terms()) r.add(m + l, ra * sigma_power(p, rb, m) * contract(m, l));
    return r;
}

inline GwaElement gwa_power(const Parameters& p, const GwaElement& a, int e) {
    GwaElement r = GwaElement::of(BaseElement::one(p.n));
    for (int k = 0; k < e; ++k) r = gwa_multiply(p, r, a);
    return r;
}

/// e_i X^- and e_{i+1} X^+.
inline GwaElement gwa_x_minus(int n, int i) { return GwaElement::of(BaseElement::idempotent(n, i), -1); }
inline GwaElement gwa_x_plus(int n, int i) { return GwaElement::of(BaseElement::idempotent(n, i + 1), 1); }

inline void require_gwa_params(const Parameters& p) {
    if (!p.beta_nonzero())
        throw PreconditionError("unsupported parameters: beta_" + std::to_string(p.first_zero_beta()) + " = 0");
}

inline GwaElement theta(const Parameters& p, const Element& a) {
    require_gwa_params(p);
    const int n = p.n;
    if (a.n() != n) throw InputError("theta: size mismatch");
    GwaElement out(n);
    for (const auto& [path, c] : a.terms()) {
        GwaElement t = GwaElement::of(BaseElement::idempotent(n, path.source()));
        for (const Arrow& ar : path.arrows())
            t = gwa_multiply(p, t, ar.family == Family::U ? gwa_x_minus(n, ar.index) : gwa_x_plus(n, ar.index));
        out += c * t;
    }
    return out;
}

/// theta'(x_i) = u_i d_i, theta'(y_i) = d_{i-1} u_{i-1}, theta'(X^+) = sum d_i,
/// theta'(X^-) = sum u_i; the result is reduced by the certified system.
inline Element theta_prime(const ReductionSystem& sys, const GwaElement& t) {
    if (sys.preset() != Preset::QuiverDownUp || !sys.params()) throw InputError("theta_prime needs a quiver down-up system");
    const Parameters& p = *sys.params();
    require_gwa_params(p);
    const int n = p.n;
    Element xp(n), xm(n);
    for (int i = 0; i < n; ++i) {
        xp.add(Path::of(n, {d(i)}), 1);
        xm.add(Path::of(n, {u(i)}), 1);
    }
    Element out(n);
    for (const auto& [m, r] : t.terms()) {
        Element left(n);
        for (const auto& [k, c] : r.terms()) {
            const auto [v, a, b] = k;
            Element mono = Element::of(Path::trivial(n, v));
            const Element xv = Element::of(Path::of(n, {u(v), d(v)}));
            const Element yv = Element::of(Path::of(n, {d(v - 1), u(v - 1)}));
            for (int e = 0; e < a; ++e) mono = normal_form(sys, mono * xv);
            for (int e = 0; e < b; ++e) mono = normal_form(sys, mono * yv);
            left += c * mono;
        }
        const Element& x = m > 0 ? xp : xm;
        for (int e = 0; e < std::abs(m); ++e) left = normal_form(sys, left * x);
        out += left;
    }
    return normal_form(sys, out);
}

struct GwaProbeReport {
    int trials = 0;
    int zero_products = 0;
    int degree_failures = 0;
    std::string first_failure;
    bool ok() const { return zero_products == 0 && degree_failures == 0; }
};

/// Random element of e_i T e_k: terms r X^m with r at vertex i and m = i - k mod n.
inline GwaElement random_gwa(Rng& rng, const Parameters& p, int i, int k, int x_bound, int poly_bound) {
    const int n = p.n;
    GwaElement g(n);
    while (g.is_zero()) {
        const int terms = random_int(rng, 1, 3);
        for (int t = 0; t < terms; ++t) {
            const int base = mod(i - k, n);
            std::vector<int> ms;
            for (int m = -x_bound; m <= x_bound; ++m)
                if (mod(m, n) == base) ms.push_back(m);
            if (ms.empty()) ms.push_back(base);
            const int m = ms[random_int(rng, 0, static_cast<int>(ms.size()) - 1)];
            BaseElement r(n);
            const int mons = random_int(rng, 1, 3);
            for (int s = 0; s < mons; ++s) {
                const int a = random_int(rng, 0, poly_bound);
                r.add({i, a, random_int(rng, 0, poly_bound - a)}, random_scalar(rng, 5, true));
            }
            g.add(m, r);
        }
    }
    return g;
}

/// Sandwiched products a in e_i T e_k, b in e_k T e_j must be nonzero and
/// their top and bottom X-degrees must add.
inline GwaProbeReport pwd_probe_gwa(const Parameters& p, int x_bound, int poly_bound, int trials, std::uint64_t seed) {
    require_gwa_params(p);
    Rng rng(seed);
    GwaProbeReport rep;
    const int n = p.n;
    for (int t = 0; t < trials; ++t) {
        const int i = random_int(rng, 0, n - 1), k = random_int(rng, 0, n - 1), j = random_int(rng, 0, n - 1);
        const GwaElement a = random_gwa(rng, p, i, k, x_bound, poly_bound);
        const GwaElement b = random_gwa(rng, p, k, j, x_bound, poly_bound);
        const GwaElement ab = gwa_multiply(p, a, b);
        ++rep.trials;
        if (ab.is_zero()) {
            ++rep.zero_products;
            if (rep.first_failure.empty()) rep.first_failure = "zero product: (" + a.str() + ") * (" + b.str() + ")";
        } else if (ab.top_degree() != a.top_degree() + b.top_degree() ||
                   ab.bottom_degree() != a.bottom_degree() + b.bottom_degree()) {
            ++rep.degree_failures;
            if (rep.first_failure.empty()) rep.first_failure = "degree not additive: (" + a.str() + ") * (" + b.str() + ")";
        }
    }
    return rep;
}

struct GwaReport {
    bool relations_killed = true;
    bool theta_prime_theta = true;
    bool theta_theta_prime = true;
    GwaProbeReport pwd;
    std::vector<std::string> failures;
    bool ok() const { return relations_killed && theta_prime_theta && theta_theta_prime && pwd.ok(); }
};

/// Relation, round-trip and PWD checks for one parameter set.
inline GwaReport verify_gwa(const Parameters& p, int trials, std::uint64_t seed) {
    require_gwa_params(p);
    const int n = p.n;
    const auto sys = build_certified(Preset::QuiverDownUp, p);
    GwaReport rep;
    for (const auto& rel : sys.relations())
        if (!theta(p, rel).is_zero()) {
            rep.relations_killed = false;
            rep.failures.push_back("theta(" + rel.str() + ") != 0");
        }
    std::vector<Element> gens;
    for (int i = 0; i < n; ++i) {
        gens.push_back(Element::of(Path::trivial(n, i)));
        gens.push_back(Element::of(Path::of(n, {u(i)})));
        gens.push_back(Element::of(Path::of(n, {d(i)})));
    }
    for (const auto& g : gens)
        if (theta_prime(sys, theta(p, g)) != g) {
            rep.theta_prime_theta = false;
            rep.failures.push_back("theta'(theta(" + g.str() + ")) != " + g.str());
        }
    std::vector<GwaElement> tgens;
    for (int i = 0; i < n; ++i) {
        tgens.push_back(gwa_x_plus(n, i));
        tgens.push_back(gwa_x_minus(n, i));
        tgens.push_back(GwaElement::of(BaseElement::x(n, i)));
        tgens.push_back(GwaElement::of(BaseElement::y(n, i)));
    }
    for (const auto& g : tgens)
        if (theta(p, theta_prime(sys, g)) != g) {
            rep.theta_theta_prime = false;
            rep.failures.push_back("theta(theta'(" + g.str() + ")) != " + g.str());
        }
    rep.pwd = pwd_probe_gwa(p, 3, 3, trials, seed);
    if (!rep.pwd.ok()) rep.failures.push_back(rep.pwd.first_failure);
    return rep;
}

}  // namespace qdu
