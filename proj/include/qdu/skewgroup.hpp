#pragma once

// The smash product R # kG of the graded down-up algebra
// R = k<u, d>/(d^2 u + u d^2, d u^2 + u^2 d) with G = <g> cyclic of order n,
// g(u) = zeta u, g(d) = zeta^{-1} d, over Q(zeta).

#include "qdu/cyclotomic.hpp"
#include "qdu/hilbert.hpp"
#include "qdu/linalg.hpp"
#include "qdu/rewrite.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qdu {

/// sum c (r # g^j) with r a normal monomial of R.
struct SmashElement {
    using Key = std::pair<Path, int>;
    std::map<Key, CycScalar> terms;

    bool is_zero() const { return terms.empty(); }

    void add(const Key& k, const CycScalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    SmashElement& operator+=(const SmashElement& o) {
        for (const auto& [k, c] : o.terms) add(k, c);
        return *this;
    }
    SmashElement& operator-=(const SmashElement& o) {
        for (const auto& [k, c] : o.terms) add(k, -c);
        return *this;
    }
    friend SmashElement operator+(SmashElement a, const SmashElement& b) { return a += b; }
    friend SmashElement operator-(SmashElement a, const SmashElement& b) { return a -= b; }
    friend SmashElement operator*(const CycScalar& s, const SmashElement& a) {
        SmashElement r;
        for (const auto& [k, c] : a.terms) r.add(k, s * c);
        return r;
    }
    friend bool operator==(const SmashElement& a, const SmashElement& b) { return a.terms == b.terms; }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [k, c] : terms) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ") " + (k.first.is_trivial() ? std::string("1") : k.first.str()) + " # g^" +
                 std::to_string(k.second);
        }
        return s;
    }
};

class SmashAlgebra {
public:
    explicit SmashAlgebra(int n) : n_(n), sys_(build_certified(Preset::GradedDownUp)) {
        if (n < 2) throw InputError("skew group ring needs n >= 2");
        if (n > 12) throw InputError("skew group ring: n capped at 12");
    }

    int n() const { return n_; }
    const ReductionSystem& system() const { return sys_; }

    CycScalar zeta(long long k) const { return CycScalar::zeta(n_, k); }

    /// r # g^j for a word in u, d (empty word = 1).
    SmashElement basic(const std::vector<Arrow>& word, int j, const CycScalar& c = 1) const {
        SmashElement e;
        const Element r = normal_form(sys_, Element::of(Path::make(1, 0, word)));
        for (const auto& [p, q] : r.terms()) e.add({p, mod(j, n_)}, c * CycScalar(q));
        return e;
    }
    SmashElement one() const { return basic({}, 0); }
    SmashElement group(int j) const { return basic({}, j); }

    /// (r # g^a)(s # g^b) = r g^a(s) # g^{a+b}, g^a(s) = zeta^{a (#u - #d)} s.
    SmashElement multiply(const SmashElement& x, const SmashElement& y) const {
        SmashElement out;
        for (const auto& [kx, cx] : x.terms)
            for (const auto& [ky, cy] : y.terms) {
                const CycScalar c = cx * cy * zeta(static_cast<long long>(kx.second) * ky.first.weight());
                const Element r = normal_form(sys_, Element::of(kx.first.concat(ky.first)));
                for (const auto& [p, q] : r.terms()) out.add({p, mod(kx.second + ky.second, n_)}, c * CycScalar(q));
            }
        return out;
    }

    SmashElement multiply(std::initializer_list<SmashElement> xs) const {
        SmashElement r = one();
        for (const auto& x : xs) r = multiply(r, x);
        return r;
    }

    /// f_i = (1/n) sum_j zeta^{ij} (1 # g^j)
    SmashElement idempotent(int i) const {
        SmashElement f;
        for (int j = 0; j < n_; ++j) f += (CycScalar(Scalar(1, n_)) * zeta(static_cast<long long>(i) * j)) * group(j);
        return f;
    }

    SmashElement u_elem() const { return basic({u(0)}, 0); }
    SmashElement d_elem() const { return basic({d(0)}, 0); }

    /// U_i = f_i (u # e), D_i = (d # e) f_i
    SmashElement cap_u(int i) const { return multiply(idempotent(i), u_elem()); }
    SmashElement cap_d(int i) const { return multiply(d_elem(), idempotent(i)); }

    /// Image of a quiver element under e_i -> f_i, u_i -> U_i, d_i -> D_i.
    SmashElement image(const Element& a) const {
        if (a.n() != n_) throw InputError("skew group image: size mismatch");
        SmashElement out;
        for (const auto& [p, c] : a.terms()) {
            SmashElement t = idempotent(p.source());
            for (const Arrow& ar : p.arrows()) t = multiply(t, ar.family == Family::U ? cap_u(ar.index) : cap_d(ar.index));
            out += CycScalar(c) * t;
        }
        return out;
    }

private:
    int n_;
    ReductionSystem sys_;
};

struct SkewGroupReport {
    int n = 2;
    bool orthogonal = true;
    bool complete = true;
    bool cap_generators = true;
    bool identities = true;
    bool kills_beta_minus_one = false;
    bool kills_beta_one = false;
    bool dimensions_match = true;
    std::string first_dimension_mismatch;
    std::vector<std::string> failures;
    bool ok() const {
        return orthogonal && complete && cap_generators && identities && kills_beta_minus_one && !kills_beta_one &&
               dimensions_match;
    }
};

/// dim f_i (R # kG)_k f_j by exact rank over Q(zeta).
inline IntMatrix smash_dimension_matrix(const SmashAlgebra& A, std::size_t k) {
    const int n = A.n();
    std::vector<SmashElement> f;
    for (int i = 0; i < n; ++i) f.push_back(A.idempotent(i));
    const auto monomials = enumerate_basis(A.system(), k);
    IntMatrix dims(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ColumnIndex<SmashElement::Key> cols;
            EchelonBasis<CycScalar> basis;
            for (const auto& m : monomials)
                for (int a = 0; a < n; ++a) {
                    const SmashElement x = A.multiply({f[i], A.basic(m.arrows(), a), f[j]});
                    SparseVector<CycScalar> v;
                    for (const auto& [key, c] : x.terms) v.emplace(cols(key), c);
                    basis.insert(v);
                }
            dims(i, j) = static_cast<unsigned long>(basis.rank());
        }
    return dims;
}

inline SkewGroupReport verify_skew_group(int n, std::size_t max_degree) {
    const SmashAlgebra A(n);
    SkewGroupReport rep;
    rep.n = n;
    auto fail = [&](bool& flag, std::string what) {
        flag = false;
        rep.failures.push_back(std::move(what));
    };
    SmashElement total;
    for (int i = 0; i < n; ++i) {
        total += A.idempotent(i);
        for (int j = 0; j < n; ++j) {
            const SmashElement p = A.multiply(A.idempotent(i), A.idempotent(j));
            if (p != (i == j ? A.idempotent(i) : SmashElement{}))
                fail(rep.orthogonal, "f_" + std::to_string(i) + " f_" + std::to_string(j));
        }
    }
    if (total != A.one()) fail(rep.complete, "sum of f_i != 1");

    for (int i = 0; i < n; ++i) {
        if (A.cap_u(i) != A.multiply(A.u_elem(), A.idempotent(i + 1))) fail(rep.cap_generators, "U_" + std::to_string(i));
        if (A.cap_d(i) != A.multiply(A.idempotent(i + 1), A.d_elem())) fail(rep.cap_generators, "D_" + std::to_string(i));
    }

    auto U = [&](int i) { return A.cap_u(mod(i, n)); };
    auto D = [&](int i) { return A.cap_d(mod(i, n)); };
    for (int i = 0; i < n; ++i) {
        if (!(A.multiply({D(i - 1), U(i - 1), U(i)}) + A.multiply({U(i), U(i + 1), D(i + 1)})).is_zero())
            fail(rep.identities, "D_{i-1}U_{i-1}U_i + U_iU_{i+1}D_{i+1}, i=" + std::to_string(i));
        if (!(A.multiply({D(i), D(i - 1), U(i - 1)}) + A.multiply({U(i + 1), D(i + 1), D(i)})).is_zero())
            fail(rep.identities, "D_iD_{i-1}U_{i-1} + U_{i+1}D_{i+1}D_i, i=" + std::to_string(i));
    }

    auto kills = [&](long b) {
        Parameters p(n);
        p.beta.assign(n, Scalar(b));
        for (const auto& rel : ReductionSystem::build(Preset::QuiverDownUp, p).relations())
            if (!A.image(rel).is_zero()) return false;
        return true;
    };
    rep.kills_beta_minus_one = kills(-1);
    rep.kills_beta_one = kills(1);
    if (!rep.kills_beta_minus_one) rep.failures.push_back("beta = -1 relations not killed");
    if (rep.kills_beta_one) rep.failures.push_back("beta = 1 relations unexpectedly killed");

    Parameters matched(n);
    matched.beta.assign(n, Scalar(-1));
    const auto sys = build_certified(Preset::QuiverDownUp, matched);
    for (std::size_t k = 0; k <= max_degree && rep.dimensions_match; ++k) {
        const IntMatrix h = dimension_matrix(sys, k), s = smash_dimension_matrix(A, k);
        if (h != s) {
            rep.dimensions_match = false;
            rep.first_dimension_mismatch = "degree " + std::to_string(k);
            rep.failures.push_back("dimension mismatch at degree " + std::to_string(k));
        }
    }
    return rep;
}

}  // namespace qdu
