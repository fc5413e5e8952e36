#pragma once

// Isomorphisms between quiver down-up algebras: the scale, rotate and reflect
// constructors, witness verification, a ratio-constraint solver, and the
// graded isomorphism decision over the dihedral search space.

#include "qdu/maps.hpp"
#include "qdu/rewrite.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qdu {

// ---------------------------------------------------------------- constructors

/// alpha'_i = l_i/l_{i-1} alpha_i, beta'_i = l_{i+1}/l_{i-1} beta_i, gamma'_i = gamma_i/l_{i-1}.
inline Parameters scale_params(const Parameters& p, const std::vector<Scalar>& lambda) {
    const int n = p.n;
    if (static_cast<int>(lambda.size()) != n) throw InputError("scale: lambda length mismatch");
    for (const auto& l : lambda)
        if (is_zero(l)) throw InputError("scale: zero lambda entry");
    auto L = [&](int i) { return lambda[mod(i, n)]; };
    Parameters q(n);
    for (int i = 0; i < n; ++i) {
        q.alpha[i] = L(i) / L(i - 1) * p.a(i);
        q.beta[i] = L(i + 1) / L(i - 1) * p.b(i);
        q.gamma[i] = p.g(i) / L(i - 1);
    }
    return q;
}

/// alpha'_i = alpha_{i-1} (likewise beta, gamma).
inline Parameters rotate_params(const Parameters& p, int k = 1) {
    Parameters q(p.n);
    for (int i = 0; i < p.n; ++i) {
        q.alpha[i] = p.a(i - k);
        q.beta[i] = p.b(i - k);
        q.gamma[i] = p.g(i - k);
    }
    return q;
}

/// alpha'_i = -alpha_m/beta_m, beta'_i = 1/beta_m, gamma'_i = -gamma_m/beta_m, m = n-i-1.
inline Parameters reflect_params(const Parameters& p) {
    if (!p.beta_nonzero()) throw InputError("reflect: beta_" + std::to_string(p.first_zero_beta()) + " = 0");
    Parameters q(p.n);
    for (int i = 0; i < p.n; ++i) {
        const int m = p.n - i - 1;
        q.alpha[i] = -p.a(m) / p.b(m);
        q.beta[i] = 1 / p.b(m);
        q.gamma[i] = -p.g(m) / p.b(m);
    }
    return q;
}

/// phi_lambda: u_i -> l_i u_i, d_i -> d_i.
inline GradedMap scale_map(const std::vector<Scalar>& lambda) {
    return GradedMap::diagonal(lambda, std::vector<Scalar>(lambda.size(), Scalar(1)));
}

enum class Orientation { Rotation, Reflection };

inline std::string to_string(Orientation o) { return o == Orientation::Rotation ? "rotation" : "reflection"; }

struct IsoWitness {
    Orientation orientation = Orientation::Rotation;
    int shift = 0;
    std::vector<Scalar> lambda;
    GradedMap map;
};

/// psi^k o (pi) o phi_lambda, together with the parameters it lands on.
inline IsoWitness make_witness(Orientation o, int k, std::vector<Scalar> lambda) {
    const int n = static_cast<int>(lambda.size());
    GradedMap f = scale_map(lambda);
    if (o == Orientation::Reflection) f = GradedMap::reflection(n) * f;
    f = GradedMap::rotation(n, k) * f;
    return IsoWitness{o, mod(k, n), std::move(lambda), std::move(f)};
}

inline Parameters apply_witness(const IsoWitness& w, const Parameters& p) {
    Parameters q = scale_params(p, w.lambda);
    if (w.orientation == Orientation::Reflection) q = reflect_params(q);
    return rotate_params(q, w.shift);
}

struct WitnessReport {
    bool bijective = true;
    std::vector<std::pair<std::string, Element>> defects;  // relation label, nonzero image in H(tgt)
    bool ok() const { return bijective && defects.empty(); }
};

/// Every relation of H(src) must map to zero in H(tgt).
inline WitnessReport verify_witness(const IsoWitness& w, const Parameters& src, const Parameters& tgt) {
    if (src.n != tgt.n || w.map.n() != src.n) throw InputError("verify_witness: size mismatch");
    WitnessReport rep;
    rep.bijective = w.map.is_bijective();
    const auto src_sys = ReductionSystem::build(Preset::QuiverDownUp, src);
    const auto tgt_sys = build_certified(Preset::QuiverDownUp, tgt);
    for (const auto& rule : src_sys.rules()) {
        const Element img = normal_form(tgt_sys, w.map.apply(rule.relation()));
        if (!img.is_zero()) rep.defects.emplace_back(rule.label, img);
    }
    return rep;
}

// ---------------------------------------------------------------- ratio solver

/// lambda_a = c * lambda_b
struct RatioConstraint {
    int a = 0;
    int b = 0;
    Scalar c = 1;
};

struct Inconsistency {
    std::vector<RatioConstraint> cycle;  // closes a loop a -> ... -> a
    Scalar ratio;                        // product around the loop, != 1
};

using RatioSolution = std::variant<std::vector<Scalar>, Inconsistency>;

/// Weighted union-find; each component's smallest index is set to 1.
inline RatioSolution solve_ratio_system(const std::vector<RatioConstraint>& constraints, int n) {
    std::vector<int> parent(n);
    std::vector<Scalar> ratio(n, Scalar(1));  // lambda_x = ratio[x] * lambda_parent[x]
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](auto&& self, int x) -> int {
        if (parent[x] == x) return x;
        const int root = self(self, parent[x]);
        if (parent[x] != root) {
            ratio[x] *= ratio[parent[x]];
            parent[x] = root;
        }
        return root;
    };
    std::vector<std::vector<std::pair<int, std::size_t>>> tree(n);  // accepted edges
    for (std::size_t e = 0; e < constraints.size(); ++e) {
        const auto& rc = constraints[e];
        if (rc.a < 0 || rc.a >= n || rc.b < 0 || rc.b >= n) throw InputError("ratio constraint index out of range");
        if (is_zero(rc.c)) throw InputError("ratio constraint with zero scalar");
        const int ra = find(find, rc.a), rb = find(find, rc.b);
        if (ra == rb) {
            // lambda_a / lambda_b is already fixed to ratio[a] / ratio[b]
            const Scalar loop = rc.c * ratio[rc.b] / ratio[rc.a];
            if (loop == 1) continue;
            Inconsistency bad;
            bad.ratio = loop;
            // tree path b -> a, then the new edge a -> b
            std::vector<int> prev(n, -1);
            std::vector<std::size_t> via(n);
            std::deque<int> queue{rc.b};
            prev[rc.b] = rc.b;
            while (!queue.empty()) {
                const int x = queue.front();
                queue.pop_front();
                for (const auto& [y, edge] : tree[x])
                    if (prev[y] < 0) {
                        prev[y] = x;
                        via[y] = edge;
                        queue.push_back(y);
                    }
            }
            std::vector<RatioConstraint> path;
            for (int x = rc.a; x != rc.b; x = prev[x]) path.push_back(constraints[via[x]]);
            bad.cycle.assign(path.rbegin(), path.rend());
            bad.cycle.push_back(rc);
            return bad;
        }
        // attach the larger root below the smaller one
        const Scalar lam = rc.c * ratio[rc.b] / ratio[rc.a];  // lambda_ra = lam * lambda_rb
        if (ra < rb) {
            parent[rb] = ra;
            ratio[rb] = 1 / lam;
        } else {
            parent[ra] = rb;
            ratio[ra] = lam;
        }
        tree[rc.a].emplace_back(rc.b, e);
        tree[rc.b].emplace_back(rc.a, e);
    }
    std::vector<Scalar> lambda(n);
    for (int i = 0; i < n; ++i) {
        find(find, i);
        lambda[i] = ratio[i];
    }
    return lambda;
}

// ---------------------------------------------------------------- decision

/// coefficient * prod lambda_j^{e_j}
struct LambdaTerm {
    Scalar coeff;
    std::map<int, int> exps;

    LambdaTerm& times(int j, int e) {
        if ((exps[j] += e) == 0) exps.erase(j);
        return *this;
    }
};

struct SymbolicParams {
    int n = 0;
    std::vector<LambdaTerm> alpha, beta;
};

inline SymbolicParams symbolic_scale(const Parameters& p) {
    SymbolicParams s{p.n, {}, {}};
    for (int i = 0; i < p.n; ++i) {
        s.alpha.push_back(LambdaTerm{p.a(i), {}}.times(i, 1).times(mod(i - 1, p.n), -1));
        s.beta.push_back(LambdaTerm{p.b(i), {}}.times(mod(i + 1, p.n), 1).times(mod(i - 1, p.n), -1));
    }
    return s;
}

inline SymbolicParams symbolic_reflect(const SymbolicParams& s) {
    SymbolicParams r{s.n, {}, {}};
    for (int i = 0; i < s.n; ++i) {
        const int m = s.n - i - 1;
        LambdaTerm b{1 / s.beta[m].coeff, {}};
        for (const auto& [j, e] : s.beta[m].exps) b.times(j, -e);
        LambdaTerm a{-s.alpha[m].coeff / s.beta[m].coeff, s.alpha[m].exps};
        for (const auto& [j, e] : s.beta[m].exps) a.times(j, -e);
        r.alpha.push_back(std::move(a));
        r.beta.push_back(std::move(b));
    }
    return r;
}

inline SymbolicParams symbolic_rotate(const SymbolicParams& s, int k) {
    SymbolicParams r{s.n, {}, {}};
    for (int i = 0; i < s.n; ++i) {
        r.alpha.push_back(s.alpha[mod(i - k, s.n)]);
        r.beta.push_back(s.beta[mod(i - k, s.n)]);
    }
    return r;
}

struct CaseCertificate {
    Orientation orientation;
    int shift;
    std::string reason;
    std::optional<Inconsistency> cycle;
};

struct IsoVerdict {
    enum class Kind { Isomorphic, NotIsomorphic, Unsupported } kind = Kind::Unsupported;
    std::optional<IsoWitness> witness;
    std::vector<CaseCertificate> certificates;
    std::string note;
};

inline std::string to_string(IsoVerdict::Kind k) {
    switch (k) {
        case IsoVerdict::Kind::Isomorphic: return "isomorphic";
        case IsoVerdict::Kind::NotIsomorphic: return "not-isomorphic";
        default: return "unsupported";
    }
}

/// Equations term == target as ratio constraints; nullopt reason on a failure
/// not expressible as a ratio loop.
inline std::optional<std::string> to_constraint(const LambdaTerm& t, const Scalar& target, const std::string& what,
                                                std::vector<RatioConstraint>& out) {
    if (is_zero(t.coeff) || is_zero(target)) {
        if (is_zero(t.coeff) != is_zero(target)) return what + ": zero pattern differs";
        return std::nullopt;
    }
    if (t.exps.empty()) {
        if (t.coeff != target) return what + ": constant " + to_string(t.coeff) + " != " + to_string(target);
        return std::nullopt;
    }
    int a = -1, b = -1;
    for (const auto& [j, e] : t.exps) {
        if (e == 1 && a < 0) a = j;
        else if (e == -1 && b < 0) b = j;
        else return what + ": lambda monomial is not a simple ratio";
    }
    if (a < 0 || b < 0) return what + ": lambda monomial is not a simple ratio";
    out.push_back(RatioConstraint{a, b, target / t.coeff});
    return std::nullopt;
}

inline IsoVerdict decide_graded_iso(const Parameters& p, const Parameters& q) {
    IsoVerdict v;
    if (p.n != q.n) {
        v.note = "different n";
        v.kind = IsoVerdict::Kind::NotIsomorphic;
        return v;
    }
    if (p.n < 3) {
        v.note = "graded isomorphism decision needs n >= 3";
        return v;
    }
    if (!p.gamma_zero() || !q.gamma_zero()) {
        v.note = "gamma must be zero";
        return v;
    }
    if (!p.beta_nonzero() || !q.beta_nonzero()) {
        v.note = "beta must be nonzero";
        return v;
    }
    const int n = p.n;
    const SymbolicParams scaled = symbolic_scale(p);
    for (Orientation o : {Orientation::Rotation, Orientation::Reflection}) {
        const SymbolicParams base = o == Orientation::Reflection ? symbolic_reflect(scaled) : scaled;
        for (int k = 0; k < n; ++k) {
            const SymbolicParams s = symbolic_rotate(base, k);
            std::vector<RatioConstraint> cons;
            std::optional<std::string> bad;
            for (int i = 0; i < n && !bad; ++i) bad = to_constraint(s.beta[i], q.beta[i], "beta_" + std::to_string(i), cons);
            for (int i = 0; i < n && !bad; ++i)
                bad = to_constraint(s.alpha[i], q.alpha[i], "alpha_" + std::to_string(i), cons);
            if (bad) {
                v.certificates.push_back({o, k, *bad, std::nullopt});
                continue;
            }
            auto sol = solve_ratio_system(cons, n);
            if (auto* inc = std::get_if<Inconsistency>(&sol)) {
                v.certificates.push_back({o, k, "inconsistent ratio loop", *inc});
                continue;
            }
            IsoWitness w = make_witness(o, k, std::get<std::vector<Scalar>>(sol));
            if (apply_witness(w, p) != q || !verify_witness(w, p, q).ok()) {
                v.certificates.push_back({o, k, "solution failed verification", std::nullopt});
                continue;
            }
            v.kind = IsoVerdict::Kind::Isomorphic;
            v.witness = std::move(w);
            return v;
        }
    }
    v.kind = IsoVerdict::Kind::NotIsomorphic;
    return v;
}

}  // namespace qdu
