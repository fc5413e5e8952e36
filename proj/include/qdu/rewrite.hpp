#pragma once

/**
 * @file rewrite.hpp
 * @brief Oriented reduction systems, normal forms, overlap checking and
 *        monomial bases for the three presentations on the doubled cycle.
 *
 * Term order: longer paths are larger; equal-length paths compare
 * lexicographically with d_0 > ... > d_{n-1} > u_0 > ... > u_{n-1}.
 * Every rule rewrites a monomial leading word into strictly smaller terms with
 * the same endpoints, so reduction terminates. Once the overlap ambiguities
 * are known to resolve, normal forms give the quotient's arithmetic.
 */

#include "qdu/element.hpp"
#include "qdu/params.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qdu {

/// Custom is for hand-assembled systems (see ReductionSystem::from_rules).
enum class Preset { QuiverDownUp, Preprojective, GradedDownUp, Custom };

inline std::string to_string(Preset p) {
    switch (p) {
        case Preset::QuiverDownUp: return "quiver-down-up";
        case Preset::Preprojective: return "preprojective";
        case Preset::GradedDownUp: return "graded-down-up";
        case Preset::Custom: return "custom";
    }
    return "?";
}

struct RewriteRule {
    Path lhs;
    Element rhs;
    std::string label;

    /// lhs - rhs as an element of the free path algebra.
    Element relation() const { return Element::of(lhs) - rhs; }
};

class ReductionSystem {
public:
    /// quiver-down-up uses params (n = params.n); preprojective uses params.n
    /// only; graded-down-up ignores params and lives on one vertex.
    static ReductionSystem build(Preset preset, const Parameters& params = Parameters(1)) {
        params.validate();
        ReductionSystem sys;
        sys.preset_ = preset;
        switch (preset) {
            case Preset::QuiverDownUp: {
                const int n = params.n;
                sys.n_ = n;
                sys.params_ = params;
                for (int i = 0; i < n; ++i) {
                    Element r1(n);
                    r1.add(Path::of(n, {u(i), d(i), u(i)}), params.a(i));
                    r1.add(Path::of(n, {u(i), u(i + 1), d(i + 1)}), params.b(i));
                    r1.add(Path::of(n, {u(i)}), params.g(i));
                    sys.add_rule(Path::of(n, {d(i - 1), u(i - 1), u(i)}), std::move(r1), "duu_" + std::to_string(i));
                }
                for (int i = 0; i < n; ++i) {
                    Element r2(n);
                    r2.add(Path::of(n, {d(i), u(i), d(i)}), params.a(i));
                    r2.add(Path::of(n, {u(i + 1), d(i + 1), d(i)}), params.b(i));
                    r2.add(Path::of(n, {d(i)}), params.g(i));
                    sys.add_rule(Path::of(n, {d(i), d(i - 1), u(i - 1)}), std::move(r2), "ddu_" + std::to_string(i));
                }
                break;
            }
            case Preset::Preprojective: {
                const int n = params.n;
                sys.n_ = n;
                for (int i = 0; i < n; ++i)
                    sys.add_rule(Path::of(n, {d(i), u(i)}), Element::of(Path::of(n, {u(i + 1), d(i + 1)})),
                                 "du_" + std::to_string(i));
                break;
            }
            case Preset::Custom:
                throw InputError("use ReductionSystem::from_rules for custom systems");
            case Preset::GradedDownUp: {
                sys.n_ = 1;
                sys.add_rule(Path::of(1, {d(0), d(0), u(0)}), Element::of(Path::of(1, {u(0), d(0), d(0)}), -1), "ddu");
                sys.add_rule(Path::of(1, {d(0), u(0), u(0)}), Element::of(Path::of(1, {u(0), u(0), d(0)}), -1), "duu");
                break;
            }
        }
        return sys;
    }

    /// Arbitrary rules (lhs, rhs); each rhs must be oriented below its lhs.
    static ReductionSystem from_rules(int n, std::vector<std::pair<Path, Element>> rules) {
        ReductionSystem sys;
        sys.n_ = n;
        sys.preset_ = Preset::Custom;
        for (std::size_t k = 0; k < rules.size(); ++k)
            sys.add_rule(std::move(rules[k].first), std::move(rules[k].second), "rule_" + std::to_string(k));
        return sys;
    }

    int n() const { return n_; }
    Preset preset() const { return preset_; }
    const std::optional<Parameters>& params() const { return params_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    std::size_t max_lhs_length() const { return max_lhs_; }

    /// True once the overlap check has passed (see certified()).
    bool is_certified() const { return certified_; }

    /// Defining relations lhs - rhs, in rule order.
    std::vector<Element> relations() const {
        std::vector<Element> out;
        for (const auto& r : rules_) out.push_back(r.relation());
        return out;
    }

    struct Match {
        std::size_t position;
        std::size_t rule;
    };

    /// Leftmost occurrence of any leading word inside p.
    std::optional<Match> find_leftmost(const Path& p) const {
        const auto& arrows = p.arrows();
        for (std::size_t pos = 0; pos < arrows.size(); ++pos) {
            const auto& candidates = by_first_[arrows[pos].id(n_)];
            for (std::size_t r : candidates) {
                const auto& lhs = rules_[r].lhs.arrows();
                if (pos + lhs.size() > arrows.size()) continue;
                if (std::equal(lhs.begin(), lhs.end(), arrows.begin() + static_cast<std::ptrdiff_t>(pos)))
                    return Match{pos, r};
            }
        }
        return std::nullopt;
    }

    /// True when some leading word is a suffix of `arrows` (used by enumeration).
    bool has_lhs_suffix(const std::vector<Arrow>& arrows) const {
        for (const auto& r : rules_) {
            const auto& lhs = r.lhs.arrows();
            if (lhs.size() <= arrows.size() && std::equal(lhs.rbegin(), lhs.rend(), arrows.rbegin())) return true;
        }
        return false;
    }

private:
    friend ReductionSystem certified(const ReductionSystem&);

    void add_rule(Path lhs, Element rhs, std::string label) {
        for (const auto& [p, c] : rhs.terms())
            if (!(p < lhs) || p.source() != lhs.source() || p.target() != lhs.target())
                throw InputError("rule " + label + " is not oriented by the term order");
        for (const auto& r : rules_)
            if (r.lhs == lhs) throw InputError("duplicate leading word " + lhs.str());
        if (by_first_.empty()) by_first_.resize(2 * n_);
        by_first_[lhs.arrows().front().id(n_)].push_back(rules_.size());
        max_lhs_ = std::max(max_lhs_, lhs.length());
        rules_.push_back({std::move(lhs), std::move(rhs), std::move(label)});
    }

    int n_ = 1;
    Preset preset_ = Preset::QuiverDownUp;
    std::optional<Parameters> params_;
    std::vector<RewriteRule> rules_;
    std::vector<std::vector<std::size_t>> by_first_;
    std::size_t max_lhs_ = 0;
    bool certified_ = false;
};

namespace detail {

/// Reduces the largest pending term first; every replacement term is smaller
/// than the term it replaces, so each path is finalized at most once.
/// When depth is non-null it receives the longest chain of rule applications.
inline Element reduce_terms(const ReductionSystem& sys, std::map<Path, std::pair<Scalar, int>> pending, int* depth) {
    Element result(sys.n());
    int max_depth = 0;
    while (!pending.empty()) {
        auto it = std::prev(pending.end());
        const Path p = it->first;
        const auto [c, level] = it->second;
        pending.erase(it);
        max_depth = std::max(max_depth, level);
        const auto hit = sys.find_leftmost(p);
        if (!hit) {
            result.add(p, c);
            continue;
        }
        const auto& rule = sys.rules()[hit->rule];
        const Path prefix = p.slice(0, hit->position);
        const std::size_t after = hit->position + rule.lhs.length();
        const Path suffix = p.slice(after, p.length() - after);
        for (const auto& [q, e] : rule.rhs.terms()) {
            Path r = prefix.concat(q).concat(suffix);
            auto [slot, inserted] = pending.try_emplace(std::move(r), c * e, level + 1);
            if (!inserted) {
                slot->second.first += c * e;
                slot->second.second = std::max(slot->second.second, level + 1);
                if (is_zero(slot->second.first)) pending.erase(slot);
            }
        }
    }
    if (depth) *depth = max_depth;
    return result;
}

inline std::map<Path, std::pair<Scalar, int>> as_pending(const Element& a, int level) {
    std::map<Path, std::pair<Scalar, int>> m;
    for (const auto& [p, c] : a.terms()) m.emplace(p, std::make_pair(c, level));
    return m;
}

}  // namespace detail

/// Normal form: no term contains a leading word. Linear in a.
inline Element normal_form(const ReductionSystem& sys, const Element& a) {
    if (a.n() != sys.n()) throw InputError("normal_form: element and system have different n");
    return detail::reduce_terms(sys, detail::as_pending(a, 0), nullptr);
}

/// One rewriting step at a chosen occurrence: replaces the lhs of `rule`
/// found at arrow position `pos` of p.
inline Element reduce_at(const ReductionSystem& sys, const Path& p, std::size_t pos, std::size_t rule) {
    const auto& r = sys.rules().at(rule);
    const std::size_t len = r.lhs.length();
    if (pos + len > p.length() || p.slice(pos, len) != r.lhs)
        throw InputError("reduce_at: rule " + r.label + " does not occur at position " + std::to_string(pos));
    return Element::of(p.slice(0, pos)) * r.rhs * Element::of(p.slice(pos + len, p.length() - pos - len));
}

struct OverlapResult {
    Path word;
    std::size_t first_rule = 0;   // rule applied to the prefix
    std::size_t second_rule = 0;  // rule applied to the suffix
    std::size_t offset = 0;       // position of the second lhs inside word
    Element via_first;
    Element via_second;
    Element difference;
    bool resolved = false;
};

struct ConfluenceReport {
    std::vector<OverlapResult> overlaps;
    bool confluent = true;
    /// Longest rule-application chain seen; bounds the parameter degree of
    /// every overlap difference.
    int reduction_depth = 0;
};

/// Enumerates every overlap (proper suffix of one leading word equal to a
/// proper prefix of another, plus inclusions) and reduces both ways.
inline ConfluenceReport check_confluence(const ReductionSystem& sys) {
    ConfluenceReport report;
    const auto& rules = sys.rules();
    auto examine = [&](std::size_t r1, std::size_t r2, const Path& word, std::size_t offset) {
        OverlapResult o;
        o.word = word;
        o.first_rule = r1;
        o.second_rule = r2;
        o.offset = offset;
        int d1 = 0, d2 = 0;
        o.via_first = detail::reduce_terms(sys, detail::as_pending(reduce_at(sys, word, 0, r1), 1), &d1);
        o.via_second = detail::reduce_terms(sys, detail::as_pending(reduce_at(sys, word, offset, r2), 1), &d2);
        o.difference = o.via_first - o.via_second;
        o.resolved = o.difference.is_zero();
        report.reduction_depth = std::max({report.reduction_depth, d1, d2});
        report.confluent = report.confluent && o.resolved;
        report.overlaps.push_back(std::move(o));
    };
    for (std::size_t r1 = 0; r1 < rules.size(); ++r1) {
        const auto& a = rules[r1].lhs.arrows();
        for (std::size_t r2 = 0; r2 < rules.size(); ++r2) {
            const auto& b = rules[r2].lhs.arrows();
            for (std::size_t k = 1; k < std::min(a.size(), b.size()); ++k) {
                if (!std::equal(a.end() - static_cast<std::ptrdiff_t>(k), a.end(), b.begin())) continue;
                const Path word = rules[r1].lhs.concat(Path::make(sys.n(), b[k].source(sys.n()), {b.begin() + static_cast<std::ptrdiff_t>(k), b.end()}));
                examine(r1, r2, word, a.size() - k);
            }
            // inclusion ambiguity: b strictly inside a
            if (r1 != r2 && b.size() < a.size())
                for (std::size_t pos = 0; pos + b.size() <= a.size(); ++pos)
                    if (std::equal(b.begin(), b.end(), a.begin() + static_cast<std::ptrdiff_t>(pos)))
                        examine(r1, r2, rules[r1].lhs, pos);
        }
    }
    return report;
}

/// Copy of sys marked as confluent; throws PreconditionError if any overlap fails.
inline ReductionSystem certified(const ReductionSystem& sys) {
    const auto report = check_confluence(sys);
    if (!report.confluent) throw PreconditionError("reduction system is not confluent");
    ReductionSystem out = sys;
    out.certified_ = true;
    return out;
}

inline ReductionSystem build_certified(Preset preset, const Parameters& params = Parameters(1)) {
    return certified(ReductionSystem::build(preset, params));
}

/// Membership in the relation ideal; requires a certified system.
inline bool is_zero_in_quotient(const ReductionSystem& sys, const Element& a) {
    if (!sys.is_certified())
        throw PreconditionError("is_zero_in_quotient needs a system whose confluence was verified");
    return normal_form(sys, a).is_zero();
}

// ---------------------------------------------------------------------------
// Confluence over the parameter space

struct GridConfluenceReport {
    int n = 0;
    int degree_bound = 0;
    std::size_t points = 0;
    bool confluent = true;
    std::optional<Parameters> first_failure;
};

/// Overlap differences are polynomials in the 3n parameters whose degree is
/// at most the reduction depth D measured at a generic point. A polynomial of
/// total degree <= D vanishes identically iff it vanishes on every grid point
/// that differs from the base point in at most D coordinates, each taking
/// one of D+1 distinct values; this function evaluates exactly that set.
inline GridConfluenceReport check_confluence_grid(int n, const std::vector<Scalar>& values) {
    GridConfluenceReport rep;
    rep.n = n;
    Parameters generic(n);
    for (int i = 0; i < n; ++i) {
        generic.alpha[i] = Scalar(2 * i + 3, 7);
        generic.beta[i] = Scalar(-(3 * i + 2), 5);
        generic.gamma[i] = Scalar(i + 5, 11);
    }
    rep.degree_bound = check_confluence(ReductionSystem::build(Preset::QuiverDownUp, generic)).reduction_depth;
    const int D = rep.degree_bound;
    if (static_cast<int>(values.size()) < D + 1)
        throw InputError("grid needs at least degree_bound + 1 distinct values");
    const int coords = 3 * n;
    auto set_coord = [&](Parameters& p, int c, const Scalar& v) {
        auto& vec = c < n ? p.alpha : (c < 2 * n ? p.beta : p.gamma);
        vec[c % n] = v;
    };
    Parameters base(n);
    for (int c = 0; c < coords; ++c) set_coord(base, c, values[0]);

    std::vector<int> chosen;
    // Recursive walk over subsets of at most D coordinates with values[1..D].
    auto walk = [&](auto&& self, int start, Parameters& cur) -> void {
        ++rep.points;
        if (!check_confluence(ReductionSystem::build(Preset::QuiverDownUp, cur)).confluent && rep.confluent) {
            rep.confluent = false;
            rep.first_failure = cur;
        }
        if (static_cast<int>(chosen.size()) == D) return;
        for (int c = start; c < coords; ++c) {
            chosen.push_back(c);
            for (int v = 1; v <= D; ++v) {
                set_coord(cur, c, values[v]);
                self(self, c + 1, cur);
            }
            set_coord(cur, c, values[0]);
            chosen.pop_back();
        }
    };
    Parameters cur = base;
    walk(walk, 0, cur);
    return rep;
}

// ---------------------------------------------------------------------------
// Monomial bases

/// All length-k paths containing no leading word as a factor, in path order.
inline std::vector<Path> enumerate_basis(const ReductionSystem& sys, std::size_t k) {
    const int n = sys.n();
    std::vector<Path> out;
    std::vector<Arrow> word;
    auto extend = [&](auto&& self, int base, int at) -> void {
        if (word.size() == k) {
            out.push_back(Path::make(n, base, word));
            return;
        }
        for (int id = 0; id < 2 * n; ++id) {
            const Arrow a = Arrow::from_id(id, n);
            if (a.source(n) != at) continue;
            word.push_back(a);
            if (!sys.has_lhs_suffix(word)) self(self, base, a.target(n));
            word.pop_back();
        }
    };
    for (int v = 0; v < n; ++v) extend(extend, v, v);
    std::sort(out.begin(), out.end());
    return out;
}

/// (H_k)_{ij} = number of normal paths i -> j of length k, counted by
/// transfer-matrix iteration over automaton states (source, current vertex,
/// last max_lhs-1 arrows).
inline IntMatrix dimension_matrix(const ReductionSystem& sys, std::size_t k) {
    const int n = sys.n();
    const std::size_t keep = sys.max_lhs_length() > 0 ? sys.max_lhs_length() - 1 : 0;
    struct State {
        int source;
        int at;
        std::vector<Arrow> tail;
        auto operator<=>(const State&) const = default;
    };
    std::map<State, mpz_class> layer;
    for (int v = 0; v < n; ++v) layer[State{v, v, {}}] = 1;
    for (std::size_t step = 0; step < k; ++step) {
        std::map<State, mpz_class> next;
        for (const auto& [s, count] : layer) {
            for (int id = 0; id < 2 * n; ++id) {
                const Arrow a = Arrow::from_id(id, n);
                if (a.source(n) != s.at) continue;
                std::vector<Arrow> w = s.tail;
                w.push_back(a);
                if (sys.has_lhs_suffix(w)) continue;
                if (w.size() > keep) w.erase(w.begin(), w.end() - static_cast<std::ptrdiff_t>(keep));
                next[State{s.source, a.target(n), std::move(w)}] += count;
            }
        }
        layer = std::move(next);
    }
    IntMatrix m(n, n);
    for (const auto& [s, count] : layer) m(s.source, s.at) += count;
    return m;
}

/// The quiver down-up basis shape: from source s, a run u_s..u_{s+a-1}
/// reaching v, then (d_{v-1}u_{v-1})^j, then d_{v-1}d_{v-2}... of length c,
/// over all a + 2j + c = k.
inline std::vector<Path> closed_shape_basis(int n, std::size_t k) {
    std::vector<Path> out;
    for (int s = 0; s < n; ++s)
        for (std::size_t j = 0; 2 * j <= k; ++j)
            for (std::size_t a = 0; a + 2 * j <= k; ++a) {
                const std::size_t c = k - 2 * j - a;
                std::vector<Arrow> w;
                for (std::size_t t = 0; t < a; ++t) w.push_back(u(s + static_cast<int>(t)));
                const int v = mod(s + static_cast<long long>(a), n);
                for (std::size_t t = 0; t < j; ++t) {
                    w.push_back(d(v - 1));
                    w.push_back(u(v - 1));
                }
                for (std::size_t t = 0; t < c; ++t) w.push_back(d(v - 1 - static_cast<int>(t)));
                out.push_back(Path::make(n, s, w));
            }
    std::sort(out.begin(), out.end());
    return out;
}

struct BasisReport {
    std::size_t degree = 0;
    std::vector<Path> paths;
    IntMatrix dimensions;
    /// Set for the quiver down-up preset only.
    std::optional<bool> matches_closed_shape;
    bool consistent = true;  // enumeration agrees with the transfer-matrix counts (and closed shape)
};

inline BasisReport basis_report(const ReductionSystem& sys, std::size_t k) {
    BasisReport rep;
    rep.degree = k;
    rep.paths = enumerate_basis(sys, k);
    rep.dimensions = dimension_matrix(sys, k);
    IntMatrix counted(sys.n(), sys.n());
    for (const auto& p : rep.paths) counted(p.source(), p.target()) += 1;
    rep.consistent = counted == rep.dimensions;
    if (sys.preset() == Preset::QuiverDownUp) {
        rep.matches_closed_shape = closed_shape_basis(sys.n(), k) == rep.paths;
        rep.consistent = rep.consistent && *rep.matches_closed_shape;
    }
    return rep;
}

}  // namespace qdu
