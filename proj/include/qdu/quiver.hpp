#pragma once

/**
 * @file quiver.hpp
 * @brief The doubled n-cycle quiver: vertices, arrows, and paths.
 *
 * Vertices are residues 0..n-1. Arrow u_i runs i -> i+1 and d_i runs
 * i+1 -> i (indices mod n). For n = 1 both arrows are loops; for n = 2 there
 * are two parallel arrows in each direction, which is why paths are stored as
 * a base vertex plus an arrow sequence rather than a vertex sequence.
 *
 * Paths compose left to right: p*q is defined when target(p) == source(q).
 */

#include "qdu/linalg.hpp"
#include "qdu/scalar.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qdu {

inline int mod(long long a, int n) {
    const long long r = a % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

enum class Family : std::uint8_t { U, D };

struct Arrow {
    Family family = Family::U;
    int index = 0;

    int source(int n) const { return family == Family::U ? index : mod(index + 1, n); }
    int target(int n) const { return family == Family::U ? mod(index + 1, n) : index; }

    /// Dense id in [0, 2n): u_i -> i, d_i -> n + i.
    int id(int n) const { return family == Family::U ? index : n + index; }
    static Arrow from_id(int id, int n) { return id < n ? Arrow{Family::U, id} : Arrow{Family::D, id - n}; }

    std::string name() const { return (family == Family::U ? "u" : "d") + std::to_string(index); }

    /// Arrow order used by the rewriting term order:
    /// d_0 > d_1 > ... > d_{n-1} > u_0 > ... > u_{n-1}.
    friend std::strong_ordering operator<=>(const Arrow& a, const Arrow& b) {
        if (a.family != b.family) return a.family == Family::D ? std::strong_ordering::greater : std::strong_ordering::less;
        return b.index <=> a.index;
    }
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

inline Arrow u(int i) { return {Family::U, i}; }
inline Arrow d(int i) { return {Family::D, i}; }

class Path {
public:
    Path() = default;

    /// Trivial path e_v.
    static Path trivial(int n, int v) {
        check_n(n);
        return Path(n, mod(v, n), {});
    }

    /// Path from a base vertex and arrows; throws InputError if not composable.
    static Path make(int n, int base, std::vector<Arrow> arrows) {
        check_n(n);
        int at = mod(base, n);
        for (auto& a : arrows) {
            a.index = mod(a.index, n);
            if (a.source(n) != at)
                throw InputError("arrows are not composable at " + a.name());
            at = a.target(n);
        }
        return Path(n, mod(base, n), std::move(arrows));
    }

    /// Path whose source is taken from the first arrow; needs at least one arrow.
    static Path of(int n, std::vector<Arrow> arrows) {
        if (arrows.empty()) throw InputError("Path::of needs at least one arrow");
        check_n(n);
        const int base = Arrow{arrows.front().family, mod(arrows.front().index, n)}.source(n);
        return make(n, base, std::move(arrows));
    }

    int n() const { return n_; }
    int source() const { return base_; }
    int target() const { return arrows_.empty() ? base_ : arrows_.back().target(n_); }
    std::size_t length() const { return arrows_.size(); }
    bool is_trivial() const { return arrows_.empty(); }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    /// Sub-path of arrows [pos, pos + len).
    Path slice(std::size_t pos, std::size_t len) const {
        const int base = pos < arrows_.size() ? arrows_[pos].source(n_) : target();
        return Path(n_, base, {arrows_.begin() + pos, arrows_.begin() + pos + len});
    }

    /// Concatenation assuming target() == q.source().
    Path concat(const Path& q) const {
        Path r = *this;
        r.arrows_.insert(r.arrows_.end(), q.arrows_.begin(), q.arrows_.end());
        return r;
    }

    /// Number of u arrows minus number of d arrows.
    int weight() const {
        int w = 0;
        for (const auto& a : arrows_) w += a.family == Family::U ? 1 : -1;
        return w;
    }

    /// Total order: length, then source, then arrows lexicographically.
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.arrows_.size() <=> b.arrows_.size(); c != 0) return c;
        if (auto c = a.base_ <=> b.base_; c != 0) return c;
        for (std::size_t i = 0; i < a.arrows_.size(); ++i)
            if (auto c = a.arrows_[i] <=> b.arrows_[i]; c != 0) return c;
        return a.n_ <=> b.n_;
    }
    friend bool operator==(const Path&, const Path&) = default;

    /// "u0.u1.d1" or "e2" for a trivial path.
    std::string str() const {
        if (arrows_.empty()) return "e" + std::to_string(base_);
        std::string s;
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            if (i) s += '.';
            s += arrows_[i].name();
        }
        return s;
    }

private:
    Path(int n, int base, std::vector<Arrow> arrows) : n_(n), base_(base), arrows_(std::move(arrows)) {}

    static void check_n(int n) {
        if (n < 1) throw InputError("quiver size n must be positive");
    }

    int n_ = 1;
    int base_ = 0;
    std::vector<Arrow> arrows_;
};

/// Number of arrows i -> j; symmetric, with M[i][i+1] and M[i+1][i] each
/// incremented once per vertex.
inline IntMatrix adjacency_matrix(int n) {
    if (n < 1) throw InputError("adjacency_matrix: n must be positive");
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, mod(i + 1, n)) += 1;
        m(mod(i + 1, n), i) += 1;
    }
    return m;
}

}  // namespace qdu
