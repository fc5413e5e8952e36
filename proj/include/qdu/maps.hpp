#pragma once

// Graded maps of the free path algebra determined by a vertex permutation and
// an arrow -> (scalar, arrow) assignment.

#include "qdu/element.hpp"

#include <string>
#include <vector>

namespace qdu {

class GradedMap {
public:
    explicit GradedMap(int n = 1) : n_(n), vertices_(n), targets_(2 * n), scalars_(2 * n, Scalar(1)) {
        for (int v = 0; v < n; ++v) vertices_[v] = v;
        for (int id = 0; id < 2 * n; ++id) targets_[id] = Arrow::from_id(id, n);
    }

    static GradedMap identity(int n) { return GradedMap(n); }

    /// u_i -> su[i] u_i, d_i -> sd[i] d_i.
    static GradedMap diagonal(const std::vector<Scalar>& su, const std::vector<Scalar>& sd) {
        if (su.size() != sd.size() || su.empty()) throw InputError("diagonal map: length mismatch");
        GradedMap f(static_cast<int>(su.size()));
        for (int i = 0; i < f.n_; ++i) {
            f.scalars_[u(i).id(f.n_)] = su[i];
            f.scalars_[d(i).id(f.n_)] = sd[i];
        }
        f.check_scalars();
        return f;
    }

    /// e_i -> e_{i+k}, u_i -> u_{i+k}, d_i -> d_{i+k}.
    static GradedMap rotation(int n, int k) {
        GradedMap f(n);
        for (int v = 0; v < n; ++v) f.vertices_[v] = mod(v + k, n);
        for (int i = 0; i < n; ++i) {
            f.targets_[u(i).id(n)] = u(mod(i + k, n));
            f.targets_[d(i).id(n)] = d(mod(i + k, n));
        }
        return f;
    }

    /// e_i -> e_{-i}, u_i -> d_{-i-1}, d_i -> u_{-i-1}.
    static GradedMap reflection(int n) {
        GradedMap f(n);
        for (int v = 0; v < n; ++v) f.vertices_[v] = mod(-v, n);
        for (int i = 0; i < n; ++i) {
            f.targets_[u(i).id(n)] = d(mod(-i - 1, n));
            f.targets_[d(i).id(n)] = u(mod(-i - 1, n));
        }
        return f;
    }

    int n() const { return n_; }
    int vertex(int v) const { return vertices_[mod(v, n_)]; }
    Arrow target(const Arrow& a) const { return targets_[a.id(n_)]; }
    const Scalar& scalar(const Arrow& a) const { return scalars_[a.id(n_)]; }

    void set(const Arrow& a, const Arrow& image, const Scalar& c) {
        targets_[a.id(n_)] = image;
        scalars_[a.id(n_)] = c;
    }

    /// Image of a path: the product of the arrow images.
    Element apply(const Path& p) const {
        if (p.is_trivial()) return Element::of(Path::trivial(n_, vertex(p.source())));
        std::vector<Arrow> arrows;
        Scalar c = 1;
        for (const Arrow& a : p.arrows()) {
            arrows.push_back(target(a));
            c *= scalar(a);
        }
        const int base = arrows.front().source(n_);
        for (std::size_t k = 1; k < arrows.size(); ++k)
            if (arrows[k].source(n_) != arrows[k - 1].target(n_)) return Element(n_);
        return Element::of(Path::make(n_, base, std::move(arrows)), c);
    }

    Element apply(const Element& e) const {
        Element r(n_);
        for (const auto& [p, c] : e.terms()) r += c * apply(p);
        return r;
    }

    /// Bijective on vertices and arrows, with every arrow image running
    /// between the images of its endpoints.
    bool is_bijective() const {
        std::vector<bool> seen_v(n_), seen_a(2 * n_);
        for (int v = 0; v < n_; ++v) {
            if (seen_v[vertices_[v]]) return false;
            seen_v[vertices_[v]] = true;
        }
        for (int id = 0; id < 2 * n_; ++id) {
            const Arrow a = Arrow::from_id(id, n_), b = targets_[id];
            if (seen_a[b.id(n_)] || is_zero(scalars_[id])) return false;
            seen_a[b.id(n_)] = true;
            if (b.source(n_) != vertex(a.source(n_)) || b.target(n_) != vertex(a.target(n_))) return false;
        }
        return true;
    }

    /// (f * g)(a) = f(g(a)).
    friend GradedMap operator*(const GradedMap& f, const GradedMap& g) {
        if (f.n_ != g.n_) throw InputError("map composition: size mismatch");
        GradedMap h(f.n_);
        for (int v = 0; v < f.n_; ++v) h.vertices_[v] = f.vertices_[g.vertices_[v]];
        for (int id = 0; id < 2 * f.n_; ++id) {
            const Arrow mid = g.targets_[id];
            h.targets_[id] = f.target(mid);
            h.scalars_[id] = g.scalars_[id] * f.scalar(mid);
        }
        return h;
    }

    std::string str() const {
        std::string s;
        for (int id = 0; id < 2 * n_; ++id) {
            if (!s.empty()) s += ", ";
            s += Arrow::from_id(id, n_).name() + " -> " + to_string(scalars_[id]) + " " + targets_[id].name();
        }
        return s;
    }

private:
    void check_scalars() const {
        for (const auto& c : scalars_)
            if (is_zero(c)) throw InputError("graded map: zero arrow scalar");
    }

    int n_;
    std::vector<int> vertices_;
    std::vector<Arrow> targets_;
    std::vector<Scalar> scalars_;
};

}  // namespace qdu
