#pragma once

// Seeded random generators used by the probes and property tests.

#include "qdu/element.hpp"
#include "qdu/params.hpp"

#include <random>
#include <vector>

namespace qdu {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, int range = 5, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-range, range), den(1, range);
    while (true) {
        Scalar s(num(rng), den(rng));
        s.canonicalize();
        if (!nonzero || !is_zero(s)) return s;
    }
}

inline int random_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Uniform walk of random length <= max_len from a random (or given) vertex.
inline Path random_path(Rng& rng, int n, std::size_t max_len, int base = -1) {
    if (base < 0) base = random_int(rng, 0, n - 1);
    int at = base;
    std::vector<Arrow> arrows;
    const int l = random_int(rng, 0, static_cast<int>(max_len));
    for (int k = 0; k < l; ++k) {
        // out of vertex `at`: u_at or d_{at-1}
        const Arrow a = random_int(rng, 0, 1) ? u(at) : d(mod(at - 1, n));
        arrows.push_back(a);
        at = a.target(n);
    }
    return Path::make(n, base, arrows);
}

inline Element random_element(Rng& rng, int n, std::size_t max_len, int terms = 4) {
    Element e(n);
    for (int t = 0; t < terms; ++t) e.add(random_path(rng, n, max_len), random_scalar(rng));
    return e;
}

inline Parameters random_params(Rng& rng, int n, bool beta_nonzero = true, bool with_gamma = true) {
    Parameters p(n);
    for (int i = 0; i < n; ++i) {
        p.alpha[i] = random_scalar(rng);
        p.beta[i] = random_scalar(rng, 5, beta_nonzero);
        p.gamma[i] = with_gamma ? random_scalar(rng) : Scalar(0);
    }
    return p;
}

}  // namespace qdu
