#pragma once

// Linear spans of Elements inside the free path algebra, via exact echelon form.

#include "qdu/element.hpp"
#include "qdu/linalg.hpp"

#include <vector>

namespace qdu {

class ElementSpan {
public:
    explicit ElementSpan(int n) : n_(n) {}

    bool insert(const Element& e) { return basis_.insert(vectorize(e)); }
    bool contains(const Element& e) { return basis_.contains(vectorize(e)); }
    std::size_t rank() const { return basis_.rank(); }

    /// Remainder of e after reduction; zero iff e lies in the span.
    Element reduce(const Element& e) {
        Element r(n_);
        for (const auto& [col, c] : basis_.reduce(vectorize(e))) r.add(columns_.key(col), c);
        return r;
    }

private:
    SparseVector<Scalar> vectorize(const Element& e) {
        SparseVector<Scalar> v;
        for (const auto& [p, c] : e.terms()) v.emplace(columns_(p), c);
        return v;
    }

    int n_;
    ColumnIndex<Path> columns_;
    EchelonBasis<Scalar> basis_;
};

inline std::size_t span_rank(int n, const std::vector<Element>& elements) {
    ElementSpan s(n);
    for (const auto& e : elements) s.insert(e);
    return s.rank();
}

}  // namespace qdu
