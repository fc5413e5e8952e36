#pragma once

/**
 * @file element.hpp
 * @brief Elements of the free path algebra kQ and their text format.
 *
 * An Element is a finite map Path -> nonzero Scalar. Zero is the empty map.
 * Text format (round-trips exactly): terms `c * a1.a2...ak @v` joined by
 * " + ", where c is `p/q` or `p`, each ai is `u<i>` or `d<i>`, and `@v` is
 * the source vertex; a trivial path is written `c @v` (so `1 @2` is e_2).
 * The zero element prints as `0`.
 */

#include "qdu/quiver.hpp"
#include "qdu/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace qdu {

class Element {
public:
    using TermMap = std::map<Path, Scalar>;

    explicit Element(int n = 1) : n_(n) {
        if (n < 1) throw InputError("Element: n must be positive");
    }

    static Element of(const Path& p, const Scalar& c = 1) {
        Element e(p.n());
        e.add(p, c);
        return e;
    }

    /// Sum of all trivial paths, the identity of kQ.
    static Element one(int n) {
        Element e(n);
        for (int v = 0; v < n; ++v) e.add(Path::trivial(n, v), 1);
        return e;
    }

    int n() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Path& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    /// Adds c*p in place, dropping the term if it cancels.
    void add(const Path& p, const Scalar& c) {
        if (p.n() != n_) throw InputError("path over a different quiver size");
        if (qdu::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (qdu::is_zero(it->second)) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        check_n(o);
        for (const auto& [p, c] : o.terms_) add(p, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        check_n(o);
        for (const auto& [p, c] : o.terms_) add(p, -c);
        return *this;
    }
    Element& operator*=(const Scalar& s) {
        if (qdu::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [p, c] : terms_) c *= s;
        return *this;
    }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Scalar(-1); }
    friend Element operator*(const Scalar& s, Element a) { return a *= s; }
    friend Element operator*(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    /// Component spanned by paths of the given length, source and target.
    Element component(std::size_t length, int source, int target) const {
        Element r(n_);
        for (const auto& [p, c] : terms_)
            if (p.length() == length && p.source() == source && p.target() == target) r.terms_.emplace(p, c);
        return r;
    }

    /// Distinct (length, source, target) keys present in the support.
    std::vector<std::tuple<std::size_t, int, int>> homogeneous_keys() const {
        std::vector<std::tuple<std::size_t, int, int>> keys;
        for (const auto& [p, c] : terms_) {
            auto key = std::make_tuple(p.length(), p.source(), p.target());
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
        }
        return keys;
    }

    std::size_t max_length() const { return terms_.empty() ? 0 : terms_.rbegin()->first.length(); }

    /// Leading terms first.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += to_string(it->second);
            if (!it->first.is_trivial()) s += " * " + it->first.str();
            s += " @" + std::to_string(it->first.source());
        }
        return s;
    }

    static Element parse(int n, std::string_view text);

private:
    void check_n(const Element& o) const {
        if (o.n_ != n_) throw InputError("elements over different quiver sizes");
    }

    int n_;
    TermMap terms_;
};

/// Product of two paths: their concatenation, or zero on an endpoint mismatch.
inline Element compose(const Path& p, const Path& q) {
    if (p.n() != q.n()) throw InputError("compose: paths over different quiver sizes");
    Element r(p.n());
    if (p.target() == q.source()) r.add(p.concat(q), 1);
    return r;
}

inline Element operator*(const Element& a, const Element& b) {
    a.check_n(b);
    Element r(a.n_);
    for (const auto& [p, c] : a.terms_)
        for (const auto& [q, e] : b.terms_)
            if (p.target() == q.source()) r.add(p.concat(q), c * e);
    return r;
}

inline Element multiply(const Element& a, const Element& b) { return a * b; }

inline Element Element::parse(int n, std::string_view text) {
    Element result(n);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> InputError {
        return InputError("element text, column " + std::to_string(pos + 1) + ": " + why);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_digits = [&] {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(start, pos - start));
    };

    skip_ws();
    if (pos == text.size()) throw fail("empty element");
    bool first = true;
    while (true) {
        skip_ws();
        if (pos == text.size()) {
            if (first) throw fail("empty element");
            break;
        }
        bool negative = false;
        if (text[pos] == '+' || text[pos] == '-') {
            negative = text[pos] == '-';
            ++pos;
            skip_ws();
        } else if (!first) {
            throw fail("expected '+' or '-' between terms");
        }
        if (pos < text.size() && text[pos] == '-') {
            negative = !negative;
            ++pos;
        }
        first = false;

        Scalar coeff = 1;
        bool has_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::string num = read_digits();
            if (pos < text.size() && text[pos] == '/') {
                ++pos;
                std::string den = read_digits();
                if (den.empty()) throw fail("missing denominator");
                num += "/" + den;
            }
            coeff = parse_scalar(num);
            has_coeff = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        if (negative) coeff = -coeff;

        std::vector<Arrow> arrows;
        std::optional<int> trivial_at;
        while (pos < text.size() && (text[pos] == 'u' || text[pos] == 'd' || text[pos] == 'e')) {
            const char kind = text[pos++];
            const std::string idx = read_digits();
            if (idx.empty()) throw fail("missing arrow index");
            const int i = std::stoi(idx);
            if (i >= n) throw fail("index " + idx + " out of range for n=" + std::to_string(n));
            if (kind == 'e') {
                if (!arrows.empty() || trivial_at) throw fail("e<v> must stand alone");
                trivial_at = i;
            } else {
                if (trivial_at) throw fail("e<v> must stand alone");
                arrows.push_back(kind == 'u' ? u(i) : d(i));
            }
            if (pos < text.size() && text[pos] == '.') ++pos;
            else break;
        }
        skip_ws();
        std::optional<int> at;
        if (pos < text.size() && text[pos] == '@') {
            ++pos;
            skip_ws();
            const std::string v = read_digits();
            if (v.empty()) throw fail("missing vertex after '@'");
            at = std::stoi(v);
            if (*at >= n) throw fail("vertex " + v + " out of range");
        }
        if (!has_coeff && arrows.empty() && !trivial_at) throw fail("expected a term");
        if (arrows.empty()) {
            if (trivial_at && at && *trivial_at != *at) throw fail("e<v> disagrees with @v");
            if (!trivial_at && !at) {
                if (qdu::is_zero(coeff)) continue;
                throw fail("trivial path needs @v");
            }
            result.add(Path::trivial(n, trivial_at ? *trivial_at : *at), coeff);
        } else {
            const int base = arrows.front().source(n);
            if (at && *at != base) throw fail("@" + std::to_string(*at) + " is not the source of the path");
            result.add(Path::make(n, base, std::move(arrows)), coeff);
        }
    }
    return result;
}

}  // namespace qdu
