#pragma once

// Exact rational scalars and the error types shared by every module.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdu {

/// Malformed or inconsistent user input (bad text, mismatched n, wrong sizes).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented precondition.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A parameter choice makes a map non-invertible (e.g. a zero beta entry).
struct NotInvertibleError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Exact rational number. mpq_class keeps values canonical (reduced, positive
/// denominator, zero as 0/1) after every arithmetic operation.
using Scalar = mpq_class;

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Parses "p/q" or "p" (optional sign, decimal digits only).
inline Scalar parse_scalar(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw InputError("malformed rational '" + std::string(text) + "'");
    std::string num_s(num);
    if (num_s.front() == '+') num_s.erase(0, 1);
    mpz_class n(num_s), d{std::string(den)};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    Scalar r(n, d);
    r.canonicalize();
    return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

}  // namespace qdu
