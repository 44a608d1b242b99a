#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pgn {

// mpq_class keeps values canonical after every arithmetic operation.
// Beware `auto` on mpq expressions: it captures an expression template.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p/q", "p", and finite decimals such as "-0.125" (converted exactly).
Rational parse_rational(std::string_view s);
// Always "p/q" with q >= 1, e.g. "47/1".
std::string to_string(const Rational& r);
// p/q in lowest terms; the two-argument mpq_class constructor does not reduce.
Rational frac(long p, long q);
double to_double(const Rational& r);
Rational abs(const Rational& r);
Rational pow(const Rational& r, unsigned e);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

std::vector<Rational> parse_rational_list(std::string_view csv);

// A rational or +inf.
class ExtendedRational {
public:
    ExtendedRational() = default;
    ExtendedRational(Rational v) : value_(std::move(v)) {}
    static ExtendedRational infinity() { return ExtendedRational(std::nullopt); }

    bool is_inf() const { return !value_.has_value(); }
    const Rational& value() const;

    // (1 + x)^-1, which is 0 at +inf.
    Rational inv_one_plus() const;
    // x / (1 + x), which is 1 at +inf.
    Rational ratio_one_plus() const;

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
    friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
    friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }

private:
    explicit ExtendedRational(std::nullopt_t) {}
    std::optional<Rational> value_;
};

// "inf" (also "+inf", "∞") or any parse_rational form.
ExtendedRational parse_extended(std::string_view s);
std::string to_string(const ExtendedRational& r);
std::vector<ExtendedRational> parse_extended_list(std::string_view csv);

}  // namespace pgn
