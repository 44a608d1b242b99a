#include "pgn/rational.hpp"

#include <cctype>

#include "pgn/errors.hpp"

namespace pgn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw Error(Errc::ParseError, "not a rational: '" + std::string(whole) + "'");
    Integer z(std::string(s), 10);
    return neg ? Integer(-z) : z;
}

std::vector<std::string_view> split_commas(std::string_view csv) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (start <= csv.size()) {
        size_t end = csv.find(',', start);
        if (end == std::string_view::npos) end = csv.size();
        out.push_back(trim(csv.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

}  // namespace

Rational parse_rational(std::string_view s) {
    const std::string_view whole = s;
    s = trim(s);
    if (s.empty()) throw Error(Errc::ParseError, "empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer p = parse_integer(trim(s.substr(0, slash)), whole);
        Integer q = parse_integer(trim(s.substr(slash + 1)), whole);
        if (q == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(whole) + "'");
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        bool neg = !s.empty() && s.front() == '-';
        std::string_view head = s.substr(0, dot);
        if (!head.empty() && (head.front() == '-' || head.front() == '+')) head.remove_prefix(1);
        std::string_view frac = s.substr(dot + 1);
        if ((head.empty() && frac.empty()) || (!head.empty() && !all_digits(head)) ||
            (!frac.empty() && !all_digits(frac)))
            throw Error(Errc::ParseError, "not a rational: '" + std::string(whole) + "'");
        std::string digits = std::string(head) + std::string(frac);
        Integer num(digits.empty() ? std::string("0") : digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational r(neg ? Integer(-num) : num, den);
        r.canonicalize();
        return r;
    }
    return Rational(parse_integer(s, whole));
}

std::string to_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational frac(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational pow(const Rational& r, unsigned e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), e);
    return Rational(num, den);
}

Integer floor(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

std::vector<Rational> parse_rational_list(std::string_view csv) {
    std::vector<Rational> out;
    for (auto part : split_commas(csv)) out.push_back(parse_rational(part));
    return out;
}

const Rational& ExtendedRational::value() const {
    if (!value_) throw Error(Errc::OutOfDomain, "value() on +inf");
    return *value_;
}

Rational ExtendedRational::inv_one_plus() const {
    if (!value_) return Rational(0);
    return Rational(1) / (1 + *value_);
}

Rational ExtendedRational::ratio_one_plus() const {
    if (!value_) return Rational(1);
    return *value_ / (1 + *value_);
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
    return *a.value_ == *b.value_;
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_inf()) return false;
    if (b.is_inf()) return true;
    return *a.value_ < *b.value_;
}

ExtendedRational parse_extended(std::string_view s) {
    s = trim(s);
    if (s == "inf" || s == "+inf" || s == "Inf" || s == "∞") return ExtendedRational::infinity();
    return ExtendedRational(parse_rational(s));
}

std::string to_string(const ExtendedRational& r) { return r.is_inf() ? "inf" : to_string(r.value()); }

std::vector<ExtendedRational> parse_extended_list(std::string_view csv) {
    std::vector<ExtendedRational> out;
    for (auto part : split_commas(csv)) out.push_back(parse_extended(part));
    return out;
}

}  // namespace pgn
