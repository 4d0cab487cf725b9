#include "slices/rational.hpp"

#include <stdexcept>

namespace slices {

Rational rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        Integer num(slash == std::string::npos ? text : text.substr(0, slash));
        Integer den = 1;
        if (slash != std::string::npos) {
            const std::string den_part = text.substr(slash + 1);
            if (den_part.empty() || den_part.find('/') != std::string::npos)
                throw std::invalid_argument("malformed rational literal: " + text);
            den = Integer(den_part);
        }
        if (den == 0) throw std::invalid_argument("zero denominator in: " + text);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (...) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow_rational(const Rational& q, unsigned e) {
    Rational out = 1;
    Rational base = q;
    while (e) {
        if (e & 1u) out *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return out;
}

bool rational_sqrt(const Rational& q, Rational& root) {
    if (q < 0) return false;
    const Integer& num = q.get_num();
    const Integer& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

} // namespace slices
