#include "slices/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace slices {

namespace {

void check_n(int n) {
    if (n < 1 || n > 62)
        throw std::invalid_argument("variable count must be between 1 and 62");
}

Mask full_mask(int n) { return (Mask(1) << n) - 1; }

} // namespace

MultilinearPoly::MultilinearPoly(int n) : n_(n) { check_n(n); }

MultilinearPoly MultilinearPoly::constant(int n, const Rational& c) {
    MultilinearPoly f(n);
    f.add_term(0, c);
    return f;
}

MultilinearPoly MultilinearPoly::monomial(int n, Mask vars, const Rational& c) {
    MultilinearPoly f(n);
    if (vars & ~full_mask(n))
        throw std::invalid_argument("monomial: variable index out of range");
    f.add_term(vars, c);
    return f;
}

std::optional<int> MultilinearPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    return popcount(terms_.rbegin()->first);
}

Rational MultilinearPoly::coeff(Mask vars) const {
    auto it = terms_.find(vars);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultilinearPoly::add_term(Mask vars, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(vars, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultilinearPoly operator+(const MultilinearPoly& f, const MultilinearPoly& g) {
    if (f.n() != g.n())
        throw std::invalid_argument("polynomial arity mismatch");
    MultilinearPoly out = f;
    for (const auto& [vars, c] : g.terms()) out.add_term(vars, c);
    return out;
}

MultilinearPoly operator-(const MultilinearPoly& f, const MultilinearPoly& g) {
    if (f.n() != g.n())
        throw std::invalid_argument("polynomial arity mismatch");
    MultilinearPoly out = f;
    for (const auto& [vars, c] : g.terms()) out.add_term(vars, -c);
    return out;
}

MultilinearPoly operator-(const MultilinearPoly& f) {
    MultilinearPoly out(f.n());
    for (const auto& [vars, c] : f.terms()) out.add_term(vars, -c);
    return out;
}

MultilinearPoly operator*(const Rational& c, const MultilinearPoly& f) {
    MultilinearPoly out(f.n());
    if (c == 0) return out;
    for (const auto& [vars, coef] : f.terms()) out.add_term(vars, c * coef);
    return out;
}

Rational evaluate(const MultilinearPoly& f, const CubePoint& x) {
    if (x.n != f.n())
        throw std::invalid_argument("evaluate: point arity mismatch");
    Rational total = 0;
    for (const auto& [vars, c] : f.terms())
        if ((vars & x.bits) == vars) total += c;
    return total;
}

std::vector<Rational> evaluate_on_cube(const MultilinearPoly& f) {
    int n = f.n();
    if (n > 26) throw std::invalid_argument("evaluate_on_cube: n too large");
    std::vector<Rational> vals(std::size_t(1) << n, Rational(0));
    for (const auto& [vars, c] : f.terms()) vals[vars] = c;
    for (int i = 0; i < n; ++i) {
        Mask bit = Mask(1) << i;
        for (Mask m = 0; m < vals.size(); ++m)
            if (m & bit) vals[m] += vals[m ^ bit];
    }
    return vals;
}

MultilinearPoly from_cube_values(int n, const std::vector<Rational>& values) {
    check_n(n);
    if (n > 26) throw std::invalid_argument("from_cube_values: n too large");
    if (values.size() != (std::size_t(1) << n))
        throw std::invalid_argument("from_cube_values: need 2^n values");
    std::vector<Rational> coef = values;
    for (int i = 0; i < n; ++i) {
        Mask bit = Mask(1) << i;
        for (Mask m = 0; m < coef.size(); ++m)
            if (m & bit) coef[m] -= coef[m ^ bit];
    }
    MultilinearPoly f(n);
    for (Mask m = 0; m < coef.size(); ++m) f.add_term(m, coef[m]);
    return f;
}

MultilinearPoly multiply(const MultilinearPoly& f, const MultilinearPoly& g,
                         bool reduce) {
    if (f.n() != g.n())
        throw std::invalid_argument("multiply: polynomial arity mismatch");
    MultilinearPoly out(f.n());
    for (const auto& [s, cs] : f.terms()) {
        for (const auto& [t, ct] : g.terms()) {
            if (!reduce && (s & t))
                throw std::invalid_argument(
                    "multiply: operands share a variable and reduce is off");
            out.add_term(s | t, cs * ct);
        }
    }
    return out;
}

MultilinearPoly lower_delta(const MultilinearPoly& f) {
    MultilinearPoly out(f.n());
    for (const auto& [vars, c] : f.terms()) {
        Mask rest = vars;
        while (rest) {
            Mask bit = rest & (~rest + 1);
            out.add_term(vars ^ bit, c);
            rest ^= bit;
        }
    }
    return out;
}

MultilinearPoly raise_delta(const MultilinearPoly& f) {
    MultilinearPoly out(f.n());
    Mask all = full_mask(f.n());
    for (const auto& [vars, c] : f.terms()) {
        Mask rest = all & ~vars;
        while (rest) {
            Mask bit = rest & (~rest + 1);
            out.add_term(vars | bit, c);
            rest ^= bit;
        }
    }
    return out;
}

MultilinearPoly permute(const MultilinearPoly& f, const std::vector<int>& pi) {
    int n = f.n();
    if (static_cast<int>(pi.size()) != n)
        throw std::invalid_argument("permute: permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (int v : pi) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("permute: not a permutation");
        seen[v] = true;
    }
    MultilinearPoly out(n);
    for (const auto& [vars, c] : f.terms()) {
        Mask image = 0;
        Mask rest = vars;
        while (rest) {
            Mask bit = rest & (~rest + 1);
            image |= Mask(1) << pi[__builtin_ctzll(bit)];
            rest ^= bit;
        }
        out.add_term(image, c);
    }
    return out;
}

MultilinearPoly homogeneous_part(const MultilinearPoly& f, int d) {
    MultilinearPoly out(f.n());
    for (const auto& [vars, c] : f.terms())
        if (popcount(vars) == d) out.add_term(vars, c);
    return out;
}

MultilinearPoly partial_derivative(const MultilinearPoly& f, int i) {
    if (i < 0 || i >= f.n())
        throw std::invalid_argument("partial_derivative: index out of range");
    MultilinearPoly out(f.n());
    Mask bit = Mask(1) << i;
    for (const auto& [vars, c] : f.terms())
        if (vars & bit) out.add_term(vars ^ bit, c);
    return out;
}

bool is_harmonic(const MultilinearPoly& f) {
    return lower_delta(f).is_zero();
}

MultilinearPoly basic_function(int n, int d) {
    check_n(n);
    if (d < 0 || 2 * d > n)
        throw std::invalid_argument("basic_function: need 0 <= 2d <= n");
    MultilinearPoly out = MultilinearPoly::constant(n, 1);
    for (int i = 0; i < d; ++i) {
        MultilinearPoly pair(n);
        pair.add_term(Mask(1) << (2 * i), 1);
        pair.add_term(Mask(1) << (2 * i + 1), -1);
        out = multiply(out, pair, false);
    }
    return out;
}

std::string to_text(const MultilinearPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [vars, c] : f.terms()) {
        Rational a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (!first) out << ' ';
        out << (neg ? '-' : '+') << format_rational(a);
        if (vars) {
            out << " *";
            Mask rest = vars;
            std::string sep = " ";
            while (rest) {
                Mask bit = rest & (~rest + 1);
                out << sep << 'x' << (__builtin_ctzll(bit) + 1);
                sep = "";
                rest ^= bit;
            }
        }
        first = false;
    }
    return out.str();
}

namespace {

// One term of the text form: sign, rational, optional "* x<i>x<j>...".
struct TextCursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool done() {
        skip_space();
        return pos >= s.size();
    }
};

Rational parse_number(TextCursor& cur) {
    cur.skip_space();
    std::size_t start = cur.pos;
    while (cur.pos < cur.s.size() &&
           (std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])) ||
            cur.s[cur.pos] == '/'))
        ++cur.pos;
    if (cur.pos == start)
        throw std::invalid_argument("polynomial text: expected a coefficient");
    return parse_rational(cur.s.substr(start, cur.pos - start));
}

} // namespace

MultilinearPoly poly_from_text(int n, const std::string& text) {
    MultilinearPoly f(n);
    TextCursor cur{text};
    if (cur.done()) throw std::invalid_argument("polynomial text: empty input");

    // Special case: a lone "0".
    {
        std::string trimmed;
        for (char ch : text)
            if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
        if (trimmed == "0") return f;
    }

    bool first = true;
    while (!cur.done()) {
        int sign = 1;
        cur.skip_space();
        if (cur.s[cur.pos] == '+' || cur.s[cur.pos] == '-') {
            if (cur.s[cur.pos] == '-') sign = -1;
            ++cur.pos;
        } else if (!first) {
            throw std::invalid_argument("polynomial text: missing term sign");
        }
        Rational c = parse_number(cur);
        if (sign < 0) c = -c;
        Mask vars = 0;
        cur.skip_space();
        if (cur.pos < cur.s.size() && cur.s[cur.pos] == '*') {
            ++cur.pos;
            cur.skip_space();
            bool any = false;
            while (cur.pos < cur.s.size() && cur.s[cur.pos] == 'x') {
                ++cur.pos;
                std::size_t start = cur.pos;
                while (cur.pos < cur.s.size() &&
                       std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])))
                    ++cur.pos;
                if (cur.pos == start)
                    throw std::invalid_argument(
                        "polynomial text: expected variable index after x");
                int idx = std::stoi(cur.s.substr(start, cur.pos - start));
                if (idx < 1 || idx > n)
                    throw std::invalid_argument(
                        "polynomial text: variable index out of range");
                Mask bit = Mask(1) << (idx - 1);
                if (vars & bit)
                    throw std::invalid_argument(
                        "polynomial text: repeated variable in a term");
                vars |= bit;
                any = true;
                cur.skip_space();
            }
            if (!any)
                throw std::invalid_argument(
                    "polynomial text: expected variables after *");
        }
        f.add_term(vars, c);
        first = false;
    }
    return f;
}

FloatPoly to_float(const MultilinearPoly& f) {
    FloatPoly out;
    out.n = f.n();
    for (const auto& [vars, c] : f.terms()) out.terms[vars] = to_double(c);
    return out;
}

double evaluate(const FloatPoly& f, const CubePoint& x) {
    if (x.n != f.n)
        throw std::invalid_argument("evaluate: point arity mismatch");
    double total = 0;
    for (const auto& [vars, c] : f.terms)
        if ((vars & x.bits) == vars) total += c;
    return total;
}

} // namespace slices
