#include "slices/serialize.hpp"

#include <stdexcept>

namespace slices {

Json integer_to_json(const Integer& v) {
    if (v.fits_slong_p()) return Json(static_cast<long long>(v.get_si()));
    return Json(v.get_str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("expected an integer or integer string");
}

Json rational_to_json(const Rational& q) { return Json(format_rational(q)); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected a rational \"num/den\" string");
}

Json poly_to_json(const MultilinearPoly& f) {
    Json out;
    out["n"] = f.n();
    Json terms = Json::array();
    for (const auto& [vars, c] : f.terms()) {
        Json term;
        Json vlist = Json::array();
        Mask rest = vars;
        while (rest) {
            Mask bit = rest & (~rest + 1);
            vlist.push_back(__builtin_ctzll(bit) + 1);
            rest ^= bit;
        }
        term["vars"] = std::move(vlist);
        term["num"] = integer_to_json(c.get_num());
        term["den"] = integer_to_json(c.get_den());
        terms.push_back(std::move(term));
    }
    out["terms"] = std::move(terms);
    return out;
}

MultilinearPoly poly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms"))
        throw std::invalid_argument("polynomial JSON needs \"n\" and \"terms\"");
    int n = j.at("n").get<int>();
    MultilinearPoly f(n);
    for (const Json& term : j.at("terms")) {
        Mask vars = 0;
        for (const Json& v : term.at("vars")) {
            int idx = v.get<int>();
            if (idx < 1 || idx > n)
                throw std::invalid_argument("polynomial JSON: variable out of range");
            Mask bit = Mask(1) << (idx - 1);
            if (vars & bit)
                throw std::invalid_argument("polynomial JSON: repeated variable");
            vars |= bit;
        }
        Integer num = integer_from_json(term.at("num"));
        Integer den = integer_from_json(term.at("den"));
        if (den == 0) throw std::invalid_argument("polynomial JSON: zero denominator");
        Rational c(num, den);
        c.canonicalize();
        f.add_term(vars, c);
    }
    return f;
}

Json pmf_to_json(const RatPmf& pmf) {
    Json out;
    Json support = Json::array();
    Json probs = Json::array();
    for (const Rational& v : pmf.support) support.push_back(rational_to_json(v));
    for (const Rational& q : pmf.probs) probs.push_back(rational_to_json(q));
    out["support"] = std::move(support);
    out["probs"] = std::move(probs);
    return out;
}

Json pmf_to_json(const Pmf& pmf) {
    Json out;
    out["support"] = pmf.support;
    out["probs"] = pmf.probs;
    return out;
}

RatPmf rat_pmf_from_json(const Json& j) {
    RatPmf out;
    for (const Json& v : j.at("support")) out.support.push_back(rational_from_json(v));
    for (const Json& q : j.at("probs")) out.probs.push_back(rational_from_json(q));
    if (out.support.size() != out.probs.size())
        throw std::invalid_argument("pmf JSON: support and probs lengths differ");
    return out;
}

} // namespace slices
