#include "slices/fspec.hpp"

#include "slices/comb.hpp"
#include "slices/error.hpp"
#include "slices/harmonic.hpp"
#include "slices/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slices {

namespace {

int parse_int(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("fspec: bad integer in " + what);
    }
    if (pos != text.size())
        throw std::invalid_argument("fspec: bad integer in " + what);
    return value;
}

// Indicator of "at least k ones".  The multilinear coefficient of x_S
// depends only on s = |S|: inclusion-exclusion over sub-patterns gives
// c_s = (-1)^(s-k) C(s-1, k-1) for s >= k and 0 below.
MultilinearPoly threshold_function(int n, int k) {
    if (k <= 0) return MultilinearPoly::constant(n, 1);
    MultilinearPoly out(n);
    if (k > n) return out;
    Integer term_count = 0;
    for (int s = k; s <= n; ++s) term_count += binomial(n, s);
    if (term_count > Integer(1 << 20))
        throw budget_error("fspec: threshold term count exceeds the budget");
    for (int s = k; s <= n; ++s) {
        Rational c(binomial(s - 1, k - 1));
        if ((s - k) % 2) c = -c;
        Mask x = (Mask(1) << s) - 1;
        Mask limit = Mask(1) << n;
        while (x < limit) {
            out.add_term(x, c);
            if (x == 0) break;
            Mask lo = x & (~x + 1);
            Mask r = x + lo;
            x = (((r ^ x) >> 2) / lo) | r;
        }
    }
    return out;
}

MultilinearPoly from_file(int n, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("fspec: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buffer.str());
    } catch (const std::exception& e) {
        throw std::invalid_argument("fspec: " + path + " is not valid JSON: " + e.what());
    }
    MultilinearPoly f = poly_from_json(j);
    if (f.n() != n)
        throw std::invalid_argument("fspec: file declares n=" + std::to_string(f.n()) +
                                    " but n=" + std::to_string(n) + " was requested");
    return f;
}

} // namespace

MultilinearPoly parse_fspec(int n, const std::string& spec) {
    if (spec == "dictator") return MultilinearPoly::monomial(n, 1, 1);
    if (spec == "majority") {
        if (n % 2 == 0)
            throw std::invalid_argument("fspec: majority needs odd n");
        return threshold_function(n, (n + 1) / 2);
    }
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "basic" && colon != std::string::npos)
        return basic_function(n, parse_int(rest, "basic:d"));
    if (head == "threshold" && colon != std::string::npos)
        return threshold_function(n, parse_int(rest, "threshold:k"));
    if (head == "file" && colon != std::string::npos) return from_file(n, rest);
    if (head == "gt" && colon != std::string::npos) {
        if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}')
            throw std::invalid_argument("fspec: gt expects gt:{b1,b2,...}");
        AdmissibleSet B;
        std::string inner = rest.substr(1, rest.size() - 2);
        if (!inner.empty()) {
            std::stringstream ss(inner);
            std::string piece;
            while (std::getline(ss, piece, ','))
                B.b.push_back(parse_int(piece, "gt entry"));
        }
        return gt_basis_element(B, n);
    }
    throw std::invalid_argument("fspec: unknown function spec '" + spec + "'");
}

} // namespace slices
