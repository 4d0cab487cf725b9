#include "slices/linalg.hpp"

#include <stdexcept>

namespace slices {

namespace {

// In-place Gauss-Jordan on [a | rhs] (rhs may be empty).  Returns the rank;
// pivots are the first nonzero entry per column, which is all exact
// arithmetic needs.
std::size_t eliminate(RatMatrix& a, RatMatrix& rhs) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        if (!rhs.empty()) std::swap(rhs[pivot], rhs[r]);
        Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        if (!rhs.empty())
            for (auto& v : rhs[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational factor = a[i][c];
            for (std::size_t jj = 0; jj < cols; ++jj) a[i][jj] -= factor * a[r][jj];
            if (!rhs.empty())
                for (std::size_t jj = 0; jj < rhs[i].size(); ++jj)
                    rhs[i][jj] -= factor * rhs[r][jj];
        }
        ++r;
    }
    return r;
}

} // namespace

RatMatrix identity_matrix(std::size_t m) {
    RatMatrix out(m, RatVector(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) out[i][i] = 1;
    return out;
}

RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
    std::size_t rows = a.size();
    std::size_t inner = b.size();
    std::size_t cols = inner ? b[0].size() : 0;
    RatMatrix out(rows, RatVector(cols, Rational(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != inner) throw std::invalid_argument("matmul: shape mismatch");
        for (std::size_t t = 0; t < inner; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t jj = 0; jj < cols; ++jj)
                out[i][jj] += a[i][t] * b[t][jj];
        }
    }
    return out;
}

RatVector matvec(const RatMatrix& a, const RatVector& x) {
    RatVector out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
        for (std::size_t jj = 0; jj < x.size(); ++jj) out[i] += a[i][jj] * x[jj];
    }
    return out;
}

std::size_t rank(RatMatrix a) {
    RatMatrix none;
    return eliminate(a, none);
}

std::optional<RatVector> solve(RatMatrix a, RatVector b) {
    std::size_t m = a.size();
    if (b.size() != m) throw std::invalid_argument("solve: shape mismatch");
    RatMatrix rhs(m, RatVector(1));
    for (std::size_t i = 0; i < m; ++i) rhs[i][0] = b[i];
    if (eliminate(a, rhs) < m) return std::nullopt;
    RatVector x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = rhs[i][0];
    return x;
}

RatMatrix invert(const RatMatrix& a) {
    std::size_t m = a.size();
    RatMatrix work = a;
    RatMatrix rhs = identity_matrix(m);
    if (eliminate(work, rhs) < m)
        throw std::invalid_argument("invert: singular matrix");
    return rhs;
}

} // namespace slices
