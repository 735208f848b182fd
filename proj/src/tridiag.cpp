#include "mldiff/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mldiff/errors.hpp"

namespace mldiff {

std::vector<double> matvec(const TriDiag& T, const std::vector<double>& v) {
    if (!T.consistent() || v.size() != T.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    const std::size_t n = T.size();
    std::vector<double> y(n);
    for (std::size_t p = 0; p < n; ++p) {
        double acc = T.diag[p] * v[p];
        if (p > 0) acc += T.sub[p - 1] * v[p - 1];
        if (p + 1 < n) acc += T.super[p] * v[p + 1];
        y[p] = acc;
    }
    return y;
}

ThomasFactors::ThomasFactors(const TriDiag& T) {
    if (!T.consistent()) throw std::invalid_argument("ThomasFactors: inconsistent storage");
    const std::size_t n = T.size();
    lower_.assign(n, 0.0);
    inv_pivot_.assign(n, 0.0);
    super_ = T.super;
    double pivot = T.diag[0];
    if (pivot == 0.0) throw NumericalError("thomas_solve: zero pivot at row 0");
    inv_pivot_[0] = 1.0 / pivot;
    for (std::size_t p = 1; p < n; ++p) {
        const double l = T.sub[p - 1] * inv_pivot_[p - 1];
        lower_[p] = l;
        pivot = T.diag[p] - l * T.super[p - 1];
        if (pivot == 0.0)
            throw NumericalError("thomas_solve: zero pivot at row " + std::to_string(p));
        inv_pivot_[p] = 1.0 / pivot;
    }
}

std::vector<double> ThomasFactors::solve(const std::vector<double>& rhs) const {
    std::vector<double> x(rhs);
    solve_in_place(x);
    return x;
}

void ThomasFactors::solve_in_place(std::vector<double>& x) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("ThomasFactors::solve: dimension mismatch");
    for (std::size_t p = 1; p < n; ++p) x[p] -= lower_[p] * x[p - 1];
    x[n - 1] *= inv_pivot_[n - 1];
    for (std::size_t p = n - 1; p-- > 0;) x[p] = (x[p] - super_[p] * x[p + 1]) * inv_pivot_[p];
}

std::vector<double> thomas_solve(const TriDiag& T, const std::vector<double>& rhs) {
    return ThomasFactors(T).solve(rhs);
}

TriDiag identity_plus_scaled(const TriDiag& A, double s) {
    TriDiag M(A.size());
    for (std::size_t p = 0; p < A.size(); ++p) M.diag[p] = 1.0 + s * A.diag[p];
    for (std::size_t p = 0; p + 1 < A.size(); ++p) {
        M.sub[p] = s * A.sub[p];
        M.super[p] = s * A.super[p];
    }
    return M;
}

SymmetrizedPair symmetrize(const TriDiag& A) {
    if (!A.consistent()) throw std::invalid_argument("symmetrize: inconsistent storage");
    const std::size_t n = A.size();
    SymmetrizedPair out;
    out.S.diag = A.diag;
    out.S.off.assign(n > 0 ? n - 1 : 0, 0.0);
    out.scaling.assign(n, 1.0);
    for (std::size_t p = 0; p + 1 < n; ++p) {
        const double product = A.super[p] * A.sub[p];
        if (!(product > 0.0))
            throw NumericalError("symmetrize: off-diagonal product not positive at row " +
                                 std::to_string(p));
        // S_{p,p+1} = S_{p+1,p} = sign * sqrt(a_{p,p+1} a_{p+1,p})
        const double sign = A.super[p] > 0.0 ? 1.0 : -1.0;
        out.S.off[p] = sign * std::sqrt(product);
        out.scaling[p + 1] = out.scaling[p] * std::sqrt(A.super[p] / A.sub[p]);
    }
    return out;
}

namespace {

// Number of eigenvalues of S strictly less than x, from the inertia of the
// LDL^T factorization of S - xI. Zero pivots are nudged to the smallest
// positive double; the following division then saturates harmlessly.
int count_below(const SymTriDiag& S, double x) {
    const std::size_t n = S.size();
    int count = 0;
    double q = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        double term = 0.0;
        if (k > 0) term = S.off[k - 1] * S.off[k - 1] / q;
        q = S.diag[k] - x - term;
        if (q < 0.0) ++count;
        if (q == 0.0) q = std::numeric_limits<double>::min();
    }
    return count;
}

} // namespace

std::vector<double> eigenvalues(const SymTriDiag& S) {
    const std::size_t n = S.size();
    if (n == 0) return {};
    if (S.off.size() != n - 1) throw std::invalid_argument("eigenvalues: inconsistent storage");

    // Global bracket from the Gershgorin intervals of S.
    double lo = S.diag[0], hi = S.diag[0], scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double radius = 0.0;
        if (k > 0) radius += std::abs(S.off[k - 1]);
        if (k + 1 < n) radius += std::abs(S.off[k]);
        lo = std::min(lo, S.diag[k] - radius);
        hi = std::max(hi, S.diag[k] + radius);
        scale = std::max({scale, std::abs(S.diag[k]), radius});
    }
    const double pad = std::max(1e-300, 1e-14 * scale);
    lo -= pad;
    hi += pad;
    const double tol = std::max(1e-300, 1e-13 * scale);

    std::vector<double> lam(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Invariant: count_below(a) <= k < count_below(b).
        double a = lo, b = hi;
        while (b - a > tol + 4.0 * std::numeric_limits<double>::epsilon() *
                                     std::max(std::abs(a), std::abs(b))) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break; // interval exhausted in floating point
            if (count_below(S, mid) <= static_cast<int>(k))
                a = mid;
            else
                b = mid;
        }
        lam[k] = 0.5 * (a + b);
    }
    return lam;
}

std::vector<ScaledDeterminant> principal_minors(const SymTriDiag& S) {
    const std::size_t n = S.size();
    if (S.off.size() + 1 != n && n != 0) throw std::invalid_argument("principal_minors: inconsistent storage");
    std::vector<ScaledDeterminant> out(n);
    // prev2 = det(S_{k-2}), prev1 = det(S_{k-1}), both scaled by 2^exp2.
    double prev2 = 1.0, prev1 = 1.0;
    long exp2 = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e2 = k > 0 ? S.off[k - 1] * S.off[k - 1] : 0.0;
        double det = S.diag[k] * prev1 - e2 * prev2;
        prev2 = prev1;
        prev1 = det;
        // renormalize the pair to keep the recurrence in double range
        const double mag = std::max(std::abs(prev1), std::abs(prev2));
        if (mag > 0x1p+500) {
            prev1 *= 0x1p-500;
            prev2 *= 0x1p-500;
            exp2 += 500;
        } else if (mag > 0.0 && mag < 0x1p-500) {
            prev1 *= 0x1p+500;
            prev2 *= 0x1p+500;
            exp2 -= 500;
        }
        if (det == 0.0)
            out[k] = {0, 0.0};
        else
            out[k] = {det > 0.0 ? 1 : -1,
                      std::log(std::abs(prev1)) + static_cast<double>(exp2) * std::log(2.0)};
    }
    return out;
}

} // namespace mldiff
