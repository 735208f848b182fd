#pragma once

#include <cstddef>
#include <vector>

namespace mldiff {

/// Tridiagonal matrix in banded storage. For an N x N matrix, `diag` has
/// length N and `sub`/`super` have length N-1; sub[p] couples row p+1 to
/// column p and super[p] couples row p to column p+1.
struct TriDiag {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;

    TriDiag() = default;
    explicit TriDiag(std::size_t n) : sub(n > 0 ? n - 1 : 0, 0.0), diag(n, 0.0), super(n > 0 ? n - 1 : 0, 0.0) {}

    std::size_t size() const { return diag.size(); }
    bool consistent() const {
        return !diag.empty() && sub.size() == diag.size() - 1 && super.size() == diag.size() - 1;
    }
};

/// Symmetric tridiagonal matrix: `off` is both the sub- and super-diagonal.
struct SymTriDiag {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

/// Result of the similarity transform S = D A D^{-1} with D diagonal,
/// d_1 = 1 and d_{p+1} = d_p sqrt(a_{p,p+1}/a_{p+1,p}). S shares the
/// spectrum of A and is symmetric whenever all off-diagonal products
/// a_{p,p+1} a_{p+1,p} are positive.
struct SymmetrizedPair {
    SymTriDiag S;
    std::vector<double> scaling; // the diagonal of D
};

/// Principal minor det(S_k) in overflow-safe form: value = sign * exp(log_abs).
/// sign is -1, 0 or +1; log_abs is meaningless when sign == 0.
struct ScaledDeterminant {
    int sign = 0;
    double log_abs = 0.0;
};

/// y = T v.
std::vector<double> matvec(const TriDiag& T, const std::vector<double>& v);

/// Precomputed LU factors of a tridiagonal matrix (Thomas algorithm, no
/// pivoting). Factor once, solve many times in O(N) each.
class ThomasFactors {
  public:
    explicit ThomasFactors(const TriDiag& T);
    std::vector<double> solve(const std::vector<double>& rhs) const;
    void solve_in_place(std::vector<double>& x) const;
    std::size_t size() const { return inv_pivot_.size(); }

  private:
    std::vector<double> lower_;     // multipliers l_p = sub_p / pivot_{p-1}
    std::vector<double> inv_pivot_; // 1 / d'_p
    std::vector<double> super_;     // unmodified super-diagonal
};

/// Solves T x = rhs. Throws NumericalError on a zero pivot, which signals a
/// singular (hence invalid) operator.
std::vector<double> thomas_solve(const TriDiag& T, const std::vector<double>& rhs);

/// M = I + s*A, banded.
TriDiag identity_plus_scaled(const TriDiag& A, double s);

/// Similarity transform to symmetric form. Requires every off-diagonal
/// product a_{p,p+1} a_{p+1,p} > 0; throws NumericalError otherwise.
SymmetrizedPair symmetrize(const TriDiag& A);

/// All eigenvalues of a symmetric tridiagonal matrix in ascending order,
/// computed by bisection on the Sturm sequence (LDL^T inertia counts).
/// Guaranteed convergence; absolute accuracy well below 1e-10 * max|entry|.
std::vector<double> eigenvalues(const SymTriDiag& S);

/// Principal minors det(S_k), k = 1..N, via the three-term recurrence
/// det(S_k) = d_k det(S_{k-1}) - e_k^2 det(S_{k-2}). Returned scaled
/// (sign + log magnitude) because the minors grow geometrically.
std::vector<ScaledDeterminant> principal_minors(const SymTriDiag& S);

} // namespace mldiff
