#pragma once

// Spectra, unitarily invariant norms and the majorization orders.
//
// Ky Fan k-norms (k = 1..n) are the test basis for "every unitarily
// invariant norm": by Fan dominance, an inequality that holds for all of
// them holds for every such norm.

#include <limits>
#include <vector>

#include "matmeans/densela.hpp"

namespace matmeans {

inline constexpr Real kDefaultMajorizationTol = 1e-9L;

/// Eigenvalues of a positive (definite) matrix are clamped here before
/// taking logarithms.
inline constexpr Real kLogFloor = 1e-300L;

Spectrum eigenvalues_desc(const SymMatrix& s);

/// Eigenvalues of AB via the symmetric similar form A^{1/2} B A^{1/2}.
Spectrum product_eigenvalues(const PdMatrix& a, const PdMatrix& b);

/// Sum of the k largest singular values.
Real ky_fan_norm(const Matrix& x, std::size_t k);
Real ky_fan_norm(const SymMatrix& s, std::size_t k);
Real ky_fan_norm(const Spectrum& singular, std::size_t k);

/// l_p norm of the singular values; p = infinity gives the operator norm.
Real schatten_norm(const Matrix& x, Real p);
Real schatten_norm(const SymMatrix& s, Real p);
Real schatten_norm(const Spectrum& singular, Real p);

inline constexpr Real kSchattenInf = std::numeric_limits<Real>::infinity();

struct MajorizationResult {
  bool holds = false;
  /// margins[k-1] = sum_{i<=k} y_i - sum_{i<=k} x_i (or the same for logs).
  std::vector<Real> margins;
  /// Prefix sums of x and y (of their logarithms for the log variants).
  std::vector<Real> x_prefix;
  std::vector<Real> y_prefix;
  /// Index k (1-based) of the tightest prefix; 0 when x and y are empty.
  std::size_t tightest_k = 0;
  /// Difference of the totals (y - x); for log variants, of the log sums.
  Real total_gap = 0;
};

/// x <_w y: every prefix sum of x is at most the prefix sum of y plus
/// tol * (1 + max(|sum x|, |sum y|)).
MajorizationResult weak_majorize(const Spectrum& x, const Spectrum& y,
                                 Real tol = kDefaultMajorizationTol);

/// Weak majorization plus |sum x - sum y| <= tol * scale.
MajorizationResult majorize(const Spectrum& x, const Spectrum& y,
                            Real tol = kDefaultMajorizationTol);

/// Prefix products compared as sums of logarithms, scale as in weak_majorize
/// applied to the log sums. Throws DomainError on nonpositive entries.
MajorizationResult weak_log_majorize(const Spectrum& x, const Spectrum& y,
                                     Real tol = kDefaultMajorizationTol);

/// Weak log majorization plus |sum log x - sum log y| <= tol.
MajorizationResult log_majorize(const Spectrum& x, const Spectrum& y,
                                Real tol = kDefaultMajorizationTol);

struct LoewnerResult {
  bool holds = false;
  Real margin = 0;  // smallest eigenvalue of b - a
};

/// a <= b: lambda_min(b - a) >= -tol * (1 + ||b - a||_max).
LoewnerResult loewner_leq(const SymMatrix& a, const SymMatrix& b,
                          Real tol = kDefaultMajorizationTol);

}  // namespace matmeans
