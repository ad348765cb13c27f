#pragma once

#include <cstddef>

// Transcendental kernels behind every p-value in the library. All functions
// are pure and safe to call concurrently.
namespace gof::special {

enum class TailKind { Lower, Upper, TwoSided };

/// ln Gamma(x) for x > 0 (Lanczos, g = 7). Throws DomainError for x <= 0.
[[nodiscard]] double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
[[nodiscard]] double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without cancellation.
[[nodiscard]] double gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b).
[[nodiscard]] double beta_inc(double a, double b, double x);

/// Standard normal CDF.
[[nodiscard]] double normal_cdf(double z) noexcept;
/// Two-sided standard normal tail, 2 (1 - Phi(|z|)).
[[nodiscard]] double normal_two_sided(double z) noexcept;

/// Upper tail of chi-squared with @p df degrees of freedom, Q(df/2, x/2).
[[nodiscard]] double chi2_sf(double x, std::size_t df);

/// Student t tail probability. Lower: P(T <= t); Upper: P(T >= t);
/// TwoSided: P(|T| >= |t|).
[[nodiscard]] double student_t_tail(double t, std::size_t df, TailKind sides);

}  // namespace gof::special
