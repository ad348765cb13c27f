#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gof/binning.hpp"
#include "gof/sample.hpp"

namespace gof {

enum class TestKind {
    ChiSquared,
    KS_Dminus,
    KS_Dplus,
    KS_D,
    Kuiper_V,
    AndersonDarling,
    WilksShapiro,
    CramerVonMises,
    JarqueBera,
    ZMean,
    ZVariance,
    ZStdDev,
    ZSkewness,
    ZKurtosis,
};

/// Stable machine key ("ks", "jarque-bera", ...), used in JSON, CSV and --tests.
[[nodiscard]] std::string_view test_key(TestKind kind) noexcept;
/// Human-readable row label used in the text table.
[[nodiscard]] std::string_view test_label(TestKind kind) noexcept;
[[nodiscard]] std::optional<TestKind> parse_test_key(std::string_view key) noexcept;

struct PValue {
    std::string method;
    double p = std::numeric_limits<double>::quiet_NaN();

    friend bool operator==(const PValue&, const PValue&) = default;
};

/**
 * @brief Outcome of one statistic.
 *
 * The first entry of `p_values` is the primary probability; `reject` is
 * always `primary p < alpha`. A test that failed inside a battery keeps its
 * slot with `error` set, a NaN statistic and no p-values.
 */
struct TestResult {
    TestKind test = TestKind::KS_D;
    double statistic = std::numeric_limits<double>::quiet_NaN();
    std::vector<PValue> p_values;
    std::optional<std::size_t> df;
    double alpha = 0.05;
    bool reject = false;
    /// Compared against a model fitted to the same sample (z_mean etc.);
    /// reported but not counted toward the normality verdict.
    bool self_referential = false;
    std::vector<std::pair<std::string, double>> details;
    std::vector<std::string> notes;
    std::optional<std::string> error;

    [[nodiscard]] double p() const noexcept {
        return p_values.empty() ? std::numeric_limits<double>::quiet_NaN() : p_values.front().p;
    }
    [[nodiscard]] bool ok() const noexcept { return !error.has_value(); }

    friend bool operator==(const TestResult&, const TestResult&) = default;
};

/// Sets `alpha` and `reject` from the primary p-value.
void apply_alpha(TestResult& result, double alpha);

// ---------------------------------------------------------------------------
// Pearson-Fisher chi-squared

/// X^2 = sum (O - E)^2 / E with df = k - t_params - 1.
/// Throws InsufficientDF when df < 1 and DomainError when any E <= 0.
[[nodiscard]] TestResult chi_squared_test(const FrequencyClasses& classes, std::size_t t_params, double alpha = 0.05);

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov and Kuiper

struct KSDecomposition {
    double d_minus = 0.0;  ///< max(F_t - F_o), largest shortfall of the ECDF
    double d_plus = 0.0;   ///< max(F_o - F_t), largest excess of the ECDF
    double d = 0.0;
    double v = 0.0;        ///< Kuiper, d_minus + d_plus
};

/// Both sides of every ECDF step are examined; tied values form one step.
[[nodiscard]] KSDecomposition ks_statistics(const Sample& sample, const FittedNormal& model);

/// Asymptotic Kolmogorov survival P(K >= k), alternating exponential series.
[[nodiscard]] double kolmogorov_sf_alternating(double k);
/// Same quantity via the dual theta-function series, 1 - sqrt(2 pi)/k sum exp(-(2i-1)^2 pi^2 / (8 k^2)).
[[nodiscard]] double kolmogorov_sf_theta(double k);
/// Picks whichever series converges fastest for @p k.
[[nodiscard]] double kolmogorov_sf(double k);

/// Exact finite-n survival P(D_n >= d) (Marsaglia, Tsang & Wang 2003).
[[nodiscard]] double kolmogorov_sf_exact(double d, std::size_t n);

/// KS p-value for statistic @p d at sample size @p n. Uses the exact
/// finite-n distribution; kolmogorov_sf(d sqrt(n)) is the asymptotic form.
[[nodiscard]] double ks_p_value(double d, std::size_t n);

/// Kuiper tail Q_KP(lambda) = 2 sum (4 i^2 lambda^2 - 1) exp(-2 i^2 lambda^2), clamped to [0, 1].
[[nodiscard]] double kuiper_q(double lambda);
/// Q_KP(v (sqrt(n) + 0.155 + 0.24 / sqrt(n))).
[[nodiscard]] double kuiper_p_value(double v, std::size_t n);

[[nodiscard]] TestResult ks_test(const Sample& sample, const FittedNormal& model, double alpha = 0.05);
[[nodiscard]] TestResult ks_one_sided_test(const Sample& sample, const FittedNormal& model, TestKind side,
                                           double alpha = 0.05);
[[nodiscard]] TestResult kuiper_test(const Sample& sample, const FittedNormal& model, double alpha = 0.05);

// ---------------------------------------------------------------------------
// Anderson-Darling

/// A^2 over all ordered values (ties included). Throws NumericalUnderflow
/// when F(x) rounds to 0 or 1.
[[nodiscard]] double anderson_darling_statistic(const Sample& sample, const FittedNormal& model);
/// A^2 (1 + 0.75/n + 2.25/n^2)
[[nodiscard]] double anderson_darling_corrected(double a2, std::size_t n) noexcept;
/// 2 (pi^2 - 9) / 3 + (10 - pi^2) / n
[[nodiscard]] double anderson_darling_variance(std::size_t n) noexcept;
/// Four-branch normal-case probability of a corrected A^2.
[[nodiscard]] double anderson_darling_p(double a2c) noexcept;

[[nodiscard]] TestResult anderson_darling(const Sample& sample, const FittedNormal& model, double alpha = 0.05);

// ---------------------------------------------------------------------------
// Shapiro-Wilk (Royston 1995, AS R94)

struct ShapiroWilk {
    double w = 0.0;
    double p = 0.0;
};

/// Half-vector of AS R94 weights (largest first) for sample size @p n.
[[nodiscard]] std::vector<double> shapiro_wilk_weights(std::size_t n);
/// Throws SampleSizeOutOfRange outside 3 <= n <= 5000, DegenerateSample for zero range.
[[nodiscard]] ShapiroWilk shapiro_wilk(std::span<const double> sorted);

[[nodiscard]] TestResult wilks_shapiro(const Sample& sample, double alpha = 0.05);

// ---------------------------------------------------------------------------
// Cramer-von Mises, Jarque-Bera, z-moment tests

/// 1/(12n) + sum ((2i-1)/(2n) - F(x_(i)))^2
[[nodiscard]] double cramer_von_mises_statistic(const Sample& sample, const FittedNormal& model);
/// min(1, 0.67 exp(-5.6 W^2))
[[nodiscard]] double cramer_von_mises_p(double w2) noexcept;
[[nodiscard]] TestResult cramer_von_mises(const Sample& sample, const FittedNormal& model, double alpha = 0.05);

/// n (g1^2 / 6 + g2^2 / 24); chi-squared with 2 df. Needs n >= 4.
[[nodiscard]] TestResult jarque_bera(const Sample& sample, double alpha = 0.05);

struct ZStatistics {
    double z_mean = 0.0;
    double z_variance = 0.0;
    double z_stdev = 0.0;
    double z_skewness = 0.0;
    double z_kurtosis = 0.0;
    double c4 = 0.0;
};

/// c4 = Gamma(n/2) sqrt(2/(n-1)) / Gamma((n-1)/2)
[[nodiscard]] double c4_constant(std::size_t n);
/// Raw z values; needs n >= 5 and m2 > 0.
[[nodiscard]] ZStatistics z_values(const Sample& sample, const FittedNormal& model);

/// ZMean, ZVariance, ZStdDev, ZSkewness, ZKurtosis with two-sided normal p.
/// The first three are marked self-referential when @p model is the plug-in fit.
[[nodiscard]] std::vector<TestResult> z_statistics(const Sample& sample, const FittedNormal& model,
                                                   double alpha = 0.05);

// ---------------------------------------------------------------------------
// Battery

/// The seven tests reported per dataset, in table order:
/// KS, Anderson-Darling, chi-squared, Shapiro-Wilk, z-skewness, z-kurtosis, Jarque-Bera.
[[nodiscard]] std::vector<TestKind> default_tests();
/// default_tests() followed by D-, D+, Kuiper, Cramer-von Mises, z-mean, z-variance, z-stdev.
[[nodiscard]] std::vector<TestKind> extended_tests();

/// True when @p model is exactly the plug-in fit of @p sample.
[[nodiscard]] bool is_plugin_model(const Sample& sample, const FittedNormal& model);

/// Runs @p tests in the given order. A failing test is recorded in its slot.
/// Chi-squared uses t_params = 2 for a plug-in model and 0 otherwise.
[[nodiscard]] std::vector<TestResult> run_battery(const Sample& sample, const FittedNormal& model, BinningRule rule,
                                                  double alpha, std::span<const TestKind> tests);
[[nodiscard]] std::vector<TestResult> run_battery(const Sample& sample, const FittedNormal& model, BinningRule rule,
                                                  double alpha);

/// Rejections among tests that ran and are not self-referential.
[[nodiscard]] std::size_t count_rejections(std::span<const TestResult> battery) noexcept;

}  // namespace gof
