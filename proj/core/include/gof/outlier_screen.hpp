#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gof/binning.hpp"
#include "gof/normality_tests.hpp"
#include "gof/sample.hpp"

namespace gof {

enum class GrubbsVariant { Min, Max, TwoSided };

[[nodiscard]] std::string_view to_string(GrubbsVariant variant) noexcept;

struct GrubbsResult {
    GrubbsVariant variant = GrubbsVariant::TwoSided;
    double g = 0.0;
    /// Primary: t = G sqrt(n (n-2)) / (n-1), multiplied by 2n (one-sided
    /// variants) or n times the two-sided t tail, clamped to [0, 1].
    double p = 1.0;
    /// Same multipliers with the exact inversion t = sqrt(n (n-2) G^2 / ((n-1)^2 - n G^2));
    /// 0 when (n-1)^2 <= n G^2.
    double p_exact = 1.0;
    double suspect_value = 0.0;
    std::size_t suspect_index = 0;  ///< position in the sorted sample
};

/// Needs n >= 4 and s > 0 (DegenerateSample otherwise). For TwoSided, a tie
/// between the minimum and maximum deviation goes to the maximum.
[[nodiscard]] GrubbsResult grubbs(const Sample& sample, GrubbsVariant variant);

enum class StopReason { NoOutlier, MaxIterations, TooFewPoints };

[[nodiscard]] std::string_view to_string(StopReason reason) noexcept;

struct ScreeningIteration {
    std::optional<double> removed_value;
    GrubbsResult grubbs;
    std::vector<TestResult> battery;  ///< battery re-run after the removal
};

struct ScreeningHistory {
    std::vector<ScreeningIteration> iterations;  ///< one entry per removed value
    std::optional<GrubbsResult> final_grubbs;    ///< verdict on final_sample, if n allowed one
    Sample final_sample;
    std::optional<FittedNormal> final_model;  ///< empty if final_sample has no spread
    StopReason stop_reason = StopReason::NoOutlier;
};

struct ScreenOptions {
    double alpha = 0.05;
    std::size_t max_iter = 5;
    BinningRule rule = BinningRule::DataplotWidth;
    std::vector<TestKind> tests = default_tests();
    /// When set, every battery uses this model instead of refitting.
    std::optional<FittedNormal> external_model;
};

/// Two-sided Grubbs; while p < alpha remove the single suspect, refit and
/// re-run the battery. Stops on no outlier, n < 4 or max_iter removals.
[[nodiscard]] ScreeningHistory screen(const Sample& sample, const ScreenOptions& options);
[[nodiscard]] ScreeningHistory screen(const Sample& sample, double alpha, std::size_t max_iter, BinningRule rule);

}  // namespace gof
