#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "gof/sample.hpp"

namespace gof {

enum class BinningRule {
    HartleyEqualProbability,  ///< round(log2(2n)) classes of equal model probability
    HartleyEqualWidth,        ///< round(log2(2n)) equal-width classes over [min, max]
    DataplotWidth,            ///< width 0.3 s, limits mean +/- 6 s, empty marginal classes dropped
};

[[nodiscard]] std::string_view to_string(BinningRule rule) noexcept;
[[nodiscard]] std::optional<BinningRule> parse_binning_rule(std::string_view name) noexcept;

/**
 * @brief Frequency classes for the chi-squared test.
 *
 * `edges` has size() + 1 entries; the first is -inf and the last +inf, so the
 * outer classes are open-ended and the expected counts sum to n. Membership is
 * half-open [lo, hi): a value equal to an interior edge belongs to the upper class.
 */
struct FrequencyClasses {
    std::vector<double> edges;
    std::vector<std::size_t> observed;
    std::vector<double> expected;
    BinningRule rule = BinningRule::DataplotWidth;
    bool merged = false;

    [[nodiscard]] std::size_t size() const noexcept { return observed.size(); }
    [[nodiscard]] std::size_t total_observed() const noexcept;
    [[nodiscard]] double total_expected() const noexcept;

    friend bool operator==(const FrequencyClasses&, const FrequencyClasses&) = default;
};

/// Classes required by the >= 5 rule.
inline constexpr std::size_t kMinClassCount = 5;

/// Hartley class count round(log2(2n)), half-up. Throws TooFewObservations for n < 8.
[[nodiscard]] std::size_t class_count_hartley(std::size_t n);

/// Unmerged classes for @p rule: edges, observed counts and expected counts
/// E_i = n (F(edge_{i+1}) - F(edge_i)) under @p model.
[[nodiscard]] FrequencyClasses raw_classes(const Sample& sample, const FittedNormal& model, BinningRule rule);

/// raw_classes followed by merge_small_classes.
[[nodiscard]] FrequencyClasses build_classes(const Sample& sample, const FittedNormal& model, BinningRule rule);

/// Greedy left-to-right: a class with fewer than 5 observations is joined to
/// its right neighbour; the last class joins leftward. Throws DegenerateBinning
/// if fewer than two classes remain.
[[nodiscard]] FrequencyClasses merge_small_classes(FrequencyClasses classes);

}  // namespace gof
