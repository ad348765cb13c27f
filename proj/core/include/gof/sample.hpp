#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gof {

/// Central moments use divisor N; `s` uses divisor N-1.
struct Moments {
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    double s = 0.0;   ///< sample standard deviation
    double g1 = 0.0;  ///< skewness, m3 / m2^(3/2)
    double g2 = 0.0;  ///< excess kurtosis, m4 / m2^2 - 3

    [[nodiscard]] double raw_kurtosis() const noexcept { return g2 + 3.0; }
};

/**
 * @brief Validated observations in ascending order.
 *
 * Immutable after construction. Moments are computed once (two-pass) and
 * cached; a sample whose values are all identical is still a valid Sample,
 * but asking for its moments raises DegenerateSample.
 */
class Sample {
public:
    static constexpr std::size_t kMinSize = 3;

    /// Sorts a copy of @p raw. Throws EmptyInput, NonFiniteValue (with the
    /// offending index) or TooFewObservations when fewer than kMinSize values.
    [[nodiscard]] static Sample make(std::span<const double> raw, std::string label = {});

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] double min() const noexcept { return values_.front(); }
    [[nodiscard]] double max() const noexcept { return values_.back(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

    [[nodiscard]] bool degenerate() const noexcept { return !moments_.has_value(); }
    [[nodiscard]] const Moments& moments() const;

    /// Copy without the order statistic at @p index (sorted position).
    [[nodiscard]] Sample without(std::size_t index) const;

    /// Number of observations that repeat an earlier value (n - distinct).
    [[nodiscard]] std::size_t tie_count() const noexcept;

private:
    Sample(std::vector<double> sorted, std::string label);

    std::vector<double> values_;
    std::string label_;
    std::optional<Moments> moments_;
};

/// Free-function form of Sample::moments(); throws DegenerateSample when m2 == 0.
[[nodiscard]] Moments moments(const Sample& sample);

/// Fraction of observations <= x (right-continuous, ties counted with multiplicity).
[[nodiscard]] double ecdf(const Sample& sample, double x) noexcept;

/// Normal model used as the theoretical CDF by every test.
class FittedNormal {
public:
    /// Throws DomainError unless sigma > 0 and both parameters are finite.
    FittedNormal(double mu, double sigma);

    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] double sigma() const noexcept { return sigma_; }

    [[nodiscard]] double cdf(double x) const noexcept;
    [[nodiscard]] double standardize(double x) const noexcept { return (x - mu_) / sigma_; }

    friend bool operator==(const FittedNormal&, const FittedNormal&) = default;

private:
    double mu_;
    double sigma_;
};

/// Plug-in fit: mu = sample mean, sigma = sample standard deviation (divisor n-1).
[[nodiscard]] FittedNormal fit_normal(const Sample& sample);

}  // namespace gof
