#include "gof/sample.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gof/errors.hpp"
#include "gof/special_functions.hpp"

namespace gof {

namespace {

std::optional<Moments> compute_moments(std::span<const double> x) {
    const auto n = static_cast<double>(x.size());
    double sum = 0.0;
    for (double v : x) sum += v;
    const double mean = sum / n;

    double s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double v : x) {
        const double d = v - mean;
        const double d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    if (s2 <= 0.0) return std::nullopt;

    Moments m;
    m.mean = mean;
    m.m2 = s2 / n;
    m.m3 = s3 / n;
    m.m4 = s4 / n;
    m.s = std::sqrt(s2 / (n - 1.0));
    m.g1 = m.m3 / std::pow(m.m2, 1.5);
    m.g2 = m.m4 / (m.m2 * m.m2) - 3.0;
    return m;
}

}  // namespace

Sample::Sample(std::vector<double> sorted, std::string label)
    : values_(std::move(sorted)), label_(std::move(label)), moments_(compute_moments(values_)) {}

Sample Sample::make(std::span<const double> raw, std::string label) {
    if (raw.empty()) throw Error(ErrorKind::EmptyInput, "no observations");
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) {
            throw Error(ErrorKind::NonFiniteValue, "value at index " + std::to_string(i) + " is not finite");
        }
    }
    if (raw.size() < kMinSize) {
        throw Error(ErrorKind::TooFewObservations,
                    "need at least " + std::to_string(kMinSize) + " observations, got " + std::to_string(raw.size()));
    }
    std::vector<double> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end());
    return Sample(std::move(sorted), std::move(label));
}

const Moments& Sample::moments() const {
    if (!moments_) throw Error(ErrorKind::DegenerateSample, "all observations are identical (m2 = 0)");
    return *moments_;
}

Sample Sample::without(std::size_t index) const {
    if (index >= values_.size()) throw Error(ErrorKind::DomainError, "order statistic index out of range");
    std::vector<double> rest;
    rest.reserve(values_.size() - 1);
    rest.insert(rest.end(), values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(index));
    rest.insert(rest.end(), values_.begin() + static_cast<std::ptrdiff_t>(index) + 1, values_.end());
    if (rest.size() < kMinSize) throw Error(ErrorKind::TooFewObservations, "removal would leave fewer than 3 observations");
    return Sample(std::move(rest), label_);
}

std::size_t Sample::tie_count() const noexcept {
    std::size_t ties = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] == values_[i - 1]) ++ties;
    }
    return ties;
}

Moments moments(const Sample& sample) { return sample.moments(); }

double ecdf(const Sample& sample, double x) noexcept {
    const auto v = sample.values();
    const auto it = std::upper_bound(v.begin(), v.end(), x);
    return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

FittedNormal::FittedNormal(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
        throw Error(ErrorKind::DomainError, "normal model needs finite mu and sigma > 0");
    }
}

double FittedNormal::cdf(double x) const noexcept { return special::normal_cdf(standardize(x)); }

FittedNormal fit_normal(const Sample& sample) {
    const Moments& m = sample.moments();
    return FittedNormal(m.mean, m.s);
}

}  // namespace gof
