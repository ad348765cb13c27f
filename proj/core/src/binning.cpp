#include "gof/binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gof/errors.hpp"
#include "gof/special_functions.hpp"

namespace gof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDataplotWidth = 0.3;    // in units of s
constexpr double kDataplotHalfSpan = 6.0;  // in units of s

// Standard normal quantile by bisection on normal_cdf.
double normal_quantile_bisect(double p) {
    double lo = -40.0, hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (special::normal_cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<std::size_t> count_members(std::span<const double> sorted, const std::vector<double>& edges) {
    std::vector<std::size_t> observed(edges.size() - 1, 0);
    for (double x : sorted) {
        // number of interior edges <= x
        const auto pos = std::upper_bound(edges.begin() + 1, edges.end() - 1, x) - (edges.begin() + 1);
        ++observed[static_cast<std::size_t>(pos)];
    }
    return observed;
}

std::vector<double> expected_counts(const std::vector<double>& edges, const FittedNormal& model, std::size_t n) {
    std::vector<double> cdf(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] == -kInf) {
            cdf[i] = 0.0;
        } else if (edges[i] == kInf) {
            cdf[i] = 1.0;
        } else {
            cdf[i] = model.cdf(edges[i]);
        }
    }
    std::vector<double> expected(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        expected[i] = static_cast<double>(n) * (cdf[i + 1] - cdf[i]);
    }
    return expected;
}

}  // namespace

std::string_view to_string(BinningRule rule) noexcept {
    switch (rule) {
        case BinningRule::HartleyEqualProbability: return "hartley-eqprob";
        case BinningRule::HartleyEqualWidth: return "hartley-eqwidth";
        case BinningRule::DataplotWidth: return "dataplot";
    }
    return "unknown";
}

std::optional<BinningRule> parse_binning_rule(std::string_view name) noexcept {
    for (auto rule : {BinningRule::HartleyEqualProbability, BinningRule::HartleyEqualWidth, BinningRule::DataplotWidth}) {
        if (to_string(rule) == name) return rule;
    }
    return std::nullopt;
}

std::size_t FrequencyClasses::total_observed() const noexcept {
    return std::accumulate(observed.begin(), observed.end(), std::size_t{0});
}

double FrequencyClasses::total_expected() const noexcept {
    return std::accumulate(expected.begin(), expected.end(), 0.0);
}

std::size_t class_count_hartley(std::size_t n) {
    if (n < 8) throw Error(ErrorKind::TooFewObservations, "Hartley class count needs n >= 8");
    return static_cast<std::size_t>(std::floor(std::log2(2.0 * static_cast<double>(n)) + 0.5));
}

FrequencyClasses raw_classes(const Sample& sample, const FittedNormal& model, BinningRule rule) {
    const std::size_t n = sample.size();
    FrequencyClasses fc;
    fc.rule = rule;

    switch (rule) {
        case BinningRule::HartleyEqualProbability: {
            const std::size_t k = class_count_hartley(n);
            fc.edges.push_back(-kInf);
            for (std::size_t i = 1; i < k; ++i) {
                const double z = normal_quantile_bisect(static_cast<double>(i) / static_cast<double>(k));
                fc.edges.push_back(model.mu() + model.sigma() * z);
            }
            fc.edges.push_back(kInf);
            break;
        }
        case BinningRule::HartleyEqualWidth: {
            const std::size_t k = class_count_hartley(n);
            const double lo = sample.min();
            const double width = (sample.max() - lo) / static_cast<double>(k);
            if (!(width > 0.0)) throw Error(ErrorKind::DegenerateSample, "zero range; equal-width classes undefined");
            fc.edges.push_back(-kInf);
            for (std::size_t i = 1; i < k; ++i) fc.edges.push_back(lo + static_cast<double>(i) * width);
            fc.edges.push_back(kInf);
            break;
        }
        case BinningRule::DataplotWidth: {
            const Moments& m = sample.moments();
            const double width = kDataplotWidth * m.s;
            const auto half = static_cast<int>(std::lround(kDataplotHalfSpan / kDataplotWidth));
            fc.edges.push_back(-kInf);
            for (int j = -half + 1; j < half; ++j) fc.edges.push_back(m.mean + j * width);
            fc.edges.push_back(kInf);
            break;
        }
    }

    fc.observed = count_members(sample.values(), fc.edges);

    if (rule == BinningRule::DataplotWidth) {
        // Drop empty marginal classes; the surviving outer classes become open-ended.
        const auto first = static_cast<std::size_t>(
            std::find_if(fc.observed.begin(), fc.observed.end(), [](std::size_t c) { return c > 0; }) -
            fc.observed.begin());
        const auto last = fc.observed.size() - 1 -
                          static_cast<std::size_t>(std::find_if(fc.observed.rbegin(), fc.observed.rend(),
                                                                [](std::size_t c) { return c > 0; }) -
                                                   fc.observed.rbegin());
        std::vector<double> edges(fc.edges.begin() + static_cast<std::ptrdiff_t>(first),
                                  fc.edges.begin() + static_cast<std::ptrdiff_t>(last) + 2);
        edges.front() = -kInf;
        edges.back() = kInf;
        fc.edges = std::move(edges);
        fc.observed = std::vector<std::size_t>(fc.observed.begin() + static_cast<std::ptrdiff_t>(first),
                                               fc.observed.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    }

    fc.expected = expected_counts(fc.edges, model, n);
    return fc;
}

FrequencyClasses build_classes(const Sample& sample, const FittedNormal& model, BinningRule rule) {
    return merge_small_classes(raw_classes(sample, model, rule));
}

FrequencyClasses merge_small_classes(FrequencyClasses fc) {
    if (fc.size() < 2) throw Error(ErrorKind::DegenerateBinning, "need at least two classes");
    std::size_t i = 0;
    while (i < fc.observed.size()) {
        if (fc.observed[i] >= kMinClassCount || fc.observed.size() == 1) {
            ++i;
            continue;
        }
        fc.merged = true;
        const bool last = (i + 1 == fc.observed.size());
        const std::size_t into = last ? i - 1 : i + 1;
        fc.observed[into] += fc.observed[i];
        fc.expected[into] += fc.expected[i];
        // The edge shared by classes i and into disappears.
        fc.edges.erase(fc.edges.begin() + static_cast<std::ptrdiff_t>(last ? i : i + 1));
        fc.observed.erase(fc.observed.begin() + static_cast<std::ptrdiff_t>(i));
        fc.expected.erase(fc.expected.begin() + static_cast<std::ptrdiff_t>(i));
        if (last) i = into;
    }
    if (fc.size() < 2) {
        throw Error(ErrorKind::DegenerateBinning, "fewer than two classes survive the >= 5 observations rule");
    }
    return fc;
}

}  // namespace gof
