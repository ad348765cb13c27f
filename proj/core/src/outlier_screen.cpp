#include "gof/outlier_screen.hpp"

#include <algorithm>
#include <cmath>

#include "gof/errors.hpp"
#include "gof/special_functions.hpp"

namespace gof {

namespace {

constexpr std::size_t kMinGrubbsSize = 4;

}  // namespace

std::string_view to_string(GrubbsVariant variant) noexcept {
    switch (variant) {
        case GrubbsVariant::Min: return "min";
        case GrubbsVariant::Max: return "max";
        case GrubbsVariant::TwoSided: return "two-sided";
    }
    return "unknown";
}

std::string_view to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::NoOutlier: return "no-outlier";
        case StopReason::MaxIterations: return "max-iterations";
        case StopReason::TooFewPoints: return "too-few-points";
    }
    return "unknown";
}

GrubbsResult grubbs(const Sample& sample, GrubbsVariant variant) {
    const std::size_t n = sample.size();
    if (n < kMinGrubbsSize) throw Error(ErrorKind::TooFewObservations, "Grubbs' test needs n >= 4");
    const Moments& m = sample.moments();

    const double low = (m.mean - sample.min()) / m.s;
    const double high = (sample.max() - m.mean) / m.s;

    GrubbsResult r;
    r.variant = variant;
    bool use_max = false;
    switch (variant) {
        case GrubbsVariant::Min: use_max = false; break;
        case GrubbsVariant::Max: use_max = true; break;
        case GrubbsVariant::TwoSided: use_max = high >= low; break;
    }
    r.g = use_max ? high : low;
    r.suspect_index = use_max ? n - 1 : 0;
    r.suspect_value = sample[r.suspect_index];

    const auto nn = static_cast<double>(n);
    const std::size_t df = n - 2;
    const auto tail = [&](double t) {
        if (variant == GrubbsVariant::TwoSided) {
            return nn * special::student_t_tail(t, df, special::TailKind::TwoSided);
        }
        return 2.0 * nn * special::student_t_tail(t, df, special::TailKind::Upper);
    };

    const double t_linear = r.g * std::sqrt(nn * (nn - 2.0)) / (nn - 1.0);
    r.p = std::clamp(tail(t_linear), 0.0, 1.0);

    const double denom = (nn - 1.0) * (nn - 1.0) - nn * r.g * r.g;
    if (denom <= 0.0) {
        r.p_exact = 0.0;
    } else {
        const double t_exact = std::sqrt(nn * (nn - 2.0) * r.g * r.g / denom);
        r.p_exact = std::clamp(tail(t_exact), 0.0, 1.0);
    }
    return r;
}

ScreeningHistory screen(const Sample& sample, const ScreenOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha <= 0.5)) {
        throw Error(ErrorKind::DomainError, "alpha must lie in (0, 0.5]");
    }
    if (options.max_iter < 1) throw Error(ErrorKind::DomainError, "max_iter must be >= 1");

    const auto model_for = [&](const Sample& s) { return options.external_model.value_or(fit_normal(s)); };

    std::optional<FittedNormal> initial;
    if (options.external_model || !sample.degenerate()) initial = model_for(sample);
    ScreeningHistory history{{}, std::nullopt, sample, initial, StopReason::NoOutlier};
    while (true) {
        const Sample& current = history.final_sample;
        if (current.size() < kMinGrubbsSize) {
            history.stop_reason = StopReason::TooFewPoints;
            break;
        }
        if (current.degenerate()) {
            // No spread left.
            history.stop_reason = StopReason::NoOutlier;
            break;
        }
        const GrubbsResult g = grubbs(current, GrubbsVariant::TwoSided);
        if (!(g.p < options.alpha)) {
            history.final_grubbs = g;
            history.stop_reason = StopReason::NoOutlier;
            break;
        }
        if (history.iterations.size() >= options.max_iter) {
            history.final_grubbs = g;
            history.stop_reason = StopReason::MaxIterations;
            break;
        }
        Sample next = current.without(g.suspect_index);
        std::optional<FittedNormal> model;
        std::vector<TestResult> battery;
        if (options.external_model || !next.degenerate()) {
            model = model_for(next);
            battery = run_battery(next, *model, options.rule, options.alpha, options.tests);
        } else {
            for (TestKind kind : options.tests) {
                TestResult r;
                r.test = kind;
                r.alpha = options.alpha;
                r.error = "DegenerateSample: all remaining observations are identical";
                battery.push_back(std::move(r));
            }
        }
        history.iterations.push_back(ScreeningIteration{g.suspect_value, g, std::move(battery)});
        history.final_sample = std::move(next);
        history.final_model = model;
    }
    return history;
}

ScreeningHistory screen(const Sample& sample, double alpha, std::size_t max_iter, BinningRule rule) {
    ScreenOptions options;
    options.alpha = alpha;
    options.max_iter = max_iter;
    options.rule = rule;
    return screen(sample, options);
}

}  // namespace gof
