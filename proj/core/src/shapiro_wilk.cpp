// Shapiro-Wilk W and its p-value, following Royston's AS R94 for complete
// (uncensored) samples, 3 <= n <= 5000.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "gof/errors.hpp"
#include "gof/normality_tests.hpp"
#include "gof/special_functions.hpp"

namespace gof {

namespace {

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
    double r = 0.0;
    for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
    return r;
}

// AS241 PPND16: standard normal quantile, ~1e-16 relative accuracy.
// Used only for the expected order statistics inside AS R94.
double ppnd16(double p) {
    static constexpr std::array<double, 8> a = {3.3871328727963666080e0, 1.3314166789178437745e+2,
                                                1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                                4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                                3.3430575583588128105e+4, 2.5090809287301226727e+3};
    static constexpr std::array<double, 8> b = {1.0, 4.2313330701600911252e+1,
                                                6.8718700749205790830e+2, 5.3941960214247511077e+3,
                                                2.1213794301586595867e+4, 3.9307895800092710610e+4,
                                                2.8729085735721942674e+4, 5.2264952788528545610e+3};
    static constexpr std::array<double, 8> c = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                                5.76949722146069140550e0, 3.64784832476320460504e0,
                                                1.27045825245236838258e0, 2.41780725177450611770e-1,
                                                2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr std::array<double, 8> d = {1.0, 2.05319162663775882187e0,
                                                1.67638483018380384940e0, 6.89767334985100004550e-1,
                                                1.48103976427480074590e-1, 1.51986665636164571966e-2,
                                                5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr std::array<double, 8> e = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                                1.78482653991729133580e0, 2.96560571828504891230e-1,
                                                2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                                2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr std::array<double, 8> f = {1.0, 5.99832206555887937690e-1,
                                                1.36929880922735805310e-1, 1.48753612908506148525e-2,
                                                7.86869131145613259100e-4, 1.84631831751005468180e-5,
                                                1.42151175831644588870e-7, 2.04426310338993978564e-15};
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, r) / poly(b, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = poly(c, r) / poly(d, r);
    } else {
        r -= 5.0;
        value = poly(e, r) / poly(f, r);
    }
    return q < 0.0 ? -value : value;
}

constexpr std::array<double, 6> kC1 = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
constexpr std::array<double, 6> kC2 = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr std::array<double, 4> kC3 = {0.5440, -0.39978, 0.025054, -6.714e-4};
constexpr std::array<double, 4> kC4 = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr std::array<double, 4> kC5 = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr std::array<double, 3> kC6 = {-0.4803, -0.082676, 0.0030302};
constexpr std::array<double, 2> kG = {-2.273, 0.459};
constexpr double kSmall = 1e-19;

}  // namespace

std::vector<double> shapiro_wilk_weights(std::size_t n) {
    if (n < 3 || n > 5000) {
        throw Error(ErrorKind::SampleSizeOutOfRange, "Shapiro-Wilk needs 3 <= n <= 5000, got " + std::to_string(n));
    }
    const std::size_t half = n / 2;
    std::vector<double> a(half);
    if (n == 3) {
        a[0] = std::numbers::sqrt2 / 2.0;
        return a;
    }
    const auto an = static_cast<double>(n);
    double summ2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        a[i] = ppnd16((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        summ2 += a[i] * a[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(kC1, rsn) - a[0] / ssumm2;

    std::size_t first_scaled;
    double fac;
    if (n > 5) {
        first_scaled = 2;
        const double a2 = -a[1] / ssumm2 + poly(kC2, rsn);
        fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
        a[1] = a2;
    } else {
        first_scaled = 1;
        fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
    }
    a[0] = a1;
    for (std::size_t i = first_scaled; i < half; ++i) a[i] = -a[i] / fac;
    return a;
}

ShapiroWilk shapiro_wilk(std::span<const double> x) {
    const std::size_t n = x.size();
    const auto half_weights = shapiro_wilk_weights(n);
    const double range = x[n - 1] - x[0];
    if (range < kSmall) throw Error(ErrorKind::DegenerateSample, "zero range");

    // Full antisymmetric coefficient vector.
    std::vector<double> coef(n, 0.0);
    for (std::size_t i = 0; i < half_weights.size(); ++i) {
        coef[i] = -half_weights[i];
        coef[n - 1 - i] = half_weights[i];
    }

    // W as the squared correlation of coefficients and range-scaled data;
    // 1 - W is formed directly.
    const auto an = static_cast<double>(n);
    double sa = 0.0, sx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += coef[i];
        sx += x[i] / range;
    }
    sa /= an;
    sx /= an;
    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double asa = coef[i] - sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);

    ShapiroWilk out;
    out.w = 1.0 - w1;

    if (n == 3) {
        constexpr double pi6 = 6.0 / std::numbers::pi;
        const double stqr = std::asin(std::sqrt(0.75));
        out.p = std::max(0.0, pi6 * (std::asin(std::sqrt(out.w)) - stqr));
        return out;
    }

    double y = std::log(w1);
    const double lxx = std::log(an);
    double m, s;
    if (n <= 11) {
        const double gamma = poly(kG, an);
        if (y >= gamma) {
            out.p = kSmall;
            return out;
        }
        y = -std::log(gamma - y);
        m = poly(kC3, an);
        s = std::exp(poly(kC4, an));
    } else {
        m = poly(kC5, lxx);
        s = std::exp(poly(kC6, lxx));
    }
    out.p = special::normal_cdf(-(y - m) / s);
    return out;
}

TestResult wilks_shapiro(const Sample& sample, double alpha) {
    const auto sw = shapiro_wilk(sample.values());
    TestResult r;
    r.test = TestKind::WilksShapiro;
    r.statistic = sw.w;
    r.p_values = {{"royston-as-r94", sw.p}};
    apply_alpha(r, alpha);
    return r;
}

}  // namespace gof
