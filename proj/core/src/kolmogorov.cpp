#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gof/errors.hpp"
#include "gof/normality_tests.hpp"

namespace gof {

namespace {

constexpr double kSeriesTolerance = 1e-12;
constexpr int kMaxTerms = 10000;

// Dense square matrix carrying a separate base-10 exponent.
struct ScaledMatrix {
    std::size_t m = 0;
    std::vector<double> a;
    int exponent = 0;

    double& at(std::size_t i, std::size_t j) { return a[i * m + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * m + j]; }
};

ScaledMatrix multiply(const ScaledMatrix& x, const ScaledMatrix& y) {
    ScaledMatrix r{x.m, std::vector<double>(x.m * x.m, 0.0), x.exponent + y.exponent};
    for (std::size_t i = 0; i < x.m; ++i) {
        for (std::size_t k = 0; k < x.m; ++k) {
            const double xik = x.at(i, k);
            if (xik == 0.0) continue;
            for (std::size_t j = 0; j < x.m; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    }
    return r;
}

ScaledMatrix power(const ScaledMatrix& h, std::size_t n) {
    if (n == 1) return h;
    ScaledMatrix half = power(h, n / 2);
    ScaledMatrix v = multiply(half, half);
    if (n % 2 == 1) v = multiply(h, v);
    const std::size_t mid = v.m / 2;
    if (v.at(mid, mid) > 1e140) {
        for (double& e : v.a) e *= 1e-140;
        v.exponent += 140;
    }
    return v;
}

// P(D_n < d), Marsaglia, Tsang & Wang (2003), without their tail shortcut
// in the body; the shortcut is applied by the caller for the far tail.
double kolmogorov_cdf_exact(double d, std::size_t n) {
    const double nd = static_cast<double>(n) * d;
    const auto k = static_cast<std::size_t>(nd) + 1;
    const std::size_t m = 2 * k - 1;
    const double h = static_cast<double>(k) - nd;

    ScaledMatrix hm{m, std::vector<double>(m * m, 0.0), 0};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) hm.at(i, j) = (i + 1 >= j) ? 1.0 : 0.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        hm.at(i, 0) -= std::pow(h, static_cast<double>(i + 1));
        hm.at(m - 1, i) -= std::pow(h, static_cast<double>(m - i));
    }
    if (2.0 * h - 1.0 > 0.0) hm.at(m - 1, 0) += std::pow(2.0 * h - 1.0, static_cast<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i + 1 > j) {
                for (std::size_t g = 1; g <= i + 1 - j; ++g) hm.at(i, j) /= static_cast<double>(g);
            }
        }
    }

    const ScaledMatrix q = power(hm, n);
    double s = q.at(k - 1, k - 1);
    int exponent = q.exponent;
    for (std::size_t i = 1; i <= n; ++i) {
        s = s * static_cast<double>(i) / static_cast<double>(n);
        if (s < 1e-140) {
            s *= 1e140;
            exponent -= 140;
        }
    }
    return s * std::pow(10.0, exponent);
}

}  // namespace

KSDecomposition ks_statistics(const Sample& sample, const FittedNormal& model) {
    const auto x = sample.values();
    const auto n = static_cast<double>(x.size());
    KSDecomposition ks;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = model.cdf(x[i]);
        ks.d_plus = std::max(ks.d_plus, static_cast<double>(i + 1) / n - f);
        ks.d_minus = std::max(ks.d_minus, f - static_cast<double>(i) / n);
    }
    ks.d = std::max(ks.d_minus, ks.d_plus);
    ks.v = ks.d_minus + ks.d_plus;
    return ks;
}

double kolmogorov_sf_alternating(double k) {
    if (k <= 0.0) return 1.0;
    double sum = 0.0;
    for (int i = 1; i < kMaxTerms; ++i) {
        const double term = std::exp(-2.0 * i * i * k * k);
        sum += (i % 2 == 1) ? term : -term;
        if (term < kSeriesTolerance) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_sf_theta(double k) {
    if (k <= 0.0) return 1.0;
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * k * k);
    double sum = 0.0;
    for (int i = 1; i < kMaxTerms; ++i) {
        const double odd = 2.0 * i - 1.0;
        const double term = std::exp(-odd * odd * c);
        sum += term;
        if (term < kSeriesTolerance * 1e-4) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / k * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

double kolmogorov_sf(double k) { return k < 1.0 ? kolmogorov_sf_theta(k) : kolmogorov_sf_alternating(k); }

double kolmogorov_sf_exact(double d, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::DomainError, "Kolmogorov distribution needs n >= 1");
    if (!(d > 0.0)) return 1.0;
    if (d >= 1.0) return 0.0;
    const double nn = static_cast<double>(n);
    const double s = d * d * nn;
    // Far tail: Marsaglia-Tsang-Wang closed-form approximation.
    if (s > 7.24 || (s > 3.76 && n > 99)) {
        return std::clamp(2.0 * std::exp(-(2.000071 + 0.331 / std::sqrt(nn) + 1.409 / nn) * s), 0.0, 1.0);
    }
    return std::clamp(1.0 - kolmogorov_cdf_exact(d, n), 0.0, 1.0);
}

double ks_p_value(double d, std::size_t n) { return kolmogorov_sf_exact(d, n); }

double kuiper_q(double lambda) {
    if (lambda < 0.4) return 1.0;
    double sum = 0.0;
    for (int i = 1; i < kMaxTerms; ++i) {
        const double a = 2.0 * i * i * lambda * lambda;
        const double term = (2.0 * a - 1.0) * std::exp(-a);
        sum += term;
        if (i >= 2 && std::fabs(term) < kSeriesTolerance) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kuiper_p_value(double v, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    return kuiper_q(v * (rn + 0.155 + 0.24 / rn));
}

TestResult ks_test(const Sample& sample, const FittedNormal& model, double alpha) {
    const auto ks = ks_statistics(sample, model);
    const std::size_t n = sample.size();
    TestResult r;
    r.test = TestKind::KS_D;
    r.statistic = ks.d;
    r.p_values = {{"exact-finite-n", ks_p_value(ks.d, n)},
                  {"asymptotic", kolmogorov_sf(ks.d * std::sqrt(static_cast<double>(n)))}};
    r.details = {{"d_minus", ks.d_minus}, {"d_plus", ks.d_plus}, {"K", ks.d * std::sqrt(static_cast<double>(n))}};
    apply_alpha(r, alpha);
    return r;
}

TestResult ks_one_sided_test(const Sample& sample, const FittedNormal& model, TestKind side, double alpha) {
    if (side != TestKind::KS_Dminus && side != TestKind::KS_Dplus) {
        throw Error(ErrorKind::DomainError, "one-sided KS needs KS_Dminus or KS_Dplus");
    }
    const auto ks = ks_statistics(sample, model);
    const double d = side == TestKind::KS_Dminus ? ks.d_minus : ks.d_plus;
    const auto n = static_cast<double>(sample.size());
    TestResult r;
    r.test = side;
    r.statistic = d;
    // Smirnov's one-sided limit P(sqrt(n) D+ >= x) = exp(-2 x^2).
    r.p_values = {{"smirnov-asymptotic", std::min(1.0, std::exp(-2.0 * n * d * d))}};
    apply_alpha(r, alpha);
    return r;
}

TestResult kuiper_test(const Sample& sample, const FittedNormal& model, double alpha) {
    const auto ks = ks_statistics(sample, model);
    TestResult r;
    r.test = TestKind::Kuiper_V;
    r.statistic = ks.v;
    r.p_values = {{"kuiper-asymptotic", kuiper_p_value(ks.v, sample.size())}};
    apply_alpha(r, alpha);
    return r;
}

}  // namespace gof
