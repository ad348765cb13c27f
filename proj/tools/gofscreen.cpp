#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gof/errors.hpp"
#include "gof/report.hpp"

namespace {

constexpr int kUsageError = 2;

std::vector<gof::TestKind> parse_test_list(const std::string& list) {
    std::vector<gof::TestKind> out;
    std::stringstream ss(list);
    std::string key;
    while (std::getline(ss, key, ',')) {
        if (key.empty()) continue;
        const auto kind = gof::parse_test_key(key);
        if (!kind) throw gof::Error(gof::ErrorKind::DomainError, "unknown test '" + key + "'");
        out.push_back(*kind);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normality screening: goodness-of-fit battery with Grubbs outlier removal"};
    app.set_version_flag("--version", std::string(gof::library_version()));

    std::string input;
    std::string csv_column;
    double alpha = 0.05;
    std::string binning = "dataplot";
    bool screen = false;
    std::size_t max_iter = 5;
    bool extended = false;
    std::string tests;
    std::optional<double> mu;
    std::optional<double> sigma;
    std::string output = "text";
    std::string histogram;

    app.add_option("--input", input, "Data file (numbers per line, or CSV with --csv-column)")->required();
    app.add_option("--csv-column", csv_column, "CSV column by header name or 0-based index");
    app.add_option("--alpha", alpha, "Significance level in (0, 0.5]")->capture_default_str();
    app.add_option("--binning", binning, "Chi-squared classes")
        ->check(CLI::IsMember({"hartley-eqprob", "hartley-eqwidth", "dataplot"}))
        ->capture_default_str();
    app.add_flag("--screen", screen, "Iteratively remove Grubbs outliers and re-test");
    app.add_option("--max-iter", max_iter, "Maximum removals when screening")->capture_default_str();
    app.add_flag("--extended", extended, "Add D-, D+, Kuiper, Cramer-von Mises and the z mean/variance/stdev tests");
    app.add_option("--tests", tests, "Comma-separated test keys (overrides --extended)");
    auto* mu_opt = app.add_option("--mu", mu, "External model mean");
    auto* sigma_opt = app.add_option("--sigma", sigma, "External model standard deviation");
    mu_opt->needs(sigma_opt);
    sigma_opt->needs(mu_opt);
    app.add_option("--output", output, "Report format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--histogram", histogram, "Write chi-squared classes as CSV to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageError;
    }

    try {
        gof::RunConfig config;
        config.input_path = input;
        if (!csv_column.empty()) config.format = {gof::InputFormat::Kind::Csv, csv_column};
        config.alpha = alpha;
        config.rule = *gof::parse_binning_rule(binning);
        config.tests = !tests.empty() ? parse_test_list(tests) : extended ? gof::extended_tests() : gof::default_tests();
        config.screen = screen;
        config.max_iter = max_iter;
        config.output = *gof::parse_output_format(output);
        if (!histogram.empty()) config.histogram_out = histogram;
        if (mu) config.external_model = gof::FittedNormal(*mu, *sigma);

        const auto outcome = gof::run(config);
        std::cout << gof::render(outcome.report, config.output);
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "gofscreen: " << e.what() << '\n';
        return kUsageError;
    }
}
