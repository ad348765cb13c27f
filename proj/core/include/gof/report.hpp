#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gof/binning.hpp"
#include "gof/ingest.hpp"
#include "gof/normality_tests.hpp"
#include "gof/outlier_screen.hpp"

namespace gof {

enum class OutputFormat { Text, Json, Csv };

[[nodiscard]] std::string_view to_string(OutputFormat format) noexcept;
[[nodiscard]] std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept;

[[nodiscard]] std::string_view library_version() noexcept;

struct RunConfig {
    std::filesystem::path input_path;
    InputFormat format;
    double alpha = 0.05;
    BinningRule rule = BinningRule::DataplotWidth;
    std::vector<TestKind> tests = default_tests();
    bool screen = false;
    std::size_t max_iter = 5;
    OutputFormat output = OutputFormat::Text;
    std::optional<std::filesystem::path> histogram_out;
    std::optional<FittedNormal> external_model;
};

/// Throws DomainError for alpha outside (0, 0.5], max_iter == 0 or an empty test list.
void validate(const RunConfig& config);

struct DatasetInfo {
    std::string label;
    std::size_t n = 0;
    double mu = 0.0;
    double sigma = 0.0;

    friend bool operator==(const DatasetInfo&, const DatasetInfo&) = default;
};

/// Serializable view of a ScreeningHistory.
struct ScreeningSummary {
    std::vector<ScreeningIteration> iterations;
    std::optional<GrubbsResult> final_grubbs;
    std::size_t final_n = 0;
    std::optional<FittedNormal> final_model;
    StopReason stop_reason = StopReason::NoOutlier;
};

struct Provenance {
    std::string version;
    std::string timestamp;  ///< ISO 8601, UTC
    std::vector<std::pair<std::string, std::string>> config;
};

struct ScreeningReport {
    DatasetInfo dataset;
    std::vector<TestResult> tests;  ///< battery on the input sample
    std::optional<ScreeningSummary> screening;
    FrequencyClasses histogram;     ///< chi-squared classes of the input sample
    Provenance provenance;

    /// Battery the verdict is based on: after the last removal, else `tests`.
    [[nodiscard]] const std::vector<TestResult>& final_battery() const noexcept;
};

/// 0 when no counted test rejects normality on the final sample, 1 otherwise.
[[nodiscard]] int exit_code_for(const ScreeningReport& report) noexcept;

[[nodiscard]] ScreeningSummary summarize(const ScreeningHistory& history);

/// Builds the report for an already-loaded sample (no file I/O).
[[nodiscard]] ScreeningReport build_report(const Sample& sample, const RunConfig& config);

struct RunOutcome {
    ScreeningReport report;
    int exit_code = 0;
};

/// ingest -> battery (-> screening) -> optional histogram file. Errors propagate as gof::Error.
[[nodiscard]] RunOutcome run(const RunConfig& config);

[[nodiscard]] std::string render(const ScreeningReport& report, OutputFormat format);
[[nodiscard]] std::string render_text(const ScreeningReport& report);
[[nodiscard]] std::string render_csv(const ScreeningReport& report);
[[nodiscard]] std::string to_json(const ScreeningReport& report);
/// Inverse of to_json; throws ParseError on malformed input.
[[nodiscard]] ScreeningReport report_from_json(std::string_view json);

/// `lo,hi,observed,expected`, one row per class, 6 significant digits.
[[nodiscard]] std::string histogram_csv(const FrequencyClasses& classes);
/// Writes histogram_csv atomically (temp file + rename). Throws IOError.
void emit_histogram(const FrequencyClasses& classes, const std::filesystem::path& path);

/// Write to a sibling temporary and rename over @p path. Throws IOError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace gof
