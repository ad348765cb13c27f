#include "gof/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gof/errors.hpp"

#ifndef GOF_VERSION
#define GOF_VERSION "0.0.0"
#endif

namespace gof {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string sig(double v, int digits) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string percent(double p) {
    if (std::isnan(p)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * p);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// NaN and infinities have no JSON literal; they are written as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j, double null_value = kNaN) { return j.is_null() ? null_value : j.get<double>(); }

json test_to_json(const TestResult& r) {
    json j;
    j["name"] = std::string(test_key(r.test));
    j["label"] = std::string(test_label(r.test));
    j["statistic"] = number(r.statistic);
    if (r.df) j["df"] = *r.df;
    json ps = json::array();
    for (const auto& p : r.p_values) ps.push_back({{"method", p.method}, {"p", number(p.p)}});
    j["p"] = ps;
    j["alpha"] = r.alpha;
    j["reject"] = r.reject;
    j["self_referential"] = r.self_referential;
    json details = json::object();
    for (const auto& [k, v] : r.details) details[k] = number(v);
    j["details"] = details;
    j["notes"] = r.notes;
    if (r.error) j["error"] = *r.error;
    return j;
}

TestResult test_from_json(const json& j) {
    TestResult r;
    const auto kind = parse_test_key(j.at("name").get<std::string>());
    if (!kind) throw Error(ErrorKind::ParseError, "unknown test name " + j.at("name").dump());
    r.test = *kind;
    r.statistic = number_from(j.at("statistic"));
    if (j.contains("df")) r.df = j.at("df").get<std::size_t>();
    for (const auto& p : j.at("p")) r.p_values.push_back({p.at("method").get<std::string>(), number_from(p.at("p"))});
    r.alpha = j.at("alpha").get<double>();
    r.reject = j.at("reject").get<bool>();
    r.self_referential = j.at("self_referential").get<bool>();
    for (const auto& [k, v] : j.at("details").items()) r.details.emplace_back(k, number_from(v));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
}

json battery_to_json(const std::vector<TestResult>& battery) {
    json arr = json::array();
    for (const auto& r : battery) arr.push_back(test_to_json(r));
    return arr;
}

std::vector<TestResult> battery_from_json(const json& j) {
    std::vector<TestResult> out;
    for (const auto& t : j) out.push_back(test_from_json(t));
    return out;
}

json grubbs_to_json(const GrubbsResult& g) {
    return {{"variant", std::string(to_string(g.variant))},
            {"g", number(g.g)},
            {"p", number(g.p)},
            {"p_exact", number(g.p_exact)},
            {"suspect_value", number(g.suspect_value)},
            {"suspect_index", g.suspect_index}};
}

GrubbsResult grubbs_from_json(const json& j) {
    GrubbsResult g;
    const auto variant = j.at("variant").get<std::string>();
    bool known = false;
    for (auto v : {GrubbsVariant::Min, GrubbsVariant::Max, GrubbsVariant::TwoSided}) {
        if (to_string(v) == variant) {
            g.variant = v;
            known = true;
        }
    }
    if (!known) throw Error(ErrorKind::ParseError, "unknown Grubbs variant " + variant);
    g.g = number_from(j.at("g"));
    g.p = number_from(j.at("p"));
    g.p_exact = number_from(j.at("p_exact"));
    g.suspect_value = number_from(j.at("suspect_value"));
    g.suspect_index = j.at("suspect_index").get<std::size_t>();
    return g;
}

json classes_to_json(const FrequencyClasses& fc) {
    json edges = json::array();
    for (double e : fc.edges) edges.push_back(number(e));
    return {{"rule", std::string(to_string(fc.rule))},
            {"merged", fc.merged},
            {"edges", edges},
            {"observed", fc.observed},
            {"expected", fc.expected}};
}

FrequencyClasses classes_from_json(const json& j) {
    FrequencyClasses fc;
    const auto rule = parse_binning_rule(j.at("rule").get<std::string>());
    if (!rule) throw Error(ErrorKind::ParseError, "unknown binning rule");
    fc.rule = *rule;
    fc.merged = j.at("merged").get<bool>();
    const auto& edges = j.at("edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        // Only the two outer edges are unbounded.
        fc.edges.push_back(number_from(edges[i], i == 0 ? -kInf : kInf));
    }
    fc.observed = j.at("observed").get<std::vector<std::size_t>>();
    fc.expected = j.at("expected").get<std::vector<double>>();
    return fc;
}

std::string stat_cell(const TestResult& r) {
    if (!r.ok()) return "error";
    return sig(r.statistic, 5);
}

std::string p_cell(const TestResult& r) {
    if (!r.ok()) return *r.error;
    std::string s;
    for (std::size_t i = 0; i < r.p_values.size(); ++i) {
        if (i) s += "; ";
        s += percent(r.p_values[i].p);
    }
    return s;
}

std::string reject_cell(const TestResult& r) {
    if (!r.ok()) return "-";
    std::string s = r.reject ? "Yes" : "No";
    if (r.self_referential) s += " (self-referential)";
    return s;
}

void text_table(std::ostringstream& out, const std::vector<TestResult>& battery) {
    out << pad("Statistic", 24) << pad("Value", 18) << pad("Probability of observation", 30) << "Reject\n";
    for (const auto& r : battery) {
        std::string label(test_label(r.test));
        if (r.df) label += " (df=" + std::to_string(*r.df) + ")";
        out << pad(label, 24) << pad(stat_cell(r), 18) << pad(p_cell(r), 30)
            << reject_cell(r) << '\n';
    }
    std::size_t counted = 0;
    for (const auto& r : battery) counted += (r.ok() && !r.self_referential) ? 1 : 0;
    out << "Rejections: " << count_rejections(battery) << " of " << counted << '\n';
}

std::string grubbs_line(const GrubbsResult& g) {
    return "Grubbs (" + std::string(to_string(g.variant)) + "): G=" + sig(g.g, 5) + " p=" + percent(g.p) +
           " (exact-inversion " + percent(g.p_exact) + ") suspect=" + sig(g.suspect_value, 6);
}

}  // namespace

std::string_view to_string(OutputFormat format) noexcept {
    switch (format) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
    }
    return "unknown";
}

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept {
    for (auto f : {OutputFormat::Text, OutputFormat::Json, OutputFormat::Csv}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view library_version() noexcept { return GOF_VERSION; }

void validate(const RunConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha <= 0.5)) throw Error(ErrorKind::DomainError, "alpha must lie in (0, 0.5]");
    if (config.max_iter < 1) throw Error(ErrorKind::DomainError, "max-iter must be >= 1");
    if (config.tests.empty()) throw Error(ErrorKind::DomainError, "no tests selected");
}

const std::vector<TestResult>& ScreeningReport::final_battery() const noexcept {
    if (screening && !screening->iterations.empty()) return screening->iterations.back().battery;
    return tests;
}

int exit_code_for(const ScreeningReport& report) noexcept {
    return count_rejections(report.final_battery()) == 0 ? 0 : 1;
}

ScreeningSummary summarize(const ScreeningHistory& history) {
    return {history.iterations, history.final_grubbs, history.final_sample.size(), history.final_model,
            history.stop_reason};
}

ScreeningReport build_report(const Sample& sample, const RunConfig& config) {
    validate(config);
    const FittedNormal model = config.external_model.value_or(fit_normal(sample));

    ScreeningReport report;
    report.dataset = {sample.label(), sample.size(), model.mu(), model.sigma()};
    report.tests = run_battery(sample, model, config.rule, config.alpha, config.tests);
    report.histogram = build_classes(sample, model, config.rule);
    if (config.screen) {
        ScreenOptions options;
        options.alpha = config.alpha;
        options.max_iter = config.max_iter;
        options.rule = config.rule;
        options.tests = config.tests;
        options.external_model = config.external_model;
        report.screening = summarize(screen(sample, options));
    }

    std::string tests;
    for (auto k : config.tests) tests += (tests.empty() ? "" : ",") + std::string(test_key(k));
    report.provenance.version = std::string(library_version());
    report.provenance.timestamp = iso_timestamp();
    report.provenance.config = {
        {"input", config.input_path.string()},
        {"format", config.format.kind == InputFormat::Kind::Csv ? "csv:" + config.format.csv_column : "lines"},
        {"alpha", sig(config.alpha, 17)},
        {"binning", std::string(to_string(config.rule))},
        {"tests", tests},
        {"screen", config.screen ? "true" : "false"},
        {"max_iter", std::to_string(config.max_iter)},
        {"output", std::string(to_string(config.output))},
    };
    if (config.external_model) {
        report.provenance.config.emplace_back("mu", sig(config.external_model->mu(), 17));
        report.provenance.config.emplace_back("sigma", sig(config.external_model->sigma(), 17));
    }
    return report;
}

RunOutcome run(const RunConfig& config) {
    validate(config);
    const Sample sample = ingest(config.input_path, config.format);
    RunOutcome outcome{build_report(sample, config), 0};
    outcome.exit_code = exit_code_for(outcome.report);
    if (config.histogram_out) emit_histogram(outcome.report.histogram, *config.histogram_out);
    return outcome;
}

std::string render(const ScreeningReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Text: return render_text(report);
        case OutputFormat::Json: return to_json(report);
        case OutputFormat::Csv: return render_csv(report);
    }
    return {};
}

std::string render_text(const ScreeningReport& report) {
    std::ostringstream out;
    const auto& d = report.dataset;
    out << "Dataset: " << d.label << "  n=" << d.n << "  mu=" << sig(d.mu, 5) << "  sigma=" << sig(d.sigma, 5)
        << '\n';
    out << "Binning: " << to_string(report.histogram.rule) << " (" << report.histogram.size() << " classes"
        << (report.histogram.merged ? ", merged" : "") << ")\n\n";
    text_table(out, report.tests);

    if (report.screening) {
        const auto& s = *report.screening;
        out << "\nOutlier screening\n";
        std::size_t n = d.n;
        for (std::size_t i = 0; i < s.iterations.size(); ++i) {
            const auto& it = s.iterations[i];
            out << "\nIteration " << i + 1 << ": " << grubbs_line(it.grubbs) << " -> removed "
                << sig(*it.removed_value, 6) << '\n';
            --n;
            out << "Re-test on n=" << n << "\n";
            text_table(out, it.battery);
        }
        if (s.final_grubbs) out << '\n' << grubbs_line(*s.final_grubbs) << '\n';
        out << "Final: n=" << s.final_n;
        if (s.final_model) out << "  mu=" << sig(s.final_model->mu(), 5) << "  sigma=" << sig(s.final_model->sigma(), 5);
        out << "  stop=" << to_string(s.stop_reason) << '\n';
    }
    out << "\nNormality " << (exit_code_for(report) == 0 ? "not rejected" : "rejected") << " at alpha="
        << sig(report.tests.empty() ? 0.05 : report.tests.front().alpha, 4) << '\n';
    return out.str();
}

std::string render_csv(const ScreeningReport& report) {
    std::ostringstream out;
    out << "name,statistic,df,p,reject,self_referential,p_values\n";
    for (const auto& r : report.final_battery()) {
        std::string ps;
        for (const auto& p : r.p_values) ps += (ps.empty() ? "" : ";") + p.method + "=" + sig(p.p, 10);
        out << test_key(r.test) << ',' << sig(r.statistic, 10) << ',' << (r.df ? std::to_string(*r.df) : "") << ','
            << sig(r.p(), 10) << ',' << (r.reject ? "true" : "false") << ','
            << (r.self_referential ? "true" : "false") << ',' << ps << '\n';
    }
    return out.str();
}

std::string to_json(const ScreeningReport& report) {
    json j;
    j["dataset"] = {{"label", report.dataset.label},
                    {"n", report.dataset.n},
                    {"mu", number(report.dataset.mu)},
                    {"sigma", number(report.dataset.sigma)}};
    j["tests"] = battery_to_json(report.tests);
    if (report.screening) {
        const auto& s = *report.screening;
        json iterations = json::array();
        for (const auto& it : s.iterations) {
            json ij;
            ij["removed_value"] = it.removed_value ? number(*it.removed_value) : json(nullptr);
            ij["grubbs"] = grubbs_to_json(it.grubbs);
            ij["tests"] = battery_to_json(it.battery);
            iterations.push_back(ij);
        }
        json sj;
        sj["iterations"] = iterations;
        sj["final_grubbs"] = s.final_grubbs ? grubbs_to_json(*s.final_grubbs) : json(nullptr);
        sj["final"] = {{"n", s.final_n},
                       {"mu", s.final_model ? number(s.final_model->mu()) : json(nullptr)},
                       {"sigma", s.final_model ? number(s.final_model->sigma()) : json(nullptr)}};
        sj["stop_reason"] = std::string(to_string(s.stop_reason));
        j["screening"] = sj;
    }
    j["histogram"] = classes_to_json(report.histogram);
    json config = json::object();
    for (const auto& [k, v] : report.provenance.config) config[k] = v;
    j["provenance"] = {{"version", report.provenance.version},
                       {"timestamp", report.provenance.timestamp},
                       {"config", config}};
    return j.dump(2) + "\n";
}

ScreeningReport report_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        ScreeningReport report;
        const auto& d = j.at("dataset");
        report.dataset = {d.at("label").get<std::string>(), d.at("n").get<std::size_t>(), number_from(d.at("mu")),
                          number_from(d.at("sigma"))};
        report.tests = battery_from_json(j.at("tests"));
        if (j.contains("screening")) {
            const auto& sj = j.at("screening");
            ScreeningSummary s;
            for (const auto& ij : sj.at("iterations")) {
                ScreeningIteration it;
                if (!ij.at("removed_value").is_null()) it.removed_value = ij.at("removed_value").get<double>();
                it.grubbs = grubbs_from_json(ij.at("grubbs"));
                it.battery = battery_from_json(ij.at("tests"));
                s.iterations.push_back(std::move(it));
            }
            if (!sj.at("final_grubbs").is_null()) s.final_grubbs = grubbs_from_json(sj.at("final_grubbs"));
            const auto& f = sj.at("final");
            s.final_n = f.at("n").get<std::size_t>();
            if (!f.at("mu").is_null()) s.final_model = FittedNormal(f.at("mu").get<double>(), f.at("sigma").get<double>());
            const auto reason = sj.at("stop_reason").get<std::string>();
            bool known = false;
            for (auto r : {StopReason::NoOutlier, StopReason::MaxIterations, StopReason::TooFewPoints}) {
                if (to_string(r) == reason) {
                    s.stop_reason = r;
                    known = true;
                }
            }
            if (!known) throw Error(ErrorKind::ParseError, "unknown stop_reason " + reason);
            report.screening = std::move(s);
        }
        report.histogram = classes_from_json(j.at("histogram"));
        const auto& p = j.at("provenance");
        report.provenance.version = p.at("version").get<std::string>();
        report.provenance.timestamp = p.at("timestamp").get<std::string>();
        for (const auto& [k, v] : p.at("config").items()) report.provenance.config.emplace_back(k, v.get<std::string>());
        return report;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("report JSON: ") + e.what());
    }
}

std::string histogram_csv(const FrequencyClasses& classes) {
    std::ostringstream out;
    out << "lo,hi,observed,expected\n";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out << sig(classes.edges[i], 6) << ',' << sig(classes.edges[i + 1], 6) << ',' << classes.observed[i] << ','
            << sig(classes.expected[i], 6) << '\n';
    }
    return out.str();
}

void emit_histogram(const FrequencyClasses& classes, const std::filesystem::path& path) {
    write_file_atomic(path, histogram_csv(classes));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::IOError, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorKind::IOError, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::IOError, "cannot rename onto " + path.string());
    }
}

}  // namespace gof
