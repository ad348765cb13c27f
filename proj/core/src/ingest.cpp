#include "gof/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>

#include "gof/errors.hpp"

namespace gof {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<double> to_double(std::string_view token) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

[[noreturn]] void parse_error(std::size_t line, std::string_view token) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": cannot parse '" + std::string(token) + "'");
}

std::vector<std::string> split_csv_row(std::string_view row) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const char c = row[i];
        if (quoted) {
            if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

}  // namespace

std::vector<double> parse_lines(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        std::size_t pos = 0;
        while (pos < content.size()) {
            const auto end = content.find_first_of(" \t,;", pos);
            const auto token = content.substr(pos, end == std::string_view::npos ? content.npos : end - pos);
            if (!trim(token).empty()) {
                const auto v = to_double(token);
                if (!v) parse_error(line_no, token);
                values.push_back(*v);
            }
            if (end == std::string_view::npos) break;
            pos = end + 1;
        }
    }
    return values;
}

std::vector<double> parse_csv_column(std::istream& in, std::string_view column) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> index;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_row(line);
        if (first_row) {
            first_row = false;
            const auto named = std::find(cells.begin(), cells.end(), column);
            if (named != cells.end()) {
                index = static_cast<std::size_t>(named - cells.begin());
                continue;
            }
            std::size_t idx = 0;
            const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), idx);
            if (ec != std::errc{} || ptr != column.data() + column.size()) {
                throw Error(ErrorKind::ParseError, "CSV column '" + std::string(column) + "' not found in header");
            }
            index = idx;
            if (idx < cells.size() && !to_double(cells[idx])) continue;  // header row
        }
        if (*index >= cells.size()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": missing column " + std::to_string(*index));
        }
        const auto v = to_double(cells[*index]);
        if (!v) parse_error(line_no, cells[*index]);
        values.push_back(*v);
    }
    return values;
}

Sample ingest(const std::filesystem::path& path, const InputFormat& format) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IOError, "cannot open " + path.string());
    const auto values =
        format.kind == InputFormat::Kind::Csv ? parse_csv_column(in, format.csv_column) : parse_lines(in);
    if (values.empty()) throw Error(ErrorKind::EmptyInput, path.string() + " contains no observations");
    return Sample::make(values, path.stem().string());
}

}  // namespace gof
