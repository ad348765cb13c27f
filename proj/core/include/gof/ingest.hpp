#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "gof/sample.hpp"

namespace gof {

struct InputFormat {
    enum class Kind { Lines, Csv };

    Kind kind = Kind::Lines;
    /// CSV only: header name, or a 0-based column index when no header cell matches.
    std::string csv_column;
};

/// Numbers separated by whitespace, commas or semicolons; blank lines and
/// lines starting with '#' are skipped. Throws ParseError naming the line.
[[nodiscard]] std::vector<double> parse_lines(std::istream& in);

/// RFC 4180 subset (quoted fields, doubled quotes, no embedded newlines).
/// A first row whose selected cell is not numeric is treated as the header.
[[nodiscard]] std::vector<double> parse_csv_column(std::istream& in, std::string_view column);

/// Reads @p path and returns a Sample labelled with the file stem.
/// Throws IOError, ParseError or EmptyInput.
[[nodiscard]] Sample ingest(const std::filesystem::path& path, const InputFormat& format);

}  // namespace gof
