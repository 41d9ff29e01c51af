#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jch/sweep.hpp"

namespace jch {

enum class OutputFormat { csv, json };

[[nodiscard]] std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept;

/// Header line of the CSV contract, without the trailing newline.
inline constexpr std::string_view kCsvHeader =
    "delta,h,n_total,energy,gap,d_n1,d_n1_rel,d_n1a,prod,prod_rel,p_na0,p_na1,p_na2,phase,"
    "degenerate";

/// Twelve significant digits, locale independent, "nan"/"inf" for
/// non-finite values.
[[nodiscard]] std::string format_number(double value);

void write_csv(std::ostream& out, std::span<const SweepRecord> records);
/// JSON array of objects keyed by the CSV column names. Numbers use the
/// shortest round-trip representation; non-finite values become null.
void write_json(std::ostream& out, std::span<const SweepRecord> records);

/// Throws InputError for an empty record set and Error on I/O failure.
void write_output(std::span<const SweepRecord> records, OutputFormat format,
                  const std::filesystem::path& path);

/// Inverse of write_csv / write_json. Throws InputError on malformed input.
[[nodiscard]] std::vector<SweepRecord> read_csv(std::istream& in);
[[nodiscard]] std::vector<SweepRecord> read_json(std::istream& in);

}  // namespace jch
