#include "jch/sweep_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jch/errors.hpp"

namespace jch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_number(std::string_view text, std::size_t line) {
  if (text == "nan") return kNaN;
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InputError("line " + std::to_string(line) + ": cannot parse number '" +
                     std::string(text) + "'");
  }
  return v;
}

Phase parse_phase_or_throw(std::string_view text, std::size_t line) {
  if (auto p = parse_phase(text)) return *p;
  throw InputError("line " + std::to_string(line) + ": unknown phase '" + std::string(text) + "'");
}

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double json_number(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) {
    // Non-finite values are written as null; gap is the only one that can be +inf.
    return std::string_view(key) == "gap" ? std::numeric_limits<double>::infinity() : kNaN;
  }
  return v.get<double>();
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) noexcept {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.delta) << ',' << format_number(r.h) << ',' << r.n_total << ','
        << format_number(r.energy) << ',' << format_number(r.gap) << ',' << format_number(r.d_n1)
        << ',' << format_number(r.d_n1_rel) << ',' << format_number(r.d_n1a) << ','
        << format_number(r.prod) << ',' << format_number(r.prod_rel) << ','
        << format_number(r.p_na[0]) << ',' << format_number(r.p_na[1]) << ','
        << format_number(r.p_na[2]) << ',' << to_string(r.phase) << ','
        << (r.degenerate ? "true" : "false") << '\n';
  }
}

void write_json(std::ostream& out, std::span<const SweepRecord> records) {
  auto array = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["delta"] = number_or_null(r.delta);
    j["h"] = number_or_null(r.h);
    j["n_total"] = r.n_total;
    j["energy"] = number_or_null(r.energy);
    j["gap"] = number_or_null(r.gap);
    j["d_n1"] = number_or_null(r.d_n1);
    j["d_n1_rel"] = number_or_null(r.d_n1_rel);
    j["d_n1a"] = number_or_null(r.d_n1a);
    j["prod"] = number_or_null(r.prod);
    j["prod_rel"] = number_or_null(r.prod_rel);
    j["p_na0"] = number_or_null(r.p_na[0]);
    j["p_na1"] = number_or_null(r.p_na[1]);
    j["p_na2"] = number_or_null(r.p_na[2]);
    j["phase"] = std::string(to_string(r.phase));
    j["degenerate"] = r.degenerate;
    array.push_back(std::move(j));
  }
  out << array.dump(2) << '\n';
}

void write_output(std::span<const SweepRecord> records, OutputFormat format,
                  const std::filesystem::path& path) {
  if (records.empty()) throw InputError("write_output: no records to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  if (format == OutputFormat::csv) {
    write_csv(out, records);
  } else {
    write_json(out, records);
  }
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InputError("CSV header does not match the sweep record schema");

  std::vector<SweepRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 15) {
      throw InputError("line " + std::to_string(line_no) + ": expected 15 fields, got " +
                       std::to_string(fields.size()));
    }
    SweepRecord r;
    r.delta = parse_number(fields[0], line_no);
    r.h = parse_number(fields[1], line_no);
    r.n_total = static_cast<int>(parse_number(fields[2], line_no));
    r.energy = parse_number(fields[3], line_no);
    r.gap = parse_number(fields[4], line_no);
    r.d_n1 = parse_number(fields[5], line_no);
    r.d_n1_rel = parse_number(fields[6], line_no);
    r.d_n1a = parse_number(fields[7], line_no);
    r.prod = parse_number(fields[8], line_no);
    r.prod_rel = parse_number(fields[9], line_no);
    r.p_na = {parse_number(fields[10], line_no), parse_number(fields[11], line_no),
              parse_number(fields[12], line_no)};
    r.phase = parse_phase_or_throw(fields[13], line_no);
    if (fields[14] == "true") {
      r.degenerate = true;
    } else if (fields[14] != "false") {
      throw InputError("line " + std::to_string(line_no) + ": degenerate must be true/false");
    }
    r.failed = std::isnan(r.energy);
    records.push_back(r);
  }
  return records;
}

std::vector<SweepRecord> read_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("JSON sweep output must be an array of records");
  std::vector<SweepRecord> records;
  records.reserve(doc.size());
  try {
    for (const auto& j : doc) {
      SweepRecord r;
      r.delta = json_number(j, "delta");
      r.h = json_number(j, "h");
      r.n_total = j.at("n_total").get<int>();
      r.energy = json_number(j, "energy");
      r.gap = json_number(j, "gap");
      r.d_n1 = json_number(j, "d_n1");
      r.d_n1_rel = json_number(j, "d_n1_rel");
      r.d_n1a = json_number(j, "d_n1a");
      r.prod = json_number(j, "prod");
      r.prod_rel = json_number(j, "prod_rel");
      r.p_na = {json_number(j, "p_na0"), json_number(j, "p_na1"), json_number(j, "p_na2")};
      r.phase = parse_phase_or_throw(j.at("phase").get<std::string>(), records.size() + 1);
      r.degenerate = j.at("degenerate").get<bool>();
      r.failed = std::isnan(r.energy);
      if (r.failed) r.gap = kNaN;
      records.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("JSON record does not match the schema: ") + e.what());
  }
  return records;
}

}  // namespace jch
