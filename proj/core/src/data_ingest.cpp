#include "nssga/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nssga/errors.hpp"

namespace nssga {

namespace {

constexpr double kMinDecimalRate = -0.05;
constexpr double kMaxDecimalRate = 0.20;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Line {
  std::size_t number;
  std::string_view text;
};

// Nonblank lines, with a UTF-8 BOM on the first line stripped.
std::vector<Line> content_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    if (!trim(line).empty()) lines.push_back({number, line});
  }
  return lines;
}

double parse_double(std::string_view cell, std::size_t line, std::size_t column,
                    const char* what) {
  const std::string_view s = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(line, column, std::string("invalid ") + what + " '" + std::string(cell) + "'");
  }
  return value;
}

long parse_days(std::string_view cell, std::size_t line, std::size_t column) {
  std::string digits;
  for (char c : trim(cell)) {
    if (c != ',') digits.push_back(c);
  }
  long value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || value <= 0) {
    throw ParseError(line, column, "invalid term '" + std::string(cell) + "', expected positive days");
  }
  return value;
}

Date parse_date_cell(std::string_view cell, std::size_t line, std::size_t column) {
  try {
    return parse_iso_date(trim(cell));
  } catch (const InputError& e) {
    throw ParseError(line, column, e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

OisTable parse_ois_csv(std::string_view text) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) {
    throw ParseError(1, 0, "empty OIS file");
  }
  const auto header = split_csv_line(lines.front().text);
  const std::size_t header_line = lines.front().number;
  if (header.size() < 2 || trim(header[0]) != "Term") {
    throw ParseError(header_line, 1, "header must start with 'Term' followed by dates");
  }
  OisTable table;
  for (std::size_t c = 1; c < header.size(); ++c) {
    table.dates.push_back(parse_date_cell(header[c], header_line, c + 1));
  }
  if (lines.size() < 2) {
    throw ParseError(header_line, 0, "OIS file has no term rows");
  }
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_csv_line(lines[r].text);
    const std::size_t line = lines[r].number;
    if (cells.size() != header.size()) {
      throw ParseError(line, 0, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(cells.size()));
    }
    const long term = parse_days(cells[0], line, 1);
    if (!table.terms_days.empty() && term <= table.terms_days.back()) {
      throw ParseError(line, 1, "terms must be strictly increasing");
    }
    table.terms_days.push_back(term);
    std::vector<double> row;
    row.reserve(table.dates.size());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      row.push_back(parse_double(cells[c], line, c + 1, "rate"));
    }
    table.rates_percent.push_back(std::move(row));
  }
  return table;
}

std::string write_ois_csv(const OisTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "Term";
  for (Date d : table.dates) out << ',' << to_iso_string(d);
  out << '\n';
  for (std::size_t r = 0; r < table.terms_days.size(); ++r) {
    out << table.terms_days[r];
    for (double rate : table.rates_percent[r]) out << ',' << rate;
    out << '\n';
  }
  return out.str();
}

std::vector<TermStructure> ois_to_term_structures(const OisTable& table) {
  std::vector<TermStructure> out;
  out.reserve(table.dates.size());
  for (std::size_t c = 0; c < table.dates.size(); ++c) {
    std::vector<TermPoint> points;
    points.reserve(table.terms_days.size());
    for (std::size_t r = 0; r < table.terms_days.size(); ++r) {
      const double rate = table.rates_percent.at(r).at(c) / 100.0;
      if (!(rate > kMinDecimalRate && rate < kMaxDecimalRate)) {
        throw InputError("rate " + std::to_string(table.rates_percent[r][c]) + "% on " +
                         to_iso_string(table.dates[c]) +
                         " is implausible; expected percent units");
      }
      points.push_back({Tenor::from_days(table.terms_days[r]), rate});
    }
    out.emplace_back(table.dates[c], std::move(points));
  }
  return out;
}

std::vector<BondRecord> parse_bonds_csv(std::string_view text) {
  static constexpr std::string_view kColumns[] = {"Cusip",    "Coupon",   "MaturityDate",
                                                   "BidYield", "MidYield", "IssueDate"};
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) {
    throw ParseError(1, 0, "empty bond file");
  }
  const auto header = split_csv_line(lines.front().text);
  if (header.size() != std::size(kColumns)) {
    throw ParseError(lines.front().number, 0, "bond header must have 6 columns");
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (trim(header[c]) != kColumns[c]) {
      throw ParseError(lines.front().number, c + 1,
                       "expected column '" + std::string(kColumns[c]) + "'");
    }
  }
  std::vector<BondRecord> bonds;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_csv_line(lines[r].text);
    const std::size_t line = lines[r].number;
    if (cells.size() != header.size()) {
      throw ParseError(line, 0, "expected 6 fields, got " + std::to_string(cells.size()));
    }
    BondRecord bond;
    bond.cusip = std::string(trim(cells[0]));
    if (bond.cusip.empty()) throw ParseError(line, 1, "empty cusip");
    bond.coupon_percent = parse_double(cells[1], line, 2, "coupon");
    if (bond.coupon_percent < 0.0) throw ParseError(line, 2, "negative coupon");
    bond.maturity = parse_date_cell(cells[2], line, 3);
    bond.bid_yield_percent = parse_double(cells[3], line, 4, "bid yield");
    bond.mid_yield_percent = parse_double(cells[4], line, 5, "mid yield");
    bond.issue = parse_date_cell(cells[5], line, 6);
    if (days_between(bond.issue, bond.maturity) <= 0) {
      throw ParseError(line, 3, "maturity must be after the issue date");
    }
    bonds.push_back(std::move(bond));
  }
  if (bonds.empty()) {
    throw ParseError(lines.front().number, 0, "bond file has no records");
  }
  return bonds;
}

TermStructure bonds_to_term_structure(const std::vector<BondRecord>& bonds, Date as_of,
                                      YieldSide side) {
  if (bonds.empty()) {
    throw InputError("no bonds to build a term structure from");
  }
  std::vector<TermPoint> points;
  points.reserve(bonds.size());
  for (const BondRecord& bond : bonds) {
    const long days = days_between(as_of, bond.maturity);
    if (days <= 0) {
      throw InputError("bond " + bond.cusip + " matures on " + to_iso_string(bond.maturity) +
                       ", not after " + to_iso_string(as_of));
    }
    const double percent = side == YieldSide::Mid ? bond.mid_yield_percent : bond.bid_yield_percent;
    const double rate = percent / 100.0;
    if (!(rate > kMinDecimalRate && rate < kMaxDecimalRate)) {
      throw InputError("yield of bond " + bond.cusip + " is implausible; expected percent units");
    }
    points.push_back({Tenor::from_days(days), rate});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const TermPoint& a, const TermPoint& b) { return a.tenor < b.tenor; });
  return TermStructure(as_of, std::move(points), TermStructure::Ordering::NonDecreasing);
}

}  // namespace nssga
