#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nssga/date.hpp"
#include "nssga/objectives.hpp"

namespace nssga {

/// A multi-date curve table: one row per term (in days), one column per date.
struct OisTable {
  std::vector<Date> dates;
  std::vector<long> terms_days;
  std::vector<std::vector<double>> rates_percent;  // [term][date]

  friend bool operator==(const OisTable&, const OisTable&) = default;
};

struct BondRecord {
  std::string cusip;
  double coupon_percent = 0.0;
  Date maturity;
  double bid_yield_percent = 0.0;
  double mid_yield_percent = 0.0;
  Date issue;
};

enum class YieldSide { Mid, Bid };

/// Reads a whole file. Throws InputError if it cannot be opened.
std::string read_text_file(const std::string& path);

/// Splits one CSV record, honouring double-quoted fields ("1,000").
std::vector<std::string> split_csv_line(std::string_view line);

/// Parses `Term,<date>,<date>,...` followed by rows of `<days>,<rate %>,...`.
/// Terms may carry thousands separators when quoted. Throws ParseError with
/// the offending line and column.
OisTable parse_ois_csv(std::string_view text);

/// Writes the canonical form read by parse_ois_csv (plain integer terms).
std::string write_ois_csv(const OisTable& table);

/// One term structure per date: tenor = days / 365, rate = percent / 100.
/// Throws InputError if a converted rate falls outside (-0.05, 0.20), which
/// signals a percent/decimal mix-up.
std::vector<TermStructure> ois_to_term_structures(const OisTable& table);

/// Parses `Cusip,Coupon,MaturityDate,BidYield,MidYield,IssueDate`.
std::vector<BondRecord> parse_bonds_csv(std::string_view text);

/// One point per bond at ACT/365 time to maturity, sorted by tenor (stable, so
/// bonds sharing a maturity are both kept). Throws InputError naming the cusip
/// of any bond maturing on or before as_of.
TermStructure bonds_to_term_structure(const std::vector<BondRecord>& bonds, Date as_of,
                                      YieldSide side = YieldSide::Mid);

}  // namespace nssga
