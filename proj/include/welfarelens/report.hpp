#pragma once

#include <string>
#include <vector>

#include "welfarelens/curves.hpp"
#include "welfarelens/dominance.hpp"
#include "welfarelens/welfare.hpp"

// Deterministic text output: fixed key order, 15 significant digits, no
// locale dependence. Identical inputs produce byte-identical reports.

namespace welfarelens {

// shortest %.15g form; round-trips through parse-and-reprint unchanged
std::string format_number(double v);

const char* to_string(CurveKind k);
const char* to_string(WelfareFamily f);
const char* to_string(WeightVariant v);

struct WelfareReport {
  WelfareKind kind;
  double mean = 0.0;
  double index = 0.0;       // official index estimate
  double value = 0.0;       // mean * (1 - index)
  double direct = 0.0;      // integral of quantile * weight
  double from_curve = 0.0;  // mean * (1 - curve-area index)
};

std::string to_json(const CurveGrid& g);
std::string to_csv(const CurveGrid& g);
std::string to_json(const IndexReport& r);
std::string to_json(const WeightProfile& w);
std::string to_csv(const WeightProfile& w);
std::string to_json(const WelfareReport& r);
std::string to_json(const EquivalenceReport& r);
std::string to_json(const std::vector<PropositionCertificate>& certs,
                    bool all_passed);

}  // namespace welfarelens
