#include "welfarelens/report.hpp"

#include <cstdio>
#include <sstream>

namespace welfarelens {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void append_points(std::ostringstream& os,
                   const std::vector<CurvePoint>& points) {
  os << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) os << ",";
    os << "{\"p\":" << format_number(points[i].p)
       << ",\"value\":" << format_number(points[i].value) << "}";
  }
  os << "]";
}

void append_verdict(std::ostringstream& os, const DominanceVerdict& v) {
  os << "{\"relation\":\"" << to_string(v.relation)
     << "\",\"max_gap\":" << format_number(v.max_gap)
     << ",\"crossings\":" << v.crossings << ",\"grid_size\":" << v.grid_size
     << "}";
}

void append_kind(std::ostringstream& os, const WelfareKind& kind) {
  os << "\"family\":\"" << to_string(kind.family) << "\"";
  if (kind.family == WelfareFamily::gini_generalized) {
    os << ",\"k\":" << format_number(kind.k);
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

const char* to_string(CurveKind k) {
  switch (k) {
    case CurveKind::lorenz: return "lorenz";
    case CurveKind::generalized_lorenz: return "generalized_lorenz";
    case CurveKind::bonferroni_curve: return "bonferroni";
    case CurveKind::uniformity_ratio: return "uniformity";
    case CurveKind::zenga_inequality: return "zenga";
  }
  return "unknown";
}

const char* to_string(WelfareFamily f) {
  switch (f) {
    case WelfareFamily::gini: return "gini";
    case WelfareFamily::gini_generalized: return "gini_k";
    case WelfareFamily::bonferroni: return "bonferroni";
    case WelfareFamily::zenga: return "zenga";
  }
  return "unknown";
}

const char* to_string(WeightVariant v) {
  switch (v) {
    case WeightVariant::nu: return "nu";
    case WeightVariant::nu_star: return "nu_star";
    case WeightVariant::beta: return "beta";
  }
  return "unknown";
}

std::string to_json(const CurveGrid& g) {
  std::ostringstream os;
  os << "{\"kind\":\"" << to_string(g.kind) << "\",\"points\":";
  append_points(os, g.points);
  os << "}";
  return os.str();
}

std::string to_csv(const CurveGrid& g) {
  std::ostringstream os;
  os << "p,value\n";
  for (const CurvePoint& pt : g.points) {
    os << format_number(pt.p) << "," << format_number(pt.value) << "\n";
  }
  return os.str();
}

std::string to_json(const IndexReport& r) {
  std::ostringstream os;
  os << "{\"mean\":" << format_number(r.mean)
     << ",\"gini\":" << format_number(r.gini) << ",\"gini_k\":{";
  bool first = true;
  for (const auto& [k, v] : r.gini_k) {
    if (!first) os << ",";
    first = false;
    os << "\"" << format_number(k) << "\":" << format_number(v);
  }
  os << "},\"bonferroni\":" << format_number(r.bonferroni)
     << ",\"zenga\":" << format_number(r.zenga) << "}";
  return os.str();
}

std::string to_json(const WeightProfile& w) {
  std::ostringstream os;
  os << "{";
  append_kind(os, w.kind);
  os << ",\"variant\":\"" << to_string(w.variant)
     << "\",\"integral\":" << format_number(w.integral) << ",\"points\":";
  append_points(os, w.points);
  os << "}";
  return os.str();
}

std::string to_csv(const WeightProfile& w) {
  std::ostringstream os;
  os << "p,weight\n";
  for (const CurvePoint& pt : w.points) {
    os << format_number(pt.p) << "," << format_number(pt.value) << "\n";
  }
  os << "integral," << format_number(w.integral) << "\n";
  return os.str();
}

std::string to_json(const WelfareReport& r) {
  std::ostringstream os;
  os << "{";
  append_kind(os, r.kind);
  os << ",\"mean\":" << format_number(r.mean)
     << ",\"index\":" << format_number(r.index)
     << ",\"welfare\":" << format_number(r.value)
     << ",\"welfare_direct\":" << format_number(r.direct)
     << ",\"welfare_from_curve\":" << format_number(r.from_curve) << "}";
  return os.str();
}

std::string to_json(const EquivalenceReport& r) {
  std::ostringstream os;
  os << "{\"lorenz\":";
  append_verdict(os, r.lorenz);
  os << ",\"zenga\":";
  append_verdict(os, r.zenga);
  os << ",\"agree\":" << (r.agree ? "true" : "false") << "}";
  return os.str();
}

std::string to_json(const std::vector<PropositionCertificate>& certs,
                    bool all_passed) {
  std::ostringstream os;
  os << "{\"all_passed\":" << (all_passed ? "true" : "false")
     << ",\"certificates\":[";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    if (i > 0) os << ",";
    os << "{\"id\":\"" << escape(certs[i].id)
       << "\",\"passed\":" << (certs[i].passed ? "true" : "false")
       << ",\"residual\":" << format_number(certs[i].residual)
       << ",\"description\":\"" << escape(certs[i].description) << "\"}";
  }
  os << "]}";
  return os.str();
}

}  // namespace welfarelens
