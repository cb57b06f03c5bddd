#ifndef RANKJUMP_SERIALIZE_HPP
#define RANKJUMP_SERIALIZE_HPP

#include <json.hpp>

#include <string>

#include "rankjump/density.hpp"
#include "rankjump/engine.hpp"

// JSON and CSV forms. Exact quantities are strings ("num/den"); only height
// data is decimal. Every reader throws Error(ParseError).
namespace rankjump::io {

using nlohmann::json;

json to_json(const Rat& q);
Rat rat_from_json(const json& j);

json to_json(const PolyQ& p);  // ascending coefficient strings
PolyQ poly_from_json(const json& j);

json to_json(const RatFunc& f);  // {"num": [...], "den": [...]}
RatFunc ratfunc_from_json(const json& j);

json to_json(const PointQ& p);  // "inf" or "x,y"
json to_json(const CurveQ& c);  // {"A": ..., "B": ...}
json to_json(const Interval& v);
json to_json(const HeightEstimate& h);  // {"value": ..., "err": ...}
json to_json(const GramCertificate& g);
json to_json(const WitnessCertificate& c);
json to_json(const ScanReport& r);
json to_json(const NeronCheckReport& r);
json to_json(const BillingCertificate& b);
json to_json(const Histogram& h);
json to_json(const DensityReport& d);
json to_json(const std::vector<Finding>& findings);

/// Strict: exactly the fields of the declared kind, plus optional "generic_rank".
FamilySpec family_from_json(const json& j, std::string id);
json to_json(const FamilySpec& f);

/// Header plus one row per certificate.
std::string scan_csv(const ScanReport& r);
/// bin_lo,bin_hi,count
std::string histogram_csv(const Histogram& h);

}  // namespace rankjump::io

#endif  // RANKJUMP_SERIALIZE_HPP
