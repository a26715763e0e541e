#pragma once

#include <string>

#include <json.hpp>

#include "beattylab/beatty.hpp"
#include "beattylab/calibration.hpp"
#include "beattylab/contfrac.hpp"
#include "beattylab/expsums.hpp"
#include "beattylab/primes.hpp"
#include "beattylab/theorems.hpp"

namespace beattylab {

inline constexpr const char* kToolName = "beatty-lab";
inline constexpr const char* kToolVersion = "0.1.0";

using ordered_json = nlohmann::ordered_json;

// Round to 15 significant digits; report floats all pass through here so
// serialized output is stable across reruns.
double round_sig15(double v);
std::string csv_double(double v);  // %.15g

ordered_json to_json(const TheoremReport& r);
ordered_json to_json(const ExpSumReport& r);
ordered_json to_json(const ExplicitConstantsReport& r);
ordered_json to_json(const ContinuedFraction& cf);
ordered_json to_json(const Thm2Bound& b);
ordered_json to_json(const Remark1Bound& b);
ordered_json to_json(const TypeEstimate& t);
ordered_json to_json(const calibration::GridResult& g);
ordered_json to_json(const SandwichPolys& sp);

// Standard envelope: tool info, resolved config, report payload, wall time.
// seconds is forced to zero when deterministic is set so equal configs give
// byte-identical output.
std::string emit_output(const ordered_json& config, const ordered_json& report,
                        double seconds, bool deterministic);

// One CSV row per parameter point of an expsum grid.
std::string expsum_csv_header();
std::string expsum_csv_row(const ExpSumReport& r, double seconds);

}  // namespace beattylab
