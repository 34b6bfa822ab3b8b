#pragma once

// Input literals, curve ingestion, the on-disk trace cache and the analysis
// report tying the checks together. All JSON is emitted with sorted keys.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iwk/conditions.hpp"
#include "iwk/ecq.hpp"
#include "iwk/growth.hpp"
#include "iwk/lambda.hpp"
#include "iwk/twist.hpp"
#include "iwk/zpmod.hpp"

namespace iwk {

using Json = nlohmann::json;

// ---- literals -----------------------------------------------------------------

/// "a1,a2,a3,a4,a6"
EllipticCurve parse_curve_literal(std::string_view text);
/// "p:e1,e2,...#r"; the exponent list and "#r" may be empty or absent ("5:", "7:#2").
FgZpModule parse_module_literal(std::string_view text);
/// JSON array of rows, each an array of decimal strings (or integers).
Presentation parse_presentation(const Json& rows, std::int64_t p, unsigned precision);
/// {"mu": m, "factors": [{"poly": "T^2+3*T+3", "mult": 1}, ...]}
ElementaryLambdaModule parse_lambda_module(const Json& j, std::int64_t p);

// ---- ingestion ----------------------------------------------------------------

struct CurveRecord {
  std::string label;
  EllipticCurve curve;
};

/// CSV with the exact header `label,a1,a2,a3,a4,a6`. Repeated identical rows
/// collapse; a label reused for a different curve is an error.
std::vector<CurveRecord> ingest_curves(std::istream& in, const std::string& source = "<stream>");
std::vector<CurveRecord> ingest_curves(const std::filesystem::path& path);

// ---- trace cache --------------------------------------------------------------

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// One JSON file per (minimal model, ell) under a directory. Entries that do
/// not parse or do not match their key are reported and recomputed.
class TraceCache {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  explicit TraceCache(std::filesystem::path dir, WarningSink warn = {});
  /// IWK_CACHE_DIR, or ".iwk-cache" when unset.
  static std::filesystem::path default_directory();

  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path entry_path(const EllipticCurve& minimal, std::int64_t ell) const;

  std::optional<TraceRecord> load(const EllipticCurve& minimal, std::int64_t ell) const;
  void store(const EllipticCurve& minimal, const TraceRecord& rec) const;
  /// Cached value if valid, otherwise computed and stored.
  TraceRecord trace(const EllipticCurve& minimal, std::int64_t ell) const;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  WarningSink warn_;
  mutable std::size_t hits_ = 0;
  mutable std::size_t misses_ = 0;
};

/// a_ell for every good prime ell <= bound of the minimal model, via the cache.
std::vector<TraceRecord> cache_traces(const EllipticCurve& E, std::int64_t bound, const TraceCache& cache);

// ---- analysis -----------------------------------------------------------------

struct AnalysisOptions {
  std::int64_t p = 0;
  std::string label;
  std::int64_t ap_bound = kDefaultSurjectivityBound;
  std::int64_t search_bound = kDefaultTwistSearchBound;
  std::optional<std::int64_t> rank;
  unsigned rank_level = 0;  // m in r_m = rank E(K_m)
  std::optional<unsigned> mu;
  std::optional<unsigned> lambda;
  unsigned character = 0;
  std::string invariants_source;
};

struct AnalysisReport {
  std::string label;
  std::int64_t p;
  EllipticCurve input;
  MinimalModel minimal;
  std::vector<ReductionInfo> bad_primes;
  Verdict c1_str;
  Verdict c1;
  Verdict c2;
  Verdict c2_sufficient;
  Verdict c3;
  std::optional<IwasawaInvariants> invariants;
  std::optional<GrowthClass> growth;
  std::optional<MordellWeilBound> mw_bound;
  std::optional<bool> mw_consistent;  // lambda_lower <= ingested lambda
  std::vector<GrowthDiscrepancy> discrepancies;
  std::optional<TwistResult> suggested_twist;
  std::optional<std::string> twist_error;
};

/// Throws std::invalid_argument for even or composite p and BadReductionAtP.
AnalysisReport analyze(const EllipticCurve& E, const AnalysisOptions& opt, const TraceCache* cache = nullptr);

/// 0 when (C1)_str, (C2), (C3) all hold; 2 when any fails; 3 otherwise.
int exit_code(const AnalysisReport& r);

Json to_json(const Valuation& v);
Json to_json(const FgZpModule& m);
Json to_json(const Verdict& v);
Json to_json(const ReductionInfo& r);
Json to_json(const GrowthClass& g);
Json to_json(const MordellWeilBound& b);
Json to_json(const TwistCertificate& c);
Json to_json(const TwistResult& t);
Json to_json(const GrowthWindow& w);
Json to_json(const AnalysisReport& r);

}  // namespace iwk
