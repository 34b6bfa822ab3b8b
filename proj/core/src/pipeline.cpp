#include "iwk/pipeline.hpp"

#include <unistd.h>

#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "iwk/errors.hpp"

namespace iwk {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_integer_token(const std::string& t) {
  if (t.empty()) return false;
  std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (k == t.size()) return false;
  for (; k < t.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
  }
  return true;
}

BigInt parse_integer(const std::string& t, const std::string& what) {
  if (!is_integer_token(t)) throw ParseError(what + ": '" + t + "' is not an integer");
  return BigInt(t[0] == '+' ? t.substr(1) : t);
}

unsigned parse_small(const std::string& t, const std::string& what) {
  const BigInt v = parse_integer(t, what);
  if (v < 0 || !v.fits_uint_p()) throw ParseError(what + ": '" + t + "' out of range");
  return static_cast<unsigned>(v.get_ui());
}

}  // namespace

// ---- literals -----------------------------------------------------------------

EllipticCurve parse_curve_literal(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 5) throw ParseError("curve literal needs five comma-separated integers, got '" + std::string(text) + "'");
  std::array<BigInt, 5> a;
  for (int k = 0; k < 5; ++k) a[k] = parse_integer(parts[k], "curve literal");
  try {
    return {a[0], a[1], a[2], a[3], a[4]};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

FgZpModule parse_module_literal(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("module literal must look like p:e1,e2#r");
  const BigInt p = parse_integer(trim(text.substr(0, colon)), "module literal prime");
  if (!p.fits_slong_p() || !is_prime(p)) throw ParseError("module literal: p must be prime");
  std::string_view rest = text.substr(colon + 1);
  unsigned rank = 0;
  if (const std::size_t hash = rest.find('#'); hash != std::string_view::npos) {
    const std::string r = trim(rest.substr(hash + 1));
    if (!r.empty()) rank = parse_small(r, "module literal rank");
    rest = rest.substr(0, hash);
  }
  std::vector<unsigned> exps;
  if (!trim(rest).empty()) {
    for (const auto& tok : split(rest, ',')) exps.push_back(parse_small(tok, "module literal exponent"));
  }
  return {p.get_si(), rank, std::move(exps)};
}

Presentation parse_presentation(const Json& rows, std::int64_t p, unsigned precision) {
  if (!rows.is_array()) throw ParseError("presentation: expected an array of rows");
  const std::size_t n = rows.size();
  std::size_t m = 0;
  std::vector<BigInt> entries;
  const ResidueRing ring(p, precision);
  const BigInt modulus(static_cast<long>(ring.modulus()));
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = rows[r];
    if (!row.is_array()) throw ParseError("presentation: row " + std::to_string(r) + " is not an array");
    if (r == 0) m = row.size();
    if (row.size() != m) throw ParseError("presentation: row " + std::to_string(r) + " has a different length");
    for (const auto& cell : row) {
      BigInt v;
      if (cell.is_string()) v = parse_integer(trim(cell.get<std::string>()), "presentation entry");
      else if (cell.is_number_integer()) v = BigInt(std::to_string(cell.get<long long>()));
      else throw ParseError("presentation: entries must be decimal strings");
      if (v < 0 || v >= modulus) throw ParseError("presentation: entry " + v.get_str() + " outside [0, p^N)");
      entries.push_back(v);
    }
  }
  return {p, precision, n, m, entries};
}

ElementaryLambdaModule parse_lambda_module(const Json& j, std::int64_t p) {
  ElementaryLambdaModule M{p, 0, {}};
  try {
    M.mu = j.value("mu", 0U);
    if (j.contains("factors")) {
      for (const auto& f : j.at("factors")) {
        const IntPoly poly = parse_polynomial(f.at("poly").get<std::string>());
        M.factors.push_back({DistinguishedPoly::from_poly(p, poly), f.value("mult", 1U)});
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("characteristic data: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("characteristic data: ") + e.what());
  }
  return M;
}

// ---- ingestion ----------------------------------------------------------------

std::vector<CurveRecord> ingest_curves(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(source + ": empty file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "label,a1,a2,a3,a4,a6") throw ParseError(source + ":1: header must be exactly label,a1,a2,a3,a4,a6");
  std::vector<CurveRecord> out;
  std::map<std::string, std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::size_t comma = line.find(',');
    const std::string where = source + ":" + std::to_string(lineno);
    if (comma == std::string::npos) throw ParseError(where + ": expected six fields");
    const std::string label = trim(std::string_view(line).substr(0, comma));
    if (label.empty()) throw ParseError(where + ": empty label");
    EllipticCurve E = [&] {
      try {
        return parse_curve_literal(std::string_view(line).substr(comma + 1));
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
    }();
    if (auto it = seen.find(label); it != seen.end()) {
      if (it->second != E.literal()) throw ParseError(where + ": label " + label + " reused for a different curve");
      continue;
    }
    seen.emplace(label, E.literal());
    out.push_back({label, std::move(E)});
  }
  return out;
}

std::vector<CurveRecord> ingest_curves(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ingest_curves(in, path.string());
}

// ---- trace cache --------------------------------------------------------------

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

TraceCache::TraceCache(fs::path dir, WarningSink warn) : dir_(std::move(dir)), warn_(std::move(warn)) {
  if (!warn_) warn_ = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
}

fs::path TraceCache::default_directory() {
  const char* env = std::getenv("IWK_CACHE_DIR");
  return (env != nullptr && *env != '\0') ? fs::path(env) : fs::path(".iwk-cache");
}

fs::path TraceCache::entry_path(const EllipticCurve& minimal, std::int64_t ell) const {
  return dir_ / (fnv1a_hex(minimal.literal()) + "-" + std::to_string(ell) + ".json");
}

std::optional<TraceRecord> TraceCache::load(const EllipticCurve& minimal, std::int64_t ell) const {
  const fs::path path = entry_path(minimal, ell);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  auto discard = [&](const std::string& why) -> std::optional<TraceRecord> {
    warn_("discarding cache entry " + path.string() + ": " + why);
    fs::remove(path, ec);
    return std::nullopt;
  };
  std::ifstream in(path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return discard("not valid JSON");
  try {
    if (j.at("curve").get<std::string>() != minimal.literal()) return discard("curve mismatch");
    if (j.at("ell").get<std::int64_t>() != ell) return discard("prime mismatch");
    TraceRecord rec{ell, j.at("a_ell").get<std::int64_t>(), j.at("computed_at").get<std::int64_t>()};
    if (static_cast<double>(rec.a_ell) * static_cast<double>(rec.a_ell) > 4.0 * static_cast<double>(ell)) {
      return discard("trace violates the Hasse bound");
    }
    return rec;
  } catch (const Json::exception& e) {
    return discard(std::string("malformed entry (") + e.what() + ")");
  }
}

void TraceCache::store(const EllipticCurve& minimal, const TraceRecord& rec) const {
  fs::create_directories(dir_);
  const fs::path path = entry_path(minimal, rec.ell);
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  Json j{{"a_ell", rec.a_ell}, {"computed_at", rec.computed_at}, {"curve", minimal.literal()}, {"ell", rec.ell}};
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << j.dump() << '\n';
  }
  fs::rename(tmp, path);
}

TraceRecord TraceCache::trace(const EllipticCurve& minimal, std::int64_t ell) const {
  if (auto rec = load(minimal, ell)) {
    ++hits_;
    return *rec;
  }
  ++misses_;
  TraceRecord rec = count_points_ap(minimal, ell);
  rec.computed_at = static_cast<std::int64_t>(std::time(nullptr));
  store(minimal, rec);
  return rec;
}

std::vector<TraceRecord> cache_traces(const EllipticCurve& E, std::int64_t bound, const TraceCache& cache) {
  const EllipticCurve M = minimal_model(E).curve;
  std::vector<TraceRecord> out;
  for (std::int64_t ell = 2; ell <= bound; ell = next_prime(ell)) {
    if (M.discriminant() % BigInt(static_cast<long>(ell)) == 0) continue;
    out.push_back(cache.trace(M, ell));
  }
  return out;
}

// ---- analysis -----------------------------------------------------------------

AnalysisReport analyze(const EllipticCurve& E, const AnalysisOptions& opt, const TraceCache* cache) {
  const std::int64_t p = opt.p;
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  MinimalModel mm = minimal_model(E);
  const EllipticCurve& M = mm.curve;
  if (M.discriminant() % BigInt(static_cast<long>(p)) == 0) {
    throw BadReductionAtP("E has bad reduction at p = " + std::to_string(p));
  }
  std::vector<ReductionInfo> bad;
  for (const auto& [q, e] : factorize(M.discriminant())) bad.push_back(reduction_type(M, q.get_si()));

  TraceSource traces;
  if (cache != nullptr) traces = [&](std::int64_t ell) { return cache->trace(M, ell).a_ell; };
  Verdict c1s = check_c1_str(M, p, opt.ap_bound, traces);
  Verdict c1 = check_c1(c1s);
  Verdict c2 = check_c2(M, p);
  Verdict c2s = check_c2_sufficient(M, p);
  Verdict c3 = check_c3(M);

  AnalysisReport r{opt.label, p, E, std::move(mm), std::move(bad), std::move(c1s), std::move(c1), std::move(c2),
                   std::move(c2s), std::move(c3), std::nullopt, std::nullopt, std::nullopt, std::nullopt, {},
                   std::nullopt, std::nullopt};

  if (opt.mu && opt.lambda) {
    IwasawaInvariants inv{p, DeltaCharacter(p, opt.character), *opt.mu, *opt.lambda, opt.invariants_source};
    r.growth = class_number_growth(inv);
    r.invariants = std::move(inv);
    if (auto d = check_published_growth(r.minimal.curve.literal(), opt.character, *r.growth)) {
      r.discrepancies.push_back(std::move(*d));
    }
  }
  if (opt.rank) {
    r.mw_bound = mordell_weil_bound(*opt.rank, opt.rank_level, p);
    if (opt.lambda) r.mw_consistent = r.mw_bound->lambda_lower <= static_cast<std::int64_t>(*opt.lambda);
  }
  if (r.c2.status == Status::Fails) {
    try {
      r.suggested_twist = construct_c2_twist(r.minimal.curve, p, opt.search_bound);
    } catch (const SearchExhausted& e) {
      r.twist_error = e.what();
    }
  }
  return r;
}

int exit_code(const AnalysisReport& r) {
  const Status s[] = {r.c1_str.status, r.c2.status, r.c3.status};
  bool all_hold = true;
  for (Status x : s) {
    if (x == Status::Fails) return 2;
    if (x != Status::Holds) all_hold = false;
  }
  return all_hold ? 0 : 3;
}

// ---- JSON ---------------------------------------------------------------------

Json to_json(const Valuation& v) {
  if (v.is_infinite()) return "INFINITY";
  return v.value();
}

Json to_json(const FgZpModule& m) {
  return Json{{"p", m.prime()}, {"free_rank", m.free_rank()}, {"exponents", m.exponents()}, {"literal", to_literal(m)}};
}

Json to_json(const Verdict& v) {
  Json w = Json::array();
  for (const auto& x : v.witnesses) w.push_back({{"prime", x.prime}, {"detail", x.detail}});
  Json j{{"condition", v.condition}, {"status", to_string(v.status)}, {"witnesses", w}, {"budget", v.parameters}};
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json to_json(const ReductionInfo& r) {
  Json j{{"ell", r.ell}, {"kind", to_string(r.kind)}, {"potentially", to_string(r.potentially)}};
  if (r.gamma) {
    j["twist_class_gamma"] = {{"representative", r.gamma->representative.get_str()},
                              {"class", to_string(r.gamma->kind)},
                              {"ramified", r.gamma->ramified}};
  }
  return j;
}

Json to_json(const GrowthClass& g) {
  return Json{{"p", g.p}, {"mu_hat", to_string(g.mu_hat)}, {"lambda_hat", to_string(g.lambda_hat)}, {"provenance", g.label}};
}

Json to_json(const MordellWeilBound& b) {
  return Json{{"lambda_lower", b.lambda_lower}, {"growth_lower", to_json(b.growth_lower)}, {"clamped", b.clamped}};
}

Json to_json(const TwistCertificate& c) {
  Json eps = Json::object();
  for (const auto& [ell, e] : c.epsilon) eps[std::to_string(ell)] = e;
  return Json{{"p", c.p},
              {"S", c.S},
              {"S0", c.S0},
              {"S1", c.S1},
              {"N1_star", c.N1_star.get_str()},
              {"epsilon", eps},
              {"q", c.q},
              {"mod8_case", to_string(c.mod8_case)},
              {"d", c.d.get_str()},
              {"trivial", c.trivial},
              {"flags", c.flags}};
}

Json to_json(const TwistResult& t) {
  return Json{{"curve", t.curve.literal()}, {"certificate", to_json(t.certificate)}};
}

Json to_json(const GrowthWindow& w) {
  return Json{{"levels", w.levels},
              {"orders", w.orders},
              {"deviations", w.deviations},
              {"max_abs_deviation", w.max_abs_deviation},
              {"tail_constant", w.tail_constant},
              {"asserts_bounded", w.asserts_bounded}};
}

Json to_json(const AnalysisReport& r) {
  Json j;
  j["label"] = r.label;
  j["p"] = r.p;
  j["input_curve"] = r.input.literal();
  const Transform& w = r.minimal.transform;
  j["minimal_model"] = {{"curve", r.minimal.curve.literal()},
                        {"discriminant", r.minimal.curve.discriminant().get_str()},
                        {"j_invariant", r.minimal.curve.j_invariant().get_str()},
                        {"transform", {{"u", w.u.get_str()}, {"r", w.r.get_str()}, {"s", w.s.get_str()}, {"t", w.t.get_str()}}}};
  j["reduction"] = Json::array();
  for (const auto& b : r.bad_primes) j["reduction"].push_back(to_json(b));
  j["verdicts"] = {{"C1_str", to_json(r.c1_str)},
                   {"C1", to_json(r.c1)},
                   {"C2", to_json(r.c2)},
                   {"C2_sufficient", to_json(r.c2_sufficient)},
                   {"C3", to_json(r.c3)}};
  if (r.invariants) {
    j["invariants"] = {{"p", r.invariants->p},
                       {"character", r.invariants->character ? Json(r.invariants->character->index) : Json("ALL")},
                       {"mu", r.invariants->mu},
                       {"lambda", r.invariants->lambda},
                       {"source", r.invariants->source}};
  }
  if (r.growth) j["growth"] = to_json(*r.growth);
  if (r.mw_bound) {
    j["mordell_weil"] = to_json(*r.mw_bound);
    if (r.mw_consistent) j["mordell_weil"]["consistent_with_lambda"] = *r.mw_consistent;
  }
  j["discrepancies"] = Json::array();
  for (const auto& d : r.discrepancies) {
    j["discrepancies"].push_back({{"curve_label", d.published.curve_label},
                                  {"published_mu_hat", to_string(d.published.mu_hat)},
                                  {"published_lambda_hat", to_string(d.published.lambda_hat)},
                                  {"computed", to_json(d.computed)},
                                  {"note", d.published.note}});
  }
  if (r.suggested_twist) j["suggested_twist"] = to_json(*r.suggested_twist);
  if (r.twist_error) j["twist_error"] = *r.twist_error;
  j["exit_code"] = exit_code(r);
  return j;
}

}  // namespace iwk
