#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "iwk/errors.hpp"
#include "iwk/pipeline.hpp"

using namespace iwk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("iwk-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Literals, Curve) {
  EXPECT_EQ(parse_curve_literal("0,0,1,-7,6"), EllipticCurve(0, 0, 1, -7, 6));
  EXPECT_EQ(parse_curve_literal(" 0, 0 ,1,-7,+6 "), EllipticCurve(0, 0, 1, -7, 6));
  EXPECT_THROW(parse_curve_literal("0,0,1,-7"), ParseError);
  EXPECT_THROW(parse_curve_literal("0,0,1,-7,x"), ParseError);
  EXPECT_THROW(parse_curve_literal("0,0,0,0,0"), ParseError);
}

TEST(Literals, Module) {
  EXPECT_EQ(parse_module_literal("7:3,1"), FgZpModule(7, 0, {3, 1}));
  EXPECT_EQ(parse_module_literal("7:#2"), FgZpModule(7, 2, {}));
  EXPECT_EQ(parse_module_literal("5:"), FgZpModule::zero(5));
  EXPECT_EQ(parse_module_literal(to_literal(FgZpModule(3, 1, {2, 2}))), FgZpModule(3, 1, {2, 2}));
  EXPECT_THROW(parse_module_literal("6:1"), ParseError);
  EXPECT_THROW(parse_module_literal("7"), ParseError);
  EXPECT_THROW(parse_module_literal("7:1,-2"), ParseError);
}

TEST(Literals, Presentation) {
  const auto P = parse_presentation(Json::parse(R"([["3","0"],["0","9"]])"), 3, 4);
  EXPECT_EQ(module_from_presentation(P), FgZpModule(3, 0, {2, 1}));
  EXPECT_THROW(parse_presentation(Json::parse(R"([["3"],["0","9"]])"), 3, 4), ParseError);
  EXPECT_THROW(parse_presentation(Json::parse(R"([["81"]])"), 3, 4), ParseError);
  EXPECT_THROW(parse_presentation(Json::parse(R"([["-1"]])"), 3, 4), ParseError);
}

TEST(Literals, LambdaModule) {
  const auto M = parse_lambda_module(Json::parse(R"({"mu":1,"factors":[{"poly":"T^2+3*T+3","mult":2}]})"), 3);
  EXPECT_EQ(M.mu, 1U);
  EXPECT_EQ(M.lambda(), 4U);
  EXPECT_THROW(parse_lambda_module(Json::parse(R"({"factors":[{"poly":"T+1"}]})"), 3), ParseError);
}

TEST(Ingest, TwoLineCsv) {
  std::istringstream in("label,a1,a2,a3,a4,a6\n37a1,0,0,1,-1,0\n5077a1,0,0,1,-7,6\n");
  const auto recs = ingest_curves(in);
  ASSERT_EQ(recs.size(), 2U);
  EXPECT_EQ(recs[1].label, "5077a1");
}

TEST(Ingest, IdempotentAndStrict) {
  std::istringstream dup("label,a1,a2,a3,a4,a6\n37a1,0,0,1,-1,0\n37a1,0,0,1,-1,0\n");
  EXPECT_EQ(ingest_curves(dup).size(), 1U);
  std::istringstream clash("label,a1,a2,a3,a4,a6\n37a1,0,0,1,-1,0\n37a1,0,0,1,-7,6\n");
  EXPECT_THROW(ingest_curves(clash), ParseError);
  std::istringstream header("label,a1,a2,a3,a4\n");
  EXPECT_THROW(ingest_curves(header), ParseError);
  std::istringstream bad("label,a1,a2,a3,a4,a6\n37a1,0,0,1,-1,0\nx,1,2\n");
  try {
    ingest_curves(bad, "bad.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.csv:3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(test_corpus().size(), 43U);
}

TEST(Fnv, KnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(TraceCache, RoundTripIsByteIdentical) {
  TempDir dir;
  const EllipticCurve E(0, 0, 1, -7, 6);
  TraceCache cache(dir.path);
  const auto first = cache_traces(E, 100, cache);
  EXPECT_EQ(cache.misses(), first.size());
  std::map<fs::path, std::string> bytes;
  for (const auto& e : fs::directory_iterator(dir.path)) bytes[e.path()] = slurp(e.path());
  EXPECT_EQ(bytes.size(), first.size());
  TraceCache again(dir.path);
  const auto second = cache_traces(E, 100, again);
  EXPECT_EQ(again.hits(), first.size());
  EXPECT_EQ(again.misses(), 0U);
  ASSERT_EQ(second.size(), first.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    EXPECT_EQ(second[k].a_ell, first[k].a_ell);
    EXPECT_EQ(second[k].computed_at, first[k].computed_at);
  }
  for (const auto& [p, b] : bytes) EXPECT_EQ(slurp(p), b);
}

TEST(TraceCache, CorruptEntriesAreRecomputedWithAWarning) {
  TempDir dir;
  const EllipticCurve E(0, 0, 1, -7, 6);
  std::vector<std::string> warnings;
  TraceCache cache(dir.path, [&](const std::string& w) { warnings.push_back(w); });
  const std::int64_t truth = cache.trace(E, 13).a_ell;
  const fs::path entry = cache.entry_path(E, 13);
  {
    std::ofstream out(entry, std::ios::trunc);
    out << "{\"a_ell\": 1000, \"computed_at\": 0, \"curve\": \"0,0,1,-7,6\", \"ell\": 13}";
  }
  EXPECT_EQ(cache.trace(E, 13).a_ell, truth);
  ASSERT_EQ(warnings.size(), 1U);
  EXPECT_NE(warnings[0].find("Hasse"), std::string::npos);
  {
    std::ofstream out(entry, std::ios::trunc);
    out << "{ not json";
  }
  EXPECT_EQ(cache.trace(E, 13).a_ell, truth);
  EXPECT_EQ(warnings.size(), 2U);
  {
    std::ofstream out(entry, std::ios::trunc);
    out << "{\"a_ell\": 2, \"computed_at\": 0, \"curve\": \"0,0,1,-1,0\", \"ell\": 13}";
  }
  EXPECT_EQ(cache.trace(E, 13).a_ell, truth);
  EXPECT_EQ(warnings.size(), 3U);
  EXPECT_EQ(cache.trace(E, 13).a_ell, truth);
  EXPECT_EQ(warnings.size(), 3U);
}

TEST(Analyze, WorkedExample) {
  AnalysisOptions opt;
  opt.p = 7;
  opt.mu = 0;
  opt.lambda = 2;
  opt.rank = 3;
  const auto r = analyze(EllipticCurve(0, 0, 1, -7, 6), opt);
  EXPECT_EQ(r.c1_str.status, Status::Holds);
  EXPECT_EQ(r.c2.status, Status::Holds);
  EXPECT_EQ(r.c3.status, Status::Holds);
  EXPECT_EQ(exit_code(r), 0);
  ASSERT_TRUE(r.growth);
  EXPECT_EQ(r.growth->lambda_hat, Rational(4));
  ASSERT_EQ(r.discrepancies.size(), 1U);
  ASSERT_TRUE(r.mw_bound);
  EXPECT_EQ(r.mw_bound->lambda_lower, 2);
  EXPECT_TRUE(*r.mw_consistent);
}

TEST(Analyze, RejectsBadPrimes) {
  AnalysisOptions opt;
  opt.p = 2;
  EXPECT_THROW(analyze(EllipticCurve(0, 0, 1, -7, 6), opt), std::invalid_argument);
  opt.p = 9;
  EXPECT_THROW(analyze(EllipticCurve(0, 0, 1, -7, 6), opt), std::invalid_argument);
  opt.p = 11;
  EXPECT_THROW(analyze(EllipticCurve(0, -1, 1, -10, -20), opt), BadReductionAtP);
}

TEST(Analyze, SplitCurveFailsAndSuggestsATwist) {
  AnalysisOptions opt;
  opt.p = 3;
  const auto r = analyze(EllipticCurve(0, -1, 1, -10, -20), opt);
  EXPECT_EQ(r.c2.status, Status::Fails);
  EXPECT_EQ(exit_code(r), 2);
  ASSERT_TRUE(r.suggested_twist);
  EXPECT_EQ(check_c2(r.suggested_twist->curve, 3).status, Status::Holds);
}

TEST(Analyze, ReportIsDeterministicAndCacheTransparent) {
  TempDir dir;
  AnalysisOptions opt;
  opt.p = 5;
  opt.ap_bound = 2000;
  const EllipticCurve E(1, 0, 1, 4, -6);  // 14a1
  const std::string plain = to_json(analyze(E, opt)).dump();
  const std::string plain2 = to_json(analyze(E, opt)).dump();
  EXPECT_EQ(plain, plain2);
  TraceCache cold(dir.path);
  const std::string cached = to_json(analyze(E, opt, &cold)).dump();
  TraceCache warm(dir.path);
  const std::string cached2 = to_json(analyze(E, opt, &warm)).dump();
  EXPECT_EQ(plain, cached);
  EXPECT_EQ(plain, cached2);
  EXPECT_EQ(plain.find("computed_at"), std::string::npos);
}
