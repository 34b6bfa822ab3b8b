// iwk: command-line front end.
//
// Exit codes: 0 all conditions hold / command succeeded, 1 malformed input,
// 2 some condition fails (or an oracle disagrees), 3 inconclusive only,
// 4 twist search exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "iwk/errors.hpp"
#include "iwk/pipeline.hpp"

namespace {

using iwk::Json;

enum class Format { Json, Text };

void render_text(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        render_text(os, v, indent + 2);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured()) {
        os << pad << "-\n";
        render_text(os, v, indent + 2);
      } else {
        os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void emit(const Json& j, Format f) {
  if (f == Format::Json) std::cout << j.dump(2) << '\n';
  else render_text(std::cout, j);
}

iwk::Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    const std::int64_t num = std::stoll(s.substr(0, slash), &used);
    if (used != s.substr(0, slash).size()) throw std::invalid_argument(s);
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) throw std::invalid_argument(s);
    }
    return {num, den};
  } catch (const std::exception&) {
    throw iwk::ParseError("not a rational number: '" + s + "'");
  }
}

std::vector<unsigned> parse_levels(const std::string& s) {
  std::vector<unsigned> out;
  const auto dots = s.find("..");
  try {
    if (dots != std::string::npos) {
      const unsigned lo = static_cast<unsigned>(std::stoul(s.substr(0, dots)));
      const unsigned hi = static_cast<unsigned>(std::stoul(s.substr(dots + 2)));
      if (lo == 0 || hi < lo) throw std::invalid_argument(s);
      for (unsigned n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ',')) out.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
  } catch (const std::exception&) {
    throw iwk::ParseError("levels must look like 1..5 or 1,2,3: '" + s + "'");
  }
  if (out.empty()) throw iwk::ParseError("empty level list");
  return out;
}

void require_odd_prime(std::int64_t p) {
  if (p < 3 || !iwk::is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa-theoretic hypothesis checks for elliptic curves over Q"};
  app.require_subcommand(1);
  std::string format_name = "json";
  app.add_option("--format", format_name, "json or text")->check(CLI::IsMember({"json", "text"}));

  // analyze
  auto* analyze = app.add_subcommand("analyze", "check (C1)_str, (C1), (C2), (C3) and derive growth classes");
  std::string curve_text;
  std::int64_t p = 0;
  iwk::AnalysisOptions aopt;
  std::optional<std::int64_t> rank;
  std::optional<unsigned> mu;
  std::optional<unsigned> lambda;
  bool no_cache = false;
  analyze->add_option("--curve", curve_text, "a1,a2,a3,a4,a6")->required();
  analyze->add_option("--p", p, "odd prime of good reduction")->required();
  analyze->add_option("--label", aopt.label, "free-text label");
  analyze->add_option("--ap-bound", aopt.ap_bound, "largest prime used for Frobenius traces");
  analyze->add_option("--search-bound", aopt.search_bound, "largest q tried by the twist search");
  analyze->add_option("--rank", rank, "rank of E(K_m) from an external source");
  analyze->add_option("--rank-level", aopt.rank_level, "m for --rank");
  analyze->add_option("--mu", mu, "mu of the fine Selmer group (ingested)");
  analyze->add_option("--lambda", lambda, "lambda of the fine Selmer group (ingested)");
  analyze->add_option("--character", aopt.character, "index k of chi = omega^k");
  analyze->add_option("--source", aopt.invariants_source, "provenance of mu, lambda, rank");
  analyze->add_flag("--no-cache", no_cache, "do not read or write the trace cache");

  // twist
  auto* twist = app.add_subcommand("twist", "find a quadratic twist satisfying (C2)");
  std::int64_t search_bound = iwk::kDefaultTwistSearchBound;
  twist->add_option("--curve", curve_text, "a1,a2,a3,a4,a6")->required();
  twist->add_option("--p", p, "odd prime")->required();
  twist->add_option("--search-bound", search_bound, "largest q tried");

  // fitting
  auto* fitting = app.add_subcommand("fitting", "Phi_i of a finitely generated Z_p-module");
  std::string module_text;
  std::string presentation_path;
  unsigned index = 0;
  fitting->add_option("--module", module_text, "p:e1,e2,...#r");
  fitting->add_option("--presentation", presentation_path, "JSON file {p, precision, rows}");
  fitting->add_option("--i", index, "Fitting index")->required();

  // growth
  auto* growth = app.add_subcommand("growth", "growth class mu_hat p^n + lambda_hat n, optionally compared");
  std::string gmu = "0";
  std::string glambda = "0";
  std::vector<std::string> compare_with;
  bool from_invariants = false;
  growth->add_option("--p", p, "prime")->required();
  growth->add_option("--mu", gmu, "mu_hat (or mu with --invariants)");
  growth->add_option("--lambda", glambda, "lambda_hat (or lambda with --invariants)");
  growth->add_flag("--invariants", from_invariants, "treat --mu/--lambda as Iwasawa invariants and double them");
  growth->add_option("--compare", compare_with, "second class as MU LAMBDA")->expected(2);

  // coinv
  auto* coinv = app.add_subcommand("coinv", "exact orders of Lambda/(F, p^n, omega_n) over a window of n");
  std::vector<std::string> factors;
  unsigned cmu = 0;
  std::string levels_text = "1..4";
  coinv->add_option("--poly", factors, "distinguished factor, e.g. T^2+3*T+3 (repeatable)");
  coinv->add_option("--mu", cmu, "power of p in the characteristic element");
  coinv->add_option("--p", p, "odd prime")->required();
  coinv->add_option("--levels", levels_text, "n range, e.g. 1..5");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "read a curve CSV (label,a1,a2,a3,a4,a6)");
  std::string csv_path;
  ingest->add_option("file", csv_path, "CSV path")->required();

  // cache
  auto* cache_cmd = app.add_subcommand("cache", "precompute and persist Frobenius traces");
  std::int64_t trace_bound = 100;
  cache_cmd->add_option("--curve", curve_text, "a1,a2,a3,a4,a6")->required();
  cache_cmd->add_option("--bound", trace_bound, "largest ell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  const Format fmt = format_name == "text" ? Format::Text : Format::Json;

  try {
    if (analyze->parsed()) {
      aopt.p = p;
      aopt.rank = rank;
      aopt.mu = mu;
      aopt.lambda = lambda;
      require_odd_prime(p);
      const iwk::EllipticCurve E = iwk::parse_curve_literal(curve_text);
      std::optional<iwk::TraceCache> cache;
      if (!no_cache) cache.emplace(iwk::TraceCache::default_directory());
      const auto report = iwk::analyze(E, aopt, cache ? &*cache : nullptr);
      emit(iwk::to_json(report), fmt);
      return iwk::exit_code(report);
    }
    if (twist->parsed()) {
      require_odd_prime(p);
      const iwk::EllipticCurve E = iwk::parse_curve_literal(curve_text);
      try {
        const auto res = iwk::construct_c2_twist(E, p, search_bound);
        Json j = iwk::to_json(res);
        j["input_curve"] = E.literal();
        j["violations"] = iwk::certificate_violations(res.certificate, E);
        emit(j, fmt);
        return j["violations"].empty() ? 0 : 2;
      } catch (const iwk::SearchExhausted& e) {
        emit(Json{{"input_curve", E.literal()}, {"error", e.what()}}, fmt);
        return 4;
      }
    }
    if (fitting->parsed()) {
      if (module_text.empty() == presentation_path.empty()) {
        throw iwk::ParseError("give exactly one of --module and --presentation");
      }
      Json j;
      std::optional<iwk::FgZpModule> M;
      std::optional<iwk::Presentation> P;
      if (!module_text.empty()) {
        M = iwk::parse_module_literal(module_text);
        unsigned top = 1;
        for (unsigned e : M->exponents()) top = std::max(top, e + 1);
        P = iwk::diagonal_presentation(*M, top);
      } else {
        std::ifstream in(presentation_path);
        if (!in) throw iwk::ParseError("cannot open " + presentation_path);
        const Json doc = Json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) throw iwk::ParseError(presentation_path + ": not a JSON object");
        const std::int64_t pp = doc.value("p", std::int64_t{0});
        const unsigned prec = doc.value("precision", 0U);
        if (pp < 2 || !iwk::is_prime(pp) || prec == 0) throw iwk::ParseError("presentation needs prime p and precision >= 1");
        P = iwk::parse_presentation(doc.at("rows"), pp, prec);
        M = iwk::module_from_presentation(*P);
      }
      const iwk::Valuation v = iwk::phi(*M, index);
      j["module"] = iwk::to_json(*M);
      j["i"] = index;
      j["phi"] = iwk::to_json(v);
      bool agree = true;
      Json oracles = Json::object();
      try {
        const auto viaminors = iwk::fitting_from_minors(*P, index).generator_valuation;
        oracles["minors"] = iwk::to_json(viaminors);
        agree = agree && viaminors == v;
      } catch (const iwk::BudgetExceeded& e) {
        oracles["minors"] = std::string("skipped: ") + e.what();
      }
      if (M->is_torsion()) {
        try {
          const auto brute = iwk::phi_bruteforce(*M, index, iwk::Enumeration::OrbitReduced);
          oracles["bruteforce"] = iwk::to_json(brute);
          agree = agree && brute == v;
        } catch (const iwk::BudgetExceeded& e) {
          oracles["bruteforce"] = std::string("skipped: ") + e.what();
        }
      }
      j["oracles"] = oracles;
      j["oracles_agree"] = agree;
      if (fmt == Format::Text) {
        std::cout << v << '\n';
        render_text(std::cout, Json{{"oracles", oracles}, {"oracles_agree", agree}});
      } else {
        emit(j, fmt);
      }
      return agree ? 0 : 2;
    }
    if (growth->parsed()) {
      if (p < 2 || !iwk::is_prime(p)) throw std::invalid_argument("p must be prime");
      auto make = [&](const std::string& m, const std::string& l) {
        if (from_invariants) {
          const iwk::Rational mm = parse_rational(m);
          const iwk::Rational ll = parse_rational(l);
          if (mm.denominator() != 1 || ll.denominator() != 1 || mm < 0 || ll < 0) {
            throw iwk::ParseError("Iwasawa invariants must be natural numbers");
          }
          return iwk::class_number_growth({p, std::nullopt, static_cast<unsigned>(mm.numerator()),
                                           static_cast<unsigned>(ll.numerator()), "command line"});
        }
        return iwk::GrowthClass(p, parse_rational(m), parse_rational(l), "command line");
      };
      const iwk::GrowthClass a = make(gmu, glambda);
      Json j = iwk::to_json(a);
      if (!compare_with.empty()) {
        const iwk::GrowthClass b = make(compare_with[0], compare_with[1]);
        j = Json{{"a", iwk::to_json(a)}, {"b", iwk::to_json(b)}, {"relation", iwk::to_string(iwk::compare(a, b))}};
      }
      emit(j, fmt);
      return 0;
    }
    if (coinv->parsed()) {
      require_odd_prime(p);
      Json input{{"mu", cmu}, {"factors", Json::array()}};
      for (const auto& f : factors) input["factors"].push_back({{"poly", f}, {"mult", 1}});
      const auto M = iwk::parse_lambda_module(input, p);
      const auto window = iwk::growth_window_check(M, parse_levels(levels_text));
      Json j = iwk::to_json(window);
      j["p"] = p;
      j["mu"] = M.mu;
      j["lambda"] = M.lambda();
      j["characteristic_polynomial"] = M.characteristic_polynomial().str();
      emit(j, fmt);
      return 0;
    }
    if (ingest->parsed()) {
      const auto records = iwk::ingest_curves(std::filesystem::path(csv_path));
      Json arr = Json::array();
      for (const auto& r : records) {
        arr.push_back({{"label", r.label}, {"curve", r.curve.literal()}, {"minimal_model", iwk::minimal_model(r.curve).curve.literal()}});
      }
      emit(Json{{"count", records.size()}, {"records", arr}}, fmt);
      return 0;
    }
    if (cache_cmd->parsed()) {
      const iwk::EllipticCurve E = iwk::parse_curve_literal(curve_text);
      const iwk::TraceCache cache(iwk::TraceCache::default_directory());
      const auto recs = iwk::cache_traces(E, trace_bound, cache);
      Json traces = Json::object();
      for (const auto& r : recs) traces[std::to_string(r.ell)] = r.a_ell;
      emit(Json{{"directory", cache.directory().string()},
                {"minimal_model", iwk::minimal_model(E).curve.literal()},
                {"entries", recs.size()},
                {"hits", cache.hits()},
                {"misses", cache.misses()},
                {"traces", traces}},
           fmt);
      return 0;
    }
  } catch (const iwk::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const iwk::BadReductionAtP& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
