#include "solenoid/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "solenoid/nilpotent.hpp"
#include "solenoid/search.hpp"

namespace solenoid {

namespace {

struct Options {
  std::string surface = "g1n1";
  int prime = 2;
  int depth = 2;
  std::size_t degree_cap = 16;
  std::size_t sweep_limit = 64;
  std::size_t level_limit = 2048;
  int max_m = 3;
  bool subnormal = true;
  int threads = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> cache;
  std::string output;

  std::string curve, other, map, file;
  std::vector<std::string> words;
  int weight = 4;
  int max_depth = 4;
  std::size_t tower_cap = kDefaultDegreeCap;
  long long modulus = 0;
  int bound = 32;
};

void add_search_options(CLI::App* sub, Options& o) {
  sub->add_option("--prime,-p", o.prime, "prime p of the cover tower")->capture_default_str();
  sub->add_option("--depth,-d", o.depth, "tower depth budget")->capture_default_str();
  sub->add_option("--degree-cap", o.degree_cap, "largest cover degree searched")->capture_default_str();
  sub->add_option("--sweep-limit", o.sweep_limit, "functionals tried per base cover")->capture_default_str();
  sub->add_option("--level-limit", o.level_limit, "covers kept per tower level")->capture_default_str();
  sub->add_option("--max-m", o.max_m, "largest m in Z/p^m orbit comparisons")->capture_default_str();
  sub->add_option("--subnormal", o.subnormal, "also search non-normal index-p extensions")->capture_default_str();
  sub->add_option("--threads,-j", o.threads, "worker threads")->capture_default_str();
  sub->add_option("--cache", o.cache, "cover cache directory (overrides SOLENOID_CACHE)");
}

void add_common_options(CLI::App* sub, Options& o) {
  sub->add_option("--surface,-s", o.surface, "surface signature such as g1n1 or g2n0")->capture_default_str();
  sub->add_option("--seed", o.seed, "seed echoed into the report")->capture_default_str();
  sub->add_option("--output,-o", o.output, "write the report here instead of standard output");
}

SearchConfig search_config(const Options& o) {
  if (!is_prime(o.prime)) throw InputError("prime " + std::to_string(o.prime) + " is not prime");
  if (o.depth < 0) throw InputError("depth must be nonnegative");
  if (o.degree_cap < 1 || o.sweep_limit < 1 || o.level_limit < 1 || o.max_m < 1 || o.threads < 1)
    throw InputError("caps, limits, max-m and threads must be positive");
  SearchConfig cfg;
  cfg.prime = o.prime;
  cfg.depth = o.depth;
  cfg.degree_cap = o.degree_cap;
  cfg.sweep_limit = o.sweep_limit;
  cfg.level_limit = o.level_limit;
  cfg.max_m = o.max_m;
  cfg.subnormal = o.subnormal;
  cfg.threads = o.threads;
  return cfg;
}

std::string cache_directory(const Options& o) {
  if (o.cache) return *o.cache;
  const char* env = std::getenv("SOLENOID_CACHE");
  return env ? env : "";
}

// Named inputs first, then positionals, exactly `n` of them.
std::vector<std::string> inputs(const Options& o, std::size_t n, const char* what) {
  std::vector<std::string> out;
  if (!o.curve.empty()) out.push_back(o.curve);
  if (!o.other.empty()) out.push_back(o.other);
  out.insert(out.end(), o.words.begin(), o.words.end());
  if (out.size() != n)
    throw InputError(std::string(what) + " expects " + std::to_string(n) + " word(s), got " + std::to_string(out.size()));
  return out;
}

int exit_for(const Certificate& c) { return c.conclusive() ? 0 : 2; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-cover certificates for curves on surfaces", "solenoid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  auto* simple = app.add_subcommand("simple-check", "certify that a curve is not simple");
  auto* inter = app.add_subcommand("intersect-check", "certify that two curves must intersect");
  auto* periph = app.add_subcommand("peripheral-check", "decide or refute peripherality");
  auto* dist = app.add_subcommand("distinguish", "certify that two curves are not homotopic");
  auto* conj = app.add_subcommand("conj-separate", "separate two elements in a finite p-quotient");
  auto* info = app.add_subcommand("cover-info", "describe the cover given by a permutation map");
  auto* expand = app.add_subcommand("expand", "collected commutator expansion of a word");
  auto* depth = app.add_subcommand("residual-depth", "first Frattini tower level missing a word");
  auto* coset = app.add_subcommand("double-coset", "test alpha against <delta><delta'>");
  auto* verify = app.add_subcommand("verify", "recheck a certificate or report");

  for (CLI::App* sub : {simple, inter, periph, dist, conj}) {
    add_common_options(sub, o);
    add_search_options(sub, o);
    sub->add_option("--curve,--alpha", o.curve, "first curve or word");
    sub->add_option("words", o.words, "curves or words");
  }
  for (CLI::App* sub : {inter, dist, conj}) sub->add_option("--other,--beta", o.other, "second curve or word");

  add_common_options(info, o);
  info->add_option("--prime,-p", o.prime, "prime of the cover")->capture_default_str();
  info->add_option("--map,-m", o.map, "permutations, e.g. \"a:(01),b:()\"")->required();
  info->add_option("--cache", o.cache, "cover cache directory (overrides SOLENOID_CACHE)");

  add_common_options(expand, o);
  expand->add_option("--word,-w", o.curve, "word to expand");
  expand->add_option("words", o.words, "word to expand");
  expand->add_option("--weight", o.weight, "weight cutoff")->capture_default_str();

  add_common_options(depth, o);
  depth->add_option("--word,-w", o.curve, "nontrivial word");
  depth->add_option("words", o.words, "nontrivial word");
  depth->add_option("--prime,-p", o.prime, "prime of the tower")->capture_default_str();
  depth->add_option("--max-depth", o.max_depth, "deepest level tested")->capture_default_str();
  depth->add_option("--tower-cap", o.tower_cap, "largest index of a tower level built")->capture_default_str();

  add_common_options(coset, o);
  coset->add_option("words", o.words, "delta delta' alpha")->expected(3);
  coset->add_option("--weight", o.weight, "weight cutoff")->capture_default_str();
  coset->add_option("--prime,-p", o.prime, "prime p")->capture_default_str();
  coset->add_option("--modulus", o.modulus, "modulus p^m (default p)");
  coset->add_option("--bound", o.bound, "largest |s|, |t| tried for exact membership")->capture_default_str();

  verify->add_option("file", o.file, "certificate or report JSON")->required();
  verify->add_option("--output,-o", o.output, "write the result here instead of standard output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  const auto start = std::chrono::steady_clock::now();
  Json report{{"tool", "solenoid"}, {"version", kToolVersion}, {"command", name}};
  int status = 0;
  std::optional<CoverCache> cache;
  try {
    if (name == "verify") {
      std::ifstream f(o.file);
      if (!f) throw InputError("cannot read " + o.file);
      Json doc = Json::parse(f, nullptr, false);
      if (doc.is_discarded()) throw InputError(o.file + " is not JSON");
      const Json& cert = doc.contains("certificate") ? doc.at("certificate") : doc;
      VerifyResult r = verify_certificate(cert);
      report["inputs"] = {{"file", o.file}};
      report["result"] = {{"verified", r.ok}, {"message", r.message}, {"kind", cert.value("kind", "")}};
      status = r.ok ? 0 : (cert.value("kind", "") == "inconclusive" ? 2 : 1);
    } else {
      Presentation pres(SurfaceSignature::parse(o.surface));
      report["config"] = {{"surface", pres.signature().name()}, {"seed", o.seed}};
      const bool searches = name == "simple-check" || name == "intersect-check" || name == "peripheral-check" ||
                            name == "distinguish" || name == "conj-separate";
      if (searches || name == "cover-info") cache.emplace(cache_directory(o));
      if (searches) {
        SearchConfig cfg = search_config(o);
        const Json echo = cfg.to_json();
        for (auto& [k, v] : echo.items()) report["config"][k] = v;
        const std::size_t n = name == "simple-check" || name == "peripheral-check" ? 1 : 2;
        std::vector<std::string> in = inputs(o, n, name.c_str());
        std::vector<Word> w;
        for (const std::string& s : in) w.push_back(pres.parse(s));
        report["inputs"] = in;
        Certificate cert;
        if (name == "simple-check") cert = simple_check(pres, w[0], cfg, *cache);
        if (name == "intersect-check") cert = certify_intersection(pres, w[0], w[1], cfg, *cache);
        if (name == "peripheral-check") cert = peripherality_scan(pres, w[0], cfg, *cache);
        if (name == "distinguish") cert = distinguish_curves(pres, w[0], w[1], cfg, *cache);
        if (name == "conj-separate") cert = conjugacy_separate(pres, w[0], w[1], cfg, *cache);
        report["certificate"] = cert.doc;
        status = exit_for(cert);
      } else if (name == "cover-info") {
        if (!is_prime(o.prime)) throw InputError("prime " + std::to_string(o.prime) + " is not prime");
        report["config"]["prime"] = o.prime;
        QuotientMap q = parse_cycle_map(o.map, pres, o.prime);
        report["inputs"] = {{"map", o.map}};
        auto h = cache->get(pres, q);
        const CoverDescription& c = h->cover;
        Json cover = map_to_json(q);
        cover["map"] = format_cycle_map(canonicalize(q));
        cover["normal"] = c.normal();
        cover["genus"] = c.cover_genus();
        cover["punctures"] = c.cover_punctures();
        cover["euler_characteristic"] = 2 - 2 * c.cover_genus() - c.cover_punctures();
        cover["riemann_hurwitz"] =
            2 - 2 * c.cover_genus() - c.cover_punctures() == c.degree() * pres.signature().euler_characteristic();
        cover["rank"] = h->basis.rank;
        cover["form"] = to_json(h->form.matrix);
        if (c.normal()) {
          Json deck = Json::array();
          for (const IntMatrix& t : deck_matrices(h->complex, h->basis)) deck.push_back(to_json(t));
          cover["deck_matrices"] = deck;
        }
        report["cover"] = cover;
      } else if (name == "expand") {
        if (o.weight < 1) throw InputError("weight must be positive");
        std::vector<std::string> in = inputs(o, 1, "expand");
        Word w = pres.parse(in[0]);
        report["inputs"] = in;
        report["config"]["weight"] = o.weight;
        if (pres.closed()) throw InputError("expand needs a punctured surface (free group)");
        HallBasis basis(pres.rank(), o.weight);
        NilpotentExpansion e = collect(w, basis);
        Json terms = Json::array();
        for (std::size_t i = 0; i < basis.size(); ++i)
          terms.push_back({{"weight", basis[i].weight},
                           {"index", basis[i].index_in_weight},
                           {"commutator", basis.format(static_cast<int>(i))},
                           {"exponent", e.exponents[i]}});
        report["expansion"] = terms;
        report["magnus_agrees"] = magnus_coordinates(w, basis) == e.exponents;
      } else if (name == "residual-depth") {
        std::vector<std::string> in = inputs(o, 1, "residual-depth");
        report["inputs"] = in;
        report["config"]["prime"] = o.prime;
        report["config"]["max_depth"] = o.max_depth;
        report["config"]["tower_cap"] = o.tower_cap;
        ResidualDepth r = residual_p_depth(pres.parse(in[0]), pres, o.prime, o.max_depth, o.tower_cap);
        report["result"] = {{"depth", r.depth ? Json(*r.depth) : Json(nullptr)},
                            {"indices", r.degrees},
                            {"status", r.depth ? "found" : "exhausted"}};
        status = r.depth ? 0 : 2;
      } else if (name == "double-coset") {
        if (!is_prime(o.prime)) throw InputError("prime " + std::to_string(o.prime) + " is not prime");
        const long long modulus = o.modulus ? o.modulus : o.prime;
        report["inputs"] = o.words;
        report["config"]["weight"] = o.weight;
        report["config"]["modulus"] = modulus;
        report["config"]["bound"] = o.bound;
        DoubleCosetResult r = double_coset_test(pres.parse(o.words[0]), pres.parse(o.words[1]),
                                                pres.parse(o.words[2]), pres, o.weight, modulus, o.bound);
        Json res{{"status", to_string(r.status)}};
        if (r.status == DoubleCosetResult::Status::member) res["s"] = r.s, res["t"] = r.t;
        if (r.status == DoubleCosetResult::Status::excluded) res["weight"] = r.weight;
        report["result"] = res;
        status = r.status == DoubleCosetResult::Status::undecided ? 2 : 0;
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  Json runtime{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
               {"threads", o.threads}};
  if (cache) {
    auto s = cache->stats();
    runtime["cache"] = {{"directory", cache->directory()}, {"memory_hits", s.memory_hits},
                        {"disk_hits", s.disk_hits},        {"builds", s.builds},
                        {"recovered", s.recovered},        {"write_failures", s.write_failures}};
    if (!cache->warning().empty()) {
      runtime["cache"]["warning"] = cache->warning();
      err << "warning: " << cache->warning() << "\n";
    }
  }
  report["runtime"] = runtime;

  const std::string text = report.dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream f(o.output, std::ios::trunc);
    f << text;
    if (!f) {
      err << "error: cannot write " << o.output << "\n";
      return 1;
    }
  }
  return status;
}

}  // namespace solenoid
