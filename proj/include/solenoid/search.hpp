#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "solenoid/cache.hpp"
#include "solenoid/curves.hpp"

namespace solenoid {

using Json = nlohmann::json;

struct SearchConfig {
  int prime = 2;
  int depth = 2;
  std::size_t degree_cap = 16;
  // Functionals tried per base in an index-p sweep, and covers per level.
  std::size_t sweep_limit = 64;
  std::size_t level_limit = 2048;
  int max_m = 3;
  // Also search non-normal covers reached by index-p steps; any finite cover
  // gives sound intersection and distinctness witnesses.
  bool subnormal = true;
  int threads = 1;

  Json to_json() const;
};

// A cover in the search order.  Origins: "identity", "sweep" (normal, index p
// over a base or its normal core), "frattini" (the next tower level),
// "subnormal" (a non-normal index-p extension of a base).
struct CoverNode {
  int level = 0;
  std::string origin;
  QuotientMap map;
};

struct LevelTrace {
  int level = 0;
  std::size_t covers = 0;      // enumerated at this level
  std::size_t over_cap = 0;    // extensions whose normal core exceeds the degree cap
  std::size_t truncated = 0;   // functionals or covers dropped by the sweep and level limits
  std::size_t duplicates = 0;  // covers already seen at a lower level
};

// Level 0 is the identity cover and its index-p kernels.  Level l >= 1 extends
// by index p the previous level's covers (K_{l-1} included for l >= 2):
// normal extensions first, then the Frattini cover K_l, then non-normal
// extensions.
class CoverTower {
 public:
  CoverTower(const Presentation& pres, const SearchConfig& cfg);
  // Empty when the level has nothing new.  Levels must be requested in order.
  const std::vector<CoverNode>& level(int l);
  const std::vector<LevelTrace>& trace() const { return trace_; }

 private:
  void build_next();

  Presentation pres_;
  SearchConfig cfg_;
  std::vector<std::vector<CoverNode>> levels_;
  std::vector<LevelTrace> trace_;
  std::optional<QuotientMap> frattini_;
  std::set<std::string> seen_;
};

// Witness predicate over one cover; returns witness data or nothing.
using CoverTest = std::function<std::optional<Json>(const CoverHomology&, const CoverNode&)>;

struct SearchHit {
  CoverNode node;
  Json witness;
  std::size_t index;  // position within its level
};

// Runs `test` over levels 0..cfg.depth.  Covers of one level are evaluated
// concurrently; the first hit in enumeration order is returned.
struct SearchOutcome {
  std::optional<SearchHit> hit;
  Json trace;
};
SearchOutcome search_covers(const Presentation& pres, const SearchConfig& cfg, CoverCache& cache,
                            const CoverTest& test);

// Certificate kinds: nonsimple, intersecting, distinct, nonconjugate,
// peripheral-evidence, nonperipheral, homotopic, conjugate, simple, inconclusive.
struct Certificate {
  Json doc;
  std::string kind() const { return doc.at("kind").get<std::string>(); }
  bool conclusive() const { return kind() != "inconclusive"; }
};

Certificate certify_intersection(const Presentation& pres, const Word& gamma, const Word& other,
                                 const SearchConfig& cfg, CoverCache& cache);
// gamma against itself; on S_{1,1} an exhausted search is settled by the exact oracle.
Certificate simple_check(const Presentation& pres, const Word& gamma, const SearchConfig& cfg, CoverCache& cache);
Certificate peripherality_scan(const Presentation& pres, const Word& gamma, const SearchConfig& cfg,
                               CoverCache& cache);
Certificate distinguish_curves(const Presentation& pres, const Word& gamma, const Word& other,
                               const SearchConfig& cfg, CoverCache& cache);
Certificate conjugacy_separate(const Presentation& pres, const Word& alpha, const Word& beta,
                               const SearchConfig& cfg, CoverCache& cache);

struct VerifyResult {
  bool ok = false;
  std::string message;
};
// Rechecks a certificate from its own data; no cache is consulted.
VerifyResult verify_certificate(const Json& doc);

// Matrix and vector JSON helpers (row-major).
Json to_json(const IntMatrix& m);
Json map_to_json(const QuotientMap& q);
QuotientMap map_from_json(const Json& j, const Presentation& pres);

}  // namespace solenoid
