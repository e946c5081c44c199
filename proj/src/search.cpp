#include "solenoid/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "solenoid/corpus.hpp"

namespace solenoid {

namespace {

Json component_json(const PullbackComponent& c) {
  return Json{{"base", c.base}, {"degree", c.degree}, {"lifted", format_word(c.lifted)}, {"class", c.cycle}};
}

Json base_doc(const std::string& kind, const Presentation& pres, const SearchConfig& cfg,
              const std::vector<Word>& curves) {
  Json doc;
  doc["schema"] = "v1";
  doc["kind"] = kind;
  doc["surface"] = pres.signature().name();
  doc["prime"] = cfg.prime;
  doc["config"] = cfg.to_json();
  Json cs = Json::array();
  for (const Word& w : curves) cs.push_back(format_word(w));
  doc["curves"] = cs;
  return doc;
}

void attach(Json& doc, const SearchOutcome& out) {
  doc["transcript"] = out.trace;
  if (!out.hit) return;
  const CoverNode& n = out.hit->node;
  Json cover = map_to_json(n.map);
  cover["level"] = n.level;
  cover["origin"] = n.origin;
  cover["index"] = out.hit->index;
  doc["cover"] = cover;
  doc["witness"] = out.hit->witness;
}

int orbit_length(const CoverDescription& cover, const Word& w) {
  int k = 1;
  for (int c = cover.action().walk(0, w); c != 0; c = cover.action().walk(c, w)) ++k;
  return k;
}

long long int_pow(long long p, int m) {
  long long r = 1;
  while (m-- > 0) r *= p;
  return r;
}

// Exact answer, or nothing when the closed-surface search gave up.
std::optional<bool> try_conjugate(const Word& u, const Word& v, const Presentation& pres) {
  try {
    return conjugate_test(u, v, pres);
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

std::shared_ptr<const CoverHomology> rebuild(const Json& doc, const Presentation& pres) {
  return std::make_shared<const CoverHomology>(
      CoverDescription(pres, map_from_json(doc.at("cover"), pres), Normality::optional));
}

const PullbackComponent* find_component(const std::vector<PullbackComponent>& comps, const Json& w) {
  for (const auto& c : comps)
    if (c.base == w.at("base").get<int>()) {
      if (c.degree != w.at("degree").get<int>() || format_word(c.lifted) != w.at("lifted").get<std::string>() ||
          c.cycle != w.at("class").get<IntVector>())
        return nullptr;
      return &c;
    }
  return nullptr;
}

std::vector<IntVector> orbit_images(const CoverHomology& h, const Word& w, long long modulus) {
  std::vector<IntVector> out;
  for (int j = 0; j < h.cover.degree(); ++j)
    out.push_back(unfilled_coordinates(h.complex, h.basis, h.complex.walk_chain(j, w), modulus));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Json> orbit_separation(const CoverHomology& h, const Word& alpha, const Word& beta, int max_m) {
  const CoverDescription& cover = h.cover;
  if (!cover.normal()) return std::nullopt;
  int s = orbit_length(cover, alpha), t = orbit_length(cover, beta);
  if (s != t) return Json{{"criterion", "order"}, {"orders", {s, t}}};
  Word as = power(alpha, s), bs = power(beta, s);
  for (int m = 1; m <= max_m; ++m) {
    long long mod = int_pow(cover.prime(), m);
    IntVector va = subgroup_homology_image(as, h.complex, h.basis, mod);
    IntVector vb = subgroup_homology_image(bs, h.complex, h.basis, mod);
    std::vector<IntVector> orbit = orbit_images(h, as, mod);
    if (!std::binary_search(orbit.begin(), orbit.end(), vb))
      return Json{{"criterion", "orbit"}, {"m", m},           {"order", s},
                  {"alpha_image", va},    {"beta_image", vb}, {"orbit_size", orbit.size()}};
  }
  return std::nullopt;
}

std::optional<Json> submodule_separation(const CoverHomology& h, const Word& gamma, const Word& other) {
  auto c1 = pullback_components(gamma, h), c2 = pullback_components(other, h);
  SubmoduleV v1 = submodule_V(c1), v2 = submodule_V(c2);
  if (v1.basis != v2.basis) return Json{{"criterion", "submodule"}, {"basis", v1.basis}, {"other_basis", v2.basis}};
  auto s1 = signed_class_set(c1), s2 = signed_class_set(c2);
  std::vector<IntVector> common;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));
  if (common.empty()) return Json{{"criterion", "components"}, {"classes", s1}, {"other_classes", s2}};
  return std::nullopt;
}

std::optional<Json> intersection_witness(const CoverHomology& h, const Word& r1, const Word& r2) {
  auto c1 = pullback_components(r1, h);
  auto c2 = r1 == r2 ? c1 : pullback_components(r2, h);
  // Without a transitive deck group every component of gamma is tried.
  const std::size_t firsts = h.cover.normal() ? 1 : c1.size();
  for (std::size_t i = 0; i < firsts; ++i)
    if (auto w = first_component_pairing(c1[i], c2, h.form.matrix))
      return Json{{"component", component_json(c1[i])}, {"other", component_json(c2[w->other])}, {"value", w->value}};
  return std::nullopt;
}

}  // namespace

Json SearchConfig::to_json() const {
  return Json{{"prime", prime},         {"depth", depth},         {"degree_cap", degree_cap},
              {"sweep_limit", sweep_limit}, {"level_limit", level_limit}, {"max_m", max_m}, {"subnormal", subnormal}};
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i)
    rows.push_back(IntVector(m.a.begin() + static_cast<long>(i * m.cols),
                             m.a.begin() + static_cast<long>((i + 1) * m.cols)));
  return rows;
}

Json map_to_json(const QuotientMap& q) {
  return Json{{"degree", q.degree}, {"prime", q.prime}, {"permutations", q.perms}};
}

QuotientMap map_from_json(const Json& j, const Presentation& pres) {
  QuotientMap q;
  q.degree = j.at("degree").get<int>();
  q.prime = j.at("prime").get<int>();
  q.perms = j.at("permutations").get<std::vector<std::vector<int>>>();
  if (q.degree < 1 || q.perms.size() != static_cast<std::size_t>(pres.rank()))
    throw InputError("cover has the wrong number of permutations");
  for (const auto& perm : q.perms) {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != static_cast<std::size_t>(q.degree) || sorted[i] != static_cast<int>(i))
        throw InputError("cover permutation is not a permutation of 0..degree-1");
  }
  return q;
}

CoverTower::CoverTower(const Presentation& pres, const SearchConfig& cfg) : pres_(pres), cfg_(cfg) {}

const std::vector<CoverNode>& CoverTower::level(int l) {
  while (static_cast<int>(levels_.size()) <= l) build_next();
  return levels_[static_cast<std::size_t>(l)];
}

void CoverTower::build_next() {
  const int l = static_cast<int>(levels_.size());
  const int p = cfg_.prime;
  LevelTrace tr;
  tr.level = l;
  std::vector<CoverNode> nodes;
  auto add = [&](CoverNode n) {
    std::string key = canonical_serialization(n.map);
    if (seen_.count(key)) {
      ++tr.duplicates;
      return;
    }
    if (nodes.size() >= cfg_.level_limit) {
      ++tr.truncated;
      return;
    }
    seen_.insert(std::move(key));
    nodes.push_back(std::move(n));
  };
  std::vector<QuotientMap> bases;
  if (l == 0) {
    QuotientMap id = identity_map(pres_, p);
    frattini_ = id;
    add(CoverNode{0, "identity", id});
    bases.push_back(id);
  } else {
    if (l >= 2 && frattini_) bases.push_back(*frattini_);
    for (const CoverNode& n : levels_.back())
      if (n.origin != "frattini" && n.origin != "identity") bases.push_back(n.map);
  }
  {
    std::vector<CoverNode> subnormal;
    for (const QuotientMap& b : bases) {
      CoverDescription base(pres_, b, Normality::optional);
      AbelianQuotient aq = h1_mod_p(base, p);
      std::size_t total = hyperplane_count(aq.rank, p);
      // Invariant functionals first: their kernels are normal of degree d p.
      std::vector<IntVector> fs;
      if (base.normal()) fs = invariant_functionals(base, aq, p, cfg_.level_limit);
      const std::size_t invariant = fs.size();
      for (IntVector& f : leading_functionals(aq.rank, p, cfg_.sweep_limit))
        if (!std::binary_search(fs.begin(), fs.begin() + static_cast<long>(invariant), f)) fs.push_back(std::move(f));
      tr.truncated += total - std::min(total, fs.size());
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const IntVector& f = fs[k];
        std::vector<IntVector> images;
        for (const IntVector& img : aq.images) {
          long long v = 0;
          for (std::size_t i = 0; i < f.size(); ++i) v += f[i] * img[i];
          images.push_back({mod(v, p)});
        }
        try {
          if (base.normal()) add(CoverNode{l, "sweep", abelian_extension(base, images, p, cfg_.degree_cap)});
        } catch (const BudgetExhausted&) {
          ++tr.over_cap;
        }
        if (!cfg_.subnormal || k < invariant) continue;
        try {
          QuotientMap raw = abelian_extension(base, images, p, cfg_.degree_cap, false);
          bool normal = CoverDescription(pres_, raw, Normality::optional).normal();
          if (normal)
            add(CoverNode{l, "sweep", std::move(raw)});
          else
            subnormal.push_back(CoverNode{l, "subnormal", std::move(raw)});
        } catch (const BudgetExhausted&) {
          ++tr.over_cap;
        }
      }
    }
    if (l >= 1 && frattini_) {
      try {
        QuotientMap next = frattini_kernel(CoverDescription(pres_, *frattini_), p, cfg_.degree_cap);
        frattini_ = next;
        add(CoverNode{l, "frattini", next});
      } catch (const BudgetExhausted&) {
        frattini_.reset();
        ++tr.over_cap;
      }
    }
    for (CoverNode& n : subnormal) add(std::move(n));
  }
  tr.covers = nodes.size();
  trace_.push_back(tr);
  levels_.push_back(std::move(nodes));
}

SearchOutcome search_covers(const Presentation& pres, const SearchConfig& cfg, CoverCache& cache,
                            const CoverTest& test) {
  CoverTower tower(pres, cfg);
  SearchOutcome out;
  out.trace = Json::array();
  for (int l = 0; l <= cfg.depth; ++l) {
    const std::vector<CoverNode>& nodes = tower.level(l);
    const std::size_t n = nodes.size();
    std::vector<std::optional<Json>> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0}, best{n};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < n;) {
        if (i > best.load()) continue;
        try {
          auto h = cache.get(pres, nodes[i].map);
          results[i] = test(*h, nodes[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
        if (results[i] || errors[i]) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    };
    const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(n)));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    const LevelTrace& tr = tower.trace()[static_cast<std::size_t>(l)];
    std::size_t first = best.load();
    Json lt{{"level", l},
            {"covers", tr.covers},
            {"evaluated", first < n ? first + 1 : n},
            {"over_cap", tr.over_cap},
            {"truncated", tr.truncated},
            {"duplicates", tr.duplicates}};
    out.trace.push_back(lt);
    if (first < n) {
      if (errors[first]) std::rethrow_exception(errors[first]);
      out.hit = SearchHit{nodes[first], *results[first], first};
      return out;
    }
  }
  return out;
}

Certificate certify_intersection(const Presentation& pres, const Word& gamma, const Word& other,
                                 const SearchConfig& cfg, CoverCache& cache) {
  CurveClass c1 = CurveClass::make(gamma, pres), c2 = CurveClass::make(other, pres);
  const Word r1 = c1.root.root, r2 = c2.root.root;
  SearchOutcome out = search_covers(pres, cfg, cache, [&](const CoverHomology& h, const CoverNode&) {
    return intersection_witness(h, r1, r2);
  });
  const bool same = c1.canonical == c2.canonical;
  Certificate cert{base_doc(out.hit ? (same ? "nonsimple" : "intersecting") : "inconclusive", pres, cfg,
                            {gamma, other})};
  cert.doc["roots"] = {format_word(r1), format_word(r2)};
  cert.doc["test"] = same ? "simple" : "intersection";
  attach(cert.doc, out);
  return cert;
}

Certificate simple_check(const Presentation& pres, const Word& gamma, const SearchConfig& cfg, CoverCache& cache) {
  Certificate cert = certify_intersection(pres, gamma, gamma, cfg, cache);
  if (cert.conclusive() || pres.genus() != 1 || pres.punctures() != 1) return cert;
  if (ptorus_simple_oracle(gamma, pres)) {
    cert.doc["kind"] = "simple";
    cert.doc["witness"] = Json{{"oracle", "whitehead"}};
  } else {
    cert.doc["oracle"] = "not simple";
  }
  return cert;
}

Certificate peripherality_scan(const Presentation& pres, const Word& gamma, const SearchConfig& cfg,
                               CoverCache& cache) {
  if (pres.closed()) throw InputError("peripherality needs a punctured surface");
  CurveClass c = CurveClass::make(gamma, pres);
  if (c.peripheral) {
    Certificate cert{base_doc("peripheral-evidence", pres, cfg, {gamma})};
    cert.doc["witness"] = Json{{"puncture", c.peripheral->puncture},
                               {"exponent", c.peripheral->exponent},
                               {"reversed", c.peripheral->reversed}};
    return cert;
  }
  SearchOutcome out = search_covers(pres, cfg, cache, [&](const CoverHomology& h, const CoverNode&) {
    std::optional<Json> w;
    for (const auto& comp : pullback_components(gamma, h))
      if (std::any_of(comp.cycle.begin(), comp.cycle.end(), [](long long x) { return x != 0; }))
        return std::optional<Json>(Json{{"component", component_json(comp)}});
    return w;
  });
  Certificate cert{base_doc(out.hit ? "nonperipheral" : "inconclusive", pres, cfg, {gamma})};
  attach(cert.doc, out);
  return cert;
}

Certificate distinguish_curves(const Presentation& pres, const Word& gamma, const Word& other,
                               const SearchConfig& cfg, CoverCache& cache) {
  CurveClass c1 = CurveClass::make(gamma, pres), c2 = CurveClass::make(other, pres);
  for (const CurveClass* c : {&c1, &c2})
    if (c->peripheral) throw InputError("curve " + format_word(c->input) + " is peripheral");
  Word inv = inverse(other);
  for (bool reversed : {false, true}) {
    const Word& w = reversed ? inv : other;
    std::optional<bool> same = c1.canonical == cyclic_reduce(w, pres) ? std::optional<bool>(true)
                                                                       : try_conjugate(gamma, w, pres);
    if (same && *same) {
      Certificate cert{base_doc("homotopic", pres, cfg, {gamma, other})};
      cert.doc["witness"] = Json{{"orientation", reversed ? "reversed" : "same"}};
      return cert;
    }
  }
  SearchOutcome out = search_covers(pres, cfg, cache, [&](const CoverHomology& h, const CoverNode&) {
    return submodule_separation(h, gamma, other);
  });
  Certificate cert{base_doc(out.hit ? "distinct" : "inconclusive", pres, cfg, {gamma, other})};
  attach(cert.doc, out);
  return cert;
}

Certificate conjugacy_separate(const Presentation& pres, const Word& alpha, const Word& beta,
                               const SearchConfig& cfg, CoverCache& cache) {
  for (const Word* w : {&alpha, &beta})
    if (is_trivial(*w, pres)) throw InputError("word " + format_word(*w) + " is trivial");
  std::optional<bool> conj = try_conjugate(alpha, beta, pres);
  if (conj && *conj) return Certificate{base_doc("conjugate", pres, cfg, {alpha, beta})};
  auto ha = abelianize(alpha, pres, cfg.prime), hb = abelianize(beta, pres, cfg.prime);
  if (ha != hb) {
    Certificate cert{base_doc("nonconjugate", pres, cfg, {alpha, beta})};
    cert.doc["witness"] = Json{{"criterion", "abelianization"}, {"alpha_image", ha}, {"beta_image", hb}};
    return cert;
  }
  SearchOutcome out = search_covers(pres, cfg, cache, [&](const CoverHomology& h, const CoverNode&) {
    return orbit_separation(h, alpha, beta, cfg.max_m);
  });
  Certificate cert{base_doc(out.hit ? "nonconjugate" : "inconclusive", pres, cfg, {alpha, beta})};
  if (!conj) cert.doc["conjugacy_test"] = "exhausted";
  attach(cert.doc, out);
  return cert;
}

VerifyResult verify_certificate(const Json& doc) {
  auto fail = [](std::string why) { return VerifyResult{false, std::move(why)}; };
  try {
    if (doc.value("schema", "") != "v1") return fail("unknown schema");
    const std::string kind = doc.at("kind").get<std::string>();
    Presentation pres(SurfaceSignature::parse(doc.at("surface").get<std::string>()));
    const int p = doc.at("prime").get<int>();
    std::vector<Word> curves;
    for (const auto& s : doc.at("curves")) curves.push_back(pres.parse(s.get<std::string>()));
    auto need = [&](std::size_t k) {
      if (curves.size() != k) throw InputError("expected " + std::to_string(k) + " curves");
    };
    const Json& w = doc.contains("witness") ? doc.at("witness") : Json::object();

    if (kind == "inconclusive") return fail("inconclusive reports make no claim");
    if (kind == "nonsimple" || kind == "intersecting") {
      need(2);
      Word r1 = extract_root(curves[0], pres).root, r2 = extract_root(curves[1], pres).root;
      if (kind == "nonsimple" && cyclic_reduce(curves[0], pres) != cyclic_reduce(curves[1], pres))
        return fail("nonsimple certificate names two different curves");
      if (doc.at("roots") != Json{format_word(r1), format_word(r2)}) return fail("roots differ");
      auto h = rebuild(doc, pres);
      auto c1 = pullback_components(r1, *h), c2 = pullback_components(r2, *h);
      const PullbackComponent* x = find_component(c1, w.at("component"));
      const PullbackComponent* y = find_component(c2, w.at("other"));
      if (!x || !y) return fail("witness components do not match the cover");
      long long value = bilinear(x->cycle, h->form.matrix, y->cycle);
      if (value == 0 || value != w.at("value").get<long long>()) return fail("pairing value differs");
      return {true, "pairing of lifted components is " + std::to_string(value)};
    }
    if (kind == "simple") {
      need(1 + (curves.size() > 1));
      if (!ptorus_simple_oracle(curves[0], pres)) return fail("oracle reports a non-simple class");
      return {true, "primitive or puncture-parallel on S_{1,1}"};
    }
    if (kind == "peripheral-evidence") {
      need(1);
      auto m = is_peripheral(curves[0], pres);
      if (!m || m->puncture != w.at("puncture").get<int>() || m->exponent != w.at("exponent").get<int>() ||
          m->reversed != w.at("reversed").get<bool>())
        return fail("peripheral match differs");
      return {true, "conjugate to a power of a puncture loop"};
    }
    if (kind == "nonperipheral") {
      need(1);
      auto h = rebuild(doc, pres);
      const PullbackComponent* c = find_component(pullback_components(curves[0], *h), w.at("component"));
      if (!c || std::all_of(c->cycle.begin(), c->cycle.end(), [](long long v) { return v == 0; }))
        return fail("component class is zero or differs");
      return {true, "a lifted component has nonzero homology class"};
    }
    if (kind == "homotopic") {
      need(2);
      Word other = w.at("orientation") == "reversed" ? inverse(curves[1]) : curves[1];
      bool same = cyclic_reduce(curves[0], pres) == cyclic_reduce(other, pres) ||
                  conjugate_test(curves[0], other, pres);
      return same ? VerifyResult{true, "conjugate"} : fail("not conjugate");
    }
    if (kind == "conjugate") {
      need(2);
      return conjugate_test(curves[0], curves[1], pres) ? VerifyResult{true, "conjugate"} : fail("not conjugate");
    }
    if (kind == "distinct") {
      need(2);
      auto h = rebuild(doc, pres);
      auto got = submodule_separation(*h, curves[0], curves[1]);
      if (!got || *got != w) return fail("separation data differs");
      return {true, "separated by " + w.at("criterion").get<std::string>()};
    }
    if (kind == "nonconjugate") {
      need(2);
      if (w.at("criterion") == "abelianization") {
        auto ha = abelianize(curves[0], pres, p), hb = abelianize(curves[1], pres, p);
        if (ha == hb || w.at("alpha_image") != Json(ha) || w.at("beta_image") != Json(hb))
          return fail("abelianizations do not separate");
        return {true, "abelianizations differ mod p"};
      }
      auto h = rebuild(doc, pres);
      if (h->cover.prime() != p) return fail("cover prime differs");
      int max_m = w.contains("m") ? w.at("m").get<int>() : 1;
      auto got = orbit_separation(*h, curves[0], curves[1], max_m);
      if (!got || *got != w) return fail("separation data differs");
      return {true, "separated by " + w.at("criterion").get<std::string>()};
    }
    return fail("unknown kind " + kind);
  } catch (const std::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace solenoid
