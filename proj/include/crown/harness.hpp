#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crown/crown_graphs.hpp"
#include "crown/graph_algebra.hpp"
#include "crown/io.hpp"
#include "crown/loday.hpp"
#include "crown/representations.hpp"
#include "crown/signs.hpp"

namespace crown {

/// Invalid run configuration (exit code 2 at the command line).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Status { Pass, Fail, Info, Skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Info: return "info";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct CheckReport {
  std::string check;
  json params;
  Status status = Status::Skipped;
  json details;
  double elapsed_ms = 0;
};

struct Caps {
  std::size_t max_tensor_dim = kDefaultMaxTensorDim;
  std::uint64_t max_proj_points = std::uint64_t{1} << 14;
  std::size_t max_graph_size = 64;
};

/// Check groups in execution order.
inline const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> groups = {"monoid",  "graphs", "lemma",   "transport",
                                                  "iso",     "noniso", "functor", "explore"};
  return groups;
}

struct RunConfig {
  int n = 2;
  FieldSpec field = FieldSpec::rationals();
  std::vector<std::string> checks = check_groups();
  Caps caps;

  void validate() const {
    if (n < 1) throw ConfigError("n must be at least 1");
    if (caps.max_tensor_dim == 0 || caps.max_proj_points == 0 || caps.max_graph_size == 0)
      throw ConfigError("caps must be positive");
    for (const auto& c : checks)
      if (std::find(check_groups().begin(), check_groups().end(), c) == check_groups().end())
        throw ConfigError("unknown check group '" + c + "'");
  }

  bool wants(const std::string& group) const { return std::find(checks.begin(), checks.end(), group) != checks.end(); }

  json to_json() const {
    json ordered = json::array();
    for (const auto& g : check_groups())
      if (wants(g)) ordered.push_back(g);
    return {{"n", n},
            {"field", field.name()},
            {"checks", ordered},
            {"caps",
             {{"max_tensor_dim", caps.max_tensor_dim},
              {"max_proj_points", caps.max_proj_points},
              {"max_graph_size", caps.max_graph_size}}}};
  }
};

/// Parses "all" or a comma-separated list of group names.
inline std::vector<std::string> parse_checks(const std::string& text) {
  if (text == "all") return check_groups();
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto item = text.substr(start, end - start);
    if (item.empty()) throw ConfigError("empty check name in '" + text + "'");
    if (std::find(check_groups().begin(), check_groups().end(), item) == check_groups().end())
      throw ConfigError("unknown check group '" + item + "'");
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
    start = end + 1;
  }
  return out;
}

inline json report_json(const RunConfig& config, const std::vector<CheckReport>& reports) {
  json list = json::array();
  for (const auto& r : reports)
    list.push_back({{"check", r.check},
                    {"params", r.params},
                    {"status", to_string(r.status)},
                    {"details", r.details},
                    {"elapsed_ms", r.elapsed_ms}});
  return {{"version", 1}, {"config", config.to_json()}, {"reports", list}};
}

inline bool any_failed(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == Status::Fail; });
}

namespace detail {

struct Outcome {
  Status status;
  json details;
};

inline Outcome verdict(bool ok, json details) { return {ok ? Status::Pass : Status::Fail, std::move(details)}; }

/// Words to test: all of W_n for n <= 3, otherwise a seeded sample.
inline std::vector<Word> word_sample(int n, std::size_t samples, std::mt19937_64& rng) {
  if (n <= 3) return wn_enumerate(n);
  // Odd entries are free signs; an even entry is 0 between unequal neighbours, else 0 or their sign.
  std::vector<Word> out;
  std::uniform_int_distribution<int> coin(0, 1);
  const auto len = static_cast<std::size_t>(2 * n + 1);
  while (out.size() < samples) {
    std::string s(len, '+');
    for (std::size_t j = 0; j < len; j += 2) s[j] = coin(rng) ? '+' : '-';
    for (std::size_t j = 1; j < len; j += 2) s[j] = (s[j - 1] != s[j + 1] || coin(rng)) ? '0' : s[j - 1];
    out.push_back(Word::parse(s));
  }
  return out;
}

inline std::string sign_name(Sign s) { return std::string(1, to_char(to_tri(s))); }

template <FieldScalar K>
std::vector<std::pair<std::string, MonoidAlgElem<K>>> transport_elements(int n, FieldSpec f) {
  std::vector<std::pair<std::string, MonoidAlgElem<K>>> out;
  out.emplace_back("1", MonoidAlgElem<K>::one(n, f));
  for (int i = 1; i <= n; ++i) out.emplace_back("g" + std::to_string(i), MonoidAlgElem<K>::basis(gen_g(n, i), f));
  for (int i = 1; i <= n; ++i) out.emplace_back("h" + std::to_string(i), MonoidAlgElem<K>::basis(gen_h(n, i), f));
  out.emplace_back("T", build_T<K>(n, f));
  out.emplace_back("Z", build_Z<K>(n, f));
  return out;
}

template <FieldScalar K>
class SuiteRunner {
 public:
  explicit SuiteRunner(const RunConfig& c) : cfg_(c), rng_(0x5eedULL + static_cast<unsigned>(c.n)) {}

  std::vector<CheckReport> run() {
    for (const auto& g : check_groups()) {
      if (!cfg_.wants(g)) continue;
      if (g == "monoid") monoid();
      else if (g == "graphs") graphs();
      else if (g == "lemma") lemma();
      else if (g == "transport") transport();
      else if (g == "iso") iso();
      else if (g == "noniso") noniso();
      else if (g == "functor") functor();
      else if (g == "explore") explore();
    }
    return std::move(reports_);
  }

 private:
  json base_params() const { return {{"n", cfg_.n}, {"field", cfg_.field.name()}}; }

  void record(const std::string& name, json params, const std::function<Outcome()>& body) {
    CheckReport rep;
    rep.check = name;
    rep.params = std::move(params);
    const auto start = std::chrono::steady_clock::now();
    try {
      auto out = body();
      rep.status = out.status;
      rep.details = std::move(out.details);
    } catch (const CapExceeded& e) {
      rep.status = Status::Skipped;
      rep.details = {{"reason", e.what()}};
    } catch (const std::exception& e) {
      rep.status = Status::Fail;
      rep.details = {{"error", e.what()}};
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    reports_.push_back(std::move(rep));
  }

  void skip(const std::string& name, const std::string& reason) {
    reports_.push_back({name, base_params(), Status::Skipped, {{"reason", reason}}, 0});
  }

  bool need_crowns(const std::string& name) {
    if (cfg_.n >= 2) return true;
    skip(name, "crowns need n >= 2");
    return false;
  }

  const CrownAlgebras<K>& ctx() {
    if (!ctx_) ctx_ = std::make_unique<CrownAlgebras<K>>(cfg_.n, cfg_.field);
    return *ctx_;
  }

  const CrownFamily& family() {
    if (!family_) family_ = std::make_unique<CrownFamily>(cfg_.n);
    return *family_;
  }

  // ---- monoid ----
  void monoid() {
    const int n = cfg_.n;
    const FieldSpec f = cfg_.field;
    record("monoid.t_squared", base_params(), [&] {
      const auto t = build_T<K>(n, f);
      const auto z = build_Z<K>(n, f);
      const auto diff = t * t + z - MonoidAlgElem<K>::one(n, f);
      json d = {{"terms_T", t.terms().size()}, {"terms_Z", z.terms().size()}};
      if (!diff.is_zero()) d["witness"] = to_json(diff);
      return verdict(diff.is_zero(), d);
    });
    record("monoid.size", base_params(), [&] {
      const auto count = wn_enumerate(n).size();
      const auto expected = 2 * checked_power(3, static_cast<std::size_t>(n));
      return verdict(count == expected, {{"count", count}, {"expected", expected}});
    });
    record("monoid.closure", base_params(), [&] {
      const auto all = wn_enumerate(n);
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      if (all.size() * all.size() <= (std::size_t{1} << 20)) {
        for (std::size_t a = 0; a < all.size(); ++a)
          for (std::size_t b = 0; b < all.size(); ++b) pairs.emplace_back(a, b);
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        for (int k = 0; k < 20000; ++k) pairs.emplace_back(pick(rng_), pick(rng_));
      }
      for (auto [a, b] : pairs) {
        const Word ab = all[a] * all[b];
        const bool ok = ab == all[b] * all[a] && std::binary_search(all.begin(), all.end(), ab);
        if (!ok)
          return verdict(false, {{"witness", {all[a].to_string(), all[b].to_string()}}});
      }
      return verdict(true, {{"pairs", pairs.size()}, {"exhaustive", pairs.size() == all.size() * all.size()}});
    });
    record("monoid.homsets", base_params(), [&] {
      json d = json::object();
      bool ok = true;
      const auto t = build_T<K>(n, f);
      const auto z = build_Z<K>(n, f);
      for (Sign s : kSigns) {
        const bool t_ok = homset_member(t, s, -s);
        const bool z_ok = homset_member(z, s, s);
        d["T:" + sign_name(s) + "->" + sign_name(-s)] = t_ok;
        d["Z:" + sign_name(s) + "->" + sign_name(s)] = z_ok;
        ok = ok && t_ok && z_ok;
      }
      for (int i = 1; i <= n; ++i) {
        const bool gi = act_on_U(gen_g(n, i), Sign::Plus) == Sign::Plus;
        const bool hi = act_on_U(gen_h(n, i), Sign::Plus) == Sign::Minus;
        if (!gi) d["witness_g"] = i;
        if (!hi) d["witness_h"] = i;
        ok = ok && gi && hi;
      }
      return verdict(ok, d);
    });
  }

  // ---- graphs ----
  void graphs() {
    const int n = cfg_.n;
    const auto un = static_cast<std::size_t>(n);
    record("graphs.sizes", base_params(), [&] {
      const CrownFamily& fam = family();
      const Graph& b = *fam.strip();
      json d = {{"strip", {{"vertices", b.size()}, {"edges", b.edge_count()}}}};
      bool ok = b.size() == 5 * un + 2 && b.edge_count() == 8 * un;
      for (int i = 1; i <= n; ++i) ok = ok && fam.piece(i).graph->size() == 7 && fam.piece(i).graph->edge_count() == 8;
      if (fam.has_crowns())
        for (Sign s : kSigns) {
          const Graph& c = *fam.crown(s).graph;
          d["crown" + sign_name(s)] = {{"vertices", c.size()}, {"edges", c.edge_count()}};
          ok = ok && c.size() == 5 * un && c.edge_count() == 8 * un;
        }
      return verdict(ok, d);
    });
    record("graphs.equivariance", base_params(), [&] {
      const CrownFamily& fam = family();
      const auto words = word_sample(n, 200, rng_);
      if (!(fam.act_on_strip(Word::identity(n)) == GraphMorphism::identity(fam.strip())))
        return verdict(false, {{"witness", Word::identity(n).to_string()}});
      std::vector<GraphMorphism> maps;
      for (const auto& w : words) maps.push_back(fam.act_on_strip(w));
      std::size_t pairs = 0;
      for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = 0; b < words.size(); b += (words.size() > 54 ? 7 : 1)) {
          ++pairs;
          if (!(fam.act_on_strip(words[a] * words[b]) == compose(maps[a], maps[b])))
            return verdict(false, {{"witness", {words[a].to_string(), words[b].to_string()}}});
        }
      return verdict(true, {{"words", words.size()}, {"composition_pairs", pairs}});
    });
    record("graphs.cover", base_params(), [&] {
      const auto inc = family().piece_inclusions();
      return verdict(is_cover(std::span<const GraphMorphism>(inc)), {{"pieces", inc.size()}});
    });
    record("graphs.trivial_generators", base_params(), [&] {
      const CrownFamily& fam = family();
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (i == j) continue;
          if (!(fam.act_on_piece(gen_g(n, i), j) == GraphMorphism::identity(fam.piece(j).graph)))
            return verdict(false, {{"witness", {{"generator", i}, {"piece", j}}}});
        }
      return verdict(true, {{"generator_piece_pairs", n * (n - 1)}});
    });
    if (need_crowns("graphs.crown_admissible")) {
      record("graphs.crown_admissible", base_params(), [&] {
        json d = json::object();
        bool ok = true;
        for (Sign s : kSigns) {
          const Graph& c = *family().crown(s).graph;
          const bool tf = is_triangle_free(c);
          const auto mv = min_valency(c);
          const bool adm = is_admissible(c);
          d["crown" + sign_name(s)] = {{"triangle_free", tf}, {"min_valency", mv}, {"admissible", adm}};
          ok = ok && tf && mv >= 2 && adm;
        }
        return verdict(ok, d);
      });
    }
    if (need_crowns("graphs.crown_cycles")) {
      record("graphs.crown_cycles", base_params(), [&] {
        const auto plus = valency2_cycle_count(*family().crown(Sign::Plus).graph);
        const auto minus = valency2_cycle_count(*family().crown(Sign::Minus).graph);
        json d = {{"crown+", {{"count", plus.count()}, {"lengths", plus.cycle_lengths()}}},
                  {"crown-", {{"count", minus.count()}, {"lengths", minus.cycle_lengths()}}}};
        return verdict(plus.all_cycles() && minus.all_cycles() && plus.count() == 2 && minus.count() == 1, d);
      });
    }
    if (need_crowns("graphs.crown_actions")) {
      record("graphs.crown_actions", base_params(), [&] {
        const CrownFamily& fam = family();
        const auto words = word_sample(n, 200, rng_);
        for (const auto& w : words)
          for (Sign s : kSigns) {
            const Sign t = act_on_U(w, s);
            const auto on_crown = fam.act_on_crown(w, s);
            if (!(compose(fam.crown(t).projection, fam.act_on_strip(w)) == compose(on_crown, fam.crown(s).projection)))
              return verdict(false, {{"witness", {{"word", w.to_string()}, {"from", sign_name(s)}}}});
          }
        return verdict(true, {{"words", words.size()}});
      });
    }
  }

  // ---- lemma ----
  void lemma() {
    if (cfg_.n < 2) {
      skip("lemma", "no tensor power p <= n - 1 when n = 1");
      return;
    }
    for (std::size_t p = 1; p + 1 <= static_cast<std::size_t>(cfg_.n); ++p) {
      json params = base_params();
      params["p"] = p;
      record("lemma.zero.p=" + std::to_string(p), params, [&] {
        const auto res = lemma_check(ctx(), p, cfg_.caps.max_tensor_dim);
        json d = {{"dimension", res.dimension}, {"streamed", res.streamed}};
        if (res.witness) d["witness"] = {{"row", res.witness->row}, {"col", res.witness->col}};
        return verdict(res.zero, d);
      });
    }
    for (std::size_t p = 1; p + 1 <= static_cast<std::size_t>(cfg_.n); ++p) {
      json params = base_params();
      params["p"] = p;
      record("lemma.trace.p=" + std::to_string(p), params, [&] {
        const auto tr = lemma_proof_trace(ctx(), p, cfg_.caps.max_tensor_dim);
        json d = {{"embedding_rank", tr.embedding_rank},
                  {"expected_rank", tr.expected_rank},
                  {"injective", tr.injective},
                  {"words_checked", tr.words_checked},
                  {"intertwines", tr.intertwines},
                  {"tuples", tr.tuples},
                  {"tuples_with_trivial_generator", tr.tuples_with_trivial_generator},
                  {"tuples_annihilated", tr.tuples_annihilated},
                  {"every_tuple_misses", tr.every_tuple_misses}};
        return verdict(tr.holds(), d);
      });
    }
  }

  // ---- transport ----
  void transport() {
    if (!need_crowns("transport")) return;
    const auto r = static_cast<std::size_t>(cfg_.n - 1);
    for (const auto& item : transport_elements<K>(cfg_.n, cfg_.field)) {
      const std::string& name = item.first;
      const MonoidAlgElem<K>& x = item.second;
      json params = base_params();
      params["r"] = r;
      params["element"] = name;
      record("transport." + name, params, [&] {
        json d = json::object();
        bool ok = true;
        for (Sign s : kSigns) {
          const Sign t = image_of(x, s);
          const bool sq = transport_square_check(ctx(), r, x, s, t, cfg_.caps.max_tensor_dim);
          d[sign_name(s) + "->" + sign_name(t)] = sq;
          ok = ok && sq;
        }
        return verdict(ok, d);
      });
    }
  }

  static Sign image_of(const MonoidAlgElem<K>& x, Sign s) { return act_on_U(x.terms().begin()->first, s); }

  // ---- iso ----
  static json iso_details(const IsoReport& rep) {
    json d = {{"forward_natural", rep.forward_natural},
              {"backward_natural", rep.backward_natural},
              {"identity_on_plus", rep.identity_on_plus},
              {"identity_on_minus", rep.identity_on_minus}};
    if (rep.factored_identity) d["factored_identity"] = *rep.factored_identity;
    if (!rep.witness.empty()) d["witness"] = rep.witness;
    return d;
  }

  void iso() {
    if (!need_crowns("iso")) return;
    json params = base_params();
    params["r"] = cfg_.n - 1;
    record("iso.T", params, [&] {
      const auto rep = iso_check(ctx(), std::nullopt, cfg_.caps.max_tensor_dim);
      return verdict(rep.pass() && rep.factored_identity.value_or(false), iso_details(rep));
    });
    record("iso.negative_control", params, [&] {
      const auto rep = iso_check(ctx(), build_Z<K>(cfg_.n, cfg_.field), std::nullopt, cfg_.caps.max_tensor_dim);
      json d = iso_details(rep);
      d["expected"] = "the Z_n composites are not the identity";
      if (rep.pass()) d["witness"] = "Z_n composites equal the identity at every object";
      return verdict(!rep.pass(), d);
    });
  }

  // ---- noniso ----
  void noniso() {
    if (!need_crowns("noniso")) return;
    record("noniso.graphs", base_params(), [&] {
      const Graph& plus = *family().crown(Sign::Plus).graph;
      const Graph& minus = *family().crown(Sign::Minus).graph;
      const auto iso = find_isomorphism(plus, minus, cfg_.caps.max_graph_size);
      json d = {{"isomorphic", iso.has_value()},
                {"cycles+", valency2_cycle_count(plus).count()},
                {"cycles-", valency2_cycle_count(minus).count()}};
      if (iso) d["witness"] = *iso;
      return verdict(!iso, d);
    });
    const FieldSpec f = cfg_.field.is_rational() ? FieldSpec::prime(2) : cfg_.field;
    json params = base_params();
    params["field"] = f.name();
    record("noniso.reconstruction", params, [&] {
      const ProjectiveCaps caps{cfg_.caps.max_proj_points, ProjectiveCaps{}.max_bitset_bytes};
      json d = json::object();
      if (cfg_.field.is_rational()) d["note"] = "projective enumeration requires a finite field; using fp:2";
      std::vector<Graph> rebuilt;
      bool ok = true;
      for (Sign s : kSigns) {
        const Graph& c = *family().crown(s).graph;
        const auto a = q_ungraded<Fp>(c, f);
        const auto graded = annihilator_grading(a);
        rebuilt.push_back(reconstruct_graph(a, caps));
        const bool round_trip = graphs_isomorphic(rebuilt.back(), c, cfg_.caps.max_graph_size);
        d["crown" + sign_name(s)] = {{"degree1", graded.degree1.size()},
                                     {"degree2", graded.degree2.size()},
                                     {"reconstructed_vertices", rebuilt.back().size()},
                                     {"reconstructed_edges", rebuilt.back().edge_count()},
                                     {"round_trip", round_trip}};
        ok = ok && round_trip;
      }
      const bool iso = graphs_isomorphic(rebuilt[0], rebuilt[1], cfg_.caps.max_graph_size);
      d["reconstructions_isomorphic"] = iso;
      return verdict(ok && !iso, d);
    });
  }

  // ---- functor ----
  void functor() {
    std::size_t r = std::min<std::size_t>(static_cast<std::size_t>(cfg_.n), 3);
    const auto strip_dim = ctx().strip()->dim();
    while (r > 1 && checked_power(strip_dim, r) > std::min<std::size_t>(cfg_.caps.max_tensor_dim, std::size_t{1} << 16))
      --r;
    std::vector<std::pair<std::string, AlgebraPtr<K>>> algebras = {{"strip", ctx().strip()}};
    if (cfg_.n >= 2)
      for (Sign s : kSigns) algebras.emplace_back("crown" + sign_name(s), ctx().crown(s));
    for (const auto& item : algebras) {
      const AlgebraPtr<K>& a = item.second;
      json params = base_params();
      params["r"] = r;
      params["algebra"] = item.first;
      record("functor.laws." + item.first, params, [&] {
        return verdict(functor_check(*a, r, cfg_.caps.max_tensor_dim), {{"dim", a->dim()}});
      });
    }
    record("functor.cover_injectivity", base_params(), [&] {
      const auto inc = family().piece_inclusions();
      json d = {{"pieces", cover_injectivity<K>(std::span<const GraphMorphism>(inc), cfg_.field)}};
      bool ok = d["pieces"].get<bool>();
      if (cfg_.n >= 2) {
        for (Sign s : kSigns) {
          const std::vector<GraphMorphism> proj = {family().crown(s).projection};
          const bool inj = cover_injectivity<K>(std::span<const GraphMorphism>(proj), cfg_.field);
          d["projection" + sign_name(s)] = inj;
          ok = ok && inj;
        }
      }
      return verdict(ok, d);
    });
  }

  // ---- explore ----
  void explore() {
    const auto p = static_cast<std::size_t>(cfg_.n);
    json params = base_params();
    params["p"] = p;
    record("explore.strip_Z_at_n", params, [&] {
      const auto res = lemma_check(ctx(), p, cfg_.caps.max_tensor_dim);
      json d = {{"zero", res.zero}, {"dimension", res.dimension}, {"streamed", res.streamed}};
      if (res.witness) d["nonzero_entry"] = {{"row", res.witness->row}, {"col", res.witness->col}};
      return Outcome{Status::Info, d};
    });
    if (!need_crowns("explore.crown_Z_at_n")) return;
    record("explore.crown_Z_at_n", params, [&] {
      const auto z = build_Z<K>(cfg_.n, cfg_.field);
      json d = json::object();
      for (Sign s : kSigns) {
        detail::require_tensor_cap(ctx().crown(s)->dim(), p, cfg_.caps.max_tensor_dim);
        std::vector<std::pair<K, Matrix<K>>> terms;
        for (const auto& [w, c] : z.terms()) terms.emplace_back(c, ctx().crown_action(w, s));
        const auto dim = checked_power(ctx().crown(s)->dim(), p);
        const auto at = dim > (std::size_t{1} << 14) ? stream_zero_witness(terms, p) : materialized_zero_witness(terms, p);
        json e = {{"zero", !at.has_value()}, {"dimension", dim}};
        if (at) e["nonzero_entry"] = {{"row", at->row}, {"col", at->col}};
        d[sign_name(s) + "->" + sign_name(s)] = e;
      }
      return Outcome{Status::Info, d};
    });
  }

  RunConfig cfg_;
  std::mt19937_64 rng_;
  std::unique_ptr<CrownAlgebras<K>> ctx_;
  std::unique_ptr<CrownFamily> family_;
  std::vector<CheckReport> reports_;
};

}  // namespace detail

/// Runs the selected check groups in their fixed order.
inline std::vector<CheckReport> run_suite(const RunConfig& config) {
  config.validate();
  if (config.field.is_rational()) return detail::SuiteRunner<Rational>(config).run();
  return detail::SuiteRunner<Fp>(config).run();
}

enum class ExportKind { Graphs, Algebras, Matrices, NatTrans };

inline ExportKind parse_export_kind(const std::string& s) {
  if (s == "graphs") return ExportKind::Graphs;
  if (s == "algebras") return ExportKind::Algebras;
  if (s == "matrices") return ExportKind::Matrices;
  if (s == "nat_trans") return ExportKind::NatTrans;
  throw ConfigError("unknown export kind '" + s + "'");
}

namespace detail {

template <FieldScalar K>
json export_json(const RunConfig& config, ExportKind what) {
  const int n = config.n;
  json out = {{"n", n}, {"field", config.field.name()}};
  if (what == ExportKind::Graphs) {
    const CrownFamily fam(n);
    out["strip"] = to_json(*fam.strip());
    json pieces = json::array();
    for (int i = 1; i <= n; ++i) pieces.push_back(to_json(*fam.piece(i).graph));
    out["pieces"] = pieces;
    if (fam.has_crowns())
      for (Sign s : kSigns) out["crown" + sign_name(s)] = to_json(*fam.crown(s).graph);
    return out;
  }
  const CrownAlgebras<K> ctx(n, config.field);
  if (what == ExportKind::Algebras) {
    out["strip"] = to_json(*ctx.strip());
    if (n >= 2)
      for (Sign s : kSigns) out["crown" + sign_name(s)] = to_json(*ctx.crown(s));
    return out;
  }
  if (what == ExportKind::Matrices) {
    json gens = json::object();
    for (int i = 1; i <= n; ++i) {
      gens["g" + std::to_string(i)] = to_json(ctx.strip_action(gen_g(n, i)));
      gens["h" + std::to_string(i)] = to_json(ctx.strip_action(gen_h(n, i)));
    }
    out["strip_actions"] = gens;
    if (n >= 2)
      for (Sign s : kSigns) out["projection" + sign_name(s)] = to_json(ctx.projection(s));
    return out;
  }
  if (n < 2) throw ConfigError("natural transformations need n >= 2");
  const auto r = static_cast<std::size_t>(n - 1);
  const auto t = build_T<K>(n, config.field);
  out["element"] = to_json(t);
  out["eta+"] = to_json(cofunctor_eval(ctx, r, t, Sign::Minus, Sign::Plus, ActionTarget::Crown, config.caps.max_tensor_dim));
  out["eta-"] = to_json(cofunctor_eval(ctx, r, t, Sign::Plus, Sign::Minus, ActionTarget::Crown, config.caps.max_tensor_dim));
  return out;
}

}  // namespace detail

inline json export_json(const RunConfig& config, ExportKind what) {
  config.validate();
  if (config.field.is_rational()) return detail::export_json<Rational>(config, what);
  return detail::export_json<Fp>(config, what);
}

/// Writes the export to path, two-space indented with sorted keys.
inline void export_objects(const RunConfig& config, ExportKind what, const std::string& path) {
  const json j = export_json(config, what);
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace crown
