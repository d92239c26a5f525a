// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the crown CLI.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "crown/crown.hpp"
#include "support.hpp"

using namespace crown;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F5 = FieldSpec::prime(5);

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

class Criteria {
 public:
  void run(int id, const std::string& title, double budget_s, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      body();
    } catch (const Failure& f) {
      reason = f.what;
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty() && secs > budget_s) reason = "over time budget of " + std::to_string(budget_s) + " s";
    failed_ += !reason.empty();
    std::printf("%s %d %s (%.2f s)%s%s\n", reason.empty() ? "PASS" : "FAIL", id, title.c_str(), secs,
                reason.empty() ? "" : ": ", reason.c_str());
    std::fflush(stdout);
  }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

std::string tag(int n, const FieldSpec& f) { return "n=" + std::to_string(n) + " " + f.name(); }

void monoid_identity() {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& f : {Q, F2, F5}) {
      const bool ok = f.is_rational() ? check_T_squared<Rational>(n, f) : check_T_squared<Fp>(n, f);
      require(ok, "T^2 != 1 - Z at " + tag(n, f));
    }
    std::size_t expected = 2;
    for (int i = 0; i < n; ++i) expected *= 3;
    require(wn_enumerate(n).size() == expected, "|W_n| wrong at n=" + std::to_string(n));
  }
}

void schema_suite() {
  for (int n = 2; n <= 4; ++n) {
    RunConfig c;
    c.n = n;
    c.checks = {"graphs"};
    const auto reports = run_suite(c);
    for (const auto& r : reports) require(r.status == Status::Pass, r.check + " at n=" + std::to_string(n));
    require(reports.size() == 7, "missing graph checks at n=" + std::to_string(n));
    if (n == 4)
      for (const auto& r : reports)
        if (r.check == "graphs.equivariance") require(r.details["words"] == 200, "expected 200 sampled words");
  }
}

template <typename K>
void lemma_at(int n, FieldSpec f) {
  const CrownAlgebras<K> ctx(n, f);
  for (std::size_t p = 1; p + 1 <= static_cast<std::size_t>(n); ++p) {
    require(lemma_check(ctx, p).zero, "nonzero operator at " + tag(n, f) + " p=" + std::to_string(p));
    const auto tr = lemma_proof_trace(ctx, p);
    require(tr.holds(), "proof trace fails at " + tag(n, f) + " p=" + std::to_string(p));
    require(tr.embedding_rank == checked_power(static_cast<std::size_t>(18 * n + 4), p), "embedding rank");
  }
}

void lemma() {
  for (int n = 2; n <= 3; ++n) {
    lemma_at<Rational>(n, Q);
    lemma_at<Fp>(n, F2);
  }
  const CrownAlgebras<Fp> ctx(4, F2);
  for (std::size_t p = 1; p <= 3; ++p) {
    const auto res = lemma_check(ctx, p);
    require(res.zero, "nonzero operator at n=4 fp:2 p=" + std::to_string(p));
    if (p == 3) require(res.streamed, "n=4 p=3 expected to stream");
  }
}

template <typename K>
void iso_at(int n, FieldSpec f, double budget_s) {
  const auto start = std::chrono::steady_clock::now();
  const CrownAlgebras<K> ctx(n, f);
  const auto rep = iso_check(ctx);
  require(rep.forward_natural && rep.backward_natural, "eta not natural at " + tag(n, f));
  require(rep.identity_on_plus && rep.identity_on_minus, "composites not identity at " + tag(n, f) + ": " + rep.witness);
  require(rep.factored_identity.value_or(false), "factorization through 1 - Z fails at " + tag(n, f));
  require(!iso_check(ctx, build_Z<K>(n, f)).pass(), "negative control passed at " + tag(n, f));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < budget_s, tag(n, f) + " took " + std::to_string(secs) + " s");
}

void isomorphism() {
  iso_at<Rational>(2, Q, 5);
  iso_at<Fp>(3, F2, 300);
}

void non_isomorphism() {
  for (int n = 2; n <= 6; ++n) {
    const auto plus = build_C(n, Sign::Plus), minus = build_C(n, Sign::Minus);
    require(!graphs_isomorphic(*plus.graph, *minus.graph), "crowns isomorphic at n=" + std::to_string(n));
    const auto cp = valency2_cycle_count(*plus.graph), cm = valency2_cycle_count(*minus.graph);
    require(cp.all_cycles() && cm.all_cycles() && cp.count() == 2 && cm.count() == 1,
            "cycle counts wrong at n=" + std::to_string(n));
  }
  std::vector<Graph> rebuilt;
  for (Sign s : kSigns) {
    const auto quotient = build_C(2, s);
    const Graph& c = *quotient.graph;
    const auto a = q_ungraded<Fp>(c, F2);
    const auto graded = annihilator_grading(a);
    require(graded.degree1.size() == c.size(), "degree-1 part has wrong dimension");
    const auto minimal = minimal_points(graded);
    require(minimal.size() == c.size(), "minimal points are not the vertex classes");
    rebuilt.push_back(reconstruct_graph(a));
    require(graphs_isomorphic(rebuilt.back(), c), "reconstruction does not round-trip");
  }
  require(!graphs_isomorphic(rebuilt[0], rebuilt[1]), "reconstructed graphs are isomorphic");
}

void functor_and_cover() {
  std::mt19937_64 rng(20240);
  for (int t = 0; t < 20; ++t) {
    const auto g = oracle::random_graph(rng, 1 + rng() % 6, 0.5);
    require(functor_check(q_ungraded<Fp>(g, F5), 3), "functor laws fail on random graph " + std::to_string(t));
  }
  for (int n = 2; n <= 3; ++n) {
    const CrownFamily fam(n);
    const auto inc = fam.piece_inclusions();
    require(cover_injectivity<Rational>(inc, Q), "piece cover not injective at n=" + std::to_string(n));
    for (Sign s : kSigns) {
      const std::vector<GraphMorphism> proj = {fam.crown(s).projection};
      require(cover_injectivity<Rational>(proj, Q), "projection not injective at n=" + std::to_string(n));
    }
  }
}

void transport() {
  const CrownAlgebras<Rational> ctx(2, Q);
  std::vector<std::pair<std::string, MonoidAlgElem<Rational>>> xs = {
      {"1", MonoidAlgElem<Rational>::one(2, Q)}, {"T", build_T<Rational>(2, Q)}, {"Z", build_Z<Rational>(2, Q)}};
  for (int i = 1; i <= 2; ++i) {
    xs.emplace_back("g" + std::to_string(i), MonoidAlgElem<Rational>::basis(gen_g(2, i), Q));
    xs.emplace_back("h" + std::to_string(i), MonoidAlgElem<Rational>::basis(gen_h(2, i), Q));
  }
  for (const auto& item : xs)
    for (Sign s : kSigns) {
      const Sign t = act_on_U(item.second.terms().begin()->first, s);
      require(transport_square_check(ctx, 1, item.second, s, t),
              "square fails for " + item.first + " from " + to_char(s));
    }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(const std::string& cli) {
  require(!cli.empty(), "no CLI path given");
  const auto dir = std::filesystem::temp_directory_path();
  const std::regex timing(R"("elapsed_ms":\s*[-+0-9.eE]+)");
  std::vector<std::string> runs;
  for (int k = 0; k < 2; ++k) {
    const auto path = (dir / ("crown_acceptance_" + std::to_string(k) + ".json")).string();
    const std::string cmd = "\"" + cli + "\" verify --n 2 --checks all --json \"" + path + "\" > /dev/null";
    require(std::system(cmd.c_str()) == 0, "verify run " + std::to_string(k) + " did not exit 0");
    runs.push_back(std::regex_replace(read_file(path), timing, "\"elapsed_ms\": 0"));
    std::remove(path.c_str());
  }
  require(!runs[0].empty(), "empty report");
  require(runs[0] == runs[1], "reports differ beyond timing");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  Criteria c;
  c.run(1, "monoid identity T^2 = 1 - Z and |W_n|", 5, monoid_identity);
  c.run(2, "strip schema (a)-(e) for n = 2..4", 30, schema_suite);
  c.run(3, "Z annihilates tensor powers below n, with proof trace", 600, lemma);
  c.run(4, "T induces an isomorphism of truncated representations", 305, isomorphism);
  c.run(5, "crowns and their algebras are not isomorphic", 120, non_isomorphism);
  c.run(6, "functor laws and cover injectivity", 120, functor_and_cover);
  c.run(7, "transport squares for 1, g_i, h_i, T, Z", 60, transport);
  c.run(8, "verify reports are deterministic", 120, [&] { determinism(cli); });
  return c.failed() == 0 ? 0 : 1;
}
