// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.
#include "support.hpp"

#include "cusheaf/action.hpp"
#include "cusheaf/error.hpp"
#include "cusheaf/limits.hpp"
#include "cusheaf/models.hpp"
#include "cusheaf/sections.hpp"
#include "cusheaf/sheaf.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace cusheaf;
using namespace cusheaf::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void run(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double t = seconds_since(start);
  if (!out.pass) ++failures;
  std::printf("%s  %d. %s (%s%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.str().c_str(), t);
  std::fflush(stdout);
}

CellSet closed_iv(const ComplexPtr& X, std::size_t e, Q a, Q b) { return cellset_from(X, {{e, a, b}}, {}, true); }
CellSet closed_ivs(const ComplexPtr& X, std::vector<Interval> iv) { return cellset_from(X, iv, {}, true); }
CellSet open_iv(const ComplexPtr& X, std::size_t e, Q a, Q b) { return cellset_from(X, {{e, a, b}}, {}, false); }

// Shrink radii are 1/k; k = 4096 lies past every breakpoint gap at denominator 16 on these
// complexes, and shrink_k is increasing in k, so one comparison decides the chain.
constexpr unsigned kOracleDepth = 4096;
bool shrink_chain_oracle(const StepFn& f, const StepFn& g) { return stepfn_leq(f, shrink(g, kOracleDepth)); }

template <class M>
void law_suite(Outcome& out, const M& model, unsigned bound, unsigned den) {
  auto rep = axioms_suite(model, bound, den);
  std::size_t checks = 0;
  for (const auto& l : rep.laws) checks += l.checked;
  out.detail << rep.model << ": " << rep.laws.size() << " laws, " << checks << " checks; ";
  out.require(rep.all_pass(), rep.render());
}

}  // namespace

int main() {
  run(1, "worked example reproduces the colimit presentations", [](Outcome& out) {
    auto start = Clock::now();
    auto ex = worked_example(4);
    double t = seconds_since(start);
    out.require(ex.sg_matches_triples, "algebraic colimit differs from the triples b <= min(a,c)");
    out.require(ex.expected_triples == 55, "triple count");
    out.require(ex.cu.iso_verified, "Cu colimit is not N̄ under point evaluation");
    out.require(ex.kernel_is_point_evaluation, "kernel is not point evaluation");
    out.require(t < 1.0, "runtime >= 1 s");
    out.detail << ex.expected_triples << " classes; ";
  });

  run(2, "stepfn_waybelow agrees with the shrink-chain oracle", [](Outcome& out) {
    std::mt19937_64 rng(0xacce55);
    int pairs = 0, positives = 0, mismatches = 0;
    std::string first;
    auto start = Clock::now();
    for (auto X : {unit_interval(), triangle()}) {
      for (int i = 0; i < 1100; ++i) {
        std::int64_t den = 1 + static_cast<std::int64_t>(rng() % 16);
        StepFn g = random_stepfn(X, den, 5, rng);
        StepFn f = random_stepfn(X, 1 + static_cast<std::int64_t>(rng() % 16), 5, rng);
        if (i % 3 == 0) f = shrink(g, 1 + static_cast<unsigned>(rng() % 40));
        if (i % 5 == 0) f = StepFn::constant(X, ExtNat(rng() % 3));
        bool got = stepfn_waybelow(f, g);
        bool want = shrink_chain_oracle(f, g);
        out.require(want == stepfn_leq(f, shrink(g, kOracleDepth / 2)), "oracle depth not saturated: " + g.describe());
        positives += want ? 1 : 0;
        if (got != want && mismatches++ == 0) first = f.describe() + " vs " + g.describe();
        ++pairs;
      }
    }
    double t = seconds_since(start);
    out.detail << pairs << " pairs, " << positives << " positive, " << mismatches << " mismatches; ";
    out.require(pairs >= 2000, "too few pairs");
    out.require(mismatches == 0, first);
    out.require(t < 30.0, "runtime >= 30 s");
  });

  run(3, "Cu axioms for N̄, Lsc-step, pullback, quotient and section semigroups", [](Outcome& out) {
    law_suite(out, ExtNatModel(), 3, 8);
    for (auto X : {unit_interval(), triangle(), tripod()}) law_suite(out, StepModel::whole(X), 3, 8);
    auto X = unit_interval();
    law_suite(out, PullbackModel(ModelField::trivial(X), closed_iv(X, 0, Q(0), Q(5, 8)), closed_iv(X, 0, Q(3, 8), Q(1))),
              3, 8);
    law_suite(out, QuotientModel(QuotientContext::make(X, cellset_from(X, {{0, Q(0), Q(1, 2)}}, {}, false))), 3, 8);
    law_suite(out, FieldModel(drop_field(X), CellSet::whole(Subdivision(X))), 3, 8);
    law_suite(out, FieldModel(drop_field(X, {1, 2}), CellSet::whole(Subdivision(X))), 3, 8);
  });

  run(4, "sheaf condition on generated patch pairs", [](Outcome& out) {
    std::mt19937_64 rng(0xacce55);
    auto X = unit_interval();
    std::vector<FieldPtr> fields = {ModelField::trivial(X), drop_field(X), drop_field(X, {1, 2})};
    int pairs = 0;
    std::size_t checked = 0;
    while (pairs < 102) {
      std::int64_t a = rng() % 6, b = a + 1 + rng() % (6 - a);
      std::int64_t c = rng() % 6, d = c + 1 + rng() % (6 - c);
      if (std::min(b, d) - std::max(a, c) < 1) continue;
      const auto& F = fields[pairs % fields.size()];
      auto r = check_sheaf(F, closed_iv(X, 0, Q(a, 6), Q(b, 6)), closed_iv(X, 0, Q(c, 6), Q(d, 6)), 2, 6);
      checked += r.checked;
      out.require(r.ok, r.witness);
      ++pairs;
    }
    auto T = triangle();
    auto TF = ModelField::make(T, {{1, T->edge(1).length * Q(1, 2), {1, 1}}});
    auto r = check_sheaf(TF, closed_ivs(T, {{0, Q(0), T->edge(0).length}, {1, Q(0), T->edge(1).length}}),
                         closed_ivs(T, {{1, Q(0), T->edge(1).length}, {2, Q(0), T->edge(2).length}}), 2, 4);
    checked += r.checked;
    out.require(r.ok, r.witness);
    out.detail << pairs + 1 << " patch pairs, " << checked << " identities; ";
  });

  run(5, "alpha round trips and order embedding", [](Outcome& out) {
    auto X = unit_interval();
    std::size_t s_count = 0, g_count = 0;
    for (auto F : {ModelField::trivial(X), drop_field(X), drop_field(X, {1, 2})}) {
      AlphaIso alpha{F, 3};
      for (const auto& s : field_basis(F, CellSet::whole(Subdivision(X)), 3, 8)) {
        out.require(field_equal(alpha.inverse(alpha.forward(s)), s), "S round trip: " + s.describe());
        ++s_count;
      }
      for (const auto& f : gamma_basis(F, 3, 8)) {
        out.require(section_equal(alpha.forward(alpha.inverse(f)), f), "Γ round trip: " + f.describe());
        ++g_count;
      }
    }
    std::mt19937_64 rng(0xacce55);
    int pairs = 0, mismatches = 0;
    for (auto F : {drop_field(X), drop_field(X, {1, 2})}) {
      auto basis = field_basis(F, CellSet::whole(Subdivision(X)), 2, 4);
      for (int i = 0; i < 600; ++i, ++pairs) {
        const auto& s = basis[rng() % basis.size()];
        const auto& t = basis[rng() % basis.size()];
        bool ok = section_leq(induced_section(s), induced_section(t)) == field_leq(s, t);
        mismatches += ok ? 0 : 1;
        out.require(ok, "order: " + s.describe() + " vs " + t.describe());
      }
    }
    out.detail << s_count << " S and " << g_count << " Γ round trips, " << pairs << " order pairs, " << mismatches
               << " mismatches; ";
  });

  run(6, "decompose chains and directed joins", [](Outcome& out) {
    std::mt19937_64 rng(0xacce55);
    int elements = 0, joins = 0;
    auto check_one = [&](const Section& f) {
      GammaElement g = decompose(f, 3);
      std::vector<Section> evals;
      for (const auto& p : g.chain) evals.push_back(pcs_eval(p));
      for (std::size_t j = 0; j + 1 < evals.size(); ++j)
        out.require(section_waybelow(evals[j], evals[j + 1]), "not rapidly increasing: " + f.describe());
      out.require(section_equal(chain_sup(evals, f.sub()), f), "sup differs: " + f.describe());
      PCSection h = directed_join(g.chain[0], g.chain[1], f);
      Section eh = pcs_eval(h);
      out.require(section_waybelow(evals[0], eh) && section_waybelow(evals[1], eh), "join is not above: " + f.describe());
      out.require(section_waybelow(eh, f), "join is not below: " + f.describe());
      ++elements;
      ++joins;
    };
    auto X = unit_interval();
    auto gamma = gamma_basis(drop_field(X), 3, 8);
    for (std::size_t i = 0; i < gamma.size(); i += 8) check_one(gamma[i]);
    for (auto Y : {unit_interval(), triangle()})
      for (auto F : {ModelField::trivial(Y), drop_field(Y, {1, 2})})
        for (int i = 0; i < 25; ++i) check_one(induced_section(random_field_element(F, 4, 3, rng)));
    out.require(elements >= 200, "too few elements");
    out.detail << elements << " elements, " << joins << " joins; ";
  });

  run(7, "action is a waybelow-bimorphism and splits over indicators", [](Outcome& out) {
    LawOptions opt;
    opt.triple_samples = 1000;
    opt.chain_samples = 400;
    for (auto F : {ModelField::trivial(unit_interval()), drop_field(unit_interval()), drop_field(triangle(), {1, 2})}) {
      auto rep = bimorphism_suite(F, 3, 4, opt);
      std::size_t checks = 0;
      for (const auto& l : rep.laws) checks += l.checked;
      out.detail << rep.model << ": " << rep.laws.size() << " laws, " << checks << " checks; ";
      out.require(rep.all_pass(), rep.render());
    }
  });

  run(8, "V-reconstruction and compact elements", [](Outcome& out) {
    auto X = unit_interval();
    auto whole = CellSet::whole(Subdivision(X));
    auto F = drop_field(X);
    IsoCandidate full = v_reconstruct(F, F, coordinate_swap(F, F, 3));
    std::vector<CellSet> opens = {open_iv(X, 0, Q(0), Q(1, 2)), open_iv(X, 0, Q(1, 4), Q(3, 4)),
                                  open_iv(X, 0, Q(1, 8), Q(1, 3)), whole};
    auto rep = preserves_action_check(full, field_basis(F, whole, 2, 4), opens);
    out.require(rep.ok && rep.checked > 0, "action not preserved: " + rep.witness);
    out.detail << "matching pair: " << rep.checked << " products; ";

    auto FB = ModelField::make(X, {{0, Q(2, 3), {1, 1}}});
    IsoCandidate v{F, FB, {}, false, {}};
    auto cb = compacts(FieldModel(FB, whole), 2);
    for (const auto& c : compacts(FieldModel(F, whole), 2))
      for (const auto& d : cb)
        if (stepfn_equal(c.base(), d.base())) {
          v.pairs.emplace_back(c, d);
          break;
        }
    try {
      v_reconstruct(F, FB, v);
      out.require(false, "mismatched pair was extended");
    } catch (const Error& e) {
      out.require(e.kind() == ErrorKind::NotCompatible, std::string("wrong error: ") + e.what());
      out.detail << "mismatched pair: not-compatible at " << e.witness() << "; ";
    }

    for (auto Y : {unit_interval(), triangle(), tripod(), circle(3)}) {
      auto c = compacts(StepModel::whole(Y), 5, 4);
      out.require(c.size() == 6, "compact count on " + std::to_string(Y->edge_count()) + " edges");
      std::vector<bool> seen(6, false);
      for (const auto& f : c) {
        auto vals = f.data().values();
        out.require(vals.size() == 1 && vals.front().is_finite() && vals.front().value() <= 5, "non-constant compact");
        if (vals.size() == 1 && vals.front().is_finite() && vals.front().value() <= 5) seen[vals.front().value()] = true;
      }
      out.require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), "missing constant");
    }
    out.detail << "Lsc-step compacts are the constants 0..5 on 4 complexes; ";
  });

  std::printf("%d failing criteria\n", failures);
  return failures;
}
