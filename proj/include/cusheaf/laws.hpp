#ifndef CUSHEAF_LAWS_HPP
#define CUSHEAF_LAWS_HPP

#include "cusheaf/error.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace cusheaf {

/// A concrete Cu-semigroup presentation the law harness can exercise.
template <class M>
concept CuModel = requires(const M& m, const typename M::Element& a, unsigned k) {
  { m.name() } -> std::convertible_to<std::string>;
  { m.basis(k, k) } -> std::same_as<std::vector<typename M::Element>>;
  { m.leq(a, a) } -> std::same_as<bool>;
  { m.waybelow(a, a) } -> std::same_as<bool>;
  { m.equal(a, a) } -> std::same_as<bool>;
  { m.add(a, a) } -> std::same_as<typename M::Element>;
  { m.zero() } -> std::same_as<typename M::Element>;
  { m.shrink(a, k) } -> std::same_as<typename M::Element>;
  /// Largest k the chain oracle needs for the pair (c, x).
  { m.chain_bound(a, a) } -> std::same_as<unsigned>;
  /// Same for c against shrink(x) + shrink(y).
  { m.sum_chain_bound(a, a, a) } -> std::same_as<unsigned>;
  { m.show(a) } -> std::convertible_to<std::string>;
};

struct LawResult {
  std::string law;
  bool pass = true;
  std::size_t checked = 0;
  std::string counterexample;
};

struct LawReport {
  std::string model;
  std::size_t basis_size = 0;
  std::size_t working_size = 0;
  std::vector<LawResult> laws;

  bool all_pass() const {
    return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.pass; });
  }
  std::string render() const;
};

struct LawOptions {
  /// Matrix-based laws run over at most this many basis elements.
  std::size_t working_cap = 320;
  /// Sampled triples for laws that need fresh sums.
  std::size_t triple_samples = 4000;
  /// Sampled pairs for the chain laws.
  std::size_t chain_samples = 6000;
  std::uint64_t seed = 0x5eed;
};

/// Element cap for basis enumeration: CU_SECTIONS_MAX_ELEMENTS, default 100000.
std::size_t max_elements();
void check_enumeration_size(std::size_t n);

namespace detail {

class LawLog {
 public:
  explicit LawLog(std::string law) { r_.law = std::move(law); }
  void tick() { ++r_.checked; }
  template <class F>
  void fail(F&& describe) {
    if (r_.pass) r_.counterexample = describe();
    r_.pass = false;
  }
  LawResult done() { return std::move(r_); }

 private:
  LawResult r_;
};

}  // namespace detail

template <CuModel M>
LawReport axioms_suite(const M& model, unsigned bound, unsigned den, const LawOptions& opt = {}) {
  using E = typename M::Element;
  LawReport report;
  report.model = model.name();
  const std::vector<E> basis = model.basis(bound, den);
  check_enumeration_size(basis.size());
  report.basis_size = basis.size();

  std::mt19937_64 rng(opt.seed);
  std::vector<std::size_t> idx(basis.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (idx.size() > opt.working_cap) {
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(opt.working_cap);
    std::sort(idx.begin(), idx.end());
  }
  std::vector<E> w;
  for (auto i : idx) w.push_back(basis[i]);
  const std::size_t n = w.size();
  report.working_size = n;
  auto pick = [&] { return static_cast<std::size_t>(rng() % n); };
  auto S = [&](const E& a) { return model.show(a); };
  auto triple = [&](const E& a, const E& b, const E& c) {
    return "a=" + S(a) + " | b=" + S(b) + " | c=" + S(c);
  };
  auto pair = [&](const E& a, const E& b) { return "a=" + S(a) + " | b=" + S(b); };

  std::vector<std::vector<char>> L(n, std::vector<char>(n)), W(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      L[i][j] = model.leq(w[i], w[j]);
      W[i][j] = model.waybelow(w[i], w[j]);
    }

  {
    detail::LawLog log("order is reflexive");
    for (std::size_t i = 0; i < n; ++i, log.tick())
      if (!L[i][i]) log.fail([&] { return "a=" + S(w[i]); });
    report.laws.push_back(log.done());
  }
  {
    detail::LawLog log("order is antisymmetric");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, log.tick())
        if (L[i][j] && L[j][i] && !model.equal(w[i], w[j])) log.fail([&] { return pair(w[i], w[j]); });
    report.laws.push_back(log.done());
  }
  {
    detail::LawLog ord("order is transitive");
    detail::LawLog wt("way-below is transitive");
    detail::LawLog wl("a << b <= c implies a << c");
    detail::LawLog lw("a <= b << c implies a << c");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!L[a][b]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!L[b][c]) continue;
          ord.tick();
          if (!L[a][c]) ord.fail([&] { return triple(w[a], w[b], w[c]); });
          if (W[a][b]) {
            wl.tick();
            if (!W[a][c]) wl.fail([&] { return triple(w[a], w[b], w[c]); });
            if (W[b][c]) {
              wt.tick();
              if (!W[a][c]) wt.fail([&] { return triple(w[a], w[b], w[c]); });
            }
          }
          if (W[b][c]) {
            lw.tick();
            if (!W[a][c]) lw.fail([&] { return triple(w[a], w[b], w[c]); });
          }
        }
      }
    for (auto* l : {&ord, &wt, &wl, &lw}) report.laws.push_back(l->done());
  }
  {
    detail::LawLog log("way-below implies order");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (W[i][j]) {
          log.tick();
          if (!L[i][j]) log.fail([&] { return pair(w[i], w[j]); });
        }
    report.laws.push_back(log.done());
  }
  {
    detail::LawLog zid("zero is an additive identity");
    detail::LawLog zmin("zero is the least element");
    const E z = model.zero();
    for (const auto& a : basis) {
      zid.tick();
      zmin.tick();
      if (!model.equal(model.add(a, z), a)) zid.fail([&] { return "a=" + S(a); });
      if (!model.leq(z, a)) zmin.fail([&] { return "a=" + S(a); });
    }
    report.laws.push_back(zid.done());
    report.laws.push_back(zmin.done());
  }
  {
    detail::LawLog comm("addition is commutative");
    detail::LawLog assoc("addition is associative");
    detail::LawLog mono("a <= b implies a + c <= b + c");
    detail::LawLog wadd("way-below is additive");
    for (std::size_t t = 0; t < opt.triple_samples; ++t) {
      std::size_t a = pick(), b = pick(), c = pick();
      comm.tick();
      if (!model.equal(model.add(w[a], w[b]), model.add(w[b], w[a]))) comm.fail([&] { return pair(w[a], w[b]); });
      assoc.tick();
      if (!model.equal(model.add(model.add(w[a], w[b]), w[c]), model.add(w[a], model.add(w[b], w[c]))))
        assoc.fail([&] { return triple(w[a], w[b], w[c]); });
      // Bias toward comparable pairs so the implication is exercised.
      std::size_t b2 = b;
      for (std::size_t tries = 0; tries < 8 && !L[a][b2]; ++tries) b2 = pick();
      if (L[a][b2]) {
        mono.tick();
        if (!model.leq(model.add(w[a], w[c]), model.add(w[b2], w[c]))) mono.fail([&] { return triple(w[a], w[b2], w[c]); });
      }
      std::size_t d = pick(), e = pick();
      for (std::size_t tries = 0; tries < 8 && !W[a][b]; ++tries) b = pick();
      for (std::size_t tries = 0; tries < 8 && !W[d][e]; ++tries) e = pick();
      if (W[a][b] && W[d][e]) {
        wadd.tick();
        if (!model.waybelow(model.add(w[a], w[d]), model.add(w[b], w[e])))
          wadd.fail([&] { return "a=" + S(w[a]) + " << b=" + S(w[b]) + " ; c=" + S(w[d]) + " << d=" + S(w[e]); });
      }
    }
    for (auto* l : {&comm, &assoc, &mono, &wadd}) report.laws.push_back(l->done());
  }

  // Chain laws use cached shrinks.
  std::map<std::pair<std::size_t, unsigned>, E> cache;
  auto shrunk = [&](std::size_t i, unsigned k) -> const E& {
    auto key = std::make_pair(i, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, model.shrink(w[i], k)).first;
    return it->second;
  };
  {
    detail::LawLog rapid("shrink chain is rapidly increasing");
    detail::LawLog below("shrink chain lies below its supremum");
    for (std::size_t i = 0; i < n; ++i) {
      unsigned K = std::max(model.chain_bound(w[i], w[i]), 2u);
      for (unsigned k = 1; k < K; ++k) {
        rapid.tick();
        below.tick();
        if (!model.waybelow(shrunk(i, k), shrunk(i, k + 1)))
          rapid.fail([&] { return "x=" + S(w[i]) + " k=" + std::to_string(k); });
        if (!model.waybelow(shrunk(i, k), w[i]))
          below.fail([&] { return "x=" + S(w[i]) + " k=" + std::to_string(k); });
      }
    }
    report.laws.push_back(rapid.done());
    report.laws.push_back(below.done());
  }
  {
    detail::LawLog dense("every c << x lies below a shrink of x (density)");
    detail::LawLog back("c below a shrink of x implies c << x");
    const std::size_t total = n * n;
    const bool sample = total > opt.chain_samples;
    for (std::size_t t = 0; t < (sample ? opt.chain_samples : total); ++t) {
      std::size_t c = sample ? pick() : t / n, x = sample ? pick() : t % n;
      if (sample)
        for (std::size_t tries = 0; tries < 4 && !W[c][x] && t % 2 == 0; ++tries) c = pick();
      unsigned K = model.chain_bound(w[c], w[x]);
      bool hit = false;
      for (unsigned k = 1; k <= K && !hit; ++k) hit = model.leq(w[c], shrunk(x, k));
      if (W[c][x]) {
        dense.tick();
        if (!hit) dense.fail([&] { return "c=" + S(w[c]) + " | x=" + S(w[x]) + " K=" + std::to_string(K); });
      } else {
        back.tick();
        if (hit) back.fail([&] { return "c=" + S(w[c]) + " | x=" + S(w[x]); });
      }
    }
    report.laws.push_back(dense.done());
    report.laws.push_back(back.done());
  }
  {
    detail::LawLog log("c << x + y lies below shrink(x) + shrink(y)");
    for (std::size_t t = 0; t < opt.triple_samples / 4; ++t) {
      std::size_t c = pick(), x = pick(), y = pick();
      E s = model.add(w[x], w[y]);
      for (std::size_t tries = 0; tries < 6 && !model.waybelow(w[c], s); ++tries) c = pick();
      if (!model.waybelow(w[c], s)) continue;
      log.tick();
      unsigned K = model.sum_chain_bound(w[c], w[x], w[y]);
      bool hit = false;
      for (unsigned k = 1; k <= K && !hit; ++k) hit = model.leq(w[c], model.add(shrunk(x, k), shrunk(y, k)));
      if (!hit) log.fail([&] { return triple(w[c], w[x], w[y]); });
    }
    report.laws.push_back(log.done());
  }
  return report;
}

}  // namespace cusheaf

#endif
