#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "rht/aglrt.hpp"
#include "rht/selftest.hpp"
#include "rht/simulator.hpp"

using namespace rht;

namespace {

const TrustModel kBinary = TrustModel::binary(0.8, 0.2);

Trial make_trial(BitVector y, SymbolVector a) {
  Trial t;
  t.y = std::move(y);
  t.a = std::move(a);
  t.truth = BitVector(t.y.size(), 1);
  return t;
}

// ln of the malicious report likelihood at parameter p (p = probability of a wrong report).
double malicious_log_likelihood(const BitVector& t, const BitVector& y, Hypothesis branch, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i]) continue;
    const bool wrong = branch == Hypothesis::kH1 ? y[i] == 0 : y[i] == 1;
    const double prob = wrong ? p : 1.0 - p;
    sum += prob == 0.0 ? -INFINITY : std::log(prob);
  }
  return sum;
}

}  // namespace

TEST_CASE("candidate_set examples") {
  CHECK_THROWS_AS(candidate_set(0), DomainError);
  CHECK(candidate_set(1).values == std::vector<double>{0.0, 1.0});
  CHECK(candidate_set(2).values == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(candidate_set(10).size() <= 101);
}

TEST_CASE("candidate_set holds every reduced rate exactly once, sorted") {
  for (std::size_t n = 1; n <= 30; ++n) {
    const auto set = candidate_set(n);
    std::set<std::pair<unsigned, unsigned>> expected;
    for (unsigned den = 1; den <= n; ++den) {
      for (unsigned num = 0; num <= den; ++num) {
        const unsigned g = std::gcd(num, den);
        expected.insert({num / g, den / g});
      }
    }
    CHECK(set.size() == expected.size());
    CHECK(set.size() <= n * n + 1);
    CHECK(set.values.front() == 0.0);
    CHECK(set.values.back() == 1.0);
    for (std::size_t i = 1; i < set.size(); ++i) CHECK(set.values[i - 1] < set.values[i]);
    for (const auto& f : set.fractions) CHECK(expected.count({f.num, f.den}) == 1);
  }
}

TEST_CASE("candidate_set size bound up to 200 robots") {
  for (std::size_t n = 1; n <= 200; ++n) CHECK(candidate_set(n).size() <= n * n + 1);
}

TEST_CASE("inner_max examples") {
  const Symbol one = kBinary.symbol_index("1");
  const LegitimateSensorModel s{0.15, 0.15};
  const auto r = inner_max(0.0, SymbolVector{one}, BitVector{1}, Hypothesis::kH1, kBinary, s);
  CHECK(r.t_hat == BitVector{1});
  CHECK(std::exp(r.log_likelihood.value) == doctest::Approx(0.68));

  // Swapped pmfs with p_m = 1 - P_MD,L: ln 0.25 + ln 0.75 on both sides, an exact tie.
  const TrustModel swap = TrustModel::binary(0.75, 0.25);
  const Symbol zero = swap.symbol_index("0");
  const auto tie = inner_max(0.75, SymbolVector{zero}, BitVector{1}, Hypothesis::kH1, swap, {0.2, 0.25});
  CHECK(tie.t_hat == BitVector{1});
}

TEST_CASE("inner_max dominates every fixed trust vector") {
  RandomStream rng(23);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(6);
    const Scenario sc = random_scenario(n, rng);
    const Trial trial = sample_trial(sc, rng);
    for (Hypothesis branch : {Hypothesis::kH0, Hypothesis::kH1}) {
      const double p = rng.uniform();
      const BranchTerms terms(trial.a, trial.y, branch, sc.trust, sc.sensors);
      const auto best = inner_max(p, terms);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          sum += ((mask >> i) & 1u) ? terms.legit(i) : terms.malicious(i, std::log(p), std::log(1 - p));
        }
        CHECK(best.log_likelihood.value >= sum - 1e-12);
      }
    }
  }
}

TEST_CASE("mle_adversary_param examples and optimality") {
  CHECK(mle_adversary_param(BitVector{0, 0, 1}, BitVector{0, 1, 1}, Hypothesis::kH1) == 0.5);
  CHECK(mle_adversary_param(BitVector{0, 0, 0}, BitVector{0, 0, 0}, Hypothesis::kH1) == 1.0);
  CHECK(mle_adversary_param(BitVector{1, 1}, BitVector{0, 1}, Hypothesis::kH1) == 0.0);
  CHECK(mle_adversary_param(BitVector{0, 0, 0, 1}, BitVector{1, 0, 0, 1}, Hypothesis::kH0) == doctest::Approx(1.0 / 3));

  {
    const BitVector t{0, 0, 1}, y{0, 1, 1};
    double best_p = -1.0, best = -INFINITY;
    for (int k = 0; k <= 10000; ++k) {
      const double p = k / 10000.0;
      const double ll = malicious_log_likelihood(t, y, Hypothesis::kH1, p);
      if (ll > best) { best = ll; best_p = p; }
    }
    CHECK(best_p == doctest::Approx(0.5));
  }

  RandomStream rng(4);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng.below(10);
    BitVector t(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = rng.bernoulli(0.5);
      y[i] = rng.bernoulli(0.5);
    }
    for (Hypothesis branch : {Hypothesis::kH0, Hypothesis::kH1}) {
      const double at_mle = malicious_log_likelihood(t, y, branch, mle_adversary_param(t, y, branch));
      for (int k = 0; k <= 1000; ++k) CHECK(at_mle >= malicious_log_likelihood(t, y, branch, k / 1000.0) - 1e-12);
    }
  }
}

TEST_CASE("aglrt_decide single-robot example") {
  const Symbol one = kBinary.symbol_index("1");
  const LegitimateSensorModel s{0.15, 0.15};
  const Trial trial = make_trial({1}, {one});
  const GlrtResult r = aglrt_evaluate(trial, kBinary, s, {0.5, 0.5}, candidate_set(1));
  CHECK(std::exp(r.numerator.log_likelihood.value) == doctest::Approx(0.68));
  CHECK(std::exp(r.denominator.log_likelihood.value) == doctest::Approx(0.2));
  CHECK(r.denominator.t_hat == BitVector{0});
  CHECK(r.denominator.p_m == 1.0);
  CHECK(std::exp(r.outcome.diagnostics.at("log_ratio")) == doctest::Approx(3.4));
  CHECK(r.outcome.hypothesis == Hypothesis::kH1);
  CHECK(brute_force_glrt(trial, kBinary, s, {0.5, 0.5}).hypothesis == Hypothesis::kH1);
  CHECK(r.outcome.adversary_estimate == 0.0);
  CHECK(r.outcome.diagnostics.at("adversary_unidentified") == 1.0);
}

TEST_CASE("aglrt_decide with confident trust and unanimous ones picks H1") {
  const TrustModel m = TrustModel::binary(0.95, 0.05);
  const Symbol one = m.symbol_index("1");
  const LegitimateSensorModel s{0.1, 0.1};
  const Trial trial = make_trial(BitVector(6, 1), SymbolVector(6, one));
  CHECK(aglrt_decide(trial, m, s, {0.5, 0.5}).hypothesis == Hypothesis::kH1);
  CHECK(brute_force_glrt(trial, m, s, {0.5, 0.5}).hypothesis == Hypothesis::kH1);
}

TEST_CASE("GLRT ties go to H0") {
  // Unit priors and a trial whose two branches are mirror images.
  const TrustModel m = TrustModel::binary(0.8, 0.2);
  const Symbol zero = m.symbol_index("0");
  const LegitimateSensorModel s{0.15, 0.15};
  const Trial trial = make_trial({1, 0}, {zero, zero});
  const auto r = aglrt_evaluate(trial, m, s, {0.5, 0.5}, candidate_set(2));
  CHECK(r.numerator.log_likelihood.value == r.denominator.log_likelihood.value);
  CHECK(r.outcome.hypothesis == Hypothesis::kH0);
}

TEST_CASE("A-GLRT matches the exhaustive GLRT on random instances") {
  const SuiteResult suite = check_aglrt_equivalence({6, 300, 99, 1e-9});
  CHECK(suite.checks == 6 * 300);
  CHECK_MESSAGE(suite.passed(), suite.first_failure);
}

TEST_CASE("brute force refuses large networks") {
  const Trial trial = make_trial(BitVector(kBruteForceMaxRobots + 1, 1), SymbolVector(kBruteForceMaxRobots + 1, 0));
  CHECK_THROWS_AS((brute_force_glrt(trial, kBinary, {0.1, 0.1}, {0.5, 0.5})), DomainError);
}

TEST_CASE("inner_max agrees with the per-robot likelihood-ratio threshold form") {
  RandomStream rng(31);
  std::size_t compared = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + rng.below(8);
    const Scenario sc = random_scenario(n, rng);
    const Trial trial = sample_trial(sc, rng);
    for (double p : candidate_set(n).values) {
      for (Hypothesis branch : {Hypothesis::kH0, Hypothesis::kH1}) {
        const auto r = inner_max(p, trial.a, trial.y, branch, sc.trust, sc.sensors);
        for (std::size_t i = 0; i < n; ++i) {
          const bool y1 = trial.y[i] == 1;
          const double lr = sc.trust.legit(trial.a[i]) / sc.trust.malicious(trial.a[i]);
          double threshold;
          if (branch == Hypothesis::kH1) {
            threshold = (y1 ? 1.0 - p : p) / (y1 ? 1.0 - sc.sensors.p_md_l : sc.sensors.p_md_l);
          } else {
            threshold = (y1 ? p : 1.0 - p) / (y1 ? sc.sensors.p_fa_l : 1.0 - sc.sensors.p_fa_l);
          }
          if (std::fabs(lr - threshold) <= 1e-9 * std::max(lr, threshold)) continue;
          CHECK(r.t_hat[i] == (lr >= threshold ? 1 : 0));
          ++compared;
        }
      }
    }
  }
  CHECK(compared > 10000);
}

TEST_CASE("near-perfect trust values alone decide legitimacy") {
  const TrustModel sharp = TrustModel::binary(0.999, 0.001);
  const Symbol legit = sharp.symbol_index("1"), mal = sharp.symbol_index("0");
  RandomStream rng(8);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(10);
    Trial trial;
    for (std::size_t i = 0; i < n; ++i) {
      trial.y.push_back(rng.bernoulli(0.5));
      trial.a.push_back(rng.bernoulli(0.5) ? legit : mal);
    }
    const LegitimateSensorModel s{0.05 + 0.4 * rng.uniform(), 0.05 + 0.4 * rng.uniform()};
    for (double p : candidate_set(n).values) {
      if (p == 0.0 || p == 1.0) continue;
      for (Hypothesis branch : {Hypothesis::kH0, Hypothesis::kH1}) {
        const auto r = inner_max(p, trial.a, trial.y, branch, sharp, s);
        for (std::size_t i = 0; i < n; ++i) CHECK(r.t_hat[i] == (trial.a[i] == legit ? 1 : 0));
      }
    }
  }
}

TEST_CASE("comparison count grows no faster than cubically") {
  auto comparisons = [](std::size_t n) {
    RandomStream rng(n);
    Scenario sc = random_scenario(n, rng);
    const Trial trial = sample_trial(sc, rng);
    return aglrt_decide(trial, sc.trust, sc.sensors, sc.priors).diagnostics.at("comparisons");
  };
  const double c40 = comparisons(40), c80 = comparisons(80);
  CHECK(c40 == 2.0 * 40 * candidate_set(40).size());
  CHECK(c80 / c40 <= 10.0);
}

TEST_CASE("aglrt outcome carries the winning branch estimate") {
  const TrustModel m = TrustModel::binary(0.8, 0.2);
  const Symbol zero = m.symbol_index("0"), one = m.symbol_index("1");
  const LegitimateSensorModel s{0.1, 0.1};
  // Three confident legitimate robots say 1, two suspicious robots say 0.
  const Trial trial = make_trial({1, 1, 1, 0, 0}, {one, one, one, zero, zero});
  const auto out = aglrt_decide(trial, m, s, {0.5, 0.5});
  CHECK(out.hypothesis == Hypothesis::kH1);
  REQUIRE(out.t_hat);
  CHECK(out.t_hat->size() == 5);
  CHECK(*out.t_hat == BitVector{1, 1, 1, 0, 0});
  CHECK(out.adversary_estimate == 1.0);
}
