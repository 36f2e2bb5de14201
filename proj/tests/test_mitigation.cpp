#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "udn/mitigation.hpp"
#include "udn/random.hpp"
#include "udn/units.hpp"

using namespace udn;

namespace {

const SignalProfile kWorkedExample{1.0, {20.0, 6.0, 4.0, 1.5, 1.2}};

double brute_force_residual(const SignalProfile& profile, const std::vector<std::size_t>& cancelled) {
  double denom = 0.0;
  for (std::size_t i = 0; i < profile.interferers.size(); ++i)
    if (std::find(cancelled.begin(), cancelled.end(), i) == cancelled.end())
      denom += profile.interferers[i];
  return denom == 0.0 ? std::numeric_limits<double>::infinity() : profile.desired / denom;
}

SignalProfile random_profile(RandomStream& rng, int max_interferers = 12) {
  SignalProfile p;
  p.desired = std::exp(rng.uniform(-3.0, 3.0));
  const int n = static_cast<int>(rng.next_u64() % (max_interferers + 1));
  for (int i = 0; i < n; ++i) p.interferers.push_back(std::exp(rng.uniform(-4.0, 4.0)));
  return p;
}

}  // namespace

TEST_CASE("successive cancellation on the worked example") {
  const DecodingOutcome out = sic_decode(kWorkedExample, 1.0);
  REQUIRE(out.cancelled == std::vector<std::size_t>{0});
  CHECK(out.ia_assigned.empty());
  CHECK(out.residual_sinr == doctest::Approx(1.0 / 12.7).epsilon(1e-12));
  REQUIRE(out.steps.size() == 2);
  CHECK(out.steps[0].action == DecodeAction::Sic);
  CHECK(out.steps[1].action == DecodeAction::Stop);
  CHECK(out.steps[1].interferer == 1);
}

TEST_CASE("successive cancellation edges") {
  const DecodingOutcome none = sic_decode({1.0, {}}, 1.0);
  CHECK(none.cancelled.empty());
  CHECK(none.residual_sinr == std::numeric_limits<double>::infinity());

  const DecodingOutcome hopeless = sic_decode(kWorkedExample, 1e12);
  CHECK(hopeless.cancelled.empty());
  CHECK(hopeless.residual_sinr == doctest::Approx(1.0 / 32.7).epsilon(1e-12));
}

TEST_CASE("alignment on the worked example") {
  const DecodingOutcome out = ia_decode(kWorkedExample, 2);
  CHECK(out.cancelled == std::vector<std::size_t>{0, 1});
  CHECK(out.ia_assigned == std::vector<std::size_t>{0, 1});
  CHECK(out.residual_sinr == doctest::Approx(1.0 / 6.7).epsilon(1e-12));

  CHECK(ia_decode(kWorkedExample, 0).cancelled.empty());
  CHECK(ia_decode(kWorkedExample, 5).residual_sinr == std::numeric_limits<double>::infinity());
}

TEST_CASE("hybrid walk on the worked example") {
  const DecodingOutcome out = ica_decode(kWorkedExample, 1.0, 2);
  CHECK(out.cancelled == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(out.ia_assigned == std::vector<std::size_t>{1, 3});
  CHECK(out.residual_sinr == std::numeric_limits<double>::infinity());
  // Walk order: 0 peeled, 1 aligned, 2 peeled, 3 aligned, 4 peeled.
  REQUIRE(out.steps.size() == 5);
  CHECK(out.steps[0].action == DecodeAction::Sic);
  CHECK(out.steps[1].action == DecodeAction::Ia);
  CHECK(out.steps[2].action == DecodeAction::Sic);
  CHECK(out.steps[3].action == DecodeAction::Ia);
  CHECK(out.steps[4].action == DecodeAction::Sic);
}

TEST_CASE("property: degenerate strategies coincide") {
  RandomStream rng(41, "test.mitigation", 0);
  for (int rep = 0; rep < 2000; ++rep) {
    const SignalProfile p = random_profile(rng);
    const double tau = std::exp(rng.uniform(-2.0, 2.0));
    const int budget = static_cast<int>(rng.next_u64() % 4);

    const DecodingOutcome ica0 = ica_decode(p, tau, 0);
    const DecodingOutcome sic = sic_decode(p, tau);
    CHECK(ica0.cancelled == sic.cancelled);
    CHECK(ica0.residual_sinr == sic.residual_sinr);

    // With an unreachable decode threshold the hybrid is pure alignment.
    const DecodingOutcome ica_inf = ica_decode(p, 1e300, budget);
    const DecodingOutcome ia = ia_decode(p, budget);
    CHECK(ica_inf.cancelled == ia.cancelled);
    CHECK(ica_inf.residual_sinr == ia.residual_sinr);

    const DecodingOutcome ia0 = ia_decode(p, 0);
    CHECK(ia0.cancelled.empty());
    CHECK(ia0.residual_sinr ==
          decode(p, Strategy::none(), tau).residual_sinr);
  }
}

TEST_CASE("property: hybrid dominates successive cancellation per profile") {
  RandomStream rng(43, "test.mitigation", 1);
  for (int rep = 0; rep < 5000; ++rep) {
    const SignalProfile p = random_profile(rng);
    const double tau = std::exp(rng.uniform(-2.0, 2.0));
    const int budget = static_cast<int>(rng.next_u64() % 4);
    const DecodingOutcome sic = sic_decode(p, tau);
    const DecodingOutcome ica = ica_decode(p, tau, budget);
    CHECK(std::includes(ica.cancelled.begin(), ica.cancelled.end(), sic.cancelled.begin(),
                        sic.cancelled.end()));
    CHECK(ica.residual_sinr >= sic.residual_sinr);
    // And the budget is monotone.
    const DecodingOutcome ica_more = ica_decode(p, tau, budget + 1);
    CHECK(ica_more.residual_sinr >= ica.residual_sinr);
  }
}

TEST_CASE("property: residuals agree with brute-force recomputation") {
  RandomStream rng(47, "test.mitigation", 2);
  for (int rep = 0; rep < 2000; ++rep) {
    const SignalProfile p = random_profile(rng);
    const double tau = std::exp(rng.uniform(-2.0, 2.0));
    for (const DecodingOutcome& out :
         {sic_decode(p, tau), ia_decode(p, 2), ica_decode(p, tau, 2)}) {
      const double brute = brute_force_residual(p, out.cancelled);
      if (std::isinf(brute))
        CHECK(std::isinf(out.residual_sinr));
      else
        CHECK(out.residual_sinr == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: interferer order does not matter") {
  RandomStream rng(53, "test.mitigation", 3);
  for (int rep = 0; rep < 1000; ++rep) {
    SignalProfile p = random_profile(rng);
    if (p.interferers.size() < 2) continue;
    const double tau = std::exp(rng.uniform(-2.0, 2.0));
    SignalProfile shuffled = p;
    for (std::size_t i = shuffled.interferers.size(); i > 1; --i)
      std::swap(shuffled.interferers[i - 1], shuffled.interferers[rng.next_u64() % i]);

    for (int kind = 0; kind < 3; ++kind) {
      const auto run = [&](const SignalProfile& prof) {
        switch (kind) {
          case 0: return sic_decode(prof, tau);
          case 1: return ia_decode(prof, 2);
          default: return ica_decode(prof, tau, 2);
        }
      };
      const DecodingOutcome a = run(p);
      const DecodingOutcome b = run(shuffled);
      if (std::isinf(a.residual_sinr) || std::isinf(b.residual_sinr))
        CHECK(a.residual_sinr == b.residual_sinr);
      else
        CHECK(a.residual_sinr == doctest::Approx(b.residual_sinr).epsilon(1e-12));
      // Cancelled powers form the same multiset.
      std::vector<double> pa, pb;
      for (auto i : a.cancelled) pa.push_back(p.interferers[i]);
      for (auto i : b.cancelled) pb.push_back(shuffled.interferers[i]);
      std::sort(pa.begin(), pa.end());
      std::sort(pb.begin(), pb.end());
      CHECK(pa == pb);
    }
  }
}

TEST_CASE("no-mitigation strategy coverage equals the plain engine") {
  SimConfig config;
  config.model = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0});
  config.density_per_km2 = 1e5;
  config.trials = 2000;
  config.seed = 31;
  const CoverageEstimate plain = coverage_probability(config, 2);
  const CoverageEstimate none = strategy_coverage(config, Strategy::none(), 2);
  CHECK(plain.p_hat == none.p_hat);
}

TEST_CASE("hybrid coverage dominates successive cancellation at matched seeds") {
  SimConfig config;
  config.model = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0});
  config.trials = 2000;
  config.seed = 37;
  for (double mu : {1e4, 1e5, 3.16e5}) {
    config.density_per_km2 = mu;
    const double sic = strategy_coverage(config, Strategy::sic(), 2).p_hat;
    const double ica = strategy_coverage(config, Strategy::ica(2), 2).p_hat;
    CHECK(ica >= sic);
  }
}

TEST_CASE("hybrid beats pure alignment at high density") {
  SimConfig config;
  config.model = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0});
  config.trials = 4000;
  config.seed = 41;
  config.density_per_km2 = 1e5;
  const auto ia = spatial_throughput(1e5, strategy_coverage(config, Strategy::ia(2), 2), 0.0);
  const auto ica = spatial_throughput(1e5, strategy_coverage(config, Strategy::ica(2), 2), 0.0);
  CHECK(ica.st > ia.st);
}

TEST_CASE("strategy curves reproducible and seeded in common") {
  SimConfig config;
  config.model = PathlossModel::make(PathlossFamily::BoundedMultiSlope, {1.0}, {2.0, 4.0});
  config.trials = 500;
  config.seed = 43;
  const std::vector<double> densities{1e4, 1e5};
  const auto a = strategy_throughput_curve(config, Strategy::ica(2), densities, 2);
  const auto b = strategy_throughput_curve(config, Strategy::ica(2), densities, 1);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].st == b[i].st);
}
