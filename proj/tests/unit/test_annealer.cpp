#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "pbitsa/annealer.hpp"
#include "pbitsa/model.hpp"
#include "pbitsa/pbit.hpp"

using namespace pbitsa;
using namespace pbitsa::testing;

namespace {

std::vector<Coupling> to_couplings(const std::vector<WeightedEdge>& edges) {
  std::vector<Coupling> out;
  for (const auto& e : edges) out.push_back({e.i, e.j, -static_cast<double>(e.weight)});
  return out;
}

IsingModel random_model(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return IsingModel(n, {}, to_couplings(random_edges(n, density, rng)));
}

}  // namespace

TEST_CASE("geometric schedule") {
  const auto s = AnnealSchedule::geometric(0.5, 50.0, 3, 10);
  CHECK(s.beta == doctest::Approx(0.1).epsilon(1e-12));
  const auto seq = s.i0_sequence();
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] == 0.5);
  CHECK(seq[1] == doctest::Approx(5.0));
  CHECK(std::abs(seq[2] - 50.0) <= 1e-9 * 50.0);

  CHECK_THROWS_AS(AnnealSchedule::geometric(1.0, 0.5, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(AnnealSchedule::geometric(0.0, 1.0, 10, 10), std::invalid_argument);
  CHECK_THROWS_AS(AnnealSchedule::geometric(0.1, 1.0, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(AnnealSchedule::geometric(0.1, 1.0, 10, 0), std::invalid_argument);
  AnnealSchedule bad = s;
  bad.beta = 0.2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("derived schedule") {
  const IsingModel triangle(3, {}, {{0, 1, -1.0}, {0, 2, -1.0}, {1, 2, -1.0}});
  const auto s = derive_schedule(triangle, 1000);
  CHECK(s.i0_max / s.i0_min == doctest::Approx(100.0).epsilon(1e-14));
  // Row [0, -1, -1]: variance 2/9, so s_i = sqrt(2 * 2/9) = 2/3.
  const double scale = dense_mean_scale(dense_couplings(3, {{0, 1, -1.0}, {0, 2, -1.0}, {1, 2, -1.0}}));
  CHECK(scale == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s.i0_min == doctest::Approx(0.1 / scale).epsilon(1e-14));
  CHECK(s.i0_min == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(derive_schedule(triangle, 3).beta == doctest::Approx(0.1).epsilon(1e-12));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    const auto edges = random_edges(40, 0.2, rng, {1, -1, 2});
    const auto cs = to_couplings(edges);
    const IsingModel model(40, {}, cs);
    const auto scales = coupling_scales(model);
    const auto J = dense_couplings(40, cs);
    for (std::size_t i = 0; i < 40; ++i) {
      CHECK(scales[i] == doctest::Approx(std::sqrt(39.0 * population_variance(J[i]))).epsilon(1e-12));
    }
    CHECK(derive_schedule(model, 100).i0_min == doctest::Approx(0.1 / dense_mean_scale(J)).epsilon(1e-12));
  }

  CHECK_THROWS_AS((void)derive_schedule(IsingModel(3, {1.0, 0.0, 0.0}, {}), 10), std::invalid_argument);
  CHECK_THROWS_AS((void)derive_schedule(triangle, 1), std::invalid_argument);
}

TEST_CASE("input rules") {
  const IsingModel isolated(2, {0.7, 0.0}, {});
  const std::vector<Spin> up2{1, 1};
  CHECK(compute_raw_input(isolated, up2, 0) == 0.7);

  const IsingModel triangle(3, {}, {{0, 1, -1.0}, {0, 2, -1.0}, {1, 2, -1.0}});
  const std::vector<Spin> up3{1, 1, 1};
  CHECK(compute_raw_input(triangle, up3, 0) == -2.0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  std::vector<Coupling> cs;
  for (std::uint32_t i = 0; i < 10; ++i) {
    for (std::uint32_t j = i + 1; j < 10; ++j) {
      if ((i * 7 + j) % 3 != 0) cs.push_back({i, j, gauss(rng)});
    }
  }
  std::vector<double> h(10);
  for (auto& v : h) v = gauss(rng);
  const IsingModel model(10, h, cs);
  const auto J = dense_couplings(10, cs);
  std::vector<Spin> s(10);
  for (std::size_t k = 0; k < 10; ++k) s[k] = (k * 5 + 3) % 4 < 2 ? 1 : -1;
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(compute_raw_input(model, s, i) == doctest::Approx(dense_raw_input(J, h, s, i)));
  }

  CHECK(next_input_psa(-2.0, 0.5) == -1.0);
  CHECK(next_input_psa(0.0, 3.0) == 0.0);

  const std::vector<double> alternating{1.0, -1.0, 1.0, -1.0};
  CHECK(next_input_tapsa(alternating, 2.0) == 0.0);
  const std::vector<double> one{-3.0};
  CHECK(next_input_tapsa(one, 0.5) == next_input_psa(-3.0, 0.5));
  CHECK(next_input_tapsa({}, 1.0) == 0.0);

  CHECK(next_input_spsa(9.0, -2.0, 0.5, 0.3, 0.0) == -1.0);
  CHECK(next_input_spsa(9.0, -2.0, 0.5, 0.999, 1.0) == 9.0);
  CHECK(next_input_spsa(9.0, -2.0, 0.5, 0.3, 0.5) == 9.0);
  CHECK(next_input_spsa(9.0, -2.0, 0.5, 0.7, 0.5) == -1.0);
}

TEST_CASE("stall frequency") {
  const RandomStream rng(31);
  constexpr int kDraws = 100000;
  int stalled = 0;
  for (std::uint32_t k = 0; k < kDraws; ++k) {
    const auto b = rng.block(k, 0, StreamPurpose::kTest);
    stalled += next_input_spsa(1.0, 0.0, 1.0, to_unit(b[2], b[3]), 0.5) == 1.0;
  }
  CHECK(std::abs(static_cast<double>(stalled) / kDraws - 0.5) <= 0.01);
}

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("TApSA") == Algorithm::kTapsa);
  CHECK(parse_algorithm("psa") == Algorithm::kPsa);
  CHECK(parse_algorithm("SPSA") == Algorithm::kSpsa);
  CHECK_FALSE(parse_algorithm("sa").has_value());
  CHECK(to_string(Algorithm::kSpsa) == "spsa");
  CHECK_THROWS_AS(AlgorithmConfig({Algorithm::kTapsa, 0, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(AlgorithmConfig({Algorithm::kSpsa, 4, 1.5}).validate(), std::invalid_argument);
}

TEST_CASE("degenerate settings reproduce pSA exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto model = random_model(30, 0.3, seed);
    const auto schedule = derive_schedule(model, seed % 2 ? 2 : 50);
    const auto profile = seed < 5 ? VariabilityProfile::ideal(30, 10)
                                  : sample_variability({0.3, 0.3, 0.5, 10}, 30, RandomStream(seed));
    const auto psa = run_anneal(model, schedule, {Algorithm::kPsa, 4, 0.5}, profile, seed);
    const auto tapsa = run_anneal(model, schedule, {Algorithm::kTapsa, 1, 0.5}, profile, seed);
    const auto spsa = run_anneal(model, schedule, {Algorithm::kSpsa, 4, 0.0}, profile, seed);
    CHECK(tapsa.trace == psa.trace);
    CHECK(spsa.trace == psa.trace);
    CHECK(tapsa.final_state == psa.final_state);
    CHECK(spsa.final_state == psa.final_state);
  }
}

TEST_CASE("strong bias saturates a lone p-bit") {
  const IsingModel lone(2, {5.0, 0.0}, {{0, 1, 0.0}});
  const auto schedule = AnnealSchedule::geometric(0.1, 10.0, 100, 10);
  int up = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto result = run_anneal(lone, schedule, {}, VariabilityProfile::ideal(2, 10), seed);
    up += result.final_state[0] == 1;
  }
  CHECK(up >= 99);
}

TEST_CASE("small graph reaches the exact maximum cut") {
  std::mt19937_64 rng(99);
  const auto edges = random_edges(12, 0.5, rng);
  const auto model = IsingModel(12, {}, to_couplings(edges));
  const auto best = brute_force_max_cut(12, edges);
  const auto schedule = derive_schedule(model, 1000);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto result = run_anneal(model, schedule, {}, VariabilityProfile::ideal(12, 10), seed);
    CHECK(result.best_cut <= static_cast<double>(best));
    CHECK(result.final_cut <= result.best_cut);
    hits += result.best_cut == static_cast<double>(best);
  }
  CHECK(hits >= 16);
}

TEST_CASE("one update per p-bit per cycle without timing variability") {
  const auto model = random_model(25, 0.3, 4);
  const auto schedule = derive_schedule(model, 40);
  for (auto kind : {Algorithm::kPsa, Algorithm::kTapsa, Algorithm::kSpsa}) {
    const auto result = run_anneal(model, schedule, {kind, 4, 0.5}, VariabilityProfile::ideal(25, 10), 1);
    CHECK(result.updates == 40u * 25u);
  }
  const auto varied = sample_variability({0.0, 0.0, 0.8, 10}, 25, RandomStream(3));
  std::uint64_t expected = 0;
  for (auto p : varied.period) expected += (400 + p - 1) / p;
  CHECK(run_anneal(model, schedule, {}, varied, 1).updates == expected);
}

TEST_CASE("time-averaging window grows without padding") {
  const auto model = random_model(15, 0.4, 8);
  const auto schedule = derive_schedule(model, 10);
  Annealer annealer(model, schedule, {Algorithm::kTapsa, 4, 0.5}, VariabilityProfile::ideal(15, 10), 17);
  for (int c = 1; c <= 6; ++c) {
    const double i0 = annealer.i0();
    annealer.run_cycle();
    for (std::size_t i = 0; i < 15; ++i) {
      const auto h = annealer.history(i);
      REQUIRE(h.size() == static_cast<std::size_t>(std::min(c, 4)));
      CHECK(annealer.inputs()[i] == next_input_tapsa(h, i0));
    }
  }
  CHECK(annealer.substep() == 60u);
  CHECK(annealer.history(0).size() == 4);
  CHECK_THROWS_AS((void)annealer.history(15), std::out_of_range);
}

TEST_CASE("full stall freezes the first input") {
  const auto model = random_model(15, 0.4, 8);
  const auto schedule = derive_schedule(model, 10);
  Annealer annealer(model, schedule, {Algorithm::kSpsa, 4, 1.0}, VariabilityProfile::ideal(15, 10), 3);
  annealer.run_cycle();
  const std::vector<double> first(annealer.inputs().begin(), annealer.inputs().end());
  while (!annealer.finished()) annealer.run_cycle();
  CHECK(std::vector<double>(annealer.inputs().begin(), annealer.inputs().end()) == first);
  CHECK_THROWS_AS(annealer.run_cycle(), std::logic_error);
}

TEST_CASE("trace records the schedule and consistent energies") {
  const auto model = random_model(20, 0.3, 12);
  const auto schedule = derive_schedule(model, 200);
  const auto result = run_anneal(model, schedule, {}, VariabilityProfile::ideal(20, 10), 5);
  REQUIRE(result.trace.size() == 200);
  const auto seq = schedule.i0_sequence();
  double best = -1e300;
  for (std::size_t c = 0; c < result.trace.size(); ++c) {
    CHECK(result.trace[c].cycle == static_cast<int>(c));
    CHECK(result.trace[c].i0 == seq[c]);
    if (c > 0) CHECK(result.trace[c].i0 > result.trace[c - 1].i0);
    best = std::max(best, result.trace[c].cut);
  }
  CHECK(result.trace.front().i0 == schedule.i0_min);
  CHECK(std::abs(result.trace.back().i0 - schedule.i0_max) <= 1e-9 * schedule.i0_max);
  CHECK(result.best_cut == best);
  CHECK(result.final_cut == result.trace.back().cut);
  CHECK(result.final_energy == energy(model, result.final_state));
  CHECK(result.final_energy == result.trace.back().energy);
}

TEST_CASE("library annealer matches the dense reference") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    std::mt19937_64 rng(seed + 100);
    const std::size_t n = 24;
    const auto cs = to_couplings(random_edges(n, 0.25, rng, {1, -1, 2}));
    std::vector<double> h(n, 0.0);
    if (seed % 3 == 0) {
      for (std::size_t i = 0; i < n; ++i) h[i] = static_cast<double>(static_cast<int>(i % 3) - 1);
    }
    const IsingModel model(n, h, cs);
    const auto schedule = derive_schedule(model, 60);
    const auto profile = sample_variability({0.2, 0.2, seed % 2 ? 0.6 : 0.0, 10}, n, RandomStream(seed));
    const Algorithm kinds[] = {Algorithm::kPsa, Algorithm::kTapsa, Algorithm::kSpsa};
    const AlgorithmConfig algo{kinds[seed % 3], 3, 0.4};
    const auto lib = run_anneal(model, schedule, algo, profile, seed);
    const auto ref = reference_anneal(n, cs, h, schedule, algo, profile, seed);
    REQUIRE(lib.trace.size() == ref.energies.size());
    for (std::size_t c = 0; c < ref.energies.size(); ++c) {
      CHECK(lib.trace[c].energy == ref.energies[c]);
      CHECK(lib.trace[c].cut == ref.cuts[c]);
    }
    CHECK(std::vector<Spin>(lib.final_state.spins().begin(), lib.final_state.spins().end()) == ref.final_spins);
    CHECK(lib.updates == ref.updates);
  }
}

TEST_CASE("worker count does not change a trial") {
  // Large enough that every sub-step crosses the parallel threshold.
  const auto model = random_model(3000, 0.002, 21);
  const auto schedule = derive_schedule(model, 20);
  const auto profile = sample_variability({0.1, 0.1, 0.3, 10}, 3000, RandomStream(2));
  for (auto kind : {Algorithm::kPsa, Algorithm::kTapsa, Algorithm::kSpsa}) {
    const AlgorithmConfig algo{kind, 4, 0.5};
    const auto one = run_anneal(model, schedule, algo, VariabilityProfile::ideal(3000, 10), 9, {1});
    const auto four = run_anneal(model, schedule, algo, VariabilityProfile::ideal(3000, 10), 9, {4});
    CHECK(one.trace == four.trace);
    CHECK(one.final_state == four.final_state);
    const auto v1 = run_anneal(model, schedule, algo, profile, 9, {1});
    const auto v3 = run_anneal(model, schedule, algo, profile, 9, {3});
    CHECK(v1.trace == v3.trace);
  }
}

TEST_CASE("late-cycle energy does not rise on average") {
  const auto model = random_model(60, 0.2, 33);
  const auto schedule = derive_schedule(model, 300);
  double early = 0.0;
  double late = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_anneal(model, schedule, {}, VariabilityProfile::ideal(60, 10), seed);
    early += r.trace[270].energy;
    late += r.trace.back().energy;
  }
  CHECK(late <= early + 20.0 * 0.5);
}

TEST_CASE("run_anneal rejects inconsistent inputs") {
  const auto model = random_model(10, 0.5, 1);
  const auto schedule = derive_schedule(model, 10);
  CHECK_THROWS_AS((void)run_anneal(model, schedule, {}, VariabilityProfile::ideal(9, 10), 0), std::invalid_argument);
  CHECK_THROWS_AS((void)run_anneal(model, schedule, {Algorithm::kTapsa, 0, 0.5}, VariabilityProfile::ideal(10, 10), 0),
                  std::invalid_argument);
  AnnealSchedule broken = schedule;
  broken.i0_max = broken.i0_min;
  CHECK_THROWS_AS((void)run_anneal(model, broken, {}, VariabilityProfile::ideal(10, 10), 0), std::invalid_argument);
}
