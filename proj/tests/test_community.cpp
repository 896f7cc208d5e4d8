#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mlion/community.hpp"
#include "mlion/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mlion;

namespace {

// 3 countries x 3 sectors; grid[country][sector] = community.
Partition from_grid(const std::vector<std::vector<std::size_t>>& grid) {
  const std::size_t n = grid.size();
  const std::size_t l = grid[0].size();
  std::vector<std::size_t> a(n * l);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t s = 0; s < l; ++s) a[s * n + c] = grid[c][s];
  }
  return Partition({n, l}, a);
}

MultilayerNetwork blank(std::size_t n, std::size_t l) { return testing::zero_network(n, l); }

}  // namespace

TEST_SUITE_BEGIN("community");

TEST_CASE("partition canonicalization") {
  const Partition p({5, 1}, {7, 3, 3, 9, 3});
  CHECK(p.assignment() == std::vector<std::size_t>{1, 0, 0, 2, 0});
  CHECK(p.sizes() == std::vector<std::size_t>{3, 1, 1});
  CHECK(p.n_communities() == 3);
  CHECK(p.is_isolated(0));
  CHECK_FALSE(p.is_isolated(1));
  CHECK(p.n_isolated() == 2);
  CHECK(p.members(0) == MemberSet({{1, 0}, {2, 0}, {4, 0}}));
  CHECK(canonicalize({4, 4, 2, 2}) == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK_THROWS_AS(Partition({2, 2}, {0, 0, 0}), ArgumentError);

  // Relabeling the input never changes the canonical form.
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, 5);
    std::vector<std::size_t> a(12);
    for (auto& v : a) v = pick(rng);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 10);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = perm[a[i]];
    CHECK(canonicalize(a) == canonicalize(b));
    const Partition p2({4, 3}, a);
    for (std::size_t c = 1; c < p2.n_communities(); ++c) CHECK(p2.sizes()[c - 1] >= p2.sizes()[c]);
  }
}

TEST_CASE("components at a threshold") {
  const auto pf = field_from_matrix(
      expm((Matrix(2, 2) << 0, 1, 1, 0).finished()), Dims{2, 1}, true);
  const auto d = distance_field(pf);
  CHECK(components_at_threshold(d, {2, 1}, 1.0).n_communities() == 1);
  CHECK(components_at_threshold(d, {2, 1}, 0.5).n_communities() == 2);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = testing::random_symmetric_network(seed, 4, 3, 0.4);
    const auto dist = distance_field(communicability(net, CommunicabilityMode::weighted));
    std::vector<double> offdiag;
    for (Eigen::Index a = 0; a < 12; ++a) {
      for (Eigen::Index b = 0; b < a; ++b) offdiag.push_back(dist.xi(a, b));
    }
    std::sort(offdiag.begin(), offdiag.end());
    CHECK(components_at_threshold(dist, net.dims(), offdiag.front() * 0.999).n_communities() == 12);
    CHECK(components_at_threshold(dist, net.dims(), offdiag.back()).n_communities() == 1);
    for (double t : {offdiag[5], offdiag[20], offdiag[40]}) {
      const auto p = components_at_threshold(dist, net.dims(), t);
      CHECK(testing::same_partition(p.assignment(), testing::closure_components(dist.xi, t)));
      CHECK(p.threshold() == t);
      CHECK(std::abs(p.quality() - testing::brute_force_quality(dist.xi, p.assignment())) <= 1e-12);
    }
  }
}

TEST_CASE("sweep structure") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = testing::random_network(seed, 5, 3, 0.5);
    const auto a = detect_communities(net, {.r = 40});
    const auto b = detect_communities(net, {.r = 40});
    REQUIRE(a.trace.steps.size() == 41);
    CHECK(a.trace.steps.front().threshold == a.trace.xi_min);
    CHECK(a.trace.steps.back().threshold == a.trace.xi_max);
    CHECK(a.trace.steps.back().n_components == 1);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < a.trace.steps.size(); ++h) {
      best = std::max(best, a.trace.steps[h].quality);
      if (h > 0) {
        CHECK(a.trace.steps[h].threshold > a.trace.steps[h - 1].threshold);
        CHECK(a.trace.steps[h].n_components <= a.trace.steps[h - 1].n_components);
      }
    }
    CHECK(a.partition.quality() == best);
    // The first threshold attaining the maximum wins.
    const auto first = std::find_if(a.trace.steps.begin(), a.trace.steps.end(),
                                    [&](const SweepStep& s) { return s.quality == best; });
    CHECK(a.partition.threshold() == first->threshold);
    CHECK(a.partition == b.partition);
    CHECK(a.trace.steps.size() == b.trace.steps.size());
    for (std::size_t h = 0; h < a.trace.steps.size(); ++h) {
      CHECK(a.trace.steps[h].threshold == b.trace.steps[h].threshold);
      CHECK(a.trace.steps[h].quality == b.trace.steps[h].quality);
      CHECK(a.trace.steps[h].n_components == b.trace.steps[h].n_components);
    }
  }
}

TEST_CASE("degenerate sweeps") {
  const auto one = detect_communities(testing::zero_network(1, 1));
  CHECK(one.trace.degenerate);
  CHECK(one.partition.n_communities() == 1);

  // Every pair at the same distance.
  const auto flat = detect_communities(testing::zero_network(3, 2));
  CHECK(flat.trace.degenerate);
  CHECK(flat.trace.steps.size() == 1);
}

TEST_CASE("two disjoint cliques") {
  const auto net = testing::two_cliques(4);
  const auto result = detect_communities(net, {.r = 50});
  CHECK(result.partition.assignment() == std::vector<std::size_t>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(result.partition.quality() > 0.0);

  // Exhaustive check over every threshold between consecutive distinct distances.
  const auto dist = detection_distances(net);
  std::vector<double> xs(dist.xi.data(), dist.xi.data() + dist.xi.size());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_assign;
  for (double t : xs) {
    const auto labels = testing::closure_components(dist.xi, t);
    const double q = testing::brute_force_quality(dist.xi, labels);
    if (q > best) {
      best = q;
      best_assign = labels;
    }
  }
  CHECK(testing::same_partition(result.partition.assignment(), best_assign));
}

TEST_CASE("planted partition recovery") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto planted = testing::planted_partition(seed);
    const auto result = detect_communities(planted.net, {.r = 100});
    CHECK(testing::adjusted_rand_index(result.partition.assignment(), planted.truth) == 1.0);
  }
}

TEST_CASE("permutation equivariance") {
  const auto net = testing::random_symmetric_network(17, 6, 2, 0.5);
  const auto base = detect_communities(net, {.r = 60});
  std::vector<std::size_t> perm(6);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(2);
  std::shuffle(perm.begin(), perm.end(), rng);
  // Node i of the permuted network is node perm[i] of the original.
  Matrix w(12, 12);
  std::vector<std::string> labels(6);
  for (std::size_t i = 0; i < 6; ++i) labels[i] = net.nodes()[perm[i]];
  auto src = [&](std::size_t idx) { return (idx / 6) * 6 + perm[idx % 6]; };
  for (std::size_t a = 0; a < 12; ++a) {
    for (std::size_t b = 0; b < 12; ++b) {
      w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          net.supra()(static_cast<Eigen::Index>(src(a)), static_cast<Eigen::Index>(src(b)));
    }
  }
  const auto moved = detect_communities(MultilayerNetwork(labels, net.layers().labels(), w), {.r = 60});
  std::vector<std::size_t> pulled(12);
  for (std::size_t a = 0; a < 12; ++a) pulled[src(a)] = moved.partition.assignment()[a];
  CHECK(testing::same_partition(pulled, base.partition.assignment()));
  CHECK(moved.partition.sizes() == base.partition.sizes());
}

TEST_CASE("community report") {
  SUBCASE("three by three tally") {
    const auto p = from_grid({{0, 0, 1}, {0, 1, 1}, {2, 2, 2}});
    const auto report = community_report(p, blank(3, 3), 1, 2);
    const auto& c0 = report.per_country[0];
    CHECK(c0.gini == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    // Canonical ids: the size ties go to the smallest member index, so the
    // third country's community becomes id 1.
    CHECK(c0.top_counts == std::vector<std::size_t>{2, 0});
    CHECK(c0.other == 1);
    CHECK(c0.dominant == 0);
    CHECK(report.per_country[2].top_counts == std::vector<std::size_t>{0, 3});
    CHECK(report.per_country[2].gini == 0.0);
    CHECK(report.per_country[2].dominant == 1);
    for (const auto& row : report.per_country) {
      const auto sum = std::accumulate(row.top_counts.begin(), row.top_counts.end(), row.other + row.isolated);
      CHECK(sum == 3);
    }
    CHECK(report.membership_grid[2] == std::vector<long long>{1, 1, 1});
  }
  SUBCASE("even split over four communities") {
    const auto p = from_grid({{0, 1, 2, 3}, {0, 1, 2, 3}});
    CHECK(community_report(p, blank(2, 4), 1, 2).per_country[0].gini == 0.75);
    CHECK(community_report(p, blank(2, 4), 1, 2).per_sector[0].gini == 0.0);
  }
  SUBCASE("isolated cells and the grid cut") {
    const auto p = from_grid({{0, 0, 0, 5}, {0, 0, 1, 6}, {1, 1, 1, 7}});
    const auto r = community_report(p, blank(3, 4), 4, 2);
    CHECK(r.per_country[0].isolated == 1);
    CHECK(r.per_country[0].gini == doctest::Approx(1.0 - (9.0 + 1.0) / 16.0).epsilon(1e-15));
    CHECK(r.membership_grid[0] == std::vector<long long>{0, 0, 0, CommunityReport::kBelowMinSize});
    CHECK(r.membership_grid[2] == std::vector<long long>{1, 1, 1, CommunityReport::kBelowMinSize});
    for (const auto& row : r.per_sector) {
      const auto sum = std::accumulate(row.top_counts.begin(), row.top_counts.end(), row.other + row.isolated);
      CHECK(sum == 3);
    }
    CHECK(r.per_sector[3].isolated == 3);
    CHECK(r.per_sector[3].gini == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    const auto pooled = community_report(p, blank(3, 4), 4, 2, IsolatedGini::single_class);
    CHECK(pooled.per_sector[3].gini == 0.0);
    CHECK(community_report(p, blank(3, 4), 30, 2).membership_grid[0][0] == CommunityReport::kBelowMinSize);
  }
  CHECK_THROWS_AS(community_report(from_grid({{0, 0}, {0, 1}}), blank(3, 2), 1, 2), ArgumentError);
}

TEST_CASE("ranking inside a community") {
  const auto net = testing::t1();
  const auto ranked = rank_members(net, MemberSet::all(net.dims()), RankDirection::out);
  REQUIRE(ranked.size() == 4);
  // Out strengths skip same-node partners, so (v,x) keeps only its 1 to (u,x).
  CHECK(ranked[0].cell == Cell{1, 1});
  CHECK(ranked[0].strength == 5.0);
  CHECK(ranked[1].cell == Cell{0, 1});
  CHECK(ranked[1].strength == 3.0);
  CHECK(ranked[2].cell == Cell{0, 0});
  CHECK(ranked[2].strength == 2.0);
  CHECK(ranked[3].cell == Cell{1, 0});
  CHECK(ranked[3].strength == 1.0);

  const auto single = rank_members(net, MemberSet({{1, 1}}), RankDirection::sum);
  REQUIRE(single.size() == 1);
  CHECK(single[0].strength == 0.0);

  Matrix w = Matrix::Zero(2, 2);
  w(0, 1) = 4.0;
  const auto ab = MultilayerNetwork({"a", "b"}, {"x"}, w);
  CHECK(rank_members(ab, MemberSet::all(ab.dims()), RankDirection::out)[0].cell == Cell{0, 0});
  CHECK(rank_members(ab, MemberSet::all(ab.dims()), RankDirection::in)[0].cell == Cell{1, 0});
  CHECK(rank_members(ab, MemberSet::all(ab.dims()), RankDirection::sum)[0].cell == Cell{0, 0});
  CHECK_THROWS_AS(rank_members(ab, MemberSet{}, RankDirection::in), ArgumentError);
}

TEST_CASE("mono-layer detection") {
  // Countries {0,1,2} and {3,4,5} never trade across groups in any sector.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(1.0, 3.0);
  const std::size_t n = 6, l = 3;
  Matrix w = Matrix::Zero(18, 18);
  for (std::size_t a = 0; a < 18; ++a) {
    for (std::size_t b = 0; b < 18; ++b) {
      if (a % n != b % n && (a % n) / 3 == (b % n) / 3) {
        w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = u(rng);
      }
    }
  }
  const auto net = MultilayerNetwork({"A", "B", "C", "D", "E", "F"}, {"s1", "s2", "s3"}, w);
  const auto mono = detect_monolayer(net);
  CHECK(mono.partition.dims() == Dims{6, 1});
  CHECK(testing::same_partition(mono.partition.assignment(), {0, 0, 0, 1, 1, 1}));

  const auto pre = detect_communities(aggregate_monolayer(net));
  CHECK(pre.partition == mono.partition);

  const auto solo = detect_monolayer(testing::random_network(1, 1, 4));
  CHECK(solo.partition.size() == 1);
  CHECK(solo.partition.n_communities() == 1);
}

TEST_SUITE_END();
