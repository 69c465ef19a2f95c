#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tmtrace/cantor.hpp"

using namespace tmtrace;

namespace {

constexpr int kPrec = 256;

BallReal two_cos(const BallReal& x) { return x.cos().mul_2exp(1); }

const CantorNode* find_node(const CantorTree& tree, const std::string& word) {
  for (const auto& n : tree.nodes)
    if (n.word == word) return &n;
  return nullptr;
}

}  // namespace

TEST_CASE("base_point spec examples") {
  CHECK((base_point(0.0, kPrec) - BallReal::exact(2, kPrec).sqrt())
            .contains_zero());
  CHECK((base_point(1.0, kPrec) - BallReal::exact(3, kPrec).sqrt())
            .contains_zero());
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> dist(0.0, 4.0);
  for (int t = 0; t < 50; ++t) {
    double lambda = dist(rng);
    BallReal a = base_point(lambda, kPrec);
    CHECK(trace_eval(1, lambda, a).contains_zero());
  }
}

TEST_CASE("initial_germ at lambda = 1: rho = 3 sqrt(6), factor 48 sqrt(6)") {
  InitialGermResult res = initial_germ(1.0, kPrec, 64);
  REQUIRE(res.verdict == Verdict::verified);
  CHECK(res.factor_crosscheck);
  BallReal s6 = BallReal::exact(6, kPrec).sqrt();
  CHECK((res.rho - BallReal::exact(3, kPrec) * s6).contains_zero());
  CHECK(res.cert.rho.overlaps(BallReal::exact(48, kPrec) * s6));
  CHECK(res.cert.delta == 1.0);
  CHECK(res.cert.beta == 1.0);
}

TEST_CASE("initial_germ verified for lambda = 0 and lambda = 2") {
  for (double lambda : {0.0, 2.0}) {
    InitialGermResult res = initial_germ(lambda, kPrec, 64);
    CHECK(res.verdict == Verdict::verified);
    CHECK(res.factor_crosscheck);
  }
}

TEST_CASE("build_tree depth 0 is the single root interval") {
  CantorTree tree = build_tree(1.0, 5, 0, kPrec);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.complete);
  CHECK(tree.nodes[0].word == "-");
  CHECK(tree.nodes[0].a_level == 1);
  CHECK(tree.nodes[0].b_level == 6);
  CHECK(trace_eval(6, 1.0, tree.nodes[0].b).contains_zero());
}

TEST_CASE("build_tree nesting and disjointness invariants") {
  CantorTree tree = build_tree(1.0, 5, 2, kPrec);
  REQUIRE(tree.complete);
  REQUIRE(tree.nodes.size() == 7);
  for (const auto& node : tree.nodes) {
    if (node.gen == 0) continue;
    std::string pw = node.word.substr(0, node.word.size() - 1);
    if (pw.empty()) pw = "-";
    const CantorNode* parent = find_node(tree, pw);
    REQUIRE(parent != nullptr);
    // containment with shared outer endpoints
    CHECK(parent->a.le(node.a) != Tri::no);
    CHECK(node.b.le(parent->b) != Tri::no);
    CHECK(node.a.lt(node.b) == Tri::yes);
    CHECK(node.ratio > 0.0);
    CHECK(node.ratio < 1.0);
  }
  // sibling disjointness
  for (const auto& node : tree.nodes) {
    if (node.gen >= tree.depth) continue;
    std::string base = node.word == "-" ? "" : node.word;
    const CantorNode* left = find_node(tree, base + "0");
    const CantorNode* right = find_node(tree, base + "1");
    REQUIRE(left != nullptr);
    REQUIRE(right != nullptr);
    CHECK(left->b.lt(right->a) == Tri::yes);
  }
  // every endpoint is a certified zero of its designated trace polynomial
  for (const auto& node : tree.nodes) {
    CHECK(trace_eval(node.a_level, 1.0, node.a).contains_zero());
    CHECK(trace_eval(node.b_level, 1.0, node.b).contains_zero());
  }
}

TEST_CASE("endpoint trace values are {0, 2} at the splitting level") {
  CantorTree tree = build_tree(1.0, 5, 1, kPrec);
  REQUIRE(tree.complete);
  // generation-1 nodes were split by P_{2K-4} = h_{2K+1}
  int level = 2 * 5 + 1;
  BallReal tol = BallReal::pow2(-40, kPrec);
  for (const auto& node : tree.nodes) {
    if (node.gen != 1) continue;
    BallReal va = trace_eval(level, 1.0, node.a);
    BallReal vb = trace_eval(level, 1.0, node.b);
    bool a_zero = va.contains_zero();
    bool b_zero = vb.contains_zero();
    BallReal other = a_zero ? vb : va;
    CHECK((a_zero || b_zero));
    CHECK((other - BallReal::exact(2, kPrec)).abs().le(tol) != Tri::no);
  }
}

TEST_CASE("lambda = 0 tree endpoints land on the 2cos(dyadic pi) lattice") {
  CantorTree tree = build_tree(0.0, 5, 2, kPrec);
  REQUIRE(tree.complete);
  double pid = BallReal::pi(kPrec).mid_double();
  for (const auto& node : tree.nodes) {
    for (const auto* pair : {&node.a, &node.b}) {
      int level = (pair == &node.a) ? node.a_level : node.b_level;
      double v = pair->mid_double();
      double y = std::acos(v / 2.0);
      long j = std::lround((y * std::ldexp(1.0, level + 1) / pid - 1.0) / 2.0);
      BallReal lattice = two_cos(BallReal::pi(kPrec) *
                                 BallReal::exact(2 * j + 1, kPrec) /
                                 BallReal::pow2(level + 1, kPrec));
      CHECK((*pair - lattice).abs().upper_double() < 1e-20);
    }
  }
}

TEST_CASE("build_tree validates its inputs") {
  CHECK_THROWS_AS(build_tree(1.0, 4, 1, kPrec), std::invalid_argument);
  CHECK_THROWS_AS(build_tree(1.0, 12, 5, kPrec), std::invalid_argument);
}

TEST_CASE("ratio_report on the desk-scale tree") {
  CantorTree tree = build_tree(1.0, 5, 2, kPrec);
  REQUIRE(tree.complete);
  ConstantsTable table = constants_table(6, kPrec);
  DimensionReport rep = ratio_report(tree, &table);
  CHECK(rep.min_ratio > 0.0);
  CHECK(rep.min_ratio <= rep.max_ratio);
  CHECK(rep.max_ratio < 1.0);
  CHECK(rep.moran_bound > 0.0);
  CHECK(rep.ksim_bound == doctest::Approx(std::pow(2.1, -5)));
  CHECK(rep.paper_K == table.K);
  CHECK(rep.paper_bound == doctest::Approx(dim_lower_bound(table.K)));

  CantorTree shallow = build_tree(1.0, 5, 0, kPrec);
  CHECK_THROWS_AS(ratio_report(shallow, &table), std::invalid_argument);
}

TEST_CASE("dim_lower_bound spec examples") {
  CHECK(dim_lower_bound(1) == doctest::Approx(0.9344).epsilon(1e-3));
  CHECK(dim_lower_bound(80) == doctest::Approx(0.011677).epsilon(1e-4));
  double prev = dim_lower_bound(1);
  for (long K : {2L, 5L, 40L, 1000L}) {
    double v = dim_lower_bound(K);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(dim_lower_bound(0), std::invalid_argument);
  // ball version agrees with the double formula
  for (long K : {1L, 10L, 80L}) {
    BallReal b = dim_lower_bound_ball(K, kPrec);
    CHECK(std::fabs(b.mid_double() - dim_lower_bound(K)) < 1e-15);
  }
}

TEST_CASE("single_step_ratios for the renormalized cosine pair") {
  PointFn q = [](const BallReal& x) { return two_cos(x); };
  SingleStepRatios r = single_step_ratios(q, q, kPrec);
  REQUIRE(r.ok);
  // both renormalized iterates are 2cos, so |I+_{-1}| / |I+_0| = 2 t / t = 2
  CHECK(r.right == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.left == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.right <= 2.1);
  CHECK(r.left <= 2.1);
}

TEST_CASE("key_spacing_check at lambda = 1, K_sim = 5") {
  KeySpacingReport rep = key_spacing_check(1.0, 5, kPrec, 64);
  INFO("note: ", rep.note);
  REQUIRE(rep.ok);
  CHECK(rep.right_pass);
  CHECK(rep.left_pass);
  CHECK(rep.right_ratio >= rep.threshold);
  CHECK(rep.threshold == doctest::Approx(std::pow(2.1, -5)));
  CHECK(rep.handoff.verdict == Verdict::verified);
  // theta_sub sits strictly between the base point and theta_plus
  BallReal theta = base_point(1.0, kPrec);
  CHECK(theta.lt(rep.theta_sub) == Tri::yes);
  CHECK(rep.theta_sub.lt(rep.theta_plus) == Tri::yes);
}

TEST_CASE("serialize_tree is stable and carries the field contract") {
  CantorTree tree = build_tree(1.0, 5, 1, kPrec);
  std::string a = serialize_tree(tree);
  std::string b = serialize_tree(build_tree(1.0, 5, 1, kPrec));
  CHECK(a == b);
  CHECK(a.rfind("word,gen,a_mid,a_rad,b_mid,b_rad,a_level,b_level,ratio,ok", 0) ==
        0);
  size_t lines = 0;
  for (char c : a)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + tree.nodes.size());
}
