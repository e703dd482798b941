#include "maxlin/model.hpp"

#include "maxlin/errors.hpp"
#include "support/testutil.hpp"

#include <doctest.h>

#include <set>

using maxlin::Dag;
using maxlin::MlMatrix;
using maxlin::Node;
using maxlin::NonNegMatrix;
using maxlin::RatioProfile;
using maxlin::WeightedDag;

TEST_SUITE("model") {

TEST_CASE("weighted dag validation") {
    CHECK_THROWS_AS(WeightedDag(Dag(2, {{1, 2}}), {}), maxlin::InvalidArgumentError);
    CHECK_THROWS_AS(WeightedDag(Dag(2, {{1, 2}}), {{{1, 2}, 0.0}}),
                    maxlin::InvalidArgumentError);
    CHECK_THROWS_AS(WeightedDag(Dag(2, {{1, 2}}), {{{2, 1}, 0.5}}),
                    maxlin::InvalidArgumentError);
}

TEST_CASE("triangle coefficients take the max-weighted route") {
    const auto wd = testutil::triangle_dag(0.5, 0.8, 0.3);
    const auto b = ml_matrix_from_weights(wd);
    CHECK(b.coeff(1, 3) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(b.coeff(1, 2) == 0.5);
    CHECK(b.coeff(2, 3) == 0.8);
}

TEST_CASE("edgeless model has the identity coefficient matrix") {
    const WeightedDag wd(Dag(3, {}), {});
    CHECK(ml_matrix_from_weights(wd).matrix().entries() ==
          NonNegMatrix::identity(3).entries());
}

TEST_CASE("collider chain composes coefficients") {
    // 1->2, 2->4, 3->4: b_14 must equal b_12 * b_24.
    const WeightedDag wd(Dag(4, {{1, 2}, {2, 4}, {3, 4}}),
                         {{{1, 2}, 0.6}, {{2, 4}, 0.7}, {{3, 4}, 1.2}});
    const auto b = ml_matrix_from_weights(wd);
    CHECK(b.coeff(1, 4) == doctest::Approx(b.coeff(1, 2) * b.coeff(2, 4)).epsilon(1e-12));
    CHECK(b.coeff(3, 4) == 1.2);
    CHECK(b.coeff(1, 3) == 0.0);
}

TEST_CASE("coefficients equal the brute-force path maximum on random models") {
    testutil::TestRng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + static_cast<int>(rng.index(6));
        const auto wd = testutil::random_weighted_dag(rng, d, 0.5);
        const auto b = ml_matrix_from_weights(wd);
        CHECK(approx_equal(b.matrix(), testutil::brute_force_ml_matrix(wd), 1e-12));
    }
}

TEST_CASE("validate_ml_matrix accepts freshly built matrices") {
    testutil::TestRng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng.index(6));
        const auto wd = testutil::random_weighted_dag(rng, d, 0.5);
        CHECK(validate_ml_matrix(ml_matrix_from_weights(wd), wd.dag()));
    }
}

TEST_CASE("validate_ml_matrix rejects a broken chain coefficient") {
    const Dag chain(3, {{1, 2}, {2, 3}});
    // Claimed b_13 exceeds b_12*b_23: fails the fixpoint equation.
    NonNegMatrix m = NonNegMatrix::identity(3);
    m(0, 1) = 0.5;
    m(1, 2) = 0.8;
    m(0, 2) = 0.6;
    CHECK_FALSE(validate_ml_matrix(MlMatrix(m), chain));
    m(0, 2) = 0.4;
    CHECK(validate_ml_matrix(MlMatrix(m), chain));
}

TEST_CASE("validate_ml_matrix rejects support mismatches") {
    const Dag chain(3, {{1, 2}, {2, 3}});
    NonNegMatrix m = NonNegMatrix::identity(3);
    m(0, 1) = 0.5;
    m(1, 2) = 0.8;
    // Missing the induced 1->3 entry.
    CHECK_FALSE(validate_ml_matrix(MlMatrix(m), chain));
    CHECK_THROWS_AS(validate_ml_matrix(MlMatrix(NonNegMatrix::identity(2)), chain),
                    maxlin::InvalidArgumentError);
}

TEST_CASE("unit diagonal is enforced at construction") {
    NonNegMatrix m = NonNegMatrix::identity(3);
    m(1, 1) = 0.9;
    CHECK_THROWS_AS((void)MlMatrix(m), maxlin::InvalidArgumentError);
}

TEST_CASE("minimum ML DAG drops dominated edges") {
    // Tie: the 1->3 route through 2 matches the direct edge, so it is dropped.
    const auto tie = ml_matrix_from_weights(testutil::triangle_dag(0.5, 0.8, 0.4));
    const Dag d_tie = minimum_ml_dag(tie);
    CHECK(d_tie.edges() == std::vector<std::pair<Node, Node>>{{1, 2}, {2, 3}});

    const auto strict = ml_matrix_from_weights(testutil::triangle_dag(0.5, 0.8, 0.45));
    const Dag d_strict = minimum_ml_dag(strict);
    CHECK(d_strict.has_edge(1, 3));

    const Dag d_id = minimum_ml_dag(MlMatrix(NonNegMatrix::identity(4)));
    CHECK(d_id.edges().empty());
}

TEST_CASE("minimum ML DAG rejects invalid matrices") {
    NonNegMatrix m = NonNegMatrix::identity(3);
    m(0, 1) = 0.5;
    m(1, 2) = 0.8;
    m(0, 2) = 0.1; // below the composite route: not transitively consistent
    CHECK_THROWS_AS(minimum_ml_dag(MlMatrix(m)), maxlin::InvalidArgumentError);
    NonNegMatrix cyc = NonNegMatrix::identity(2);
    cyc(0, 1) = 0.5;
    cyc(1, 0) = 0.5;
    CHECK_THROWS_AS(minimum_ml_dag(MlMatrix(cyc)), maxlin::MalformedGraphError);
}

TEST_CASE("minimum ML DAG stays within the generating DAG and is a member") {
    testutil::TestRng rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng.index(6));
        const auto wd = testutil::random_weighted_dag(rng, d, 0.5);
        const auto b = ml_matrix_from_weights(wd);
        const Dag min_dag = minimum_ml_dag(b);
        // A surviving edge is the unique max-weighted route, which forces it
        // to be an edge of any generator.
        for (const auto& [j, i] : min_dag.edges()) {
            CHECK(wd.dag().has_edge(j, i));
        }
        std::map<std::pair<Node, Node>, double> w;
        for (const auto& e : min_dag.edges()) w[e] = b.coeff(e.first, e.second);
        CHECK(class_membership(WeightedDag(min_dag, w), b));
    }
}

TEST_CASE("class membership matches the four theorem conditions") {
    const auto b = ml_matrix_from_weights(testutil::triangle_dag(0.5, 0.8, 0.4));
    // Chain candidate: the minimum member.
    const WeightedDag chain(Dag(3, {{1, 2}, {2, 3}}), {{{1, 2}, 0.5}, {{2, 3}, 0.8}});
    CHECK(class_membership(chain, b));
    // Triangle candidate with a free 1->3 weight inside (0, 0.4].
    CHECK(class_membership(testutil::triangle_dag(0.5, 0.8, 0.2), b));
    CHECK(class_membership(testutil::triangle_dag(0.5, 0.8, 0.4), b));
    // Above the cap: excluded, and rebuilding gives a different matrix.
    const auto outsider = testutil::triangle_dag(0.5, 0.8, 0.5);
    CHECK_FALSE(class_membership(outsider, b));
    CHECK(ml_matrix_from_weights(outsider).coeff(1, 3) == 0.5);
    // Wrong reachability: missing the 1->2 edge entirely.
    const WeightedDag sparse(Dag(3, {{2, 3}}), {{{2, 3}, 0.8}});
    CHECK_FALSE(class_membership(sparse, b));
    // Altered pinned weight on a minimum-DAG edge.
    CHECK_FALSE(class_membership(testutil::triangle_dag(0.45, 0.8, 0.2), b));

    // Extra reachability is rejected too: a fork model has no 2->3 relation,
    // so a candidate adding that edge leaves the class.
    const WeightedDag fork(Dag(3, {{1, 2}, {1, 3}}), {{{1, 2}, 0.5}, {{1, 3}, 0.7}});
    const auto b_fork = ml_matrix_from_weights(fork);
    CHECK(class_membership(fork, b_fork));
    const WeightedDag widened(Dag(3, {{1, 2}, {1, 3}, {2, 3}}),
                              {{{1, 2}, 0.5}, {{1, 3}, 0.7}, {{2, 3}, 0.1}});
    CHECK_FALSE(class_membership(widened, b_fork));
}

TEST_CASE("class equivalence oracle on triangle models") {
    CHECK(class_equivalence_oracle(ml_matrix_from_weights(testutil::triangle_dag(0.5, 0.8, 0.4))));
    CHECK(class_equivalence_oracle(ml_matrix_from_weights(testutil::triangle_dag(0.5, 0.8, 0.45))));
    testutil::TestRng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const auto wd = testutil::random_weighted_dag(rng, 4, 0.5);
        CHECK(class_equivalence_oracle(ml_matrix_from_weights(wd)));
    }
}

TEST_CASE("ratio profile of an ancestor pair") {
    const auto b = ml_matrix_from_weights(testutil::chain_dag({0.5, 0.8}));
    const auto prof = ratio_profile(b, 1, 3);
    CHECK(prof.support == RatioProfile::Support::LowerBounded);
    CHECK(prof.bound == doctest::Approx(0.4).epsilon(1e-12));
    REQUIRE(prof.atoms.size() == 1); // An(1) = {1}
    CHECK(prof.atoms[0] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("ratio profile of unrelated nodes") {
    const auto b = MlMatrix(NonNegMatrix::identity(2));
    const auto prof = ratio_profile(b, 1, 2);
    CHECK(prof.support == RatioProfile::Support::FullLine);
    CHECK(prof.atoms.empty());
    CHECK_THROWS_AS(ratio_profile(b, 1, 1), maxlin::InvalidArgumentError);
}

TEST_CASE("ratio profile of a descendant pair") {
    // Collider 1->3<-2, looking at Y_31 = X_1/X_3.
    const WeightedDag wd(Dag(3, {{1, 3}, {2, 3}}), {{{1, 3}, 0.5}, {{2, 3}, 0.7}});
    const auto b = ml_matrix_from_weights(wd);
    const auto prof = ratio_profile(b, 3, 1);
    CHECK(prof.support == RatioProfile::Support::UpperBounded);
    CHECK(prof.bound == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(prof.atoms.size() == 1); // An(1) = {1}: atom at b_11/b_13 = 1/0.5
    CHECK(prof.atoms[0] == doctest::Approx(2.0).epsilon(1e-12));

    // Monte-Carlo cross-check: the simulated ratio never exceeds the bound
    // and attains it with positive frequency.
    const auto spec = maxlin::InnovationSpec::iid(3, maxlin::Distribution::frechet(1, 1));
    const auto x = simulate_model(wd, spec, 20000, 321);
    std::size_t at_bound = 0;
    for (std::size_t t = 0; t < x.n(); ++t) {
        const double ratio = x.value(t, 1) / x.value(t, 3);
        CHECK(ratio <= prof.bound * (1.0 + 1e-12));
        if (maxlin::approx_equal(ratio, prof.bound, 1e-9)) ++at_bound;
    }
    CHECK(at_bound > 0);
}

TEST_CASE("ratio profile merges duplicate atoms") {
    // Chain 1->2->3, pair (2,3): common ancestors {1,2} both give ratio 0.8.
    const auto b = ml_matrix_from_weights(testutil::chain_dag({0.5, 0.8}));
    const auto prof = ratio_profile(b, 2, 3);
    REQUIRE(prof.atoms.size() == 1);
    CHECK(prof.atoms[0] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("ratio profile with common ancestors only") {
    // Fork 1->2, 1->3: nodes 2 and 3 unrelated but share ancestor 1.
    const WeightedDag wd(Dag(3, {{1, 2}, {1, 3}}), {{{1, 2}, 0.5}, {{1, 3}, 0.7}});
    const auto b = ml_matrix_from_weights(wd);
    const auto prof = ratio_profile(b, 2, 3);
    CHECK(prof.support == RatioProfile::Support::FullLine);
    REQUIRE(prof.atoms.size() == 1);
    CHECK(prof.atoms[0] == doctest::Approx(0.7 / 0.5).epsilon(1e-12));
}

} // TEST_SUITE
