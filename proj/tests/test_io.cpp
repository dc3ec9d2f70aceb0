#include <sstream>

#include "cylpeak/io.hpp"
#include "doctest.h"

using namespace cylpeak;

TEST_SUITE("io") {

TEST_CASE("pmf json round trip") {
    Pmf p;
    p.support = {{0, 0.25}, {2, 0.5}, {3, 0.2499999}};
    p.tail_bound = 1e-7;
    const Pmf q = pmf_from_json(pmf_to_json(p));
    REQUIRE(q.support.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(q.support[i] == p.support[i]);
    CHECK(q.tail_bound == p.tail_bound);
    CHECK(pmf_from_json(R"({"support": [[1, 0.5], [0, 0.5]], "tail_bound": 0})").support[0].first == 0);
    CHECK_THROWS_AS(pmf_from_json("{\"support\": 3}"), DomainError);
    CHECK_THROWS_AS(pmf_from_json("not json"), DomainError);
}

TEST_CASE("config json") {
    const ExperimentConfig c = config_from_json(R"({
        "model": {"a": 0.3, "q": 0.6, "n": 2},
        "scaling": {"eps": [0.1, 0.05], "s_grid": [-1, 0, 1], "beta": 2.0, "c2_mode": "paper"},
        "quad": {"rel_tol": 1e-8, "m_nodes": 32},
        "seed": 17, "out": "x.csv"})");
    CHECK(c.model.a == 0.3);
    CHECK(c.model.q == 0.6);
    CHECK(c.model.n == 2);
    CHECK(c.converge.eps.size() == 2);
    CHECK(c.converge.s_grid[2] == 1.0);
    CHECK(c.has_beta);
    CHECK_FALSE(c.has_alpha);
    CHECK(c.converge.beta == 2.0);
    CHECK(c.converge.c2_mode == C2Mode::Paper);
    CHECK(c.converge.quad.rel_tol == 1e-8);
    CHECK(c.converge.nystrom.m_nodes == 32);
    CHECK(c.seed == 17);
    CHECK(c.out == "x.csv");
    const ExperimentConfig d = config_from_json(config_to_json(c));
    CHECK(config_to_json(d) == config_to_json(c));
    CHECK_THROWS_AS(config_from_json(R"({"scaling": {"alpha": 1, "beta": 1}})"), DomainError);
    CHECK_THROWS_AS(config_from_json(R"({"scaling": {"c2_mode": "neither"}})"), DomainError);
    CHECK(config_from_json("{}").model.n == 1);
}

TEST_CASE("csv schemas") {
    std::ostringstream a, b, c;
    write_samples_csv(a, {{2, 1}, {0, 0}});
    CHECK(a.str() == "index,L,chi,peak\n0,2,1,3\n1,0,0,0\n");
    write_converge_csv(b, {{0.1, -1.0, 0.25, 0.5, 0.25}});
    CHECK(b.str() == "epsilon,s,discrete_det,limit_det,abs_diff\n0.10000000000000001,-1,0.25,0.5,0.25\n");
    write_cdf_compare_csv(c, {{3, 0.5, 0.25, 0.125, 0.25}});
    CHECK(c.str() == "ell,empirical,exact,fredholm,abs_diff\n3,0.5,0.25,0.125,0.25\n");
}

}
