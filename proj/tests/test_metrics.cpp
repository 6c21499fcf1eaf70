#include "doctest.h"

#include <cmath>

#include "lifegraph/errors.hpp"
#include "lifegraph/metrics.hpp"
#include "lifegraph/rng.hpp"

using namespace lifegraph;

TEST_CASE("kappa is 1 for identical lists") {
    std::vector<std::string> a{"young", "adult", "young", "adult"};
    CHECK(cohen_kappa(a, a) == doctest::Approx(1.0));
}

TEST_CASE("kappa is 0 when one annotator is constant") {
    std::vector<std::string> a, b;
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        a.push_back(rng.next_double() < 0.37 ? "young" : "adult");
        b.push_back("young");
    }
    CHECK(std::abs(cohen_kappa(a, b)) < 1e-12);
}

TEST_CASE("kappa of the 78% balanced-marginal agreement case is 0.56") {
    // 78 both-young, 78 both-adult, 22+22 disagreements: marginals 100/100,
    // p_o = 0.78, p_e = 0.5, kappa = 0.56 in closed form.
    std::vector<std::string> a, b;
    for (int i = 0; i < 78; ++i) { a.push_back("young"); b.push_back("young"); }
    for (int i = 0; i < 78; ++i) { a.push_back("adult"); b.push_back("adult"); }
    for (int i = 0; i < 22; ++i) { a.push_back("young"); b.push_back("adult"); }
    for (int i = 0; i < 22; ++i) { a.push_back("adult"); b.push_back("young"); }
    CHECK(std::abs(cohen_kappa(a, b) - 0.56) < 1e-12);
}

TEST_CASE("kappa handles chance agreement of 1") {
    std::vector<std::string> same{"x", "x", "x"};
    CHECK(cohen_kappa(same, same) == 1.0);
    std::vector<std::string> other{"x", "x", "y"};
    // marginals not identical -> p_e < 1, normal formula applies
    CHECK(cohen_kappa(same, other) == doctest::Approx(0.0));
}

TEST_CASE("kappa rejects mismatched lengths") {
    std::vector<std::string> a{"x"};
    std::vector<std::string> b{"x", "y"};
    CHECK_THROWS_AS(cohen_kappa(a, b), UsageError);
    CHECK_THROWS_AS(cohen_kappa({}, {}), DataError);
}

TEST_CASE("kappa is symmetric") {
    Rng rng(23);
    std::vector<std::string> a, b;
    for (int i = 0; i < 200; ++i) {
        a.push_back(rng.next_double() < 0.5 ? "young" : "adult");
        b.push_back(rng.next_double() < 0.3 ? "young" : "adult");
    }
    CHECK(cohen_kappa(a, b) == doctest::Approx(cohen_kappa(b, a)));
}

TEST_CASE("NMI is 1 for identical partitions and low for independent ones") {
    std::vector<int> a, b;
    Rng rng(5);
    for (int i = 0; i < 400; ++i) {
        a.push_back(static_cast<int>(rng.next_below(4)));
        b.push_back(static_cast<int>(rng.next_below(4)));
    }
    CHECK(normalized_mutual_information(a, a) == doctest::Approx(1.0));
    CHECK(normalized_mutual_information(a, b) < 0.1);

    // invariant to relabeling
    std::vector<int> relabeled;
    for (int x : a) relabeled.push_back((x + 2) % 4);
    CHECK(normalized_mutual_information(a, relabeled) == doctest::Approx(1.0));
}
