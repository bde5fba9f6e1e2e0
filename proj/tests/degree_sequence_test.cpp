#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "esmc/degree_sequence.hpp"

using namespace esmc;

namespace {

Realizability check(std::vector<Degree> d) { return is_realizable(DegreeSequence(std::move(d))); }

// Every sorted degree vector on n nodes that some connected simple graph realizes.
std::set<std::vector<Degree>> connected_realizations(unsigned n) {
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = a + 1; b < n; ++b)
            pairs.emplace_back(a, b);
    std::set<std::vector<Degree>> out;
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
        std::vector<Degree> deg(n, 0);
        std::vector<unsigned> comp(n);
        for (unsigned i = 0; i < n; ++i)
            comp[i] = i;
        auto find = [&](unsigned x) {
            while (comp[x] != x)
                x = comp[x] = comp[comp[x]];
            return x;
        };
        unsigned parts = n;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (!(mask >> p & 1u))
                continue;
            auto [a, b] = pairs[p];
            ++deg[a];
            ++deg[b];
            if (find(a) != find(b)) {
                comp[find(a)] = find(b);
                --parts;
            }
        }
        if (parts == 1) {
            std::sort(deg.begin(), deg.end(), std::greater<>());
            out.insert(deg);
        }
    }
    return out;
}

} // namespace

TEST(Realizability, SpecExamples) {
    EXPECT_EQ(check({3, 1, 1, 1}).verdict, Verdict::realizable);
    EXPECT_EQ(check({1, 1, 1}).verdict, Verdict::odd_sum);
    const Realizability eg = check({3, 3, 1, 1});
    EXPECT_EQ(eg.verdict, Verdict::erdos_gallai_violation);
    EXPECT_EQ(eg.k, 2u);
    EXPECT_EQ(to_string(eg), "ErdosGallaiViolation(k=2)");
    EXPECT_TRUE(check({2, 2, 2}).ok());
}

TEST(Realizability, ConditionOrder) {
    // odd sum is reported before too few edges
    EXPECT_EQ(check({1, 1, 1, 0, 0}).verdict, Verdict::odd_sum);
    EXPECT_EQ(check({1, 1, 1, 1}).verdict, Verdict::too_few_edges);
    EXPECT_EQ(check({4, 4, 1, 1, 1, 1}).verdict, Verdict::erdos_gallai_violation);
}

TEST(Realizability, IsolatedNodeHasNoConnectedRealization) {
    const Realizability r = check({2, 2, 2, 0});
    EXPECT_EQ(r.verdict, Verdict::isolated_node);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(check({0}).ok());
}

TEST(Realizability, TrivialSizes) {
    EXPECT_TRUE(check({1, 1}).ok());
    EXPECT_EQ(check({0, 0}).verdict, Verdict::too_few_edges);
    EXPECT_EQ(check({2, 0}).verdict, Verdict::erdos_gallai_violation);
}

TEST(Realizability, MatchesExhaustiveEnumeration) {
    for (unsigned n = 1; n <= 6; ++n) {
        const auto truth = connected_realizations(n);
        // all nonincreasing vectors with entries in [0, n]
        std::vector<Degree> d(n, 0);
        std::size_t seen = 0;
        for (;;) {
            if (std::is_sorted(d.begin(), d.end(), std::greater<>())) {
                ++seen;
                const bool expected = truth.count(d) != 0;
                EXPECT_EQ(check(d).ok(), expected) << "n=" << n << " d0=" << d[0];
            }
            std::size_t i = 0;
            while (i < n && d[i] == n)
                d[i++] = 0;
            if (i == n)
                break;
            ++d[i];
        }
        EXPECT_GT(seen, 0u);
    }
}

TEST(Realizability, LargeRegularAndStarSequences) {
    EXPECT_TRUE(check(std::vector<Degree>(10001, 2)).ok());
    std::vector<Degree> star(5000, 1);
    star[0] = 4999;
    EXPECT_TRUE(check(star).ok());
    star[0] = 4998;
    star[1] = 2;
    EXPECT_TRUE(check(star).ok());
}

TEST(DegreeSequence, Errors) {
    EXPECT_THROW(DegreeSequence(std::vector<Degree>{}), DegreeSequenceError);
    EXPECT_THROW(DegreeSequence::from_signed({2, -1, 1}), DegreeSequenceError);
}

TEST(DegreeSequence, SortedNonincreasing) {
    const DegreeSequence s({1, 3, 2, 2});
    EXPECT_EQ(s.degrees(), (std::vector<Degree>{3, 2, 2, 1}));
    EXPECT_EQ(s.sum(), 8u);
}

TEST(DegreeSequence, ReadFile) {
    std::istringstream in("3 1\n1\n 1 \n");
    EXPECT_EQ(read_degree_file(in).degrees(), (std::vector<Degree>{3, 1, 1, 1}));
    std::istringstream bad("2 2 x");
    EXPECT_THROW(read_degree_file(bad), DegreeSequenceError);
    std::istringstream frac("2 2.0 2");
    EXPECT_THROW(read_degree_file(frac), DegreeSequenceError);
    std::istringstream neg("2 -2 2");
    EXPECT_THROW(read_degree_file(neg), DegreeSequenceError);
    std::istringstream empty("  \n");
    EXPECT_THROW(read_degree_file(empty), DegreeSequenceError);
}

TEST(PowerLaw, Validation) {
    RandomStream rng(1);
    EXPECT_THROW(sample_degrees({1.0, 10}, rng), DegreeSequenceError);
    EXPECT_THROW(sample_degrees({2.0, 1}, rng), DegreeSequenceError);
}

TEST(PowerLaw, HugeExponentCollapsesToOnes) {
    RandomStream rng(3);
    EXPECT_EQ(sample_degrees({50.0, 4}, rng).degrees(), (std::vector<Degree>{1, 1, 1, 1}));
}

TEST(PowerLaw, Deterministic) {
    RandomStream a(42), b(42);
    EXPECT_EQ(sample_degrees({2.3, 500}, a), sample_degrees({2.3, 500}, b));
}

TEST(PowerLaw, SupportIsOneToNMinusOne) {
    RandomStream rng(9);
    for (int i = 0; i < 200; ++i) {
        const DegreeSequence s = sample_degrees({1.2, 6}, rng);
        EXPECT_LE(s[0], 5u);
        EXPECT_GE(s[s.size() - 1], 1u);
    }
}

TEST(PowerLaw, EmpiricalMeanAtTauTwo) {
    // sum_{a<1000} a^-1 / sum_{a<1000} a^-2, computed independently of the sampler
    double h1 = 0.0, h2 = 0.0;
    for (int a = 1; a <= 999; ++a) {
        h1 += 1.0 / a;
        h2 += 1.0 / (static_cast<double>(a) * a);
    }
    const double expected = h1 / h2;
    EXPECT_NEAR(expected, 4.5528, 1e-4);

    RandomStream rng(2024);
    double total = 0.0;
    const int samples = 400;
    for (int i = 0; i < samples; ++i)
        total += static_cast<double>(sample_degrees({2.0, 1000}, rng).sum());
    const double mean = total / (samples * 1000.0);
    // the variance of a single draw is about 300, so the standard error here is about 0.03
    EXPECT_NEAR(mean, expected, 0.15);
}

TEST(PowerLaw, RejectionReturnsRealizable) {
    RandomStream rng(5);
    for (int i = 0; i < 20; ++i) {
        const SampledSequence s = sample_realizable({2.1, 300}, rng);
        EXPECT_TRUE(is_realizable(s.sequence).ok());
    }
}

TEST(PowerLaw, RejectionCap) {
    RandomStream rng(5);
    EXPECT_THROW(sample_realizable({50.0, 4}, rng, 1), RejectionCapExceeded);
}

TEST(PowerLaw, AcceptanceFallsWithTau) {
    auto rate = [](double tau) {
        RandomStream rng(77);
        int ok = 0;
        for (int i = 0; i < 100; ++i)
            ok += is_realizable(sample_degrees({tau, 1000}, rng)).ok();
        return ok;
    };
    EXPECT_GT(rate(2.0), rate(3.0));
}
