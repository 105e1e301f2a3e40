#include "mqv/inference.hpp"

#include "mqv/error.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace mqv;

namespace {

SamplePair cubic_pair(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    SamplePair p;
    p.x.resize(n);
    p.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.x[i] = nd(rng);
        p.y[i] = p.x[i] * p.x[i] * p.x[i] + 0.01 * nd(rng);
    }
    return p;
}

SamplePair gaussian_pair(std::size_t n, double rho, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    SamplePair p;
    p.x.resize(n);
    p.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.x[i] = nd(rng);
        p.y[i] = rho * p.x[i] + std::sqrt(1 - rho * rho) * nd(rng);
    }
    return p;
}

}  // namespace

TEST(CompareScoreClouds, HandExamples) {
    EXPECT_DOUBLE_EQ(compare_score_clouds(std::vector<double>{1, 2}, std::vector<double>{0, 3}), 0.5);
    EXPECT_DOUBLE_EQ(compare_score_clouds(std::vector<double>{5, 6}, std::vector<double>{1, 2}), 1.0);
    EXPECT_DOUBLE_EQ(compare_score_clouds(std::vector<double>{1, 2}, std::vector<double>{5, 6}), 0.0);
    // ties count as "not greater"
    EXPECT_DOUBLE_EQ(compare_score_clouds(std::vector<double>{1}, std::vector<double>{1}), 0.0);
}

TEST(CompareScoreClouds, MatchesDoubleLoop) {
    Rng rng(99);
    std::uniform_int_distribution<int> size(1, 200);
    std::uniform_int_distribution<int> coarse(0, 20);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> cx(size(rng)), cy(size(rng));
        for (auto& v : cx) v = coarse(rng) / 10.0;  // coarse values force ties
        for (auto& v : cy) v = coarse(rng) / 10.0;
        const double expected = static_cast<double>(oracle::strict_pair_count(cx, cy)) /
                                (static_cast<double>(cx.size()) * static_cast<double>(cy.size()));
        ASSERT_EQ(compare_score_clouds(cx, cy), expected);
    }
}

TEST(CompareScoreClouds, RejectsEmpty) {
    EXPECT_THROW(compare_score_clouds(std::vector<double>{}, std::vector<double>{1.0}),
                 std::invalid_argument);
}

TEST(Decision, ConfidenceAndDirection) {
    EXPECT_DOUBLE_EQ(confidence(0.5), 0.0);
    EXPECT_DOUBLE_EQ(confidence(1.0), 0.5);
    EXPECT_NEAR(confidence(0.38), 0.12, 1e-15);

    auto d = make_decision(0.8);
    EXPECT_EQ(d.direction, Direction::XtoY);
    EXPECT_NEAR(d.p_y, 0.2, 1e-15);
    EXPECT_NEAR(d.confidence, 0.3, 1e-15);
    EXPECT_EQ(make_decision(0.1).direction, Direction::YtoX);
    EXPECT_EQ(make_decision(0.5).direction, Direction::Undecided);
}

TEST(Direction, NamesRoundTrip) {
    for (auto d : {Direction::XtoY, Direction::YtoX, Direction::Undecided})
        EXPECT_EQ(direction_from_string(to_string(d)), d);
    EXPECT_THROW(direction_from_string("sideways"), std::invalid_argument);
}

TEST(InferNoBijections, CubicMechanismPointsForward) {
    const auto p = cubic_pair(1000, 3);
    const auto r = infer_no_bijections(p, 300, 17);
    EXPECT_EQ(r.record.direction, Direction::XtoY);
    EXPECT_GT(r.record.p_x, 0.9);
    EXPECT_EQ(r.samples.size(), 300u);
    EXPECT_EQ(r.record.m, 300u);
    EXPECT_EQ(r.record.M, 0u);
    EXPECT_EQ(r.record.n, 1000u);

    SamplePair swapped{p.y, p.x};
    EXPECT_EQ(infer_no_bijections(swapped, 300, 17).record.direction, Direction::YtoX);
}

TEST(InferNoBijections, SymmetricGaussianHasLowConfidence) {
    // Linear-Gaussian data are symmetric, so the scores only differ by noise.
    const auto r = infer_no_bijections(gaussian_pair(1000, 0.7, 8), 200, 5);
    EXPECT_LT(r.record.confidence, 0.45);
    EXPECT_GT(r.record.confidence, -1e-15);
}

TEST(InferNoBijections, ProbabilitiesAreComplementary) {
    const auto r = infer_no_bijections(gaussian_pair(300, 0.4, 1), 50, 2);
    EXPECT_NEAR(r.record.p_x + r.record.p_y, 1.0, 1e-15);
    EXPECT_GE(r.record.p_x, 0.0);
    EXPECT_LE(r.record.p_x, 1.0);
}

TEST(InferNoBijections, DeterministicAcrossWorkers) {
    const auto p = cubic_pair(400, 11);
    const auto a = infer_no_bijections(p, 64, 123, 1);
    const auto b = infer_no_bijections(p, 64, 123, 4);
    const auto c = infer_no_bijections(p, 64, 123, 1);
    EXPECT_EQ(a.record.p_x, b.record.p_x);
    EXPECT_EQ(a.record.p_x, c.record.p_x);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        EXPECT_EQ(a.samples[i].c_xy, b.samples[i].c_xy);
        EXPECT_EQ(a.samples[i].c_yx, b.samples[i].c_yx);
    }
    EXPECT_NE(infer_no_bijections(p, 64, 124).samples[0].c_xy, a.samples[0].c_xy);
}

TEST(InferNoBijections, DecisionInvariantUnderAffineRescaling) {
    auto p = cubic_pair(500, 21);
    const auto a = infer_no_bijections(p, 80, 9);
    for (auto& v : p.x) v = -3.0 * v + 10.0;
    for (auto& v : p.y) v = 0.25 * v - 4.0;
    const auto b = infer_no_bijections(p, 80, 9);
    // standardization happens before the KDE, so the resamples agree up to rounding
    EXPECT_NEAR(a.record.p_x, b.record.p_x, 0.02);
    EXPECT_EQ(a.record.direction, b.record.direction);
}

TEST(InferNoBijections, RejectsDegenerateInput) {
    SamplePair p{{1, 2, 3, 4, 5}, {2, 2, 2, 2, 2}};
    EXPECT_THROW(infer_no_bijections(p, 10, 1), DegenerateInput);
    EXPECT_THROW(infer_no_bijections(cubic_pair(50, 1), 0, 1), std::invalid_argument);
}

TEST(InferWithBijections, PoolsAllScores) {
    InferenceOptions opts;
    opts.m = 10;
    opts.M = 6;
    const auto r = infer_with_bijections(cubic_pair(300, 5), opts, 31);
    EXPECT_EQ(r.samples.size(), 60u);
    EXPECT_EQ(r.record.m, 10u);
    EXPECT_EQ(r.record.M, 6u);
    std::vector<double> cx, cy;
    for (const auto& s : r.samples) {
        cx.push_back(s.c_xy);
        cy.push_back(s.c_yx);
        EXPECT_LT(s.bijection_index, 6u);
        EXPECT_LT(s.resample_index, 10u);
    }
    EXPECT_EQ(r.record.p_x, compare_score_clouds(cx, cy));
}

TEST(InferWithBijections, CubicMechanismPointsForward) {
    InferenceOptions opts;
    opts.m = 30;
    opts.M = 20;
    const auto r = infer_with_bijections(cubic_pair(1000, 3), opts, 17);
    EXPECT_EQ(r.record.direction, Direction::XtoY);
}

TEST(InferWithBijections, DeterministicAcrossWorkers) {
    InferenceOptions opts;
    opts.m = 8;
    opts.M = 5;
    const auto p = cubic_pair(300, 2);
    const auto a = infer_with_bijections(p, opts, 4);
    opts.workers = 3;
    const auto b = infer_with_bijections(p, opts, 4);
    EXPECT_EQ(a.record.p_x, b.record.p_x);
    for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].c_xy, b.samples[i].c_xy);
}

TEST(Infer, DispatchesOnBijectionCount) {
    InferenceOptions opts;
    opts.m = 12;
    opts.M = 0;
    const auto p = cubic_pair(200, 6);
    const auto a = infer(p, opts, 3);
    const auto b = infer_no_bijections(p, 12, 3);
    EXPECT_EQ(a.record.p_x, b.record.p_x);
    EXPECT_EQ(a.record.M, 0u);
    opts.keep_samples = false;
    opts.M = 2;
    EXPECT_TRUE(infer(p, opts, 3).samples.empty());
}
