#include <gtest/gtest.h>

#include <random>

#include "bregpnp/denoiser.hpp"
#include "bregpnp/errors.hpp"
#include "test_support.hpp"

using namespace bregpnp;
using bregpnp::testing::random_image;

TEST(Denoiser, Examples) {
    std::mt19937_64 rng(1);
    const Image x = random_image(5, 5, rng);
    EXPECT_EQ(IdentityDenoiser().apply(x), x);
    EXPECT_EQ(ScaledContraction(0.5).apply(Image::from_vector({4})), Image::from_vector({2}));
    const Image c(6, 6, 0.7);
    const Image smoothed = LinearSmoother(1.0, uniform_kernel(3)).apply(c);
    for (double v : smoothed.values()) EXPECT_NEAR(v, 0.7, 1e-15);
}

TEST(Denoiser, ScaledContractionAroundAnchor) {
    const Image anchor = Image::from_vector({1, 2});
    const ScaledContraction d(0.25, anchor);
    EXPECT_EQ(d.apply(Image::from_vector({5, 2})), Image::from_vector({2, 2}));
    EXPECT_THROW(d.apply(Image::from_vector({1, 2, 3})), DimensionError);
    EXPECT_THROW(ScaledContraction(1.0), ConfigError);
    EXPECT_THROW(ScaledContraction(-0.1), ConfigError);
}

TEST(Denoiser, LinearSmootherValidatesAlpha) {
    EXPECT_THROW(LinearSmoother(1.5, uniform_kernel(3)), ConfigError);
    EXPECT_THROW(LinearSmoother(-0.5, uniform_kernel(3)), ConfigError);
}

TEST(Denoiser, MedianFilterRemovesImpulses) {
    Image x(7, 7, 2.0);
    x(3, 3) = 100.0;
    x(0, 0) = -50.0;
    const Image y = MedianFilter(3).apply(x);
    for (double v : y.values()) EXPECT_EQ(v, 2.0);
    EXPECT_THROW(MedianFilter(4), ConfigError);
    EXPECT_THROW(MedianFilter(9).apply(Image(5, 5)), DimensionError);
}

TEST(Denoiser, ParseSpecs) {
    EXPECT_EQ(parse_denoiser_spec("identity")->name(), "identity");
    EXPECT_EQ(parse_denoiser_spec("contract:0.3")->declared_lipschitz(), 0.3);
    EXPECT_TRUE(parse_denoiser_spec("smooth:0.5")->is_affine());
    EXPECT_FALSE(parse_denoiser_spec("median:3")->is_affine());
    EXPECT_THROW(parse_denoiser_spec("median:2.5"), ConfigError);
    EXPECT_THROW(parse_denoiser_spec("smooth:x"), ConfigError);
    EXPECT_THROW(parse_denoiser_spec("dncnn"), ConfigError);
}

TEST(LipschitzEstimate, Examples) {
    const Shape probe{16, 16};
    const auto contraction = lipschitz_estimate(ScaledContraction(0.3), probe, 10, 1);
    EXPECT_NEAR(contraction.value, 0.3, 1e-6);
    EXPECT_FALSE(contraction.lower_bound_only);
    EXPECT_NEAR(lipschitz_estimate(LinearSmoother(0.5, uniform_kernel(3)), probe, 10, 2).value, 1.0, 1e-4);
    EXPECT_NEAR(lipschitz_estimate(IdentityDenoiser(), probe, 1, 3).value, 1.0, 1e-12);
}

TEST(LipschitzEstimate, NonlinearIsFlaggedLowerBound) {
    const auto est = lipschitz_estimate(MedianFilter(3), Shape{12, 12}, 50, 4);
    EXPECT_TRUE(est.lower_bound_only);
    EXPECT_GT(est.value, 0.0);
    EXPECT_THROW(lipschitz_estimate(MedianFilter(3), Shape{12, 12}, 0, 4), ConfigError);
}

TEST(LipschitzEstimate, DefaultLinearPartCoversCustomAffineDenoisers) {
    // Affine plugin that only overrides apply(): D(x) = 2 + 0.4 x.
    struct Shifted final : Denoiser {
        Image apply(const Image& x) const override {
            Image out = 0.4 * x;
            for (double& v : out.values()) v += 2.0;
            return out;
        }
        std::string name() const override { return "shifted"; }
        bool is_affine() const override { return true; }
    };
    EXPECT_NEAR(lipschitz_estimate(Shifted(), Shape{8, 8}, 5, 5).value, 0.4, 1e-9);
}

TEST(Denoiser, DeclaredBoundsHoldOnRandomPairs) {
    std::mt19937_64 rng(6);
    const IdentityDenoiser identity;
    const LinearSmoother smooth_box(0.7, uniform_kernel(3));
    const LinearSmoother smooth_gauss(0.3, gaussian_kernel(5, 1.0));
    const ScaledContraction contraction(0.45, Image(10, 10, 0.3));
    for (const Denoiser* d : std::initializer_list<const Denoiser*>{&identity, &smooth_box, &smooth_gauss, &contraction}) {
        const auto M = d->declared_lipschitz();
        ASSERT_TRUE(M.has_value()) << d->name();
        for (int t = 0; t < 1000; ++t) {
            const Image a = random_image(10, 10, rng);
            const Image b = random_image(10, 10, rng);
            EXPECT_LE(norm2(d->apply(a) - d->apply(b)), (*M + 1e-9) * norm2(a - b)) << d->name();
        }
    }
}

TEST(Denoiser, SmootherIsNonexpansiveForAnyAlpha) {
    for (double alpha : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        for (const Kernel& k : {uniform_kernel(3), uniform9(), gaussian9(1.6)}) {
            const auto est = lipschitz_estimate(LinearSmoother(alpha, k), Shape{12, 12}, 10, 7);
            EXPECT_LE(est.value, 1.0 + 1e-9);
        }
    }
}

TEST(Denoiser, IsDeterministic) {
    std::mt19937_64 rng(8);
    const Image x = random_image(11, 9, rng);
    for (const char* spec : {"identity", "smooth:0.5", "contract:0.2", "median:3"}) {
        const auto d = parse_denoiser_spec(spec);
        EXPECT_EQ(d->apply(x), d->apply(x)) << spec;
    }
}
