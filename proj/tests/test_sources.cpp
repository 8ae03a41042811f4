#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "stframe/analysis.hpp"
#include "stframe/gallery.hpp"
#include "stframe/sources.hpp"
#include "stframe/spec_io.hpp"

using namespace stframe;

namespace {

// Indices below are 1-based to read like the component tables.
double R(const Curvature4& r, int i, int j, int k, int l) { return r(i - 1, j - 1, k - 1, l - 1); }
double G(const Connection4& c, int i, int j, int k) { return c(i - 1, j - 1, k - 1); }

}  // namespace

TEST(LieGroup, ExampleOneConnectionAndCurvature) {
    auto [c, r] = lie_group_curvature(
        LieAlgebra4::from_brackets({{0, 1, 1, 2.0}, {0, 2, 2, -1.0}, {0, 3, 2, 2.0}, {0, 3, 3, -1.0}}));
    EXPECT_NEAR(G(c, 1, 3, 4), -1.0, 1e-12);
    EXPECT_NEAR(G(c, 2, 1, 2), -2.0, 1e-12);
    EXPECT_NEAR(G(c, 3, 1, 3), 1.0, 1e-12);
    EXPECT_NEAR(G(c, 3, 1, 4), -1.0, 1e-12);
    EXPECT_NEAR(G(c, 4, 1, 3), -1.0, 1e-12);
    EXPECT_NEAR(G(c, 4, 1, 4), 1.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 2, 1, 2), 4.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 4, 1, 4), 4.0, 1e-12);
    EXPECT_NEAR(R(r, 2, 3, 2, 3), -2.0, 1e-12);
    EXPECT_NEAR(R(r, 2, 4, 2, 4), -2.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 3, 1, 4), -2.0, 1e-12);
    EXPECT_NEAR(R(r, 2, 3, 2, 4), 2.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 3, 1, 3), 0.0, 1e-12);
    EXPECT_NEAR(R(r, 3, 4, 3, 4), 0.0, 1e-12);
}

TEST(LieGroup, ExampleFourWithBEqualTwo) {
    const double a = 1.0, b = 2.0;
    auto [c, r] = lie_group_curvature(
        LieAlgebra4::from_brackets({{0, 1, 1, a}, {0, 2, 2, -a}, {0, 2, 3, -b}, {0, 3, 2, b}, {0, 3, 3, -a}}));
    EXPECT_NEAR(G(c, 1, 3, 4), -2.0, 1e-12);
    EXPECT_NEAR(G(c, 2, 1, 2), -1.0, 1e-12);
    EXPECT_NEAR(G(c, 3, 1, 3), 1.0, 1e-12);
    EXPECT_NEAR(G(c, 4, 1, 4), 1.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 2, 1, 2), 1.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 3, 1, 3), 1.0, 1e-12);
    EXPECT_NEAR(R(r, 1, 4, 1, 4), 1.0, 1e-12);
    EXPECT_NEAR(R(r, 2, 3, 2, 3), -1.0, 1e-12);
    EXPECT_NEAR(R(r, 2, 4, 2, 4), -1.0, 1e-12);
    EXPECT_NEAR(R(r, 3, 4, 3, 4), 1.0, 1e-12);
}

TEST(LieGroup, ConnectionIsMetric) {
    auto [c, r] = lie_group_curvature(
        LieAlgebra4::from_brackets({{0, 1, 1, 0.7}, {0, 2, 2, -0.3}, {0, 2, 3, -1.1}, {0, 3, 2, 1.1}, {0, 3, 3, 0.2}}));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) EXPECT_NEAR(c(i, j, k), -c(i, k, j), 1e-15);
}

TEST(LieGroup, AbelianIsFlat) {
    auto [c, r] = lie_group_curvature(LieAlgebra4{});
    EXPECT_EQ(r.max_abs(), 0.0);
    for (const auto& a : c.gamma)
        for (const auto& b : a)
            for (double v : b) EXPECT_EQ(v, 0.0);
}

TEST(LieGroup, JacobiViolationIsRejected) {
    // [e1,e2]=e3, [e2,e3]=e4, [e1,e4]=e1: the Jacobi sum over (e1,e2,e3) is [e4,e1] = -e1.
    const auto g = LieAlgebra4::from_brackets({{0, 1, 2, 1.0}, {1, 2, 3, 1.0}, {0, 3, 0, 1.0}});
    EXPECT_GT(g.jacobi_defect(), 0.5);
    EXPECT_THROW(lie_group_curvature(g), JacobiViolation);
}

TEST(Generators, SurfaceProduct) {
    const Curvature4 r = surface_product(1.0, 2.0);
    EXPECT_EQ(R(r, 1, 2, 1, 2), -1.0);
    EXPECT_EQ(R(r, 3, 4, 3, 4), -2.0);
    EXPECT_EQ(R(r, 1, 2, 2, 1), 1.0);
    const auto rho = oracle::ricci(oracle::dense(r));
    EXPECT_DOUBLE_EQ(rho[0][0], 1.0);
    EXPECT_DOUBLE_EQ(rho[1][1], 1.0);
    EXPECT_DOUBLE_EQ(rho[2][2], 2.0);
    EXPECT_DOUBLE_EQ(rho[3][3], 2.0);
    EXPECT_EQ(surface_product(0.0, 0.0).max_abs(), 0.0);
}

TEST(Generators, SpaceFormProduct) {
    const Curvature4 r = space_form_product(1.0);
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) EXPECT_EQ(R(r, i, j, i, j), -1.0);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k) EXPECT_EQ(R(r, i, j, k, 4), 0.0);
    const auto rho = oracle::ricci(oracle::dense(r));
    EXPECT_DOUBLE_EQ(rho[0][0], 2.0);
    EXPECT_DOUBLE_EQ(rho[2][2], 2.0);
    EXPECT_DOUBLE_EQ(rho[3][3], 0.0);
    EXPECT_EQ(space_form_product(0.0).max_abs(), 0.0);
}

TEST(Generators, ConstantCurvature) {
    const auto rho = oracle::ricci(oracle::dense(constant_curvature(-1.0)));
    EXPECT_DOUBLE_EQ(rho[0][0] + rho[1][1] + rho[2][2] + rho[3][3], -12.0);
    EXPECT_EQ(constant_curvature(0.0).max_abs(), 0.0);
}

TEST(Generators, RandomIsDeterministicAndValid) {
    EXPECT_EQ(random_curvature(0), random_curvature(0));
    EXPECT_FALSE(random_curvature(0) == random_curvature(1));
    for (std::uint64_t s = 0; s < 20; ++s) EXPECT_NO_THROW(make_curvature(random_curvature(s).components()));
    EXPECT_EQ(random_frame(3), random_frame(3));
    EXPECT_EQ(random_frame(3).orientation(), 1);
}

TEST(Generators, SurfaceProductWeaklyEinsteinIffSquaresAgree) {
    for (double c1 : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0})
        for (double c2 : {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0})
            EXPECT_EQ(weakly_einstein_residual(surface_product(c1, c2)).passes, c1 * c1 == c2 * c2) << c1 << " " << c2;
}

TEST(LoadSpec, GalleryDocument) {
    const GeometrySpec s = load_spec(R"({"kind":"gallery","name":"example4","a":1,"b":0})");
    EXPECT_EQ(s.kind, GeometryKind::Gallery);
    EXPECT_EQ(s.gallery_name, "example4");
    EXPECT_EQ(s.params.at("a"), 1.0);
    const RealizedGeometry g = realize(s);
    ASSERT_TRUE(g.gallery.has_value());
    EXPECT_EQ(g.tensor, gallery("example4").tensor);
}

TEST(LoadSpec, MissingParameterIsValidationError) {
    try {
        load_spec(R"({"kind":"surface_product","c1":1})");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "c2");
    }
}

TEST(LoadSpec, RawComponentWithSymmetryClosure) {
    const GeometrySpec s = load_spec(R"({"kind":"raw_curvature","components":[[1,2,1,2,4]],"symmetry_closure":true})");
    const Curvature4 r = realize(s).tensor;
    RawTensor4 expected{};
    expected[flat_index(0, 1, 0, 1)] = 4.0;
    expected[flat_index(1, 0, 1, 0)] = 4.0;
    expected[flat_index(0, 1, 1, 0)] = -4.0;
    expected[flat_index(1, 0, 0, 1)] = -4.0;
    EXPECT_EQ(r.components(), expected);
}

TEST(LoadSpec, RawComponentWithoutClosureFailsSymmetry) {
    const GeometrySpec s = load_spec(R"({"kind":"raw_curvature","components":[[1,2,1,2,4]]})");
    EXPECT_THROW(realize(s), SymmetryViolation);
}

TEST(LoadSpec, LieGroupDocumentMatchesGallery) {
    const GeometrySpec s = load_spec(
        R"({"kind":"lie_group","c":[[1,2,2,2],[1,3,3,-1],[1,4,3,2],[1,4,4,-1]]})");
    EXPECT_EQ(realize(s).tensor, gallery("example-s2-1").tensor);
}

TEST(LoadSpec, Errors) {
    try {
        load_spec("{\"kind\": \"surface_product\", \"c1\": }");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_GT(e.position(), 20u);
    }
    EXPECT_THROW(load_spec("[1, 2]"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"torus"})"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"lie_group","c":[[2,1,1,1]]})"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"lie_group","c":[[1,5,1,1]]})"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"constant_curvature","c":"one"})"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"constant_curvature","c":1,"volume":0})"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"raw_curvature","components":[[1,2,1,2]]})"), ValidationError);
    EXPECT_THROW(load_spec(R"({"kind":"raw_curvature","components":[[1,2,1,2.5,1]]})"), ValidationError);
}

TEST(LoadSpec, VolumeIsCarried) {
    const GeometrySpec s = load_spec(R"({"kind":"constant_curvature","c":1,"volume":2.5})");
    EXPECT_EQ(realize(s).volume, 2.5);
    EXPECT_EQ(realize(load_spec(R"({"kind":"gallery","name":"example6","m":3})")).volume, 32.0 * M_PI * M_PI);
}

TEST(Gallery, MetadataAndErrors) {
    const GalleryEntry s21 = gallery("example-s2-1");
    EXPECT_EQ(s21.expect.eigenvalues, (Vec4{-8.0, 0.0, 2.0, -2.0}));
    EXPECT_FALSE(s21.expect.weakly_einstein);

    const GalleryEntry e4 = gallery("example4", {{"a", 1.0}, {"b", 0.0}});
    EXPECT_TRUE(e4.expect.weakly_einstein);
    ASSERT_EQ(e4.expect.sign_cases.size(), 1u);
    EXPECT_EQ(e4.expect.sign_cases[0], SignCase::v);

    const GalleryEntry e6 = gallery("example6", {{"m", 2.0}});
    EXPECT_EQ(*e6.expect.chi, -4.0);
    EXPECT_EQ(*e6.expect.p1, 0.0);
    EXPECT_EQ(*e6.expect.c_bound, -8.0);
    EXPECT_DOUBLE_EQ(*e6.expect.volume, 16.0 * M_PI * M_PI);
    EXPECT_FALSE(e6.notes.empty());

    EXPECT_THROW(gallery("example7"), UnknownGalleryName);
    EXPECT_THROW(gallery("example4", {{"a", 0.0}}), ValidationError);
    EXPECT_THROW(gallery("example4", {{"m", 2.0}}), ValidationError);
    EXPECT_THROW(gallery("example6", {{"m", 2.5}}), ValidationError);
}

TEST(Gallery, EveryEntryIsAValidTensorWithStatedEigenvalues) {
    for (const auto& info : gallery_catalog()) {
        const GalleryEntry e = gallery(info.name);
        EXPECT_NO_THROW(make_curvature(e.tensor.components())) << info.name;
        const auto rho = oracle::ricci(oracle::dense(e.tensor));
        Vec4 diag{rho[0][0], rho[1][1], rho[2][2], rho[3][3]};
        Vec4 want = e.expect.eigenvalues;
        std::sort(diag.begin(), diag.end());
        std::sort(want.begin(), want.end());
        // Every gallery tensor is given in a Ricci eigenbasis.
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(diag[i], want[i], 1e-12) << info.name;
    }
}
