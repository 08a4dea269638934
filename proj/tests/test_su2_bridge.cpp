#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ontocell/io.hpp"
#include "ontocell/kernels.hpp"
#include "ontocell/su2_bridge.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace ontocell;

namespace {

// residual of the three-term recursion, checked directly on the rows
double recursion_residual(const BridgeMatrix& b) {
    const double ell = b.ell.value();
    double worst = 0.0;
    for (int i = 0; i < b.dim; ++i) {
        const double r = b.label(i).value();
        for (int j = 0; j < b.dim; ++j) {
            const double s = b.label(j).value();
            const double left = (j > 0) ? std::sqrt((ell + 1.0 - s) * (ell + s)) * b.at(i, j - 1) : 0.0;
            const double right =
                (j + 1 < b.dim) ? std::sqrt((ell + 1.0 + s) * (ell - s)) * b.at(i, j + 1) : 0.0;
            worst = std::max(worst, std::abs(2.0 * r * b.at(i, j) - left - right));
        }
    }
    return worst;
}

double orthogonality_residual(const BridgeMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) {
            double dot = 0.0;
            for (int k = 0; k < b.dim; ++k) dot += b.at(i, k) * b.at(j, k);
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_CASE("ell = 1/2: all entries have modulus 1/sqrt(2), closed-form exponential") {
    const HalfInt half(1);
    const BridgeMatrix rec = bridge_by_recursion(half);
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(std::abs(rec.at(i, j)) - r) < 1e-14);

    // raw exponential equals (1/sqrt 2) [[1, i],[i, 1]]
    const ComplexMatrix x = rotation_exponential(half);
    CHECK(std::abs(x.at(0, 0) - cplx(r, 0.0)) < 1e-12);
    CHECK(std::abs(x.at(0, 1) - cplx(0.0, r)) < 1e-12);
    CHECK(std::abs(x.at(1, 0) - cplx(0.0, r)) < 1e-12);
    CHECK(std::abs(x.at(1, 1) - cplx(r, 0.0)) < 1e-12);

    const BridgeMatrix rot = bridge_by_rotation(half);
    CHECK(max_bridge_diff(rec, rot) < 1e-12);
}

TEST_CASE("raw rotation exponential is unitary") {
    for (int twice : {1, 2, 9, 53}) {
        const ComplexMatrix x = rotation_exponential(HalfInt(twice));
        const ComplexMatrix gram = kern::multiply(kern::adjoint(x), x);
        CHECK(kern::max_abs_diff(gram, ComplexMatrix::identity(x.dim)) < 1e-12);
    }
}

TEST_CASE("rows normalised, recursion satisfied, M M^T = I") {
    for (int twice : {2, 10, 53}) {
        const BridgeMatrix b = bridge_by_recursion(HalfInt(twice));
        for (int i = 0; i < b.dim; ++i) {
            double norm2 = 0.0;
            for (int j = 0; j < b.dim; ++j) norm2 += b.at(i, j) * b.at(i, j);
            CHECK(std::abs(norm2 - 1.0) < 1e-12);
        }
        CHECK(recursion_residual(b) < 1e-9 * std::max(1.0, static_cast<double>(twice)));
        CHECK(orthogonality_residual(b) < 1e-10);
    }
}

TEST_CASE("cross-oracle agreement for the full ell set") {
    for (int twice : {1, 2, 3, 10, 20, 53}) {
        const BridgeMatrix rec = bridge_by_recursion(HalfInt(twice));
        const BridgeMatrix rot = bridge_by_rotation(HalfInt(twice));
        CHECK(max_bridge_diff(rec, rot) < 1e-8);
    }
}

TEST_CASE("support profile: empty set, decay at ell = 53/2, monotone in the radius") {
    const BridgeMatrix b = bridge_by_recursion(HalfInt(53));
    CHECK(support_profile(b, 10.0) == 0.0);  // no index reaches that far
    CHECK_THROWS_AS(support_profile(b, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(support_profile(b, 0.99), std::invalid_argument);

    // entry magnitudes decay rapidly outside the circle r^2 + s^2 = ell^2
    CHECK(support_profile(b, 1.15) < 1e-2);

    double prev = 1e9;
    for (double rf : {1.0, 1.1, 1.2, 1.3}) {
        const double v = support_profile(b, rf);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("render: degenerate constant matrix maps to mid-gray") {
    BridgeMatrix b(HalfInt(2));
    for (auto& v : b.a) v = 0.37;
    const auto px = render_bridge_pixels(b);
    for (unsigned char p : px) CHECK(p == 128);
}

TEST_CASE("render: 2x2 case has exactly two gray levels") {
    const BridgeMatrix b = bridge_by_recursion(HalfInt(1));
    const auto px = render_bridge_pixels(b);
    REQUIRE(px.size() == 4);
    // entries are +-1/sqrt(2): min maps to 255 (white), max to 0 (black)
    int lo = 0, hi = 0;
    for (unsigned char p : px) {
        if (p == 0) ++hi;
        if (p == 255) ++lo;
    }
    CHECK(lo + hi == 4);
    CHECK(hi == 3);  // three positive entries after sign alignment
}

TEST_CASE("render: deterministic bytes and P5 header") {
    const BridgeMatrix b = bridge_by_recursion(HalfInt(9));
    const auto tmp = std::filesystem::temp_directory_path() / "ontocell_bridge_test.pgm";
    render_bridge(b, tmp.string());
    const std::string first = read_text_file(tmp.string());
    render_bridge(b, tmp.string());
    const std::string second = read_text_file(tmp.string());
    CHECK(first == second);
    CHECK(first.rfind("P5\n10 10\n255\n", 0) == 0);
    CHECK(first.size() == 12 + 100);
    std::filesystem::remove(tmp);
}

TEST_CASE("dimension guard") {
    CHECK_THROWS_AS(bridge_by_recursion(HalfInt(2 * 4096 + 1)), std::invalid_argument);
}
