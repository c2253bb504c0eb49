#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gestrec/image.hpp"
#include "oracles.hpp"

using namespace gestrec;

namespace {

Image rgb_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    Image img(1, 1, 3, Colorspace::RGB);
    img.data = {r, g, b};
    return img;
}

} // namespace

TEST_CASE("rgb_to_ycbcr fixed points and formula") {
    Image gray = rgb_to_ycbcr(rgb_pixel(128, 128, 128));
    CHECK(gray.data[0] == 128);
    CHECK(gray.data[1] == 128);
    CHECK(gray.data[2] == 128);

    Image black = rgb_to_ycbcr(rgb_pixel(0, 0, 0));
    CHECK(black.data[0] == 0);
    CHECK(black.data[1] == 128);
    CHECK(black.data[2] == 128);

    // Pure red, evaluated from the conversion matrix directly.
    Image red = rgb_to_ycbcr(rgb_pixel(255, 0, 0));
    CHECK(red.data[0] == static_cast<int>(std::round(0.299 * 255)));
    CHECK(red.data[1] == static_cast<int>(std::round(128 - 0.168736 * 255)));
    CHECK(red.data[2] == 255); // 128 + 0.5*255 clamps
    CHECK(red.colorspace == Colorspace::YCbCr);

    CHECK_THROWS_AS(rgb_to_ycbcr(Image(2, 2, 1, Colorspace::Gray)), ArgumentError);
}

TEST_CASE("ycbcr round trip stays close") {
    std::mt19937_64 rng(7);
    Image img(16, 16, 3, Colorspace::RGB);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() % 256);
    Image back = ycbcr_to_rgb(rgb_to_ycbcr(img));
    for (std::size_t i = 0; i < img.data.size(); ++i)
        CHECK(std::abs(int(img.data[i]) - int(back.data[i])) <= 2);
}

TEST_CASE("resize identity and constants") {
    std::mt19937_64 rng(3);
    Image img(13, 9, 3, Colorspace::RGB);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() % 256);

    Image same = resize(img, 13, 9);
    CHECK(same.data == img.data);

    Image flat(20, 10, 1, Colorspace::Gray, 77);
    for (auto [w, h] : {std::pair{7, 3}, {41, 23}, {1, 1}}) {
        Image scaled = resize(flat, w, h);
        for (auto v : scaled.data) CHECK(v == 77);
    }

    CHECK_THROWS_AS(resize(img, 0, 5), ArgumentError);
}

namespace {

// Direct 4x4 separable-kernel evaluation at each output pixel.
double cubic_w(double t) {
    t = std::abs(t);
    if (t <= 1.0) return 1.5 * t * t * t - 2.5 * t * t + 1.0;
    if (t < 2.0) return -0.5 * t * t * t + 2.5 * t * t - 4.0 * t + 2.0;
    return 0.0;
}

int bicubic_oracle(const Image& img, double sx, double sy, int ox, int oy, int c) {
    double src_x = (ox + 0.5) * sx - 0.5;
    double src_y = (oy + 0.5) * sy - 0.5;
    int x0 = static_cast<int>(std::floor(src_x));
    int y0 = static_cast<int>(std::floor(src_y));
    double acc = 0;
    for (int j = -1; j <= 2; ++j) {
        for (int i = -1; i <= 2; ++i) {
            int xs = std::clamp(x0 + i, 0, img.width - 1);
            int ys = std::clamp(y0 + j, 0, img.height - 1);
            acc += cubic_w(i - (src_x - x0)) * cubic_w(j - (src_y - y0)) * img.at(xs, ys, c);
        }
    }
    return static_cast<int>(std::clamp(std::round(acc), 0.0, 255.0));
}

} // namespace

TEST_CASE("resize matches a direct bicubic oracle at camera scale") {
    // Smooth synthetic content at the source resolution the pipeline takes.
    Image src(1600, 1200, 1, Colorspace::Gray);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x)
            src.at(x, y) = static_cast<std::uint8_t>(
                127.5 + 90.0 * std::sin(x * 0.013) * std::cos(y * 0.017) + 30.0 * std::sin(x * 0.002));

    Image out = resize(src, 176, 144);
    double sx = 1600.0 / 176.0, sy = 1200.0 / 144.0;
    int worst = 0;
    for (int y = 0; y < 144; ++y)
        for (int x = 0; x < 176; ++x)
            worst = std::max(worst, std::abs(int(out.at(x, y)) - bicubic_oracle(src, sx, sy, x, y, 0)));
    CHECK(worst <= 1);
}

TEST_CASE("threshold") {
    Image zeros(4, 4, 1, Colorspace::Gray, 0);
    CHECK(threshold(zeros, 1).count() == 0);

    Image full(4, 4, 1, Colorspace::Gray, 255);
    CHECK(threshold(full, 1).count() == 16);

    Image checker(8, 8, 1, Colorspace::Gray);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) checker.at(x, y) = (x + y) % 2 ? 200 : 10;
    BinaryMask mask = threshold(checker, 100);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) CHECK(mask.at(x, y) == ((x + y) % 2 == 1));
}

TEST_CASE("connected_components basics") {
    BinaryMask empty(5, 5);
    CHECK(connected_components(empty, 8).count == 0);

    BinaryMask diag(4, 4);
    diag.set(1, 1, true);
    diag.set(2, 2, true);
    CHECK(connected_components(diag, 8).count == 1);
    CHECK(connected_components(diag, 4).count == 2);
}

TEST_CASE("connected_components partitions like flood fill") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryMask mask = oracles::random_mask(rng, 32, 32, 0.45);
        for (int conn : {4, 8}) {
            ComponentTable table = connected_components(mask, conn);
            auto ref = oracles::flood_fill_labels(mask, conn);

            int ref_count = *std::max_element(ref.begin(), ref.end());
            REQUIRE(table.count == ref_count);
            // Same partition up to relabeling; both label in raster-first order,
            // so the labels must in fact coincide.
            for (std::size_t i = 0; i < ref.size(); ++i) CHECK(table.labels[i] == ref[i]);

            std::size_t total = 0;
            for (int lab = 1; lab <= table.count; ++lab) total += table.sizes[lab];
            CHECK(total == mask.count());
        }
    }
}

TEST_CASE("morphology examples") {
    BinaryMask full(6, 6, true);
    BinaryMask eroded = morphology(full, MorphOp::Erode, 1);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x)
            CHECK(eroded.at(x, y) == (x > 0 && x < 5 && y > 0 && y < 5));

    CHECK_THROWS_AS(morphology(full, MorphOp::Erode, 0), ArgumentError);
}

TEST_CASE("morphology properties on random masks") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 12; ++trial) {
        BinaryMask mask = oracles::random_mask(rng, 24, 20, 0.4);
        int r = 1 + static_cast<int>(rng() % 2);

        BinaryMask er = morphology(mask, MorphOp::Erode, r);
        BinaryMask di = morphology(mask, MorphOp::Dilate, r);
        CHECK(er == oracles::brute_morph(mask, false, r));
        CHECK(di == oracles::brute_morph(mask, true, r));

        // close(mask) contains mask
        BinaryMask cl = morphology(mask, MorphOp::Close, r);
        for (std::size_t i = 0; i < mask.bits.size(); ++i)
            if (mask.bits[i]) CHECK(cl.bits[i]);

        // erode(complement) = complement(dilate) away from the frame border,
        // where the raster models the full plane.
        BinaryMask lhs = morphology(complement(mask), MorphOp::Erode, r);
        BinaryMask rhs = complement(di);
        for (int y = r; y < mask.height - r; ++y)
            for (int x = r; x < mask.width - r; ++x) CHECK(lhs.at(x, y) == rhs.at(x, y));
    }
}

TEST_CASE("median_filter") {
    BinaryMask flat(9, 9, true);
    CHECK(median_filter(flat, 3) == flat);

    BinaryMask lone(9, 9);
    lone.set(4, 4, true);
    CHECK(median_filter(lone, 3).count() == 0);

    CHECK_THROWS_AS(median_filter(flat, 4), ArgumentError);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        BinaryMask mask = oracles::random_mask(rng, 21, 17, 0.5);
        for (int w : {3, 5}) CHECK(median_filter(mask, w) == oracles::brute_median(mask, w));
    }
}

TEST_CASE("sobel_edges") {
    BinaryMask empty(7, 7);
    CHECK(sobel_edges(empty).count() == 0);

    BinaryMask full(7, 7, true);
    BinaryMask ring = sobel_edges(full);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x)
            CHECK(ring.at(x, y) == (x == 0 || x == 6 || y == 0 || y == 6));

    // Filled square: boundary = foreground pixels with a background 4-neighbor.
    BinaryMask sq(12, 12);
    for (int y = 3; y <= 8; ++y)
        for (int x = 2; x <= 9; ++x) sq.set(x, y, true);
    BinaryMask edges = sobel_edges(sq);
    for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 12; ++x) {
            bool expect = false;
            if (sq.at(x, y)) {
                auto bg = [&](int xs, int ys) { return !sq.in_bounds(xs, ys) || !sq.at(xs, ys); };
                expect = bg(x - 1, y) || bg(x + 1, y) || bg(x, y - 1) || bg(x, y + 1);
            }
            CHECK(edges.at(x, y) == expect);
        }
    }
}
