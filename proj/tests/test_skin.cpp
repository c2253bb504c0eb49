#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gestrec/skin.hpp"
#include "oracles.hpp"

using namespace gestrec;

namespace {

double channel_mean(const Image& img, int c) {
    double s = 0;
    for (std::size_t i = 0; i < img.pixel_count(); ++i) s += img.data[i * 3 + c];
    return s / static_cast<double>(img.pixel_count());
}

Image ycbcr_pixel(std::uint8_t y, std::uint8_t cb, std::uint8_t cr) {
    Image img(1, 1, 3, Colorspace::YCbCr);
    img.data = {y, cb, cr};
    return img;
}

} // namespace

TEST_CASE("gray_world scaling factors") {
    // Two-pixel channels with means exactly (100, 200, 50).
    Image img(2, 1, 3, Colorspace::RGB);
    img.data = {50, 150, 25, 150, 250, 75};
    Image out = gray_world(img);

    // All post-scaling means land on the smallest mean.
    for (int c = 0; c < 3; ++c) CHECK(channel_mean(out, c) == doctest::Approx(50.0).epsilon(0.03));
    // The min-mean channel is scale 1: untouched.
    CHECK(out.data[2] == 25);
    CHECK(out.data[5] == 75);

    Image uniform(4, 4, 3, Colorspace::RGB, 120);
    CHECK(gray_world(uniform).data == uniform.data);

    Image zero_chan(2, 2, 3, Colorspace::RGB, 0);
    for (std::size_t i = 0; i < 4; ++i) zero_chan.data[i * 3] = 10; // only R nonzero
    CHECK_THROWS_AS(gray_world(zero_chan), DegenerateInputError);
}

TEST_CASE("gray_world is idempotent up to rounding") {
    std::mt19937_64 rng(41);
    Image img(24, 18, 3, Colorspace::RGB);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(20 + rng() % 200);
    Image once = gray_world(img);
    Image twice = gray_world(once);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        CHECK(std::abs(int(once.data[i]) - int(twice.data[i])) <= 1);
}

TEST_CASE("skin_mask interval bounds") {
    SkinParams p;
    CHECK(skin_mask(ycbcr_pixel(100, 100, 150), p).at(0, 0));
    // Inclusive lower bounds.
    CHECK(skin_mask(ycbcr_pixel(0, 77, 133), p).at(0, 0));
    CHECK_FALSE(skin_mask(ycbcr_pixel(0, 76, 133), p).at(0, 0));
    // Above the Cr interval is never skin, whatever Y.
    for (int y : {0, 128, 255})
        CHECK_FALSE(skin_mask(ycbcr_pixel(static_cast<std::uint8_t>(y), 100, 200), p).at(0, 0));

    CHECK_THROWS_AS(skin_mask(Image(2, 2, 3, Colorspace::RGB), p), ArgumentError);
}

TEST_CASE("filter_noise removes speckles and fills holes") {
    SkinParams p;
    p.min_region_size = 10;
    p.max_hole_size = 10;

    BinaryMask speckles(20, 20);
    speckles.set(3, 3, true);
    speckles.set(10, 15, true);
    speckles.set(17, 2, true);
    CHECK(filter_noise(speckles, p).count() == 0);

    // Solid disk with a small interior hole.
    BinaryMask disk(21, 21);
    for (int y = 0; y < 21; ++y)
        for (int x = 0; x < 21; ++x)
            if ((x - 10) * (x - 10) + (y - 10) * (y - 10) <= 49) disk.set(x, y, true);
    BinaryMask holed = disk;
    holed.set(10, 10, false);
    holed.set(11, 10, false);
    holed.set(10, 11, false);
    holed.set(11, 11, false);
    CHECK(filter_noise(holed, p) == disk);

    // The border-connected background must never be filled.
    BinaryMask tiny(5, 5);
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) tiny.set(x, y, true);
    BinaryMask out = filter_noise(tiny, p);
    CHECK(out.count() == 0); // 9 px < min_region_size, pruned
    p.min_region_size = 4;
    out = filter_noise(tiny, p);
    CHECK(out == tiny); // outer background stays background despite max_hole_size

    // A component at least min_region_size survives untouched.
    CHECK(filter_noise(disk, p) == disk);
}

TEST_CASE("filter_noise equals prune-then-fill oracle on random masks") {
    std::mt19937_64 rng(97);
    SkinParams p;
    p.min_region_size = 6;
    p.max_hole_size = 5;

    for (int trial = 0; trial < 15; ++trial) {
        BinaryMask mask = oracles::random_mask(rng, 28, 24, 0.55);
        BinaryMask got = filter_noise(mask, p);

        // Oracle: flood-fill based prune, then flood-fill based hole fill.
        auto fg_labels = oracles::flood_fill_labels(mask, 8);
        int n_fg = fg_labels.empty() ? 0 : *std::max_element(fg_labels.begin(), fg_labels.end());
        std::vector<std::size_t> fg_sizes(n_fg + 1, 0);
        for (int lab : fg_labels)
            if (lab) fg_sizes[lab]++;
        BinaryMask pruned(mask.width, mask.height);
        for (std::size_t i = 0; i < mask.bits.size(); ++i)
            pruned.bits[i] =
                (fg_labels[i] && fg_sizes[fg_labels[i]] >= static_cast<std::size_t>(p.min_region_size))
                    ? 1
                    : 0;

        auto bg_labels = oracles::flood_fill_labels(complement(pruned), 4);
        int n_bg = bg_labels.empty() ? 0 : *std::max_element(bg_labels.begin(), bg_labels.end());
        std::vector<std::size_t> bg_sizes(n_bg + 1, 0);
        std::vector<bool> border(n_bg + 1, false);
        for (int y = 0; y < mask.height; ++y) {
            for (int x = 0; x < mask.width; ++x) {
                int lab = bg_labels[static_cast<std::size_t>(y) * mask.width + x];
                if (!lab) continue;
                bg_sizes[lab]++;
                if (x == 0 || y == 0 || x == mask.width - 1 || y == mask.height - 1)
                    border[lab] = true;
            }
        }
        BinaryMask want = pruned;
        for (std::size_t i = 0; i < want.bits.size(); ++i) {
            int lab = bg_labels[i];
            if (lab && !border[lab] && bg_sizes[lab] < static_cast<std::size_t>(p.max_hole_size))
                want.bits[i] = 1;
        }
        CHECK(got == want);
    }
}

TEST_CASE("skin_mask is pointwise: any pixel permutation commutes") {
    std::mt19937_64 rng(61);
    Image img(12, 9, 3, Colorspace::YCbCr);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(rng() % 256);
    SkinParams p;
    BinaryMask direct = skin_mask(img, p);

    // Reverse the pixel order, mask, and undo the reversal.
    Image rev = img;
    const std::size_t n = img.pixel_count();
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) rev.data[i * 3 + c] = img.data[(n - 1 - i) * 3 + c];
    BinaryMask rmask = skin_mask(rev, p);
    for (std::size_t i = 0; i < n; ++i) CHECK(direct.bits[i] == rmask.bits[n - 1 - i]);
}

TEST_CASE("skin_mask matches an exhaustive chroma table") {
    SkinParams p;
    Image img(256, 256, 3, Colorspace::YCbCr);
    for (int cr = 0; cr < 256; ++cr) {
        for (int cb = 0; cb < 256; ++cb) {
            img.at(cb, cr, 0) = 128;
            img.at(cb, cr, 1) = static_cast<std::uint8_t>(cb);
            img.at(cb, cr, 2) = static_cast<std::uint8_t>(cr);
        }
    }
    BinaryMask mask = skin_mask(img, p);
    for (int cr = 0; cr < 256; ++cr)
        for (int cb = 0; cb < 256; ++cb)
            CHECK(mask.at(cb, cr) == (cb >= 77 && cb <= 127 && cr >= 133 && cr <= 173));
}
