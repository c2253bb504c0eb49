#pragma once
#include "gestrec/image.hpp"

namespace gestrec {

// Chroma intervals and the two noise-filtration thresholds. The size
// thresholds are pixel counts; negative values resolve at run time to a
// fraction of the image area (0.5% regions, 0.1% holes).
struct SkinParams {
    int cb_lo = 77;
    int cb_hi = 127;
    int cr_lo = 133;
    int cr_hi = 173;
    int min_region_size = -1;
    int max_hole_size = -1;
    bool apply_gray_world = true;

    int resolved_min_region(std::size_t image_area) const {
        return min_region_size >= 0 ? min_region_size : static_cast<int>(image_area / 200);
    }
    int resolved_max_hole(std::size_t image_area) const {
        return max_hole_size >= 0 ? max_hole_size : static_cast<int>(image_area / 1000);
    }
};

// Illumination cast correction: scales each channel by inv_mean/max(inv_mean)
// so all channel means land on the smallest one.
Image gray_world(const Image& img);

// Pixel is skin iff Cb and Cr fall inside the configured intervals; Y is ignored.
BinaryMask skin_mask(const Image& img, const SkinParams& p);

// Two passes: drop foreground components smaller than min_region_size, then
// fill enclosed background holes smaller than max_hole_size. The background
// component touching the frame border is never filled.
BinaryMask filter_noise(const BinaryMask& mask, const SkinParams& p);

} // namespace gestrec
