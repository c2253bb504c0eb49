#pragma once
#include <cstdint>
#include <vector>

#include "gestrec/errors.hpp"

namespace gestrec {

enum class Colorspace { RGB, YCbCr, Gray };

// Row-major 8-bit raster, 1 or 3 interleaved channels.
// Coordinates are (x = column, y = row), y grows downward.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;
    Colorspace colorspace = Colorspace::Gray;
    std::vector<std::uint8_t> data;

    Image() = default;
    Image(int w, int h, int ch, Colorspace cs, std::uint8_t fill = 0)
        : width(w), height(h), channels(ch), colorspace(cs),
          data(static_cast<std::size_t>(w) * h * ch, fill) {}

    std::uint8_t at(int x, int y, int c = 0) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c = 0) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

// Foreground/background raster; stored one byte per pixel.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false)
        : width(w), height(h), bits(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

    bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::size_t count() const;
    bool operator==(const BinaryMask& o) const = default;
};

// Connected-component labeling result. Label 0 is background; component ids
// run 1..count in raster order of each component's first pixel. sizes and
// bboxes are indexed by id (slot 0 unused).
struct ComponentTable {
    struct BBox {
        int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    };
    int width = 0;
    int height = 0;
    std::vector<int> labels;
    int count = 0;
    std::vector<std::size_t> sizes;
    std::vector<BBox> bboxes;

    int label_at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

enum class MorphOp { Erode, Dilate, Close };

// Full-range BT.601. Gray stays gray: (128,128,128) -> (128,128,128).
Image rgb_to_ycbcr(const Image& img);
// Inverse of the above, clamped to [0,255]; used when synthesizing RGB test data.
Image ycbcr_to_rgb(const Image& img);
// BT.601 luma of an RGB or YCbCr image; identity on Gray.
Image to_gray(const Image& img);

// Bicubic (Catmull-Rom) resampling with edge-clamped borders.
Image resize(const Image& img, int new_w, int new_h);

// pixel >= t -> foreground.
BinaryMask threshold(const Image& img, int t);

// Two-pass labeling; connectivity 4 or 8.
ComponentTable connected_components(const BinaryMask& mask, int connectivity = 8);

// Extract one labeled component as a fresh mask.
BinaryMask component_mask(const ComponentTable& table, int label);

// Square (2r+1)^2 structuring element. Pixels outside the frame are
// background; Close keeps the dilated support beyond the frame so that
// close(mask) contains mask even at the border.
BinaryMask morphology(const BinaryMask& mask, MorphOp op, int radius);

// Per-pixel majority vote over an odd window x window neighborhood, edge-clamped.
BinaryMask median_filter(const BinaryMask& mask, int window);

// |Gx|+|Gy| of the 3x3 Sobel kernels over the 0/1 raster; true where the
// magnitude is nonzero and the pixel is foreground (outer contour).
BinaryMask sobel_edges(const BinaryMask& mask);

BinaryMask complement(const BinaryMask& mask);

} // namespace gestrec
