#include "gestrec/skin.hpp"

#include <algorithm>
#include <cmath>

namespace gestrec {

Image gray_world(const Image& img) {
    if (img.colorspace != Colorspace::RGB || img.channels != 3)
        throw ArgumentError("gray_world: input must be 3-channel RGB");

    double sums[3] = {0, 0, 0};
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        for (int c = 0; c < 3; ++c) sums[c] += img.data[i * 3 + c];

    const double n = static_cast<double>(img.pixel_count());
    double inv[3];
    for (int c = 0; c < 3; ++c) {
        if (sums[c] == 0.0) throw DegenerateInputError("gray_world: channel mean is zero");
        inv[c] = n / sums[c];
    }
    double m = std::max({inv[0], inv[1], inv[2]});

    Image out(img.width, img.height, 3, Colorspace::RGB);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        for (int c = 0; c < 3; ++c) {
            double scaled = img.data[i * 3 + c] * (inv[c] / m);
            double r = std::round(scaled);
            out.data[i * 3 + c] = static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, r)));
        }
    }
    return out;
}

BinaryMask skin_mask(const Image& img, const SkinParams& p) {
    if (img.colorspace != Colorspace::YCbCr || img.channels != 3)
        throw ArgumentError("skin_mask: input must be 3-channel YCbCr");
    BinaryMask out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        int cb = img.data[i * 3 + 1];
        int cr = img.data[i * 3 + 2];
        out.bits[i] = (cb >= p.cb_lo && cb <= p.cb_hi && cr >= p.cr_lo && cr <= p.cr_hi) ? 1 : 0;
    }
    return out;
}

BinaryMask filter_noise(const BinaryMask& mask, const SkinParams& p) {
    const std::size_t area = static_cast<std::size_t>(mask.width) * mask.height;
    const int min_region = p.resolved_min_region(area);
    const int max_hole = p.resolved_max_hole(area);

    // Type 1: prune small foreground components.
    BinaryMask pruned(mask.width, mask.height);
    ComponentTable fg = connected_components(mask, 8);
    for (std::size_t i = 0; i < pruned.bits.size(); ++i) {
        int lab = fg.labels[i];
        pruned.bits[i] = (lab && fg.sizes[lab] >= static_cast<std::size_t>(min_region)) ? 1 : 0;
    }

    // Type 2: fill small enclosed holes. Background connectivity is the
    // complement's 4-connectivity so diagonal foreground joints stay sealed.
    ComponentTable bg = connected_components(complement(pruned), 4);
    std::vector<bool> touches_border(bg.count + 1, false);
    for (int x = 0; x < bg.width; ++x) {
        if (int l = bg.label_at(x, 0)) touches_border[l] = true;
        if (int l = bg.label_at(x, bg.height - 1)) touches_border[l] = true;
    }
    for (int y = 0; y < bg.height; ++y) {
        if (int l = bg.label_at(0, y)) touches_border[l] = true;
        if (int l = bg.label_at(bg.width - 1, y)) touches_border[l] = true;
    }

    BinaryMask out = pruned;
    for (std::size_t i = 0; i < out.bits.size(); ++i) {
        int lab = bg.labels[i];
        if (lab && !touches_border[lab] && bg.sizes[lab] < static_cast<std::size_t>(max_hole))
            out.bits[i] = 1;
    }
    return out;
}

} // namespace gestrec
