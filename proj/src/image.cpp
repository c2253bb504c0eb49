#include "gestrec/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gestrec {

namespace {

std::uint8_t clamp_u8(double v) {
    double r = std::round(v);
    if (r < 0.0) return 0;
    if (r > 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

} // namespace

std::size_t BinaryMask::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t(1)));
}

Image rgb_to_ycbcr(const Image& img) {
    if (img.colorspace != Colorspace::RGB || img.channels != 3)
        throw ArgumentError("rgb_to_ycbcr: input must be 3-channel RGB");
    Image out(img.width, img.height, 3, Colorspace::YCbCr);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        double r = img.data[i * 3 + 0];
        double g = img.data[i * 3 + 1];
        double b = img.data[i * 3 + 2];
        out.data[i * 3 + 0] = clamp_u8(0.299 * r + 0.587 * g + 0.114 * b);
        out.data[i * 3 + 1] = clamp_u8(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
        out.data[i * 3 + 2] = clamp_u8(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
    }
    return out;
}

Image ycbcr_to_rgb(const Image& img) {
    if (img.colorspace != Colorspace::YCbCr || img.channels != 3)
        throw ArgumentError("ycbcr_to_rgb: input must be 3-channel YCbCr");
    Image out(img.width, img.height, 3, Colorspace::RGB);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        double y = img.data[i * 3 + 0];
        double cb = img.data[i * 3 + 1] - 128.0;
        double cr = img.data[i * 3 + 2] - 128.0;
        out.data[i * 3 + 0] = clamp_u8(y + 1.402 * cr);
        out.data[i * 3 + 1] = clamp_u8(y - 0.344136 * cb - 0.714136 * cr);
        out.data[i * 3 + 2] = clamp_u8(y + 1.772 * cb);
    }
    return out;
}

Image to_gray(const Image& img) {
    if (img.channels == 1) return img;
    Image out(img.width, img.height, 1, Colorspace::Gray);
    if (img.colorspace == Colorspace::YCbCr) {
        for (std::size_t i = 0; i < img.pixel_count(); ++i) out.data[i] = img.data[i * 3];
        return out;
    }
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        double r = img.data[i * 3 + 0];
        double g = img.data[i * 3 + 1];
        double b = img.data[i * 3 + 2];
        out.data[i] = clamp_u8(0.299 * r + 0.587 * g + 0.114 * b);
    }
    return out;
}

namespace {

// Catmull-Rom kernel (a = -1/2).
double cubic_weight(double t) {
    t = std::abs(t);
    if (t <= 1.0) return ((1.5 * t - 2.5) * t) * t + 1.0;
    if (t < 2.0) return (((-0.5 * t + 2.5) * t) - 4.0) * t + 2.0;
    return 0.0;
}

} // namespace

Image resize(const Image& img, int new_w, int new_h) {
    if (new_w < 1 || new_h < 1) throw ArgumentError("resize: target dimensions must be >= 1");
    if (img.width < 1 || img.height < 1) throw ArgumentError("resize: empty source image");

    const int ch = img.channels;
    const double sx = static_cast<double>(img.width) / new_w;
    const double sy = static_cast<double>(img.height) / new_h;

    // Horizontal pass into a real-valued buffer, then vertical pass.
    std::vector<double> tmp(static_cast<std::size_t>(new_w) * img.height * ch, 0.0);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < new_w; ++x) {
            double src = (x + 0.5) * sx - 0.5;
            int x0 = static_cast<int>(std::floor(src));
            double f = src - x0;
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -1; k <= 2; ++k) {
                    int xs = clampi(x0 + k, 0, img.width - 1);
                    acc += cubic_weight(k - f) * img.at(xs, y, c);
                }
                tmp[(static_cast<std::size_t>(y) * new_w + x) * ch + c] = acc;
            }
        }
    }

    Image out(new_w, new_h, ch, img.colorspace);
    for (int y = 0; y < new_h; ++y) {
        double src = (y + 0.5) * sy - 0.5;
        int y0 = static_cast<int>(std::floor(src));
        double f = src - y0;
        for (int x = 0; x < new_w; ++x) {
            for (int c = 0; c < ch; ++c) {
                double acc = 0.0;
                for (int k = -1; k <= 2; ++k) {
                    int ys = clampi(y0 + k, 0, img.height - 1);
                    acc += cubic_weight(k - f) * tmp[(static_cast<std::size_t>(ys) * new_w + x) * ch + c];
                }
                out.at(x, y, c) = clamp_u8(acc);
            }
        }
    }
    return out;
}

BinaryMask threshold(const Image& img, int t) {
    if (img.channels != 1) throw ArgumentError("threshold: input must be single-channel");
    BinaryMask out(img.width, img.height);
    for (std::size_t i = 0; i < img.data.size(); ++i) out.bits[i] = img.data[i] >= t ? 1 : 0;
    return out;
}

ComponentTable connected_components(const BinaryMask& mask, int connectivity) {
    if (connectivity != 4 && connectivity != 8)
        throw ArgumentError("connected_components: connectivity must be 4 or 8");

    const int w = mask.width, h = mask.height;
    ComponentTable table;
    table.width = w;
    table.height = h;
    table.labels.assign(static_cast<std::size_t>(w) * h, 0);

    std::vector<int> parent(1, 0); // union-find over provisional labels
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    int next = 1;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            int left = x > 0 ? table.labels[static_cast<std::size_t>(y) * w + x - 1] : 0;
            int up = y > 0 ? table.labels[static_cast<std::size_t>(y - 1) * w + x] : 0;
            int ul = 0, ur = 0;
            if (connectivity == 8 && y > 0) {
                if (x > 0) ul = table.labels[static_cast<std::size_t>(y - 1) * w + x - 1];
                if (x < w - 1) ur = table.labels[static_cast<std::size_t>(y - 1) * w + x + 1];
            }
            int neigh[4] = {left, up, ul, ur};
            int lab = 0;
            for (int n : neigh)
                if (n && (lab == 0 || n < lab)) lab = n;
            if (lab == 0) {
                lab = next++;
                parent.push_back(lab);
            } else {
                for (int n : neigh)
                    if (n) unite(lab, n);
            }
            table.labels[static_cast<std::size_t>(y) * w + x] = lab;
        }
    }

    // Second pass: resolve unions and renumber in raster order of first pixels.
    std::vector<int> remap(parent.size(), 0);
    int count = 0;
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
        int lab = table.labels[i];
        if (!lab) continue;
        int root = find(lab);
        if (!remap[root]) remap[root] = ++count;
        table.labels[i] = remap[root];
    }

    table.count = count;
    table.sizes.assign(count + 1, 0);
    table.bboxes.assign(count + 1, {});
    std::vector<bool> seen(count + 1, false);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int lab = table.labels[static_cast<std::size_t>(y) * w + x];
            if (!lab) continue;
            table.sizes[lab]++;
            auto& bb = table.bboxes[lab];
            if (!seen[lab]) {
                bb = {x, y, x, y};
                seen[lab] = true;
            } else {
                bb.min_x = std::min(bb.min_x, x);
                bb.min_y = std::min(bb.min_y, y);
                bb.max_x = std::max(bb.max_x, x);
                bb.max_y = std::max(bb.max_y, y);
            }
        }
    }
    return table;
}

BinaryMask component_mask(const ComponentTable& table, int label) {
    BinaryMask out(table.width, table.height);
    for (std::size_t i = 0; i < table.labels.size(); ++i)
        out.bits[i] = table.labels[i] == label ? 1 : 0;
    return out;
}

namespace {

// Separable min/max over a square window; out-of-frame samples read `border`.
BinaryMask window_extreme(const BinaryMask& mask, int radius, bool take_max, bool border) {
    const int w = mask.width, h = mask.height;
    BinaryMask rowpass(w, h), out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool v = take_max ? false : true;
            for (int dx = -radius; dx <= radius; ++dx) {
                int xs = x + dx;
                bool s = (xs >= 0 && xs < w) ? mask.at(xs, y) : border;
                v = take_max ? (v || s) : (v && s);
            }
            rowpass.set(x, y, v);
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool v = take_max ? false : true;
            for (int dy = -radius; dy <= radius; ++dy) {
                int ys = y + dy;
                bool s = (ys >= 0 && ys < h) ? rowpass.at(x, ys) : border;
                v = take_max ? (v || s) : (v && s);
            }
            out.set(x, y, v);
        }
    }
    return out;
}

BinaryMask pad(const BinaryMask& mask, int margin) {
    BinaryMask out(mask.width + 2 * margin, mask.height + 2 * margin);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) out.set(x + margin, y + margin, true);
    return out;
}

BinaryMask crop(const BinaryMask& mask, int margin, int w, int h) {
    BinaryMask out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(x, y, mask.at(x + margin, y + margin));
    return out;
}

} // namespace

BinaryMask morphology(const BinaryMask& mask, MorphOp op, int radius) {
    if (radius < 1) throw ArgumentError("morphology: radius must be >= 1");
    switch (op) {
    case MorphOp::Erode:
        return window_extreme(mask, radius, false, false);
    case MorphOp::Dilate:
        return window_extreme(mask, radius, true, false);
    case MorphOp::Close: {
        // Dilate on a padded canvas so support beyond the frame survives the
        // erosion step; closing is then extensive everywhere.
        BinaryMask padded = pad(mask, radius);
        BinaryMask d = window_extreme(padded, radius, true, false);
        BinaryMask e = window_extreme(d, radius, false, false);
        return crop(e, radius, mask.width, mask.height);
    }
    }
    throw ArgumentError("morphology: unknown op");
}

BinaryMask median_filter(const BinaryMask& mask, int window) {
    if (window < 3 || window % 2 == 0)
        throw ArgumentError("median_filter: window must be odd and >= 3");
    const int r = window / 2;
    const int total = window * window;
    BinaryMask out(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            int ones = 0;
            for (int dy = -r; dy <= r; ++dy) {
                int ys = clampi(y + dy, 0, mask.height - 1);
                for (int dx = -r; dx <= r; ++dx) {
                    int xs = clampi(x + dx, 0, mask.width - 1);
                    ones += mask.at(xs, ys) ? 1 : 0;
                }
            }
            out.set(x, y, 2 * ones > total);
        }
    }
    return out;
}

BinaryMask sobel_edges(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    BinaryMask out(w, h);
    auto sample = [&](int x, int y) -> int {
        return (x >= 0 && x < w && y >= 0 && y < h && mask.at(x, y)) ? 1 : 0;
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            int gx = sample(x + 1, y - 1) + 2 * sample(x + 1, y) + sample(x + 1, y + 1) -
                     sample(x - 1, y - 1) - 2 * sample(x - 1, y) - sample(x - 1, y + 1);
            int gy = sample(x - 1, y + 1) + 2 * sample(x, y + 1) + sample(x + 1, y + 1) -
                     sample(x - 1, y - 1) - 2 * sample(x, y - 1) - sample(x + 1, y - 1);
            out.set(x, y, std::abs(gx) + std::abs(gy) > 0);
        }
    }
    return out;
}

BinaryMask complement(const BinaryMask& mask) {
    BinaryMask out(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) out.bits[i] = mask.bits[i] ? 0 : 1;
    return out;
}

} // namespace gestrec
