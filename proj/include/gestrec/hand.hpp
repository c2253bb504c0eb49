#pragma once
#include <vector>

#include "gestrec/image.hpp"

namespace gestrec {

// 3-4 chamfer distances; 0 exactly on background. The image border counts as
// background, so every foreground pixel has a finite distance.
struct DistanceMap {
    int width = 0;
    int height = 0;
    std::vector<int> dist;

    DistanceMap() = default;
    DistanceMap(int w, int h) : width(w), height(h), dist(static_cast<std::size_t>(w) * h, 0) {}
    int at(int x, int y) const { return dist[static_cast<std::size_t>(y) * width + x]; }
    int& at(int x, int y) { return dist[static_cast<std::size_t>(y) * width + x]; }
};

// Local distance maximum; value is the distance in orthogonal-step units.
struct FeaturePixel {
    int x = 0;
    int y = 0;
    int value = 0;
};

struct HandParams {
    int feat_lo = 4;
    int feat_hi = 12;
    int erosion_radius = 0;     // 0 = no separating erosion
    int min_feature_count = 1;
    double cut_fraction = 0.75;
    int frame_size = 176;
    bool flip_orientation = false; // true when fingers point down
};

struct PointF {
    double x = 0.0;
    double y = 0.0;
};

using Contour = std::vector<PointF>;

// Distance from each foreground pixel to the nearest background pixel under
// the 3-4 chamfer metric, one forward and one backward raster pass.
DistanceMap chamfer_dt(const BinaryMask& mask);

// Foreground pixels whose distance is >= all eight neighbors (out-of-frame
// neighbors count as satisfied); value = round(dist / 3).
std::vector<FeaturePixel> feature_pixels(const DistanceMap& dt);

std::vector<FeaturePixel> filter_features(const std::vector<FeaturePixel>& feats, int lo, int hi);

// Picks the component holding the most feature pixels (the open hand). Ties
// break by component size, then raster order. `feats` must already be
// filtered to the configured value interval.
BinaryMask select_hand(const BinaryMask& mask, const std::vector<FeaturePixel>& feats,
                       const HandParams& p);

PointF centroid(const BinaryMask& mask);

// Cuts the forearm: M is the mean of finger-side feature pixels, P sits at
// cut_fraction of the M->C span past the centroid, and every pixel on the
// wrist side of the perpendicular through P is dropped. Pixels exactly on
// the line are kept. Output stays in the input geometry.
BinaryMask wrist_cut(const BinaryMask& mask, const HandParams& p,
                     const std::vector<FeaturePixel>& feats);

// Translates the component so its centroid lands on the center of a fresh
// frame_size x frame_size mask. The shift is clamped if the component would
// otherwise overhang the frame.
BinaryMask recenter(const BinaryMask& mask, int frame_size);

// Moore boundary trace of the first component, clockwise from the
// topmost-leftmost foreground pixel.
Contour trace_contour(const BinaryMask& mask);

// Circular moving average over `window` neighbors; real-valued output of the
// same length.
Contour smooth_contour(const Contour& contour, int window);

double contour_length(const Contour& contour);

} // namespace gestrec
