#pragma once
#include <array>
#include <vector>

#include "gestrec/image.hpp"

namespace gestrec {

struct FrameSequence {
    std::vector<Image> frames;
    double fps = 0.0; // 0 = unknown

    void validate() const {
        if (frames.size() < 2) throw ArgumentError("FrameSequence: need at least 2 frames");
        for (const auto& f : frames)
            if (!f.same_size(frames.front()))
                throw ArgumentError("FrameSequence: frames differ in size");
    }
    std::size_t size() const { return frames.size(); }
};

// 12 slots: [x1 y1 x2 y2 sx1 sy1 sx2 sy2 |x1-x2| |y1-y2| i1 i2].
// With a single motion region, slots 2,3,6,7,11 (0-based) hold zero and the
// gap slots read |x1-0|, |y1-0|.
struct MotionVector {
    std::array<double, 12> v{};
    int label = 0;
};

// Five consecutive-state motion vectors, flattened in temporal order.
struct SequenceVector {
    std::array<double, 60> v{};
    int label = 0;
};

enum class AxisClass { CoAxial, BiAxial };

struct DynamicParams {
    int lag = 2;
    int group = 5;
    int bins = 64;
    int diff_threshold = 40;
    int min_region = 30;
    int max_regions = 2;
    int coaxial_size_threshold = 400;
};

using Histogram = std::vector<std::size_t>;

Histogram histogram(const Image& img, int n_bins);

// Sum of bin-wise minima over the mass of the first histogram; in [0,1].
double histogram_intersection(const Histogram& h1, const Histogram& h2);

// Frames whose lagged histogram dissimilarity peaks, thinned to the best
// frame per group of consecutive maxima.
std::vector<std::size_t> key_frame_candidates(const FrameSequence& seq, int lag, int group,
                                              int n_bins);

// Maxima selection rule on a precomputed dissimilarity curve; split out so it
// can be exercised directly.
std::vector<std::size_t> key_frame_candidates_from_curve(const std::vector<double>& d, int group);

// The candidate pair with the lowest histogram intersection; earliest pair on ties.
std::pair<std::size_t, std::size_t> pick_two_keyframes(const FrameSequence& seq,
                                                       const std::vector<std::size_t>& candidates,
                                                       int n_bins);

// Per-pixel |a - b|.
Image difference_image(const Image& fa, const Image& fb);

// Threshold, label, drop small components, keep the largest few ordered
// left-to-right by centroid.
std::vector<BinaryMask> motion_regions(const Image& diff, int t, int min_size, int max_regions);

MotionVector motion_vector(const Image& diff, const std::vector<BinaryMask>& regions);

// Six evenly spaced frames -> five difference states -> concatenated motion vectors.
SequenceVector sequence_vector(const FrameSequence& seq, const DynamicParams& p);

AxisClass coaxial_split(const std::vector<BinaryMask>& regions, int size_threshold);

} // namespace gestrec
