#pragma once
#include <vector>

#include "gestrec/dynamic.hpp"
#include "gestrec/image.hpp"

namespace gestrec {

// Dense velocity field in pixels/frame.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<double> u, v;

    FlowField() = default;
    FlowField(int w, int h)
        : width(w), height(h), u(static_cast<std::size_t>(w) * h, 0.0),
          v(static_cast<std::size_t>(w) * h, 0.0) {}
    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

struct FlowParams {
    double alpha = 1.0;
    int iterations = 100;
    double vel_threshold = 0.5;
    int median_window = 3; // < 3 disables the median pass
    int close_radius = 2;  // < 1 disables the closing pass
    int min_region = 80;
    double gate_threshold = 40.0;
};

// Per-frame-pair tracking result; absent when no region survived.
struct TrackRecord {
    bool present = false;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    double cx = 0.0, cy = 0.0;
    std::size_t area = 0;
};

enum class Amplitude { Small, Large };

struct Derivatives {
    int width = 0;
    int height = 0;
    std::vector<double> ix, iy, it;
};

// Averaged forward differences over the 2x2x2 cube spanning both frames;
// borders clamp.
Derivatives derivatives(const Image& f1, const Image& f2);

// Jacobi iteration of the flow updates from zero initial estimates, exactly
// `iterations` rounds.
FlowField horn_schunck(const Image& f1, const Image& f2, const FlowParams& p);

// Speed threshold, then median filter, then morphological closing.
BinaryMask motion_mask(const FlowField& flow, const FlowParams& p);

// One record per consecutive frame pair: the largest moving region's box,
// centroid and area.
std::vector<TrackRecord> track(const FrameSequence& seq, const FlowParams& p);

double centroid_transition(const TrackRecord& first, const TrackRecord& last);

Amplitude amplitude_gate(double transition, const FlowParams& p);

} // namespace gestrec
