#pragma once
#include <array>

#include "gestrec/hand.hpp"
#include "gestrec/image.hpp"

namespace gestrec {

// The seven shape descriptors, in order:
// [P^4/Imin, A^2/Imax, A^2/Imin, Dmax/Dmin, P^2/A, (Imin+Imax)/A^2, (Imax-Imin)/(Imax+Imin)]
struct StaticVector {
    std::array<double, 7> v{};
    int label = 0; // 0 = unlabeled
};

enum class RadialMode {
    Radial,  // min/max centroid-to-contour distance
    PerAxis, // per-axis extreme construction
};

double raw_moment(const BinaryMask& mask, int p, int q);
double central_moment(const BinaryMask& mask, int p, int q);

// (Imax, Imin) from mu20, mu02, mu11.
std::pair<double, double> principal_moments(const BinaryMask& mask);

// (Dmax, Dmin): distances from the centroid to the contour (foreground pixels
// with a background 4-neighbor; the frame border counts as background).
std::pair<double, double> radial_extents(const BinaryMask& mask,
                                         RadialMode mode = RadialMode::Radial);

// Area = foreground pixel count, perimeter = contour pixel count.
std::size_t area(const BinaryMask& mask);
std::size_t perimeter(const BinaryMask& mask);

StaticVector static_vector(const BinaryMask& mask, RadialMode mode = RadialMode::Radial);

} // namespace gestrec
