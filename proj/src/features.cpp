#include "gestrec/features.hpp"

#include <cmath>
#include <limits>

namespace gestrec {

namespace {

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

bool is_contour_pixel(const BinaryMask& mask, int x, int y) {
    if (!mask.at(x, y)) return false;
    auto bg = [&](int xs, int ys) { return !mask.in_bounds(xs, ys) || !mask.at(xs, ys); };
    return bg(x - 1, y) || bg(x + 1, y) || bg(x, y - 1) || bg(x, y + 1);
}

} // namespace

double raw_moment(const BinaryMask& mask, int p, int q) {
    if (p < 0 || p > 3 || q < 0 || q > 3) throw ArgumentError("raw_moment: order must be in 0..3");
    double acc = 0.0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) acc += ipow(x, p) * ipow(y, q);
    return acc;
}

double central_moment(const BinaryMask& mask, int p, int q) {
    if (p < 0 || p > 3 || q < 0 || q > 3)
        throw ArgumentError("central_moment: order must be in 0..3");
    PointF c = centroid(mask); // throws on empty mask
    double acc = 0.0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) acc += ipow(x - c.x, p) * ipow(y - c.y, q);
    return acc;
}

std::pair<double, double> principal_moments(const BinaryMask& mask) {
    double mu20 = central_moment(mask, 2, 0);
    double mu02 = central_moment(mask, 0, 2);
    double mu11 = central_moment(mask, 1, 1);
    double root = std::sqrt(4.0 * mu11 * mu11 + (mu20 - mu02) * (mu20 - mu02));
    double imax = (mu20 + mu02 + root) / 2.0;
    double imin = (mu20 + mu02 - root) / 2.0;
    if (imin <= 1e-9 * std::max(1.0, imax))
        throw DegenerateInputError("principal_moments: collinear mask, Imin ~ 0");
    return {imax, imin};
}

std::pair<double, double> radial_extents(const BinaryMask& mask, RadialMode mode) {
    PointF c = centroid(mask);

    if (mode == RadialMode::PerAxis) {
        double xmin = std::numeric_limits<double>::infinity(), xmax = 0;
        double ymin = std::numeric_limits<double>::infinity(), ymax = 0;
        for (int y = 0; y < mask.height; ++y)
            for (int x = 0; x < mask.width; ++x)
                if (mask.at(x, y)) {
                    double ax = std::abs(x - c.x), ay = std::abs(y - c.y);
                    xmin = std::min(xmin, ax);
                    xmax = std::max(xmax, ax);
                    ymin = std::min(ymin, ay);
                    ymax = std::max(ymax, ay);
                }
        double dmax = std::hypot(xmax, ymax);
        double dmin = std::hypot(xmin, ymin);
        if (dmin < 1e-6) throw DegenerateInputError("radial_extents: Dmin ~ 0");
        return {dmax, dmin};
    }

    double dmax = 0, dmin = std::numeric_limits<double>::infinity();
    bool any = false;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (is_contour_pixel(mask, x, y)) {
                any = true;
                double d = std::hypot(x - c.x, y - c.y);
                dmax = std::max(dmax, d);
                dmin = std::min(dmin, d);
            }
    if (!any) throw DegenerateInputError("radial_extents: empty contour");
    if (dmin < 1e-6) throw DegenerateInputError("radial_extents: Dmin ~ 0");
    return {dmax, dmin};
}

std::size_t area(const BinaryMask& mask) { return mask.count(); }

std::size_t perimeter(const BinaryMask& mask) {
    std::size_t n = 0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (is_contour_pixel(mask, x, y)) ++n;
    return n;
}

StaticVector static_vector(const BinaryMask& mask, RadialMode mode) {
    double a = static_cast<double>(area(mask));
    if (a == 0) throw DegenerateInputError("static_vector: empty mask");
    double p = static_cast<double>(perimeter(mask));
    auto [imax, imin] = principal_moments(mask);
    auto [dmax, dmin] = radial_extents(mask, mode);

    StaticVector out;
    out.v[0] = ipow(p, 4) / imin;
    out.v[1] = a * a / imax;
    out.v[2] = a * a / imin;
    out.v[3] = dmax / dmin;
    out.v[4] = p * p / a;
    out.v[5] = (imin + imax) / (a * a);
    out.v[6] = (imax - imin) / (imax + imin);
    return out;
}

} // namespace gestrec
