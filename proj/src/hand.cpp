#include "gestrec/hand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gestrec {

DistanceMap chamfer_dt(const BinaryMask& mask) {
    const int w = mask.width, h = mask.height;
    DistanceMap dt(w, h);
    const int inf = 3 * (w + h) + 7;

    // Out-of-frame pixels are background: distance 0.
    auto fetch = [&](int x, int y) -> int {
        if (x < 0 || x >= w || y < 0 || y >= h) return 0;
        return dt.at(x, y);
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) {
                dt.at(x, y) = 0;
                continue;
            }
            int d = inf;
            d = std::min(d, fetch(x - 1, y) + 3);
            d = std::min(d, fetch(x - 1, y - 1) + 4);
            d = std::min(d, fetch(x, y - 1) + 3);
            d = std::min(d, fetch(x + 1, y - 1) + 4);
            dt.at(x, y) = d;
        }
    }
    for (int y = h - 1; y >= 0; --y) {
        for (int x = w - 1; x >= 0; --x) {
            if (!mask.at(x, y)) continue;
            int d = dt.at(x, y);
            d = std::min(d, fetch(x + 1, y) + 3);
            d = std::min(d, fetch(x + 1, y + 1) + 4);
            d = std::min(d, fetch(x, y + 1) + 3);
            d = std::min(d, fetch(x - 1, y + 1) + 4);
            dt.at(x, y) = d;
        }
    }
    return dt;
}

std::vector<FeaturePixel> feature_pixels(const DistanceMap& dt) {
    std::vector<FeaturePixel> out;
    const int w = dt.width, h = dt.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int d = dt.at(x, y);
            if (d <= 0) continue;
            bool is_max = true;
            for (int dy = -1; dy <= 1 && is_max; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    int xs = x + dx, ys = y + dy;
                    if (xs < 0 || xs >= w || ys < 0 || ys >= h) continue;
                    if (d < dt.at(xs, ys)) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max)
                out.push_back({x, y, static_cast<int>(std::lround(d / 3.0))});
        }
    }
    return out;
}

std::vector<FeaturePixel> filter_features(const std::vector<FeaturePixel>& feats, int lo, int hi) {
    std::vector<FeaturePixel> out;
    for (const auto& f : feats)
        if (f.value >= lo && f.value <= hi) out.push_back(f);
    return out;
}

BinaryMask select_hand(const BinaryMask& mask, const std::vector<FeaturePixel>& feats,
                       const HandParams& p) {
    BinaryMask work = p.erosion_radius >= 1 ? morphology(mask, MorphOp::Erode, p.erosion_radius)
                                            : mask;
    ComponentTable table = connected_components(work, 8);
    if (table.count == 0) throw NoHandError("select_hand: no foreground components");

    std::vector<std::size_t> counts(table.count + 1, 0);
    for (const auto& f : feats) {
        if (!work.in_bounds(f.x, f.y)) continue;
        int lab = table.label_at(f.x, f.y);
        if (lab) counts[lab]++;
    }

    int best = 0;
    for (int lab = 1; lab <= table.count; ++lab) {
        if (best == 0 || counts[lab] > counts[best] ||
            (counts[lab] == counts[best] && table.sizes[lab] > table.sizes[best]))
            best = lab;
    }
    if (counts[best] < static_cast<std::size_t>(p.min_feature_count))
        throw NoHandError("select_hand: no component reaches min_feature_count");
    return component_mask(table, best);
}

PointF centroid(const BinaryMask& mask) {
    double sx = 0, sy = 0, n = 0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
                sx += x;
                sy += y;
                n += 1;
            }
    if (n == 0) throw DegenerateInputError("centroid: empty mask");
    return {sx / n, sy / n};
}

BinaryMask wrist_cut(const BinaryMask& mask, const HandParams& p,
                     const std::vector<FeaturePixel>& feats) {
    PointF c = centroid(mask);

    // Finger-side feature pixels; fingers point up unless flipped.
    double mx = 0, my = 0;
    int n = 0;
    for (const auto& f : feats) {
        bool finger_side = p.flip_orientation ? (f.y > c.y) : (f.y < c.y);
        if (finger_side) {
            mx += f.x;
            my += f.y;
            ++n;
        }
    }
    if (n == 0) throw DegenerateInputError("wrist_cut: no finger-side feature pixels");
    mx /= n;
    my /= n;

    double dx = mx - c.x, dy = my - c.y;
    if (dx == 0.0 && dy == 0.0)
        throw DegenerateInputError("wrist_cut: feature mean coincides with centroid");

    // The rounded offset places P on the wrist side, opposite M across C.
    double px = c.x - std::round(p.cut_fraction * dx);
    double py = c.y - std::round(p.cut_fraction * dy);

    BinaryMask out(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(x, y)) continue;
            double dot = (x - px) * dx + (y - py) * dy;
            if (dot >= 0.0) out.set(x, y, true);
        }
    }
    return out;
}

BinaryMask recenter(const BinaryMask& mask, int frame_size) {
    if (frame_size < 1) throw ArgumentError("recenter: frame_size must be >= 1");

    int min_x = mask.width, min_y = mask.height, max_x = -1, max_y = -1;
    double sx = 0, sy = 0, n = 0;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
                min_x = std::min(min_x, x);
                min_y = std::min(min_y, y);
                max_x = std::max(max_x, x);
                max_y = std::max(max_y, y);
                sx += x;
                sy += y;
                n += 1;
            }
    if (n == 0) throw DegenerateInputError("recenter: empty mask");
    if (max_x - min_x + 1 > frame_size || max_y - min_y + 1 > frame_size)
        throw ArgumentError("recenter: component larger than frame");

    double target = frame_size / 2.0;
    int dx = static_cast<int>(std::lround(target - sx / n));
    int dy = static_cast<int>(std::lround(target - sy / n));
    // Clamp so the translated component stays inside the frame.
    dx = std::min(dx, -min_x + (frame_size - 1) - (max_x - min_x));
    dx = std::max(dx, -min_x);
    dy = std::min(dy, -min_y + (frame_size - 1) - (max_y - min_y));
    dy = std::max(dy, -min_y);

    BinaryMask out(frame_size, frame_size);
    for (int y = min_y; y <= max_y; ++y)
        for (int x = min_x; x <= max_x; ++x)
            if (mask.at(x, y)) out.set(x + dx, y + dy, true);
    return out;
}

Contour trace_contour(const BinaryMask& mask) {
    int sx = -1, sy = -1;
    for (int y = 0; y < mask.height && sx < 0; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
                sx = x;
                sy = y;
                break;
            }
    if (sx < 0) throw DegenerateInputError("trace_contour: empty mask");

    // Moore neighbors in clockwise order for y-down coordinates.
    static const int nx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int ny[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    auto fg = [&](int x, int y) { return mask.in_bounds(x, y) && mask.at(x, y); };

    Contour contour;
    contour.push_back({static_cast<double>(sx), static_cast<double>(sy)});

    // Entered the start pixel from the west scan; begin looking just past it.
    int cx = sx, cy = sy, dir = 4;
    const std::size_t limit = 4 * mask.bits.size() + 16;
    int first_move = -1;
    while (contour.size() < limit) {
        int next_dir = -1;
        for (int i = 0; i < 8; ++i) {
            int d = (dir + 1 + i) % 8; // resume clockwise after the backtrack direction
            if (fg(cx + nx[d], cy + ny[d])) {
                next_dir = d;
                break;
            }
        }
        if (next_dir < 0) break; // isolated pixel
        cx += nx[next_dir];
        cy += ny[next_dir];
        if (first_move < 0) first_move = next_dir;
        else if (cx == sx && cy == sy) {
            // Jacob's criterion: stop when re-entering the start the same way.
            int probe = -1;
            int back = (next_dir + 4) % 8;
            for (int i = 0; i < 8; ++i) {
                int d = (back + 1 + i) % 8;
                if (fg(cx + nx[d], cy + ny[d])) {
                    probe = d;
                    break;
                }
            }
            if (probe == first_move) break;
        }
        contour.push_back({static_cast<double>(cx), static_cast<double>(cy)});
        dir = (next_dir + 4) % 8;
    }
    return contour;
}

Contour smooth_contour(const Contour& contour, int window) {
    if (window < 3 || window % 2 == 0)
        throw ArgumentError("smooth_contour: window must be odd and >= 3");
    const std::size_t n = contour.size();
    if (n == 0) throw ContourError("smooth_contour: empty contour");

    // Closedness: the wrap gap may not dwarf the typical step.
    if (n >= 3) {
        double step_sum = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            step_sum += std::hypot(contour[i + 1].x - contour[i].x, contour[i + 1].y - contour[i].y);
        double mean_step = step_sum / static_cast<double>(n - 1);
        double gap = std::hypot(contour[0].x - contour[n - 1].x, contour[0].y - contour[n - 1].y);
        if (gap > 2.0 * (1.0 + mean_step)) throw ContourError("smooth_contour: open trace");
    }

    if (n <= static_cast<std::size_t>(window)) {
        double mx = 0, my = 0;
        for (const auto& pt : contour) {
            mx += pt.x;
            my += pt.y;
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        return Contour(n, {mx, my});
    }

    const int half = window / 2;
    Contour out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sx = 0, sy = 0;
        for (int k = -half; k <= half; ++k) {
            std::size_t j = (i + n + static_cast<std::size_t>(k + static_cast<int>(n))) % n;
            sx += contour[j].x;
            sy += contour[j].y;
        }
        out[i] = {sx / window, sy / window};
    }
    return out;
}

double contour_length(const Contour& contour) {
    if (contour.size() < 2) return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i < contour.size(); ++i) {
        const auto& a = contour[i];
        const auto& b = contour[(i + 1) % contour.size()];
        len += std::hypot(b.x - a.x, b.y - a.y);
    }
    return len;
}

} // namespace gestrec
