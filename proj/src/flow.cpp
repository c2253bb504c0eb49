#include "gestrec/flow.hpp"

#include <algorithm>
#include <cmath>

namespace gestrec {

Derivatives derivatives(const Image& f1, const Image& f2) {
    if (f1.channels != 1 || f2.channels != 1)
        throw ArgumentError("derivatives: inputs must be single-channel");
    if (!f1.same_size(f2)) throw ArgumentError("derivatives: size mismatch");

    const int w = f1.width, h = f1.height;
    Derivatives d;
    d.width = w;
    d.height = h;
    d.ix.assign(static_cast<std::size_t>(w) * h, 0.0);
    d.iy.assign(static_cast<std::size_t>(w) * h, 0.0);
    d.it.assign(static_cast<std::size_t>(w) * h, 0.0);

    auto px = [&](const Image& f, int x, int y) -> double {
        return f.at(std::min(x, w - 1), std::min(y, h - 1));
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            d.ix[i] = 0.25 * (px(f1, x + 1, y) - px(f1, x, y) + px(f1, x + 1, y + 1) -
                              px(f1, x, y + 1) + px(f2, x + 1, y) - px(f2, x, y) +
                              px(f2, x + 1, y + 1) - px(f2, x, y + 1));
            d.iy[i] = 0.25 * (px(f1, x, y + 1) - px(f1, x, y) + px(f1, x + 1, y + 1) -
                              px(f1, x + 1, y) + px(f2, x, y + 1) - px(f2, x, y) +
                              px(f2, x + 1, y + 1) - px(f2, x + 1, y));
            d.it[i] = 0.25 * (px(f2, x, y) - px(f1, x, y) + px(f2, x + 1, y) - px(f1, x + 1, y) +
                              px(f2, x, y + 1) - px(f1, x, y + 1) + px(f2, x + 1, y + 1) -
                              px(f1, x + 1, y + 1));
        }
    }
    return d;
}

namespace {

// 1/6 orthogonal, 1/12 diagonal, renormalized over in-frame neighbors.
void neighborhood_average(const FlowField& f, std::vector<double>& ubar,
                          std::vector<double>& vbar) {
    const int w = f.width, h = f.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double su = 0, sv = 0, wt = 0;
            auto add = [&](int xs, int ys, double wgt) {
                if (xs < 0 || xs >= w || ys < 0 || ys >= h) return;
                std::size_t j = static_cast<std::size_t>(ys) * w + xs;
                su += wgt * f.u[j];
                sv += wgt * f.v[j];
                wt += wgt;
            };
            add(x - 1, y, 1.0 / 6.0);
            add(x + 1, y, 1.0 / 6.0);
            add(x, y - 1, 1.0 / 6.0);
            add(x, y + 1, 1.0 / 6.0);
            add(x - 1, y - 1, 1.0 / 12.0);
            add(x + 1, y - 1, 1.0 / 12.0);
            add(x - 1, y + 1, 1.0 / 12.0);
            add(x + 1, y + 1, 1.0 / 12.0);
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            ubar[i] = su / wt;
            vbar[i] = sv / wt;
        }
    }
}

} // namespace

FlowField horn_schunck(const Image& f1, const Image& f2, const FlowParams& p) {
    if (p.alpha <= 0.0) throw ArgumentError("horn_schunck: alpha must be positive");
    if (p.iterations < 1) throw ArgumentError("horn_schunck: iterations must be >= 1");

    Derivatives d = derivatives(f1, f2);
    const int w = d.width, h = d.height;
    const double a2 = p.alpha * p.alpha;

    FlowField cur(w, h), next(w, h);
    std::vector<double> ubar(cur.u.size()), vbar(cur.v.size());
    for (int it = 0; it < p.iterations; ++it) {
        neighborhood_average(cur, ubar, vbar);
        for (std::size_t i = 0; i < cur.u.size(); ++i) {
            double common = (d.ix[i] * ubar[i] + d.iy[i] * vbar[i] + d.it[i]) /
                            (a2 + d.ix[i] * d.ix[i] + d.iy[i] * d.iy[i]);
            next.u[i] = ubar[i] - d.ix[i] * common;
            next.v[i] = vbar[i] - d.iy[i] * common;
        }
        std::swap(cur, next);
    }
    return cur;
}

BinaryMask motion_mask(const FlowField& flow, const FlowParams& p) {
    BinaryMask mask(flow.width, flow.height);
    for (std::size_t i = 0; i < flow.u.size(); ++i) {
        double speed = std::hypot(flow.u[i], flow.v[i]);
        mask.bits[i] = speed >= p.vel_threshold ? 1 : 0;
    }
    if (p.median_window >= 3) mask = median_filter(mask, p.median_window);
    if (p.close_radius >= 1) mask = morphology(mask, MorphOp::Close, p.close_radius);
    return mask;
}

std::vector<TrackRecord> track(const FrameSequence& seq, const FlowParams& p) {
    seq.validate();
    std::vector<TrackRecord> records;
    bool any = false;

    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        FlowField flow = horn_schunck(seq.frames[i], seq.frames[i + 1], p);
        BinaryMask mask = motion_mask(flow, p);
        ComponentTable table = connected_components(mask, 8);

        int best = 0;
        for (int lab = 1; lab <= table.count; ++lab) {
            if (table.sizes[lab] < static_cast<std::size_t>(p.min_region)) continue;
            if (best == 0 || table.sizes[lab] > table.sizes[best]) best = lab;
        }

        TrackRecord rec;
        if (best != 0) {
            rec.present = true;
            rec.min_x = table.bboxes[best].min_x;
            rec.min_y = table.bboxes[best].min_y;
            rec.max_x = table.bboxes[best].max_x;
            rec.max_y = table.bboxes[best].max_y;
            rec.area = table.sizes[best];
            double sx = 0, sy = 0;
            for (int y = rec.min_y; y <= rec.max_y; ++y)
                for (int x = rec.min_x; x <= rec.max_x; ++x)
                    if (table.label_at(x, y) == best) {
                        sx += x;
                        sy += y;
                    }
            rec.cx = sx / static_cast<double>(rec.area);
            rec.cy = sy / static_cast<double>(rec.area);
            any = true;
        }
        records.push_back(rec);
    }
    if (!any) throw NoMotionError("track: no frame pair produced a moving region");
    return records;
}

double centroid_transition(const TrackRecord& first, const TrackRecord& last) {
    if (!first.present || !last.present)
        throw ArgumentError("centroid_transition: empty track record");
    return std::hypot(last.cx - first.cx, last.cy - first.cy);
}

Amplitude amplitude_gate(double transition, const FlowParams& p) {
    if (transition < 0.0) throw ArgumentError("amplitude_gate: negative transition");
    return transition < p.gate_threshold ? Amplitude::Small : Amplitude::Large;
}

} // namespace gestrec
