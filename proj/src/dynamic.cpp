#include "gestrec/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gestrec {

Histogram histogram(const Image& img, int n_bins) {
    if (img.channels != 1) throw ArgumentError("histogram: input must be single-channel");
    if (n_bins < 1 || 256 % n_bins != 0) throw ArgumentError("histogram: n_bins must divide 256");
    Histogram h(n_bins, 0);
    const int width = 256 / n_bins;
    for (std::uint8_t v : img.data) h[v / width]++;
    return h;
}

double histogram_intersection(const Histogram& h1, const Histogram& h2) {
    if (h1.size() != h2.size())
        throw ArgumentError("histogram_intersection: bin counts differ");
    std::size_t num = 0, den = 0;
    for (std::size_t i = 0; i < h1.size(); ++i) {
        num += std::min(h1[i], h2[i]);
        den += h1[i];
    }
    if (den == 0) throw DegenerateInputError("histogram_intersection: empty first histogram");
    return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::size_t> key_frame_candidates_from_curve(const std::vector<double>& d, int group) {
    if (group < 1) throw ArgumentError("key_frame_candidates: group must be >= 1");

    // Local maxima strictly above both sides; a plateau counts once at its
    // first index. Runs touching either end of the curve do not qualify.
    std::vector<std::size_t> maxima;
    if (d.size() >= 3) {
        std::size_t i = 1;
        while (i + 1 < d.size()) {
            if (d[i] <= d[i - 1]) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < d.size() && d[j + 1] == d[i]) ++j;
            if (j + 1 < d.size() && d[j + 1] < d[i]) maxima.push_back(i);
            i = j + 1;
        }
    }

    std::vector<std::size_t> out;
    for (std::size_t start = 0; start < maxima.size(); start += group) {
        std::size_t end = std::min(start + static_cast<std::size_t>(group), maxima.size());
        std::size_t best = maxima[start];
        for (std::size_t k = start + 1; k < end; ++k)
            if (d[maxima[k]] > d[best]) best = maxima[k];
        out.push_back(best);
    }
    return out;
}

std::vector<std::size_t> key_frame_candidates(const FrameSequence& seq, int lag, int group,
                                              int n_bins) {
    seq.validate();
    if (lag < 1) throw ArgumentError("key_frame_candidates: lag must be >= 1");
    const std::size_t n = seq.size();
    if (n < static_cast<std::size_t>(lag) + 3)
        throw DegenerateInputError("key_frame_candidates: sequence too short");

    std::vector<Histogram> hists(n);
    for (std::size_t i = 0; i < n; ++i) hists[i] = histogram(seq.frames[i], n_bins);

    std::vector<double> d(n - lag);
    for (std::size_t i = 0; i + lag < n; ++i)
        d[i] = 1.0 - histogram_intersection(hists[i], hists[i + lag]);
    return key_frame_candidates_from_curve(d, group);
}

std::pair<std::size_t, std::size_t> pick_two_keyframes(const FrameSequence& seq,
                                                       const std::vector<std::size_t>& candidates,
                                                       int n_bins) {
    if (candidates.size() < 2)
        throw DegenerateInputError("pick_two_keyframes: fewer than 2 candidates");

    std::vector<Histogram> hists(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
        hists[i] = histogram(seq.frames.at(candidates[i]), n_bins);

    std::size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            double hi = histogram_intersection(hists[i], hists[j]);
            if (hi < best) {
                best = hi;
                bi = i;
                bj = j;
            }
        }
    }
    return {candidates[bi], candidates[bj]};
}

Image difference_image(const Image& fa, const Image& fb) {
    if (fa.channels != 1 || fb.channels != 1)
        throw ArgumentError("difference_image: inputs must be single-channel");
    if (!fa.same_size(fb)) throw ArgumentError("difference_image: size mismatch");
    Image out(fa.width, fa.height, 1, Colorspace::Gray);
    for (std::size_t i = 0; i < fa.data.size(); ++i)
        out.data[i] = static_cast<std::uint8_t>(std::abs(int(fa.data[i]) - int(fb.data[i])));
    return out;
}

std::vector<BinaryMask> motion_regions(const Image& diff, int t, int min_size, int max_regions) {
    if (max_regions < 1 || max_regions > 2)
        throw ArgumentError("motion_regions: max_regions must be 1 or 2");
    BinaryMask mask = threshold(diff, t);
    ComponentTable table = connected_components(mask, 8);

    std::vector<int> keep;
    for (int lab = 1; lab <= table.count; ++lab)
        if (table.sizes[lab] >= static_cast<std::size_t>(min_size)) keep.push_back(lab);
    if (keep.empty()) throw NoMotionError("motion_regions: no region survives the size filter");

    std::sort(keep.begin(), keep.end(), [&](int a, int b) {
        if (table.sizes[a] != table.sizes[b]) return table.sizes[a] > table.sizes[b];
        return a < b;
    });
    if (keep.size() > static_cast<std::size_t>(max_regions)) keep.resize(max_regions);

    // Left-to-right by centroid x.
    std::vector<std::pair<double, int>> ordered;
    for (int lab : keep) {
        double sx = 0, n = 0;
        for (int y = 0; y < table.height; ++y)
            for (int x = 0; x < table.width; ++x)
                if (table.label_at(x, y) == lab) {
                    sx += x;
                    n += 1;
                }
        ordered.emplace_back(sx / n, lab);
    }
    std::sort(ordered.begin(), ordered.end());

    std::vector<BinaryMask> out;
    for (auto& [cx, lab] : ordered) out.push_back(component_mask(table, lab));
    return out;
}

namespace {

struct RegionStats {
    double cx = 0, cy = 0, sx = 0, sy = 0, intensity = 0;
};

RegionStats region_stats(const Image& diff, const BinaryMask& region) {
    double wsum = 0, xsum = 0, ysum = 0, count = 0;
    for (int y = 0; y < diff.height; ++y)
        for (int x = 0; x < diff.width; ++x)
            if (region.at(x, y)) {
                double wv = diff.at(x, y);
                wsum += wv;
                xsum += wv * x;
                ysum += wv * y;
                count += 1;
            }
    if (wsum == 0) throw DegenerateInputError("motion_vector: region carries zero difference mass");

    RegionStats s;
    s.cx = xsum / wsum;
    s.cy = ysum / wsum;
    double dx = 0, dy = 0;
    for (int y = 0; y < diff.height; ++y)
        for (int x = 0; x < diff.width; ++x)
            if (region.at(x, y)) {
                double wv = diff.at(x, y);
                dx += std::abs(wv * (x - s.cx));
                dy += std::abs(wv * (y - s.cy));
            }
    s.sx = dx / wsum;
    s.sy = dy / wsum;
    s.intensity = wsum / count;
    return s;
}

} // namespace

MotionVector motion_vector(const Image& diff, const std::vector<BinaryMask>& regions) {
    if (regions.empty() || regions.size() > 2)
        throw ArgumentError("motion_vector: need 1 or 2 regions");
    for (const auto& r : regions)
        if (r.width != diff.width || r.height != diff.height)
            throw ArgumentError("motion_vector: region size mismatch");

    MotionVector mv;
    RegionStats a = region_stats(diff, regions[0]);
    if (regions.size() == 2) {
        RegionStats b = region_stats(diff, regions[1]);
        mv.v = {a.cx, a.cy, b.cx, b.cy, a.sx, a.sy, b.sx, b.sy,
                std::abs(a.cx - b.cx), std::abs(a.cy - b.cy), a.intensity, b.intensity};
    } else {
        mv.v = {a.cx, a.cy, 0.0, 0.0, a.sx, a.sy, 0.0, 0.0,
                std::abs(a.cx), std::abs(a.cy), a.intensity, 0.0};
    }
    return mv;
}

SequenceVector sequence_vector(const FrameSequence& seq, const DynamicParams& p) {
    seq.validate();
    const std::size_t n = seq.size();
    if (n < 6) throw ArgumentError("sequence_vector: need at least 6 frames");

    std::size_t picks[6];
    for (int j = 0; j <= 5; ++j)
        picks[j] = static_cast<std::size_t>(std::lround(j * (double(n) - 1.0) / 5.0));

    SequenceVector sv;
    for (int s = 0; s < 5; ++s) {
        try {
            Image diff = difference_image(seq.frames[picks[s]], seq.frames[picks[s + 1]]);
            auto regions = motion_regions(diff, p.diff_threshold, p.min_region, p.max_regions);
            MotionVector mv = motion_vector(diff, regions);
            std::copy(mv.v.begin(), mv.v.end(), sv.v.begin() + 12 * s);
        } catch (const NoMotionError& e) {
            throw NoMotionError("sequence_vector: state " + std::to_string(s) + ": " + e.what());
        }
    }
    return sv;
}

AxisClass coaxial_split(const std::vector<BinaryMask>& regions, int size_threshold) {
    if (regions.empty()) throw ArgumentError("coaxial_split: need at least one region");
    std::size_t largest = 0;
    for (const auto& r : regions) largest = std::max(largest, r.count());
    return largest >= static_cast<std::size_t>(size_threshold) ? AxisClass::BiAxial
                                                               : AxisClass::CoAxial;
}

} // namespace gestrec
