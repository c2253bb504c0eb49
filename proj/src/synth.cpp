#include "gestrec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "gestrec/pnm.hpp"

namespace gestrec {

const std::vector<std::string>& static_gesture_names() {
    static const std::vector<std::string> names = {"fist", "one",  "two",  "three",
                                                   "four", "five", "point"};
    return names;
}

const std::vector<std::string>& small_gesture_names() {
    static const std::vector<std::string> names = {"wave_two_hands", "wave_right", "wave_left",
                                                   "stop",           "yes",        "no"};
    return names;
}

const std::vector<std::string>& large_gesture_names() {
    static const std::vector<std::string> names = {
        "kowtow",    "walk_left_right", "walk_right_left", "arm_up",    "arm_down",
        "rotate_cw", "rotate_ccw",      "point_right",     "point_left"};
    return names;
}

namespace {

// Skin tone sits well inside the chroma intervals: (Y,Cb,Cr) ~ (140,102,153).
constexpr std::uint8_t kSkinR = 175, kSkinG = 131, kSkinB = 94;
// Blue background lands far outside them.
constexpr std::uint8_t kBackR = 60, kBackG = 70, kBackB = 190;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen() >> 11) / 9007199254740992.0);
    }
    int range(int lo, int hi) { // inclusive
        return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

void fill_disk(BinaryMask& mask, double cx, double cy, double r) {
    int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
    int x1 = std::min(mask.width - 1, static_cast<int>(std::ceil(cx + r)));
    int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
    int y1 = std::min(mask.height - 1, static_cast<int>(std::ceil(cy + r)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) mask.set(x, y, true);
}

// Thick segment drawn as a swept disk.
void fill_capsule(BinaryMask& mask, double x0, double y0, double x1, double y1, double radius) {
    double len = std::hypot(x1 - x0, y1 - y0);
    int steps = std::max(1, static_cast<int>(std::ceil(len * 2.0)));
    for (int s = 0; s <= steps; ++s) {
        double t = static_cast<double>(s) / steps;
        fill_disk(mask, x0 + t * (x1 - x0), y0 + t * (y1 - y0), radius);
    }
}

void fill_rect(BinaryMask& mask, int x0, int y0, int x1, int y1) {
    for (int y = std::max(0, y0); y <= std::min(mask.height - 1, y1); ++y)
        for (int x = std::max(0, x0); x <= std::min(mask.width - 1, x1); ++x)
            mask.set(x, y, true);
}

} // namespace

StaticSample gen_static(const SynthSpec& spec) {
    if (spec.kind != SynthKind::Static) throw ArgumentError("gen_static: spec kind mismatch");
    const auto& names = static_gesture_names();
    if (spec.archetype < 0 || spec.archetype >= static_cast<int>(names.size()))
        throw ArgumentError("gen_static: archetype out of range");

    const int w = spec.width, h = spec.height;
    Rng rng(spec.seed * 1315423911u + static_cast<std::uint64_t>(spec.archetype) + 1);

    double palm_r = 24.0 * rng.uniform(0.95, 1.05);
    double cx = w * 0.55 + rng.uniform(-5.0, 5.0);
    double cy = h * 0.58 + rng.uniform(-4.0, 4.0);
    double finger_w = 10.0 + rng.range(-1, 1);

    int n_fingers = 0;
    double finger_len = 30.0, spread_deg = 0.0;
    bool thumb = false;
    switch (spec.archetype) {
    case 0: // fist: compact palm whose own medial peak stays in the feature
            // interval, plus knuckle nubs
        n_fingers = 5;
        finger_len = 7.0;
        spread_deg = 50.0;
        palm_r = 11.0 * rng.uniform(0.95, 1.05);
        break;
    case 1: n_fingers = 1; finger_len = 34.0; spread_deg = 0.0;  break;
    case 2: n_fingers = 2; finger_len = 32.0; spread_deg = 26.0; break;
    case 3: n_fingers = 3; finger_len = 30.0; spread_deg = 44.0; break;
    case 4: n_fingers = 4; finger_len = 28.0; spread_deg = 58.0; break;
    case 5: n_fingers = 5; finger_len = 26.0; spread_deg = 76.0; thumb = true; break;
    case 6: n_fingers = 1; finger_len = 52.0; spread_deg = 0.0;  finger_w -= 2.0; break; // point
    }
    finger_len *= rng.uniform(0.95, 1.05);

    BinaryMask hand(w, h);
    fill_disk(hand, cx, cy, palm_r);
    for (int i = 0; i < n_fingers; ++i) {
        double angle_deg = n_fingers == 1
                               ? 0.0
                               : -spread_deg / 2.0 + spread_deg * i / (n_fingers - 1);
        double a = (angle_deg + rng.uniform(-1.5, 1.5)) * M_PI / 180.0;
        double dx = std::sin(a), dy = -std::cos(a); // fingers point up
        double bx = cx + dx * (palm_r - 2.0), by = cy + dy * (palm_r - 2.0);
        fill_capsule(hand, bx, by, bx + dx * finger_len, by + dy * finger_len, finger_w / 2.0);
    }
    if (thumb) {
        // The open hand carries a sideways thumb.
        double a = (104.0 + rng.uniform(-2.0, 2.0)) * M_PI / 180.0;
        double dx = std::sin(a), dy = -std::cos(a);
        double bx = cx + dx * (palm_r - 2.0), by = cy + dy * (palm_r - 2.0);
        fill_capsule(hand, bx, by, bx + dx * 20.0, by + dy * 20.0, finger_w / 2.0);
    }
    // Forearm down to just above the frame edge.
    fill_capsule(hand, cx, cy + palm_r * 0.5, cx + rng.uniform(-2.0, 2.0),
                 std::min<double>(h - 6.0, cy + palm_r + 34.0), 9.0);

    // A face-sized disk elsewhere; the hand must out-score it on feature pixels.
    BinaryMask face(w, h);
    fill_disk(face, w * 0.18 + rng.uniform(-3.0, 3.0), h * 0.28 + rng.uniform(-3.0, 3.0),
              19.0 + rng.uniform(-1.5, 1.5));

    BinaryMask truth(w, h);
    for (std::size_t i = 0; i < truth.bits.size(); ++i)
        truth.bits[i] = (hand.bits[i] || face.bits[i]) ? 1 : 0;

    // Speckle noise: small skin-colored islands and small holes in the palm.
    BinaryMask rendered = truth;
    int speckles = static_cast<int>(std::lround(spec.noise * 12.0));
    for (int s = 0; s < speckles; ++s) {
        int x = rng.range(2, w - 4), y = rng.range(2, h - 4);
        bool clear = true;
        for (int dy = -3; dy <= 4 && clear; ++dy)
            for (int dx = -3; dx <= 4; ++dx)
                if (truth.in_bounds(x + dx, y + dy) && truth.at(x + dx, y + dy)) {
                    clear = false;
                    break;
                }
        if (clear) fill_rect(rendered, x, y, x + 1, y + 1);
    }
    int holes = static_cast<int>(std::lround(spec.noise * 6.0));
    for (int s = 0; s < holes; ++s) {
        double a = rng.uniform(0.0, 2.0 * M_PI);
        double rr = rng.uniform(0.0, palm_r - 6.0);
        int x = static_cast<int>(cx + rr * std::cos(a));
        int y = static_cast<int>(cy + rr * std::sin(a));
        for (int dy = 0; dy <= 1; ++dy)
            for (int dx = 0; dx <= 1; ++dx)
                if (rendered.in_bounds(x + dx, y + dy)) rendered.set(x + dx, y + dy, false);
    }

    StaticSample out;
    out.label = spec.archetype + 1;
    out.truth = truth;
    out.image = Image(w, h, 3, Colorspace::RGB);
    for (std::size_t i = 0; i < rendered.bits.size(); ++i) {
        out.image.data[i * 3 + 0] = rendered.bits[i] ? kSkinR : kBackR;
        out.image.data[i * 3 + 1] = rendered.bits[i] ? kSkinG : kBackG;
        out.image.data[i * 3 + 2] = rendered.bits[i] ? kSkinB : kBackB;
    }
    return out;
}

namespace {

struct Blob {
    PointF pos;
    double r = 10.0;
    double value = 200.0; // flat fill when textured == false
    bool textured = false;
};

void draw_frame(Image& frame, const std::vector<Blob>& blobs) {
    // Static fine-checker background: gradients everywhere pin the flow to
    // zero off the moving blob.
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x)
            frame.at(x, y) = static_cast<std::uint8_t>((x / 3 + y / 3) % 2 ? 20 : 38);
    for (const auto& b : blobs) {
        int x0 = std::max(0, static_cast<int>(std::floor(b.pos.x - b.r)));
        int x1 = std::min(frame.width - 1, static_cast<int>(std::ceil(b.pos.x + b.r)));
        int y0 = std::max(0, static_cast<int>(std::floor(b.pos.y - b.r)));
        int y1 = std::min(frame.height - 1, static_cast<int>(std::ceil(b.pos.y + b.r)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x) {
                double d2 = (x - b.pos.x) * (x - b.pos.x) + (y - b.pos.y) * (y - b.pos.y);
                if (d2 > b.r * b.r) continue;
                if (b.textured) {
                    // Concentric rings riding on the blob center: rich interior
                    // gradients for the flow, and any displacement leaves a
                    // texture mismatch across the whole overlap.
                    int ring = static_cast<int>(std::floor(std::sqrt(d2))) / 3;
                    frame.at(x, y) = static_cast<std::uint8_t>(ring % 2 ? 170 : 240);
                } else {
                    frame.at(x, y) = static_cast<std::uint8_t>(b.value);
                }
            }
    }
}

void sprinkle(Image& frame, Rng& rng, double noise) {
    int n = static_cast<int>(std::lround(noise * 10.0));
    for (int s = 0; s < n; ++s) {
        int x = rng.range(0, frame.width - 2), y = rng.range(0, frame.height - 2);
        for (int dy = 0; dy <= 1; ++dy)
            for (int dx = 0; dx <= 1; ++dx) frame.at(x + dx, y + dy) = 120;
    }
}

} // namespace

SequenceSample gen_sequence(const SynthSpec& spec, int n_frames) {
    if (n_frames < 6) throw ArgumentError("gen_sequence: need at least 6 frames");
    if (spec.kind == SynthKind::Static) throw ArgumentError("gen_sequence: spec kind mismatch");

    const bool large = spec.kind == SynthKind::DynamicLarge;
    const auto& names = large ? large_gesture_names() : small_gesture_names();
    if (spec.archetype < 0 || spec.archetype >= static_cast<int>(names.size()))
        throw ArgumentError("gen_sequence: archetype out of range");

    const int w = spec.width, h = spec.height;
    Rng rng(spec.seed * 2654435761u + static_cast<std::uint64_t>(spec.archetype) * 97 + 13);

    SequenceSample out;
    out.label = spec.archetype + 1;
    out.large = large;
    out.seq.frames.reserve(n_frames);

    if (!large) {
        // Two poses, three spans: base -> shifted -> base.
        double jx = rng.uniform(-3.0, 3.0), jy = rng.uniform(-3.0, 3.0);
        double r = 10.0 + rng.range(-1, 1);
        double shift = 11.0 + rng.uniform(-2.0, 2.0);
        double small_r = 6.0 + rng.uniform(-0.5, 0.5);
        double small_shift = 7.0 + rng.uniform(-1.0, 1.0);
        double v0 = 170.0 + rng.uniform(-8.0, 8.0);
        double v1 = 240.0 + rng.uniform(-8.0, 0.0);

        struct Hand {
            PointF base;
            PointF shift;
            double r;
        };
        std::vector<Hand> hands;
        switch (spec.archetype) {
        case 0: // wave_two_hands; the near hand reads larger, so the tracker
                // locks onto the same region at both transitions
            hands.push_back({{w * 0.28 + jx, h * 0.5 + jy}, {shift * 0.8, 0.0}, r + 1.5});
            hands.push_back({{w * 0.72 + jx, h * 0.5 + jy}, {-shift * 0.8, 0.0}, r - 1.5});
            break;
        case 1: hands.push_back({{w * 0.66 + jx, h * 0.5 + jy}, {shift, 0.0}, r}); break;
        case 2: hands.push_back({{w * 0.34 + jx, h * 0.5 + jy}, {-shift, 0.0}, r}); break;
        case 3: hands.push_back({{w * 0.5 + jx, h * 0.55 + jy}, {0.0, -shift}, r}); break;
        case 4: hands.push_back({{w * 0.5 + jx, h * 0.25 + jy}, {0.0, small_shift}, small_r}); break;
        case 5: hands.push_back({{w * 0.5 + jx, h * 0.25 + jy}, {small_shift, 0.0}, small_r}); break;
        }

        int ja = n_frames / 3, jb = 2 * n_frames / 3;
        for (int t = 0; t < n_frames; ++t) {
            bool shifted = t >= ja && t < jb;
            std::vector<Blob> blobs;
            for (const auto& hd : hands)
                blobs.push_back({{hd.base.x + (shifted ? hd.shift.x : 0.0),
                                  hd.base.y + (shifted ? hd.shift.y : 0.0)},
                                 hd.r,
                                 shifted ? v1 : v0});
            Image frame(w, h, 1, Colorspace::Gray);
            draw_frame(frame, blobs);
            sprinkle(frame, rng, spec.noise);
            out.seq.frames.push_back(std::move(frame));
            out.true_path.push_back(blobs.front().pos);
        }
    } else {
        double jx = rng.uniform(-3.0, 3.0), jy = rng.uniform(-2.0, 2.0);
        double r = 0.0;
        PointF from{}, to{};
        bool arc = false, cw = true;
        double arc_r = 26.0 + rng.uniform(-1.5, 1.5);
        switch (spec.archetype) {
        case 0: r = 9;  from = {w * 0.5, 16}; to = {w * 0.5, h - 16.0}; break; // kowtow
        case 1: r = 11; from = {22, h * 0.5}; to = {w - 22.0, h * 0.5}; break; // walk l->r
        case 2: r = 11; from = {w - 22.0, h * 0.5}; to = {22, h * 0.5}; break;
        case 3: r = 8;  from = {w * 0.7, h - 18.0}; to = {w * 0.7, 18}; break; // arm up
        case 4: r = 8;  from = {w * 0.7, 18}; to = {w * 0.7, h - 18.0}; break;
        case 5: r = 10; arc = true; cw = true; break;
        case 6: r = 10; arc = true; cw = false; break;
        case 7: r = 8;  from = {w * 0.28, h * 0.33}; to = {w * 0.8, h * 0.33}; break;
        case 8: r = 8;  from = {w * 0.8, h * 0.33}; to = {w * 0.28, h * 0.33}; break;
        }
        r += rng.uniform(-0.5, 0.5);

        for (int t = 0; t < n_frames; ++t) {
            double tt = static_cast<double>(t) / (n_frames - 1);
            PointF pos;
            if (arc) {
                double theta = -M_PI / 2.0 + (cw ? 1.0 : -1.0) * M_PI * tt;
                pos = {w * 0.5 + jx + arc_r * std::cos(theta),
                       h * 0.5 + jy + arc_r * std::sin(theta)};
            } else {
                pos = {from.x + jx + (to.x - from.x) * tt, from.y + jy + (to.y - from.y) * tt};
            }
            // Brightness swings through a half cosine per state span, so the
            // six evenly spaced state frames alternate between 170 and 240 and
            // every consecutive-state difference lights the whole swept region
            // as one solid component.
            double value = 205.0 - 35.0 * std::cos(5.0 * M_PI * tt);
            Image frame(w, h, 1, Colorspace::Gray);
            draw_frame(frame, {{pos, r, value, false}});
            sprinkle(frame, rng, spec.noise);
            out.seq.frames.push_back(std::move(frame));
            out.true_path.push_back(pos);
        }
    }

    out.true_transition = std::hypot(out.true_path.back().x - out.true_path.front().x,
                                     out.true_path.back().y - out.true_path.front().y);
    return out;
}

void write_synth_corpus(const std::string& root, SynthKind kind, int variants,
                        std::uint64_t base_seed, double noise, int n_frames) {
    namespace fs = std::filesystem;
    const auto& names = kind == SynthKind::Static    ? static_gesture_names()
                        : kind == SynthKind::DynamicSmall ? small_gesture_names()
                                                          : large_gesture_names();
    for (int a = 0; a < static_cast<int>(names.size()); ++a) {
        for (int p = 0; p < variants; ++p) {
            SynthSpec spec;
            spec.kind = kind;
            spec.archetype = a;
            spec.seed = base_seed + static_cast<std::uint64_t>(p);
            spec.noise = noise;
            char person[32];
            std::snprintf(person, sizeof(person), "person_%02d", p);
            fs::path dir = fs::path(root) / names[a] / person;
            fs::create_directories(dir);
            if (kind == SynthKind::Static) {
                StaticSample s = gen_static(spec);
                write_pnm(s.image, (dir / "sample.ppm").string());
            } else {
                spec.width = 120;
                spec.height = 90;
                SequenceSample s = gen_sequence(spec, n_frames);
                fs::path seq_dir = dir / "take_0";
                fs::create_directories(seq_dir);
                for (std::size_t t = 0; t < s.seq.frames.size(); ++t) {
                    char name[32];
                    std::snprintf(name, sizeof(name), "frame_%04zu.pgm", t);
                    write_pnm(s.seq.frames[t], (seq_dir / name).string());
                }
            }
        }
    }
}

} // namespace gestrec
