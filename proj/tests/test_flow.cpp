#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gestrec/flow.hpp"
#include "gestrec/synth.hpp"
#include "oracles.hpp"

using namespace gestrec;

namespace {

Image ramp_x(int w, int h, int slope, int offset = 0) {
    Image img(w, h, 1, Colorspace::Gray);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.at(x, y) = static_cast<std::uint8_t>(std::clamp(slope * x + offset, 0, 255));
    return img;
}

// Discretized flow energy: data term plus alpha^2-weighted forward-difference
// smoothness.
double flow_energy(const Derivatives& d, const FlowField& f, double alpha) {
    double e = 0;
    for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
            std::size_t i = f.idx(x, y);
            double data = d.ix[i] * f.u[i] + d.iy[i] * f.v[i] + d.it[i];
            e += data * data;
            double ux = x + 1 < f.width ? f.u[f.idx(x + 1, y)] - f.u[i] : 0;
            double uy = y + 1 < f.height ? f.u[f.idx(x, y + 1)] - f.u[i] : 0;
            double vx = x + 1 < f.width ? f.v[f.idx(x + 1, y)] - f.v[i] : 0;
            double vy = y + 1 < f.height ? f.v[f.idx(x, y + 1)] - f.v[i] : 0;
            e += alpha * alpha * (ux * ux + uy * uy + vx * vx + vy * vy);
        }
    }
    return e;
}

} // namespace

TEST_CASE("derivatives") {
    Image flat(10, 8, 1, Colorspace::Gray, 60);
    Derivatives d = derivatives(flat, flat);
    for (std::size_t i = 0; i < d.ix.size(); ++i) {
        CHECK(d.ix[i] == 0.0);
        CHECK(d.iy[i] == 0.0);
        CHECK(d.it[i] == 0.0);
    }

    // Uniform temporal step: It = 8 everywhere, Ix as from f1 alone.
    Image base = ramp_x(12, 8, 2, 10);
    Image plus8 = base;
    for (auto& v : plus8.data) v = static_cast<std::uint8_t>(v + 8);
    d = derivatives(base, plus8);
    Derivatives d_self = derivatives(base, base);
    for (std::size_t i = 0; i < d.it.size(); ++i) {
        CHECK(d.it[i] == doctest::Approx(8.0));
        CHECK(d.ix[i] == doctest::Approx(d_self.ix[i]));
    }

    // Linear ramp f = 3x: Ix = 3 in the interior.
    Image ramp = ramp_x(20, 10, 3);
    d = derivatives(ramp, ramp);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 19; ++x)
            CHECK(d.ix[static_cast<std::size_t>(y) * 20 + x] == doctest::Approx(3.0));

    CHECK_THROWS_AS(derivatives(flat, Image(4, 4, 1, Colorspace::Gray)), ArgumentError);
}

TEST_CASE("horn_schunck identical frames stay exactly zero") {
    std::mt19937_64 rng(71);
    Image f = oracles::random_gray(rng, 32, 24);
    FlowParams p;
    p.iterations = 25;
    FlowField flow = horn_schunck(f, f, p);
    for (std::size_t i = 0; i < flow.u.size(); ++i) {
        CHECK(flow.u[i] == 0.0);
        CHECK(flow.v[i] == 0.0);
    }
}

TEST_CASE("horn_schunck recovers a unit shift of a ramp") {
    // f2 is f1 shifted right by one pixel.
    Image f1 = ramp_x(64, 48, 1, 40);
    Image f2 = ramp_x(64, 48, 1, 39);
    FlowParams p; // alpha 1, 100 iterations
    FlowField flow = horn_schunck(f1, f2, p);

    for (int y = 8; y < 40; ++y) {
        for (int x = 8; x < 56; ++x) {
            CHECK(flow.u[flow.idx(x, y)] == doctest::Approx(1.0).epsilon(0.20));
            CHECK(std::abs(flow.v[flow.idx(x, y)]) < 0.25);
        }
    }
}

TEST_CASE("horn_schunck is deterministic") {
    std::mt19937_64 rng(5);
    Image f1 = oracles::random_gray(rng, 24, 20);
    Image f2 = oracles::random_gray(rng, 24, 20);
    FlowParams p;
    p.iterations = 30;
    FlowField a = horn_schunck(f1, f2, p);
    FlowField b = horn_schunck(f1, f2, p);
    CHECK(a.u == b.u);
    CHECK(a.v == b.v);
}

TEST_CASE("horn_schunck energy decreases from iteration 1 to 100") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 5; ++trial) {
        Image f1 = oracles::random_gray(rng, 40, 30);
        Image f2 = oracles::random_gray(rng, 40, 30);
        Derivatives d = derivatives(f1, f2);
        FlowParams p1, p100;
        p1.iterations = 1;
        p100.iterations = 100;
        double e1 = flow_energy(d, horn_schunck(f1, f2, p1), p1.alpha);
        double e100 = flow_energy(d, horn_schunck(f1, f2, p100), p100.alpha);
        CHECK(e100 <= e1);
    }
}

TEST_CASE("motion_mask") {
    FlowParams p;
    FlowField zero(20, 16);
    CHECK(motion_mask(zero, p).count() == 0);

    FlowField uniform(20, 16);
    for (auto& u : uniform.u) u = 1.0;
    CHECK(motion_mask(uniform, p).count() == 20 * 16);

    // Speckles die in the median pass; compose(threshold, median, close) oracle.
    std::mt19937_64 rng(8);
    FlowField noisy(30, 22);
    for (int i = 0; i < 12; ++i) noisy.u[rng() % noisy.u.size()] = 2.0;
    for (int y = 8; y <= 14; ++y)
        for (int x = 8; x <= 18; ++x) noisy.v[noisy.idx(x, y)] = 1.5;
    BinaryMask got = motion_mask(noisy, p);

    BinaryMask thresh(30, 22);
    for (std::size_t i = 0; i < noisy.u.size(); ++i)
        thresh.bits[i] = std::hypot(noisy.u[i], noisy.v[i]) >= p.vel_threshold ? 1 : 0;
    BinaryMask want = morphology(median_filter(thresh, p.median_window), MorphOp::Close,
                                 p.close_radius);
    CHECK(got == want);
}

TEST_CASE("track") {
    FlowParams p;
    p.min_region = 20;

    // Static video: no motion anywhere.
    FrameSequence still;
    for (int i = 0; i < 4; ++i) still.frames.push_back(Image(40, 30, 1, Colorspace::Gray, 77));
    CHECK_THROWS_AS(track(still, p), NoMotionError);

    // Translating square: centroids advance monotonically.
    FrameSequence seq;
    const int n = 8;
    for (int t = 0; t < n; ++t) {
        Image f(80, 40, 1, Colorspace::Gray, 20);
        int x0 = 8 + 6 * t;
        for (int y = 14; y < 26; ++y)
            for (int x = x0; x < x0 + 12; ++x) f.at(x, y) = 220;
        seq.frames.push_back(f);
    }
    auto records = track(seq, p);
    REQUIRE(records.size() == n - 1);
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        REQUIRE(records[i].present);
        REQUIRE(records[i + 1].present);
        CHECK(records[i].cx < records[i + 1].cx);
        CHECK(records[i].min_x <= records[i].cx);
        CHECK(records[i].cx <= records[i].max_x);
    }

    // Two movers: the larger is tracked.
    FrameSequence two;
    for (int t = 0; t < 4; ++t) {
        Image f(100, 50, 1, Colorspace::Gray, 20);
        int big_x = 10 + 5 * t, small_x = 70 + 5 * t;
        for (int y = 10; y < 30; ++y)
            for (int x = big_x; x < big_x + 18; ++x) f.at(x, y) = 230;
        for (int y = 36; y < 44; ++y)
            for (int x = small_x; x < small_x + 8; ++x) f.at(x, y) = 230;
        two.frames.push_back(f);
    }
    for (const auto& rec : track(two, p)) {
        REQUIRE(rec.present);
        CHECK(rec.cy < 33); // the big mover's band
    }
}

TEST_CASE("centroid_transition matches the worked examples") {
    auto rec = [](double x, double y) {
        TrackRecord r;
        r.present = true;
        r.cx = x;
        r.cy = y;
        return r;
    };
    // Small-amplitude wave.
    CHECK(centroid_transition(rec(127.9951, 91.7437), rec(133.0188, 83.4235)) ==
          doctest::Approx(9.7192).epsilon(1e-4));
    // Arm pointing sweep; the distance the printed coordinates actually yield.
    CHECK(centroid_transition(rec(156.5291, 167.0471), rec(202.4838, 93.6265)) ==
          doctest::Approx(86.6165).epsilon(1e-4));
    // Arm lowering sweep.
    CHECK(centroid_transition(rec(131.5066, 39.8289), rec(128.6642, 127.8271)) ==
          doctest::Approx(88.0441).epsilon(1e-4));

    // Symmetric; zero iff coincident.
    CHECK(centroid_transition(rec(1, 2), rec(4, 6)) ==
          doctest::Approx(centroid_transition(rec(4, 6), rec(1, 2))));
    CHECK(centroid_transition(rec(3, 3), rec(3, 3)) == 0.0);
    CHECK_THROWS_AS(centroid_transition(TrackRecord{}, rec(0, 0)), ArgumentError);
}

TEST_CASE("amplitude_gate") {
    FlowParams p; // gate at 40
    CHECK(amplitude_gate(9.7192, p) == Amplitude::Small);
    CHECK(amplitude_gate(86.6165, p) == Amplitude::Large);
    CHECK(amplitude_gate(40.0, p) == Amplitude::Large); // inclusive upper class
    CHECK(amplitude_gate(39.999, p) == Amplitude::Small);
    CHECK_THROWS_AS(amplitude_gate(-1.0, p), ArgumentError);
}
