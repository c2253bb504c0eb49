#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "gestrec/pipeline.hpp"
#include "gestrec/pnm.hpp"
#include "gestrec/synth.hpp"

using namespace gestrec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::path("pipeline_tmp") / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all("pipeline_tmp"); }
};

PipelineConfig synth_config() {
    PipelineConfig cfg = default_config();
    cfg.dynamic.group = 1;        // short synthetic sequences carry few maxima
    cfg.skin.apply_gray_world = false; // corpus scenes are already balanced
    return cfg;
}

} // namespace

TEST_CASE("config round trip and validation") {
    TempDir tmp("config");
    PipelineConfig cfg = default_config();
    cfg.skin.cb_lo = 80;
    cfg.hand.frame_size = 128;
    cfg.flow.gate_threshold = 33.5;
    cfg.classifier.voting = Voting::InverseDistance;
    cfg.gesture_names = {"alpha", "beta"};
    save_config(cfg, (tmp.path / "cfg.json").string());

    PipelineConfig back = load_config((tmp.path / "cfg.json").string());
    CHECK(back.skin.cb_lo == 80);
    CHECK(back.hand.frame_size == 128);
    CHECK(back.flow.gate_threshold == 33.5);
    CHECK(back.classifier.voting == Voting::InverseDistance);
    CHECK(back.gesture_names == cfg.gesture_names);

    // Partial configs keep defaults for everything unstated.
    std::ofstream((tmp.path / "partial.json").string()) << R"({"hand": {"feat_lo": 5}})";
    PipelineConfig partial = load_config((tmp.path / "partial.json").string());
    CHECK(partial.hand.feat_lo == 5);
    CHECK(partial.hand.feat_hi == 12);
    CHECK(partial.skin.cb_lo == 77);

    std::ofstream((tmp.path / "broken.json").string()) << "{nope";
    CHECK_THROWS_AS(load_config((tmp.path / "broken.json").string()), ParseError);

    std::ofstream((tmp.path / "bad.json").string()) << R"({"gesture_names": []})";
    CHECK_THROWS_AS(load_config((tmp.path / "bad.json").string()), ArgumentError);
}

TEST_CASE("static pipeline classifies synthetic hands") {
    TempDir tmp("static");
    PipelineConfig cfg = synth_config();
    cfg.gesture_names = static_gesture_names();

    // Tiny database: 3 variants of each archetype.
    GestureDatabase db;
    db.kind = DatabaseKind::Static7;
    db.dim = 7;
    for (int arche = 0; arche < 7; ++arche) {
        for (int v = 0; v < 3; ++v) {
            SynthSpec spec;
            spec.kind = SynthKind::Static;
            spec.archetype = arche;
            spec.seed = 100 + v;
            spec.noise = 0.2;
            StaticSample s = gen_static(spec);
            StaticVector sv = static_pipeline(s.image, cfg);
            GestureRow row;
            row.label = s.label;
            row.person = "p" + std::to_string(v);
            row.features.assign(sv.v.begin(), sv.v.end());
            db.rows.push_back(row);
        }
    }

    // A held-out variant of a known class comes back with its own label.
    SynthSpec probe;
    probe.kind = SynthKind::Static;
    probe.archetype = 5; // five
    probe.seed = 555;
    probe.noise = 0.2;
    StaticSample s = gen_static(probe);
    write_pnm(s.image, (tmp.path / "probe.ppm").string());

    StaticRunResult res = run_static((tmp.path / "probe.ppm").string(), db, cfg);
    CHECK(res.label == 6);

    // Blank image: no hand anywhere.
    Image blank(176, 144, 3, Colorspace::RGB, 10);
    write_pnm(blank, (tmp.path / "blank.ppm").string());
    CHECK_THROWS_AS(run_static((tmp.path / "blank.ppm").string(), db, cfg), NoHandError);

    // Corrupt PPM: parse error.
    std::ofstream((tmp.path / "corrupt.ppm").string()) << "P6\n10 10\n255\nxx";
    CHECK_THROWS_AS(run_static((tmp.path / "corrupt.ppm").string(), db, cfg), ParseError);
}

TEST_CASE("intermediate dumps round-trip to the same vector") {
    TempDir tmp("dumps");
    PipelineConfig cfg = synth_config();

    SynthSpec spec;
    spec.kind = SynthKind::Static;
    spec.archetype = 2;
    spec.seed = 77;
    spec.noise = 0.3;
    StaticSample s = gen_static(spec);

    fs::create_directories(tmp.path / "dump");
    StaticVector direct = static_pipeline(s.image, cfg, (tmp.path / "dump").string());

    BinaryMask recentered = read_mask((tmp.path / "dump" / "05_recentered.pgm").string());
    StaticVector resumed = static_vector(recentered);
    for (int i = 0; i < 7; ++i) CHECK(resumed.v[i] == direct.v[i]);
}

TEST_CASE("dynamic run routes by amplitude") {
    TempDir tmp("dynamic");
    PipelineConfig cfg = synth_config();

    auto write_seq = [&](const SequenceSample& s, const std::string& name) {
        fs::path dir = tmp.path / name;
        fs::create_directories(dir);
        for (std::size_t t = 0; t < s.seq.size(); ++t) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "frame_%04zu.pgm", t);
            write_pnm(s.seq.frames[t], (dir / buf).string());
        }
        return dir.string();
    };

    // Small databases from a few variants.
    GestureDatabase small_db;
    small_db.kind = DatabaseKind::Dynamic12;
    small_db.dim = 12;
    for (int arche = 0; arche < 6; ++arche)
        for (int v = 0; v < 2; ++v) {
            SynthSpec spec;
            spec.kind = SynthKind::DynamicSmall;
            spec.archetype = arche;
            spec.seed = 10 + v;
            spec.width = 120;
            spec.height = 90;
            SequenceSample s = gen_sequence(spec, 24);
            MotionVector mv = small_pipeline(s.seq, cfg);
            GestureRow row;
            row.label = s.label;
            row.features.assign(mv.v.begin(), mv.v.end());
            small_db.rows.push_back(row);
        }
    GestureDatabase large_db;
    large_db.kind = DatabaseKind::Sequence60;
    large_db.dim = 60;
    for (int arche = 0; arche < 9; ++arche)
        for (int v = 0; v < 2; ++v) {
            SynthSpec spec;
            spec.kind = SynthKind::DynamicLarge;
            spec.archetype = arche;
            spec.seed = 10 + v;
            spec.width = 120;
            spec.height = 90;
            SequenceSample s = gen_sequence(spec, 24);
            SequenceVector sv = sequence_vector(s.seq, cfg.dynamic);
            GestureRow row;
            row.label = s.label;
            row.features.assign(sv.v.begin(), sv.v.end());
            large_db.rows.push_back(row);
        }

    SynthSpec wave;
    wave.kind = SynthKind::DynamicSmall;
    wave.archetype = 1;
    wave.seed = 99;
    wave.width = 120;
    wave.height = 90;
    SequenceSample ws = gen_sequence(wave, 24);
    std::string wave_dir = write_seq(ws, "wave");
    DynamicRunResult wr = run_dynamic(wave_dir, &small_db, &large_db, cfg);
    CHECK(wr.gate == Amplitude::Small);
    CHECK(wr.transition < 40.0);
    CHECK(wr.label == 2);
    CHECK(wr.features.size() == 12);

    SynthSpec sweep;
    sweep.kind = SynthKind::DynamicLarge;
    sweep.archetype = 3; // arm_up
    sweep.seed = 99;
    sweep.width = 120;
    sweep.height = 90;
    SequenceSample ss = gen_sequence(sweep, 24);
    std::string sweep_dir = write_seq(ss, "sweep");
    DynamicRunResult sr = run_dynamic(sweep_dir, &small_db, &large_db, cfg);
    CHECK(sr.gate == Amplitude::Large);
    CHECK(sr.transition > 40.0);
    CHECK(sr.label == 4);
    CHECK(sr.features.size() == 60);

    // Static frames: no motion.
    fs::path still_dir = tmp.path / "still";
    fs::create_directories(still_dir);
    for (int t = 0; t < 8; ++t) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "frame_%04d.pgm", t);
        write_pnm(Image(60, 45, 1, Colorspace::Gray, 33), (still_dir / buf).string());
    }
    CHECK_THROWS_AS(run_dynamic(still_dir.string(), &small_db, &large_db, cfg), NoMotionError);
}

TEST_CASE("build_db ingests the corpus layout and is deterministic") {
    TempDir tmp("builddb");
    PipelineConfig cfg = synth_config();
    cfg.gesture_names = static_gesture_names();

    write_synth_corpus((tmp.path / "corpus").string(), SynthKind::Static, 2, 50, 0.2, 24);

    // One corrupt sample among the rest: logged, not fatal.
    std::ofstream((tmp.path / "corpus" / "fist" / "person_00" / "broken.ppm").string())
        << "P6\n4 4\n255\nzz";

    BuildReport rep =
        build_db((tmp.path / "corpus").string(), DatabaseKind::Static7, cfg,
                 (tmp.path / "static.csv").string());
    CHECK(rep.succeeded == 14);
    CHECK(rep.failed == 1);

    GestureDatabase db = read_database((tmp.path / "static.csv").string());
    CHECK(db.kind == DatabaseKind::Static7);
    CHECK(db.rows.size() == 14);
    std::set<int> labels;
    for (const auto& row : db.rows) labels.insert(row.label);
    CHECK(labels == std::set<int>{1, 2, 3, 4, 5, 6, 7});

    // Byte-identical on rebuild.
    BuildReport rep2 =
        build_db((tmp.path / "corpus").string(), DatabaseKind::Static7, cfg,
                 (tmp.path / "static2.csv").string());
    CHECK(rep2.succeeded == rep.succeeded);
    std::ifstream a((tmp.path / "static.csv").string()), b((tmp.path / "static2.csv").string());
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);

    // Empty root: nothing ingests.
    fs::create_directories(tmp.path / "empty");
    CHECK_THROWS_AS(build_db((tmp.path / "empty").string(), DatabaseKind::Static7, cfg,
                             (tmp.path / "none.csv").string()),
                    DegenerateInputError);
}

TEST_CASE("xval emits one report per k") {
    PipelineConfig cfg = default_config();
    cfg.folds = 5;

    GestureDatabase db;
    db.kind = DatabaseKind::Dynamic12;
    db.dim = 12;
    std::mt19937_64 rng(4);
    for (int i = 0; i < 40; ++i) {
        GestureRow row;
        row.label = i % 2 + 1;
        for (int f = 0; f < 12; ++f)
            row.features.push_back((row.label - 1) * 5.0 + double(rng() % 100) / 100.0);
        db.rows.push_back(row);
    }

    auto rows = xval(db, cfg, 4);
    REQUIRE(rows.size() == 4);
    for (int k = 1; k <= 4; ++k) CHECK(rows[static_cast<std::size_t>(k - 1)].k == k);
    CHECK(rows[0].report.average_rate == 1.0); // separable at k=1
    CHECK(!rows[0].report.to_text().empty());
    CHECK(!rows[0].report.to_csv().empty());

    // folds > rows: split error.
    GestureDatabase tiny = db;
    tiny.rows.resize(3);
    PipelineConfig tcfg = cfg;
    tcfg.folds = 10;
    CHECK_THROWS_AS(xval(tiny, tcfg, 0), ArgumentError);
}
