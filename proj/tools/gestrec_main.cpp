#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "gestrec/control.hpp"
#include "gestrec/pipeline.hpp"
#include "gestrec/pnm.hpp"
#include "gestrec/synth.hpp"

using namespace gestrec;

namespace {

PipelineConfig config_or_default(const std::string& path) {
    return path.empty() ? default_config() : load_config(path);
}

int run(int argc, char** argv) {
    CLI::App app{"Hand-gesture recognition toolkit"};
    app.require_subcommand(1);

    std::string config_path, db_path, db_small, db_large, dump_dir, out_path;
    std::string host = "127.0.0.1";
    int port = 9559;

    // static <image.ppm> --db <csv>
    auto* cmd_static = app.add_subcommand("static", "Classify a hand gesture image");
    std::string image_path;
    cmd_static->add_option("image", image_path, "PPM input image")->required();
    cmd_static->add_option("--db", db_path, "static gesture database CSV")->required();
    cmd_static->add_option("--config", config_path, "pipeline config JSON");
    cmd_static->add_option("--dump-dir", dump_dir, "directory for intermediate masks");

    // dynamic <frames-dir> --db-small ... --db-large ...
    auto* cmd_dynamic = app.add_subcommand("dynamic", "Classify a gesture frame sequence");
    std::string frames_dir;
    cmd_dynamic->add_option("frames", frames_dir, "directory of numbered PGM/PPM frames")
        ->required();
    cmd_dynamic->add_option("--db-small", db_small, "12-d small-amplitude database CSV");
    cmd_dynamic->add_option("--db-large", db_large, "60-d large-amplitude database CSV");
    cmd_dynamic->add_option("--config", config_path, "pipeline config JSON");

    // gate <frames-dir>
    auto* cmd_gate = app.add_subcommand("gate", "Report a sequence's amplitude class");
    cmd_gate->add_option("frames", frames_dir, "directory of numbered frames")->required();
    cmd_gate->add_option("--config", config_path, "pipeline config JSON");

    // build-db <root> --kind ... --out ...
    auto* cmd_build = app.add_subcommand("build-db", "Build a gesture database from a dataset");
    std::string root, kind_name = "static7";
    cmd_build->add_option("root", root, "dataset root (<class>/<person>/<sample>)")->required();
    cmd_build->add_option("--kind", kind_name, "static7 | dynamic12 | sequence60");
    cmd_build->add_option("--out", out_path, "output CSV path")->required();
    cmd_build->add_option("--config", config_path, "pipeline config JSON");

    // xval --db ... [--k N | --k-sweep N]
    auto* cmd_xval = app.add_subcommand("xval", "Cross-validate a gesture database");
    int k_opt = 0, k_sweep = 0;
    std::int64_t seed_opt = -1;
    bool csv_out = false;
    cmd_xval->add_option("--db", db_path, "database CSV")->required();
    cmd_xval->add_option("--k", k_opt, "neighbor count (default from config)");
    cmd_xval->add_option("--k-sweep", k_sweep, "evaluate k = 1..N");
    cmd_xval->add_option("--seed", seed_opt, "fold-shuffle seed (default from config)");
    cmd_xval->add_option("--config", config_path, "pipeline config JSON");
    cmd_xval->add_flag("--csv", csv_out, "emit CSV instead of text");

    // flow-dump <f1> <f2> --out-u ... --out-v ...
    auto* cmd_flow = app.add_subcommand("flow-dump", "Export the flow field of a frame pair");
    std::string f1_path, f2_path, out_u = "flow_u.pgm", out_v = "flow_v.pgm";
    cmd_flow->add_option("frame1", f1_path, "first frame")->required();
    cmd_flow->add_option("frame2", f2_path, "second frame")->required();
    cmd_flow->add_option("--out-u", out_u, "output PGM for u (128 + 16*velocity)");
    cmd_flow->add_option("--out-v", out_v, "output PGM for v");
    cmd_flow->add_option("--config", config_path, "pipeline config JSON");

    // send --host --port --class N
    auto* cmd_send = app.add_subcommand("send", "Send a control vector to the robot server");
    int class_idx = 1;
    cmd_send->add_option("--host", host, "server host");
    cmd_send->add_option("--port", port, "server port");
    cmd_send->add_option("--class", class_idx, "1-based gesture class index")->required();
    cmd_send->add_option("--config", config_path, "pipeline config JSON (gesture count)");

    // serve-robot --port
    auto* cmd_serve = app.add_subcommand("serve-robot", "Run the mock robot server");
    cmd_serve->add_option("--port", port, "listen port");
    cmd_serve->add_option("--config", config_path, "pipeline config JSON (gesture table)");

    // synth --out DIR
    auto* cmd_synth = app.add_subcommand("synth", "Generate the synthetic gesture corpus");
    std::string synth_root;
    int variants = 10, n_frames = 24;
    double noise = 0.3;
    std::uint64_t base_seed = 1;
    cmd_synth->add_option("--out", synth_root, "corpus root directory")->required();
    cmd_synth->add_option("--variants", variants, "variants per class");
    cmd_synth->add_option("--frames", n_frames, "frames per sequence");
    cmd_synth->add_option("--noise", noise, "noise level, 0..1");
    cmd_synth->add_option("--seed", base_seed, "base seed");

    CLI11_PARSE(app, argc, argv);

    if (cmd_static->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        GestureDatabase db = read_database(db_path);
        if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);
        StaticRunResult res = run_static(image_path, db, cfg, dump_dir);
        std::printf("label %d\n", res.label);
        std::printf("vector");
        for (double v : res.vec.v) std::printf(" %.17g", v);
        std::printf("\n");
        return 0;
    }

    if (cmd_dynamic->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        GestureDatabase small, large;
        if (!db_small.empty()) small = read_database(db_small);
        if (!db_large.empty()) large = read_database(db_large);
        DynamicRunResult res = run_dynamic(frames_dir, db_small.empty() ? nullptr : &small,
                                           db_large.empty() ? nullptr : &large, cfg);
        if (!res.classified) {
            std::fprintf(stderr, "error: no database provided for the %s-amplitude route\n",
                         res.gate == Amplitude::Small ? "small" : "large");
            return 2;
        }
        std::printf("gate %s\n", res.gate == Amplitude::Small ? "small" : "large");
        std::printf("transition %.4f\n", res.transition);
        std::printf("label %d\n", res.label);
        std::printf("vector");
        for (double v : res.features) std::printf(" %.17g", v);
        std::printf("\n");
        return 0;
    }

    if (cmd_gate->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        FrameSequence seq = load_frames(frames_dir);
        auto records = track(seq, cfg.flow);
        const TrackRecord* first = nullptr;
        const TrackRecord* last = nullptr;
        for (const auto& r : records)
            if (r.present) {
                if (!first) first = &r;
                last = &r;
            }
        double transition = centroid_transition(*first, *last);
        std::printf("transition %.4f\n", transition);
        std::printf("gate %s\n",
                    amplitude_gate(transition, cfg.flow) == Amplitude::Small ? "small" : "large");
        return 0;
    }

    if (cmd_build->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        BuildReport report = build_db(root, database_kind_from_name(kind_name), cfg, out_path);
        std::printf("rows %zu\nfailures %zu\n", report.succeeded, report.failed);
        for (const auto& m : report.messages) std::fprintf(stderr, "skip: %s\n", m.c_str());
        return 0;
    }

    if (cmd_xval->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        if (k_opt > 0) cfg.classifier.k = k_opt;
        if (seed_opt >= 0) cfg.seed = static_cast<std::uint64_t>(seed_opt);
        GestureDatabase db = read_database(db_path);
        auto rows = xval(db, cfg, k_sweep);
        for (const auto& row : rows) {
            std::printf("k=%d\n", row.k);
            std::fputs(csv_out ? row.report.to_csv().c_str() : row.report.to_text().c_str(),
                       stdout);
        }
        return 0;
    }

    if (cmd_flow->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        Image f1 = to_gray(read_pnm(f1_path));
        Image f2 = to_gray(read_pnm(f2_path));
        dump_flow(horn_schunck(f1, f2, cfg.flow), out_u, out_v);
        std::printf("wrote %s %s\n", out_u.c_str(), out_v.c_str());
        return 0;
    }

    if (cmd_send->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        std::string reply =
            send_control(host, port, class_idx, static_cast<int>(cfg.gesture_names.size()));
        std::printf("%s\n", reply.c_str());
        return 0;
    }

    if (cmd_serve->parsed()) {
        PipelineConfig cfg = config_or_default(config_path);
        RobotServer server(port, cfg.gesture_names);
        server.start();
        std::fprintf(stderr, "listening on port %d\n", server.port());
        server.run();
        return 0;
    }

    if (cmd_synth->parsed()) {
        write_synth_corpus(synth_root + "/static", SynthKind::Static, variants, base_seed, noise,
                           n_frames);
        write_synth_corpus(synth_root + "/small", SynthKind::DynamicSmall, variants, base_seed,
                           noise, n_frames);
        write_synth_corpus(synth_root + "/large", SynthKind::DynamicLarge, variants, base_seed,
                           noise, n_frames);

        // Matching configs: label order per corpus and keyframe grouping tuned
        // to the short synthetic sequences.
        PipelineConfig cfg = default_config();
        cfg.skin.apply_gray_world = false;
        cfg.gesture_names = static_gesture_names();
        save_config(cfg, synth_root + "/static_config.json");
        cfg.dynamic.lag = 2;
        cfg.dynamic.group = 1;
        cfg.gesture_names = small_gesture_names();
        save_config(cfg, synth_root + "/small_config.json");
        cfg.gesture_names = large_gesture_names();
        save_config(cfg, synth_root + "/large_config.json");
        std::printf("corpus written to %s\n", synth_root.c_str());
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ContentError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
