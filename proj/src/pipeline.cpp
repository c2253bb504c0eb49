#include "gestrec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "gestrec/pnm.hpp"
#include "gestrec/skin.hpp"

namespace fs = std::filesystem;

namespace gestrec {

FrameSequence load_frames(const std::string& dir) {
    std::vector<std::string> paths;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        if (ext == ".pgm" || ext == ".ppm") paths.push_back(entry.path().string());
    }
    if (ec) throw ParseError(dir + ": " + ec.message());
    std::sort(paths.begin(), paths.end());
    if (paths.size() < 2) throw ParseError(dir + ": fewer than 2 frame files");

    FrameSequence seq;
    for (const auto& p : paths) seq.frames.push_back(to_gray(read_pnm(p)));
    seq.validate();
    return seq;
}

StaticVector static_pipeline(const Image& rgb, const PipelineConfig& cfg,
                             const std::string& dump_dir) {
    auto dump = [&](const BinaryMask& mask, const char* name) {
        if (dump_dir.empty()) return;
        write_mask(mask, (fs::path(dump_dir) / name).string());
    };

    Image balanced = cfg.skin.apply_gray_world ? gray_world(rgb) : rgb;
    Image ycbcr = rgb_to_ycbcr(balanced);
    BinaryMask skin = skin_mask(ycbcr, cfg.skin);
    dump(skin, "01_skin.pgm");
    BinaryMask filtered = filter_noise(skin, cfg.skin);
    dump(filtered, "02_filtered.pgm");

    DistanceMap dt = chamfer_dt(filtered);
    auto feats = filter_features(feature_pixels(dt), cfg.hand.feat_lo, cfg.hand.feat_hi);
    BinaryMask hand = select_hand(filtered, feats, cfg.hand);
    dump(hand, "03_hand.pgm");

    // Feature pixels for the cut come from the selected component only.
    std::vector<FeaturePixel> hand_feats;
    for (const auto& f : feats)
        if (hand.at(f.x, f.y)) hand_feats.push_back(f);
    BinaryMask cut = wrist_cut(hand, cfg.hand, hand_feats);
    dump(cut, "04_cut.pgm");
    BinaryMask centered = recenter(cut, cfg.hand.frame_size);
    dump(centered, "05_recentered.pgm");

    return static_vector(centered);
}

MotionVector small_pipeline(const FrameSequence& seq, const PipelineConfig& cfg) {
    auto candidates =
        key_frame_candidates(seq, cfg.dynamic.lag, cfg.dynamic.group, cfg.dynamic.bins);
    auto [fa, fb] = pick_two_keyframes(seq, candidates, cfg.dynamic.bins);
    Image diff = difference_image(seq.frames[fa], seq.frames[fb]);
    auto regions = motion_regions(diff, cfg.dynamic.diff_threshold, cfg.dynamic.min_region,
                                  cfg.dynamic.max_regions);
    return motion_vector(diff, regions);
}

StaticRunResult run_static(const std::string& image_path, const GestureDatabase& db,
                           const PipelineConfig& cfg, const std::string& dump_dir) {
    Image rgb = read_pnm(image_path);
    if (rgb.channels != 3) throw ParseError(image_path + ": static input must be a PPM color image");

    StaticRunResult out;
    out.vec = static_pipeline(rgb, cfg, dump_dir);

    GestureDatabase normed = db.normalized() ? db : normalize(db);
    std::vector<double> query(out.vec.v.begin(), out.vec.v.end());
    out.label = knn(normed, normed.apply_norm(query), cfg.classifier).label;
    out.vec.label = out.label;
    return out;
}

DynamicRunResult run_dynamic(const std::string& frames_dir, const GestureDatabase* small_db,
                             const GestureDatabase* large_db, const PipelineConfig& cfg) {
    FrameSequence seq = load_frames(frames_dir);
    auto records = track(seq, cfg.flow);

    const TrackRecord* first = nullptr;
    const TrackRecord* last = nullptr;
    for (const auto& r : records)
        if (r.present) {
            if (!first) first = &r;
            last = &r;
        }
    // track() guarantees at least one present record.

    DynamicRunResult out;
    out.transition = centroid_transition(*first, *last);
    out.gate = amplitude_gate(out.transition, cfg.flow);

    if (out.gate == Amplitude::Small) {
        MotionVector mv = small_pipeline(seq, cfg);
        out.features.assign(mv.v.begin(), mv.v.end());
        if (small_db) {
            GestureDatabase normed = small_db->normalized() ? *small_db : normalize(*small_db);
            out.label = knn(normed, normed.apply_norm(out.features), cfg.classifier).label;
            out.classified = true;
        }
    } else {
        SequenceVector sv = sequence_vector(seq, cfg.dynamic);
        out.features.assign(sv.v.begin(), sv.v.end());
        if (large_db) {
            GestureDatabase normed = large_db->normalized() ? *large_db : normalize(*large_db);
            out.label = knn(normed, normed.apply_norm(out.features), cfg.classifier).label;
            out.classified = true;
        }
    }
    return out;
}

BuildReport build_db(const std::string& root, DatabaseKind kind, const PipelineConfig& cfg,
                     const std::string& out_csv) {
    BuildReport report;
    GestureDatabase db;
    db.kind = kind;
    db.dim = database_dim(kind);

    for (std::size_t cls = 0; cls < cfg.gesture_names.size(); ++cls) {
        fs::path class_dir = fs::path(root) / cfg.gesture_names[cls];
        if (!fs::exists(class_dir)) continue;

        std::vector<fs::path> persons;
        for (const auto& e : fs::directory_iterator(class_dir))
            if (e.is_directory()) persons.push_back(e.path());
        std::sort(persons.begin(), persons.end());

        for (const auto& person : persons) {
            std::vector<fs::path> samples;
            for (const auto& e : fs::directory_iterator(person)) samples.push_back(e.path());
            std::sort(samples.begin(), samples.end());

            for (const auto& sample : samples) {
                GestureRow row;
                row.label = static_cast<int>(cls) + 1;
                row.person = person.filename().string();
                try {
                    if (kind == DatabaseKind::Static7) {
                        if (!fs::is_regular_file(sample)) continue;
                        Image rgb = read_pnm(sample.string());
                        StaticVector sv = static_pipeline(rgb, cfg);
                        row.features.assign(sv.v.begin(), sv.v.end());
                    } else if (kind == DatabaseKind::Dynamic12) {
                        if (!fs::is_directory(sample)) continue;
                        MotionVector mv = small_pipeline(load_frames(sample.string()), cfg);
                        row.features.assign(mv.v.begin(), mv.v.end());
                    } else {
                        if (!fs::is_directory(sample)) continue;
                        SequenceVector sv =
                            sequence_vector(load_frames(sample.string()), cfg.dynamic);
                        row.features.assign(sv.v.begin(), sv.v.end());
                    }
                    db.rows.push_back(std::move(row));
                    report.succeeded++;
                } catch (const std::exception& e) {
                    report.failed++;
                    report.messages.push_back(sample.string() + ": " + e.what());
                }
            }
        }
    }

    if (report.succeeded == 0)
        throw DegenerateInputError("build_db: no sample produced a feature vector");
    write_database(db, out_csv);
    return report;
}

std::vector<XvalRow> xval(const GestureDatabase& db, const PipelineConfig& cfg, int k_max) {
    std::vector<XvalRow> rows;
    int lo = k_max > 0 ? 1 : cfg.classifier.k;
    int hi = k_max > 0 ? k_max : cfg.classifier.k;
    for (int k = lo; k <= hi; ++k) {
        KnnParams p = cfg.classifier;
        p.k = k;
        rows.push_back({k, cross_validate(db, p, cfg.folds, cfg.seed)});
    }
    return rows;
}

void dump_flow(const FlowField& flow, const std::string& u_path, const std::string& v_path) {
    auto encode = [&](const std::vector<double>& comp) {
        Image img(flow.width, flow.height, 1, Colorspace::Gray);
        for (std::size_t i = 0; i < comp.size(); ++i) {
            double v = std::round(128.0 + 16.0 * comp[i]);
            img.data[i] = static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, v)));
        }
        return img;
    };
    write_pnm(encode(flow.u), u_path);
    write_pnm(encode(flow.v), v_path);
}

} // namespace gestrec
