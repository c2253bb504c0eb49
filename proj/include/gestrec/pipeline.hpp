#pragma once
#include <string>
#include <vector>

#include "gestrec/classify.hpp"
#include "gestrec/config.hpp"
#include "gestrec/dynamic.hpp"
#include "gestrec/features.hpp"
#include "gestrec/flow.hpp"

namespace gestrec {

// Gray frames read from the numbered PGM/PPM files of a directory, in
// lexicographic order.
FrameSequence load_frames(const std::string& dir);

// Full static chain: optional gray-world, chroma masking, noise filtration,
// distance transform, hand selection, wrist cut, recentering, descriptor.
// When dump_dir is set, intermediate masks are written there as PGM.
StaticVector static_pipeline(const Image& rgb, const PipelineConfig& cfg,
                             const std::string& dump_dir = "");

// Two-keyframe difference characterization of a small-amplitude sequence.
MotionVector small_pipeline(const FrameSequence& seq, const PipelineConfig& cfg);

struct StaticRunResult {
    int label = 0;
    StaticVector vec;
};

StaticRunResult run_static(const std::string& image_path, const GestureDatabase& db,
                           const PipelineConfig& cfg, const std::string& dump_dir = "");

struct DynamicRunResult {
    Amplitude gate = Amplitude::Small;
    double transition = 0.0;
    bool classified = false; // false when no database covered the routed side
    int label = 0;
    std::vector<double> features;
};

// Tracks, gates, then routes to the small (12-d) or large (60-d) classifier.
// Either database pointer may be null when that route is not expected.
DynamicRunResult run_dynamic(const std::string& frames_dir, const GestureDatabase* small_db,
                             const GestureDatabase* large_db, const PipelineConfig& cfg);

struct BuildReport {
    std::size_t succeeded = 0;
    std::size_t failed = 0;
    std::vector<std::string> messages;
};

// Ingests `<root>/<class_name>/<person>/<sample>` and writes the CSV
// database; failures are logged and skipped.
BuildReport build_db(const std::string& root, DatabaseKind kind, const PipelineConfig& cfg,
                     const std::string& out_csv);

struct XvalRow {
    int k = 0;
    ScoreReport report;
};

// Cross-validation sweep over k = 1..k_max (or just cfg.classifier.k when
// k_max == 0).
std::vector<XvalRow> xval(const GestureDatabase& db, const PipelineConfig& cfg, int k_max = 0);

// PGM visualization of a flow field: value = 128 + round(16 * velocity), clamped.
void dump_flow(const FlowField& flow, const std::string& u_path, const std::string& v_path);

} // namespace gestrec
