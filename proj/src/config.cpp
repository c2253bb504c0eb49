#include "gestrec/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace gestrec {

using nlohmann::json;

void PipelineConfig::validate() const {
    if (skin.cb_lo > skin.cb_hi || skin.cr_lo > skin.cr_hi)
        throw ArgumentError("config: skin chroma interval is inverted");
    if (hand.feat_lo > hand.feat_hi) throw ArgumentError("config: feature interval is inverted");
    if (hand.cut_fraction <= 0.0 || hand.cut_fraction > 1.0)
        throw ArgumentError("config: cut_fraction must be in (0,1]");
    if (hand.frame_size < 1) throw ArgumentError("config: frame_size must be >= 1");
    if (flow.alpha <= 0.0) throw ArgumentError("config: alpha must be positive");
    if (flow.iterations < 1) throw ArgumentError("config: iterations must be >= 1");
    if (dynamic.lag < 1 || dynamic.group < 1)
        throw ArgumentError("config: lag and group must be >= 1");
    if (dynamic.bins < 1 || 256 % dynamic.bins != 0)
        throw ArgumentError("config: bins must divide 256");
    if (classifier.k < 1) throw ArgumentError("config: k must be >= 1");
    if (folds < 2) throw ArgumentError("config: folds must be >= 2");
    if (gesture_names.empty()) throw ArgumentError("config: gesture_names must not be empty");
    std::set<std::string> uniq(gesture_names.begin(), gesture_names.end());
    if (uniq.size() != gesture_names.size())
        throw ArgumentError("config: gesture_names must be unique");
}

PipelineConfig default_config() {
    PipelineConfig cfg;
    cfg.gesture_names = {"wave_two_hands", "wave_right", "wave_left", "stop", "yes", "no"};
    return cfg;
}

namespace {

json to_json(const PipelineConfig& cfg) {
    json j;
    j["skin"] = {{"cb_lo", cfg.skin.cb_lo},
                 {"cb_hi", cfg.skin.cb_hi},
                 {"cr_lo", cfg.skin.cr_lo},
                 {"cr_hi", cfg.skin.cr_hi},
                 {"min_region_size", cfg.skin.min_region_size},
                 {"max_hole_size", cfg.skin.max_hole_size},
                 {"apply_gray_world", cfg.skin.apply_gray_world}};
    j["hand"] = {{"feat_lo", cfg.hand.feat_lo},
                 {"feat_hi", cfg.hand.feat_hi},
                 {"erosion_radius", cfg.hand.erosion_radius},
                 {"min_feature_count", cfg.hand.min_feature_count},
                 {"cut_fraction", cfg.hand.cut_fraction},
                 {"frame_size", cfg.hand.frame_size},
                 {"flip_orientation", cfg.hand.flip_orientation}};
    j["flow"] = {{"alpha", cfg.flow.alpha},
                 {"iterations", cfg.flow.iterations},
                 {"vel_threshold", cfg.flow.vel_threshold},
                 {"median_window", cfg.flow.median_window},
                 {"close_radius", cfg.flow.close_radius},
                 {"min_region", cfg.flow.min_region},
                 {"gate_threshold", cfg.flow.gate_threshold}};
    j["dynamic"] = {{"lag", cfg.dynamic.lag},
                    {"group", cfg.dynamic.group},
                    {"bins", cfg.dynamic.bins},
                    {"diff_threshold", cfg.dynamic.diff_threshold},
                    {"min_region", cfg.dynamic.min_region},
                    {"max_regions", cfg.dynamic.max_regions},
                    {"coaxial_size_threshold", cfg.dynamic.coaxial_size_threshold}};
    j["classifier"] = {
        {"k", cfg.classifier.k},
        {"voting", cfg.classifier.voting == Voting::Majority ? "majority" : "inverse_distance"},
        {"vote_power", cfg.classifier.vote_power},
        {"metric", cfg.classifier.metric == Metric::L1 ? "l1" : "l2"},
        {"folds", cfg.folds},
        {"seed", cfg.seed}};
    j["gesture_names"] = cfg.gesture_names;
    return j;
}

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    PipelineConfig cfg = default_config();
    try {
        if (j.contains("skin")) {
            const json& s = j["skin"];
            maybe(s, "cb_lo", cfg.skin.cb_lo);
            maybe(s, "cb_hi", cfg.skin.cb_hi);
            maybe(s, "cr_lo", cfg.skin.cr_lo);
            maybe(s, "cr_hi", cfg.skin.cr_hi);
            maybe(s, "min_region_size", cfg.skin.min_region_size);
            maybe(s, "max_hole_size", cfg.skin.max_hole_size);
            maybe(s, "apply_gray_world", cfg.skin.apply_gray_world);
        }
        if (j.contains("hand")) {
            const json& s = j["hand"];
            maybe(s, "feat_lo", cfg.hand.feat_lo);
            maybe(s, "feat_hi", cfg.hand.feat_hi);
            maybe(s, "erosion_radius", cfg.hand.erosion_radius);
            maybe(s, "min_feature_count", cfg.hand.min_feature_count);
            maybe(s, "cut_fraction", cfg.hand.cut_fraction);
            maybe(s, "frame_size", cfg.hand.frame_size);
            maybe(s, "flip_orientation", cfg.hand.flip_orientation);
        }
        if (j.contains("flow")) {
            const json& s = j["flow"];
            maybe(s, "alpha", cfg.flow.alpha);
            maybe(s, "iterations", cfg.flow.iterations);
            maybe(s, "vel_threshold", cfg.flow.vel_threshold);
            maybe(s, "median_window", cfg.flow.median_window);
            maybe(s, "close_radius", cfg.flow.close_radius);
            maybe(s, "min_region", cfg.flow.min_region);
            maybe(s, "gate_threshold", cfg.flow.gate_threshold);
        }
        if (j.contains("dynamic")) {
            const json& s = j["dynamic"];
            maybe(s, "lag", cfg.dynamic.lag);
            maybe(s, "group", cfg.dynamic.group);
            maybe(s, "bins", cfg.dynamic.bins);
            maybe(s, "diff_threshold", cfg.dynamic.diff_threshold);
            maybe(s, "min_region", cfg.dynamic.min_region);
            maybe(s, "max_regions", cfg.dynamic.max_regions);
            maybe(s, "coaxial_size_threshold", cfg.dynamic.coaxial_size_threshold);
        }
        if (j.contains("classifier")) {
            const json& s = j["classifier"];
            maybe(s, "k", cfg.classifier.k);
            maybe(s, "vote_power", cfg.classifier.vote_power);
            maybe(s, "folds", cfg.folds);
            maybe(s, "seed", cfg.seed);
            if (s.contains("voting")) {
                std::string v = s["voting"].get<std::string>();
                if (v == "majority")
                    cfg.classifier.voting = Voting::Majority;
                else if (v == "inverse_distance")
                    cfg.classifier.voting = Voting::InverseDistance;
                else
                    throw ParseError(path + ": unknown voting '" + v + "'");
            }
            if (s.contains("metric")) {
                std::string v = s["metric"].get<std::string>();
                if (v == "l1")
                    cfg.classifier.metric = Metric::L1;
                else if (v == "l2")
                    cfg.classifier.metric = Metric::L2;
                else
                    throw ParseError(path + ": unknown metric '" + v + "'");
            }
        }
        if (j.contains("gesture_names"))
            cfg.gesture_names = j["gesture_names"].get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

void save_config(const PipelineConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << to_json(cfg).dump(2) << "\n";
}

} // namespace gestrec
