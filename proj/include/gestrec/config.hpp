#pragma once
#include <string>
#include <vector>

#include "gestrec/classify.hpp"
#include "gestrec/dynamic.hpp"
#include "gestrec/flow.hpp"
#include "gestrec/hand.hpp"
#include "gestrec/skin.hpp"

namespace gestrec {

struct PipelineConfig {
    SkinParams skin;
    HandParams hand;
    FlowParams flow;
    DynamicParams dynamic;
    KnnParams classifier;
    int folds = 10;
    std::uint64_t seed = 17;
    std::vector<std::string> gesture_names;

    void validate() const;
};

PipelineConfig default_config();
PipelineConfig load_config(const std::string& path);
void save_config(const PipelineConfig& cfg, const std::string& path);

} // namespace gestrec
