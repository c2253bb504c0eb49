#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "gestrec/dynamic.hpp"
#include "gestrec/hand.hpp"
#include "gestrec/image.hpp"

namespace gestrec {

enum class SynthKind { Static, DynamicSmall, DynamicLarge };

// Archetype name tables; index order defines the class labels (1-based).
const std::vector<std::string>& static_gesture_names();  // 7
const std::vector<std::string>& small_gesture_names();   // 6
const std::vector<std::string>& large_gesture_names();   // 9

struct SynthSpec {
    SynthKind kind = SynthKind::Static;
    int archetype = 0; // index into the kind's name table
    std::uint64_t seed = 0;
    int width = 176;
    int height = 144;
    double noise = 0.0; // 0 = clean render
};

struct StaticSample {
    Image image; // RGB
    int label = 0;
    BinaryMask truth; // rendered skin region, speckle noise excluded
};

struct SequenceSample {
    FrameSequence seq; // gray frames
    int label = 0;
    bool large = false;
    std::vector<PointF> true_path; // primary blob center per frame
    double true_transition = 0.0;  // |path.back() - path.front()|
};

// Skin-toned hand (palm, fingers, forearm) plus a face disk on a contrasted
// background, with seeded per-person jitter.
StaticSample gen_static(const SynthSpec& spec);

// Moving bright blob(s) over a static banded background. Small archetypes
// hold two poses with sharp transitions; large archetypes sweep a long path.
SequenceSample gen_sequence(const SynthSpec& spec, int n_frames);

// Writes `<root>/<class_name>/person_<ii>/...` in the dataset layout the
// pipeline ingests: one PPM per static sample, a frame directory per
// dynamic sample.
void write_synth_corpus(const std::string& root, SynthKind kind, int variants,
                        std::uint64_t base_seed, double noise, int n_frames);

} // namespace gestrec
