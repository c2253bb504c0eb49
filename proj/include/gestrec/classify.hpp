#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "gestrec/errors.hpp"

namespace gestrec {

enum class DatabaseKind { Static7, Dynamic12, Sequence60 };

int database_dim(DatabaseKind kind);
std::string database_kind_name(DatabaseKind kind);
DatabaseKind database_kind_from_name(const std::string& name);

struct GestureRow {
    std::vector<double> features;
    int label = 0;
    std::string person; // optional
};

struct FeatureRange {
    double min = 0.0;
    double max = 0.0;
};

struct GestureDatabase {
    DatabaseKind kind = DatabaseKind::Static7;
    int dim = 7;
    std::vector<GestureRow> rows;
    std::vector<FeatureRange> norm; // empty until normalize()

    bool normalized() const { return !norm.empty(); }
    // Applies the stored per-feature map to a raw query.
    std::vector<double> apply_norm(const std::vector<double>& raw) const;
};

enum class Voting { Majority, InverseDistance };
enum class Metric { L1, L2 };

struct KnnParams {
    int k = 1;
    Voting voting = Voting::Majority;
    int vote_power = 1; // n in the inverse-distance weight 1/d^n
    Metric metric = Metric::L1;
    std::vector<double> weights; // empty = all ones
};

struct KnnResult {
    int label = 0;
    std::vector<std::pair<int, double>> votes; // per-class votes, label order
};

struct ScoreReport {
    std::vector<int> labels; // sorted class ids
    std::vector<std::vector<std::size_t>> confusion; // confusion[true][pred]
    std::vector<double> per_class_rate;
    double average_rate = 0.0;
    std::vector<std::string> warnings;

    std::string to_text() const;
    std::string to_csv() const;
};

// Affine per-feature map onto [0,1]; constant features map to 0. The ranges
// are kept so queries transform identically.
GestureDatabase normalize(const GestureDatabase& db);

// Weighted sum of absolute per-feature differences.
double distance(const std::vector<double>& q, const std::vector<double>& x,
                const std::vector<double>& weights);

// q must already be normalized with the database's stored map.
KnnResult knn(const GestureDatabase& db, const std::vector<double>& q, const KnnParams& p);

// Seeded shuffle, then round-robin assignment; fold sizes differ by at most 1.
std::vector<int> kfold_split(std::size_t n_rows, int k_folds, std::uint64_t seed);

ScoreReport cross_validate(const GestureDatabase& db, const KnnParams& p, int k_folds,
                           std::uint64_t seed);

GestureDatabase read_database(const std::string& path);
void write_database(const GestureDatabase& db, const std::string& path);

} // namespace gestrec
