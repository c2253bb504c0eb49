#include "gestrec/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace gestrec {

int database_dim(DatabaseKind kind) {
    switch (kind) {
    case DatabaseKind::Static7: return 7;
    case DatabaseKind::Dynamic12: return 12;
    case DatabaseKind::Sequence60: return 60;
    }
    throw ArgumentError("unknown database kind");
}

std::string database_kind_name(DatabaseKind kind) {
    switch (kind) {
    case DatabaseKind::Static7: return "static7";
    case DatabaseKind::Dynamic12: return "dynamic12";
    case DatabaseKind::Sequence60: return "sequence60";
    }
    throw ArgumentError("unknown database kind");
}

DatabaseKind database_kind_from_name(const std::string& name) {
    if (name == "static7") return DatabaseKind::Static7;
    if (name == "dynamic12") return DatabaseKind::Dynamic12;
    if (name == "sequence60") return DatabaseKind::Sequence60;
    throw ParseError("unknown database kind '" + name + "'");
}

std::vector<double> GestureDatabase::apply_norm(const std::vector<double>& raw) const {
    if (norm.empty()) return raw;
    if (raw.size() != norm.size()) throw ArgumentError("apply_norm: dimension mismatch");
    std::vector<double> out(raw.size());
    for (std::size_t f = 0; f < raw.size(); ++f) {
        double span = norm[f].max - norm[f].min;
        out[f] = span > 0.0 ? (raw[f] - norm[f].min) / span : 0.0;
    }
    return out;
}

GestureDatabase normalize(const GestureDatabase& db) {
    if (db.rows.empty()) throw DegenerateInputError("normalize: empty database");
    GestureDatabase out = db;
    out.norm.assign(db.dim, {});
    for (int f = 0; f < db.dim; ++f) {
        double lo = db.rows[0].features[f], hi = lo;
        for (const auto& row : db.rows) {
            lo = std::min(lo, row.features[f]);
            hi = std::max(hi, row.features[f]);
        }
        out.norm[f] = {lo, hi};
    }
    for (auto& row : out.rows) row.features = out.apply_norm(row.features);
    return out;
}

double distance(const std::vector<double>& q, const std::vector<double>& x,
                const std::vector<double>& weights) {
    if (q.size() != x.size() || q.size() != weights.size())
        throw ArgumentError("distance: dimension mismatch");
    double acc = 0.0;
    for (std::size_t f = 0; f < q.size(); ++f) acc += weights[f] * std::abs(q[f] - x[f]);
    return acc;
}

namespace {

double row_distance(const std::vector<double>& q, const std::vector<double>& x,
                    const std::vector<double>& weights, Metric metric) {
    if (metric == Metric::L1) return distance(q, x, weights);
    double acc = 0.0;
    for (std::size_t f = 0; f < q.size(); ++f) {
        double d = q[f] - x[f];
        acc += weights[f] * d * d;
    }
    return std::sqrt(acc);
}

} // namespace

KnnResult knn(const GestureDatabase& db, const std::vector<double>& q, const KnnParams& p) {
    if (db.rows.empty()) throw DegenerateInputError("knn: empty database");
    if (p.k < 1 || static_cast<std::size_t>(p.k) > db.rows.size())
        throw ArgumentError("knn: k out of range");
    if (static_cast<int>(q.size()) != db.dim) throw ArgumentError("knn: query dimension mismatch");

    std::vector<double> weights = p.weights.empty() ? std::vector<double>(db.dim, 1.0) : p.weights;

    std::vector<std::pair<double, std::size_t>> dists(db.rows.size());
    for (std::size_t i = 0; i < db.rows.size(); ++i)
        dists[i] = {row_distance(q, db.rows[i].features, weights, p.metric), i};
    std::stable_sort(dists.begin(), dists.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    // Tally votes per class over the k nearest. A zero-distance neighbor wins
    // outright under inverse-distance voting.
    std::map<int, double> votes;
    std::map<int, double> inv_sum;
    std::map<int, bool> has_zero;
    for (int i = 0; i < p.k; ++i) {
        double d = dists[i].first;
        int label = db.rows[dists[i].second].label;
        if (p.voting == Voting::InverseDistance) {
            if (d == 0.0) {
                KnnResult res;
                res.label = label;
                res.votes = {{label, std::numeric_limits<double>::infinity()}};
                return res;
            }
            votes[label] += 1.0 / std::pow(d, p.vote_power);
        } else {
            votes[label] += 1.0;
            if (d == 0.0)
                has_zero[label] = true;
            else
                inv_sum[label] += 1.0 / d;
        }
    }

    int best = 0;
    bool first = true;
    for (const auto& [label, v] : votes) {
        if (first) {
            best = label;
            first = false;
            continue;
        }
        double bv = votes[best];
        if (v > bv) {
            best = label;
        } else if (v == bv && p.voting == Voting::Majority) {
            // Plurality tie: larger summed inverse distance wins, then label order.
            bool bz = has_zero.count(best) != 0, lz = has_zero.count(label) != 0;
            if (lz != bz) {
                if (lz) best = label;
            } else if (inv_sum[label] > inv_sum[best]) {
                best = label;
            }
        }
    }

    KnnResult res;
    res.label = best;
    for (const auto& kv : votes) res.votes.push_back(kv);
    return res;
}

std::vector<int> kfold_split(std::size_t n_rows, int k_folds, std::uint64_t seed) {
    if (k_folds < 2) throw ArgumentError("kfold_split: need at least 2 folds");
    if (static_cast<std::size_t>(k_folds) > n_rows)
        throw ArgumentError("kfold_split: more folds than rows");

    std::vector<std::size_t> order(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) order[i] = i;
    // Hand-rolled Fisher-Yates keeps the split identical across platforms.
    std::mt19937_64 rng(seed);
    for (std::size_t i = n_rows; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(order[i - 1], order[j]);
    }

    std::vector<int> fold(n_rows, 0);
    for (std::size_t i = 0; i < n_rows; ++i) fold[order[i]] = static_cast<int>(i % k_folds);
    return fold;
}

ScoreReport cross_validate(const GestureDatabase& db, const KnnParams& p, int k_folds,
                           std::uint64_t seed) {
    if (db.rows.empty()) throw DegenerateInputError("cross_validate: empty database");
    std::vector<int> fold = kfold_split(db.rows.size(), k_folds, seed);

    std::vector<int> labels;
    for (const auto& row : db.rows) labels.push_back(row.label);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto label_index = [&](int lab) {
        return static_cast<std::size_t>(
            std::lower_bound(labels.begin(), labels.end(), lab) - labels.begin());
    };

    ScoreReport report;
    report.labels = labels;
    report.confusion.assign(labels.size(), std::vector<std::size_t>(labels.size(), 0));

    for (int f = 0; f < k_folds; ++f) {
        GestureDatabase train;
        train.kind = db.kind;
        train.dim = db.dim;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < db.rows.size(); ++i) {
            if (fold[i] == f)
                test_rows.push_back(i);
            else
                train.rows.push_back(db.rows[i]);
        }
        if (train.rows.empty() || test_rows.empty()) continue;

        std::vector<bool> class_present(labels.size(), false);
        for (const auto& row : train.rows) class_present[label_index(row.label)] = true;
        for (std::size_t c = 0; c < labels.size(); ++c)
            if (!class_present[c])
                report.warnings.push_back("fold " + std::to_string(f) + ": class " +
                                          std::to_string(labels[c]) + " missing from training data");

        GestureDatabase trained = normalize(train);
        KnnParams fold_params = p;
        fold_params.k = std::min<std::size_t>(p.k, trained.rows.size());
        for (std::size_t i : test_rows) {
            KnnResult res = knn(trained, trained.apply_norm(db.rows[i].features), fold_params);
            report.confusion[label_index(db.rows[i].label)][label_index(res.label)]++;
        }
    }

    report.per_class_rate.assign(labels.size(), 0.0);
    double total = 0.0;
    for (std::size_t c = 0; c < labels.size(); ++c) {
        std::size_t row_sum = 0;
        for (std::size_t d = 0; d < labels.size(); ++d) row_sum += report.confusion[c][d];
        report.per_class_rate[c] =
            row_sum ? static_cast<double>(report.confusion[c][c]) / row_sum : 0.0;
        total += report.per_class_rate[c];
    }
    report.average_rate = labels.empty() ? 0.0 : total / static_cast<double>(labels.size());
    return report;
}

std::string ScoreReport::to_text() const {
    std::ostringstream out;
    out << "class  rate\n";
    char buf[64];
    for (std::size_t c = 0; c < labels.size(); ++c) {
        std::snprintf(buf, sizeof(buf), "%5d  %6.2f%%\n", labels[c], per_class_rate[c] * 100.0);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "average %6.2f%%\n", average_rate * 100.0);
    out << buf;
    out << "confusion (rows = true, cols = predicted):\n";
    for (std::size_t c = 0; c < labels.size(); ++c) {
        for (std::size_t d = 0; d < labels.size(); ++d) {
            std::snprintf(buf, sizeof(buf), "%6zu", confusion[c][d]);
            out << buf;
        }
        out << "\n";
    }
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    return out.str();
}

std::string ScoreReport::to_csv() const {
    std::ostringstream out;
    out << "class,rate\n";
    char buf[64];
    for (std::size_t c = 0; c < labels.size(); ++c) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g\n", labels[c], per_class_rate[c]);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "average,%.17g\n", average_rate);
    out << buf;
    return out.str();
}

GestureDatabase read_database(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");

    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw ParseError(path + ": missing '# kind,dim' header");
    std::string header = line.substr(1);
    while (!header.empty() && header.front() == ' ') header.erase(header.begin());
    auto comma = header.find(',');
    if (comma == std::string::npos) throw ParseError(path + ": bad header '" + line + "'");

    GestureDatabase db;
    db.kind = database_kind_from_name(header.substr(0, comma));
    try {
        db.dim = std::stoi(header.substr(comma + 1));
    } catch (const std::exception&) {
        throw ParseError(path + ": bad dimension in header");
    }
    if (db.dim != database_dim(db.kind)) throw ParseError(path + ": dimension does not match kind");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row_in(line);
        std::string field;
        GestureRow row;
        if (!std::getline(row_in, field, ','))
            throw ParseError(path + ":" + std::to_string(lineno) + ": missing label");
        try {
            row.label = std::stoi(field);
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad label '" + field + "'");
        }
        if (!std::getline(row_in, row.person, ','))
            throw ParseError(path + ":" + std::to_string(lineno) + ": missing person field");
        while (std::getline(row_in, field, ',')) {
            try {
                row.features.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(lineno) + ": bad feature '" + field +
                                 "'");
            }
        }
        if (static_cast<int>(row.features.size()) != db.dim)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(db.dim) + " features, got " +
                             std::to_string(row.features.size()));
        db.rows.push_back(std::move(row));
    }
    return db;
}

void write_database(const GestureDatabase& db, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << "# " << database_kind_name(db.kind) << "," << db.dim << "\n";
    char buf[64];
    for (const auto& row : db.rows) {
        out << row.label << "," << row.person;
        for (double f : row.features) {
            std::snprintf(buf, sizeof(buf), ",%.17g", f);
            out << buf;
        }
        out << "\n";
    }
    if (!out) throw ParseError(path + ": write failed");
}

} // namespace gestrec
