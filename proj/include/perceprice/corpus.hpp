#pragma once

#include "perceprice/identity.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perceprice::corpus {

/// One commodity or service with its elasticity pair. The published_*
/// fields carry the ratio and error columns as printed by the source
/// table, which are not guaranteed to agree with eta_p / eta_i.
struct StudyRecord {
    std::string commodity;
    double eta_p = 0.0;
    double eta_i = 0.0;
    std::string source;
    std::optional<double> published_ratio;
    std::optional<double> published_error;

    identity::ElasticityPair pair() const { return {eta_p, eta_i}; }

    friend bool operator==(const StudyRecord&, const StudyRecord&) = default;
};

enum class Origin { Embedded, FileLoaded };

/// Immutable, validated, non-empty list of records with unique labels.
class Corpus {
public:
    Corpus(std::vector<StudyRecord> records, Origin origin);

    const std::vector<StudyRecord>& records() const noexcept { return records_; }
    Origin origin() const noexcept { return origin_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool has_published_columns() const noexcept;
    const StudyRecord* find(std::string_view commodity) const noexcept;

private:
    std::vector<StudyRecord> records_;
    Origin origin_;
};

/// Recomputed: ratio = eta_p / eta_i from the elasticities as stored.
/// AsPublished: the printed ratio/error columns, paired with the
/// sign-reconciled income elasticity (see reconciled_eta_i).
enum class DerivationMode { Recomputed, AsPublished };

struct DerivedRow {
    StudyRecord record;
    double ratio = 0.0;
    double error = 0.0;
    identity::Perception classification = identity::Perception::Aligned;
    DerivationMode mode = DerivationMode::Recomputed;
};

struct DiscrepancyEntry {
    std::string commodity;
    double published = 0.0;
    double recomputed = 0.0;
    double absolute_difference = 0.0;
};

enum class Column {
    EtaP,
    EtaI,
    EtaIReconciled,
    RatioRecomputed,
    RatioAsPublished,
    ErrorRecomputed,
    ErrorAsPublished,
};

inline constexpr double kDefaultDiscrepancyTolerance = 0.02;

/// The 30-study table, including its printed derived columns, verbatim.
const Corpus& embedded_corpus();

Corpus load_csv(const std::filesystem::path& path);
Corpus parse_csv(std::string_view text, Origin origin = Origin::FileLoaded);
/// Byte-deterministic export: LF endings, shortest round-trip numbers.
std::string to_csv(const Corpus& corpus);

std::vector<DerivedRow> derive_rows(const Corpus& corpus, DerivationMode mode,
                                    double epsilon = identity::kDefaultEpsilon);

std::vector<DiscrepancyEntry> discrepancy_report(const Corpus& corpus,
                                                 double tolerance = kDefaultDiscrepancyTolerance);

std::vector<double> column(const Corpus& corpus, Column which);

/// Income elasticity with its sign made consistent with the printed
/// ratio. When the printed ratio and eta_p / eta_i have the same magnitude
/// (within the discrepancy tolerance) but opposite signs, the printed
/// ratio could only have come from -eta_i, so that value is returned.
/// Otherwise eta_i is returned unchanged.
double reconciled_eta_i(const StudyRecord& record);

std::string_view to_string(DerivationMode mode) noexcept;
std::string_view to_string(Origin origin) noexcept;

}  // namespace perceprice::corpus
