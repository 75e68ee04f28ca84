#pragma once
// Line-delimited JSON record layer: one state per line in one of four payload
// formats, plus encoders for every report the command-line front end emits.
//
//   matrix  — dense complex matrix (2×2, 4×4, or 8×8), entries as [re, im]
//             pairs, row-major
//   bloch   — {m, n, T} local vectors and correlation tensor
//   xstate  — {x1..x4, y1, y2} diagonal/anti-diagonal parameters
//   family  — {family: ghz|w|biseparable, params: [...]} pure three-qubit
//             states, with an optional "reduction": "AB"|"AC"|"BC" selecting a
//             two-qubit marginal (first letter becomes the A slot)
//
// Parsing throws std::invalid_argument naming the offending field; realizing a
// record as a state additionally surfaces std::domain_error from validation.

#include "discordkit/criteria.hpp"
#include "discordkit/entangle.hpp"
#include "discordkit/oracle.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>

namespace discordkit {

using Json = nlohmann::json;

enum class RecordFormat { Matrix, Bloch, XState, Family };
enum class FamilyKind { Ghz, W, Biseparable };
enum class ReductionPair { AB, AC, BC };

const char* to_string(RecordFormat f);
const char* to_string(FamilyKind f);
const char* to_string(ReductionPair r);

struct StateRecord {
    std::string id;
    RecordFormat format = RecordFormat::Matrix;
    CMat matrix{4};                           // Matrix payload (dim 2, 4, or 8)
    BlochForm bloch;                          // Bloch payload
    XStateParams xstate;                      // XState payload
    FamilyKind family = FamilyKind::Ghz;      // Family payload…
    std::vector<double> params;
    std::optional<ReductionPair> reduction;
};

// Parse one input line (line_number only labels defaulted ids and messages).
StateRecord parse_record(const std::string& line, int line_number = 0);

// Realize the record as a validated state: family records yield the pure
// three-qubit state, or the requested two-qubit marginal when `reduction` is
// set. Every other format yields a two-qubit state.
DensityMatrix record_to_state(const StateRecord& rec);

// Compose the raw matrix without the validity gate (for validation reports).
CMat record_to_raw(const StateRecord& rec);

// True for records that realize as three-qubit states (family without a
// reduction, or an 8×8 matrix payload).
bool is_three_qubit(const StateRecord& rec);

// The full analytic classification of one record, optionally with the numeric
// oracle run in both directions.
struct ClassificationReport {
    std::string id;
    BlochForm bloch;
    TensorStructure tensor;
    DiscordClass verdicts;
    Thresholds tol;
    std::optional<std::pair<DiscordEstimate, DiscordEstimate>> oracle;  // (B/A, A/B)
};

ClassificationReport classify_record(const StateRecord& rec, const Thresholds& tol,
                                     bool with_oracle = false, int grid_n = 64);

// ——— JSON encoders ———————————————————————————————————————————————————————
Json vec3_json(const Vec3& v);
Json mat3_json(const Mat3& t);
Json cmat_json(const CMat& m);
CMat cmat_from_json(const Json& j, int dim);

Json matrix_record_json(const std::string& id, const DensityMatrix& rho);
Json to_json(const ClassificationReport& rep);
Json verdict_json(const DirectionVerdict& v);
Json estimate_json(const DiscordEstimate& est);
Json merging_json(const std::string& id, const MergingReport& rep);
Json validation_json(const std::string& id, const ValidationReport& vr);
Json canonical_json(const std::string& id, const CanonicalForm& cf);

}  // namespace discordkit
