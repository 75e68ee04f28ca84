#include "discordkit/records.hpp"

#include <cmath>
#include <stdexcept>

namespace discordkit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("record " + where + ": " + what);
}

double need_number(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        fail(where, "field '" + key + "' must be a number");
    const double v = j[key].get<double>();
    if (!std::isfinite(v)) fail(where, "field '" + key + "' must be finite");
    return v;
}

double need_number_at(const Json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(where, "expected a finite number");
    return v;
}

Vec3 need_vec3(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
        fail(where, "field '" + key + "' must be a 3-vector");
    Vec3 v{};
    for (int i = 0; i < 3; ++i)
        v[static_cast<size_t>(i)] = need_number_at(j[key][static_cast<size_t>(i)],
                                                   where + "." + key);
    return v;
}

Mat3 need_mat3(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3)
        fail(where, "field '" + key + "' must be a 3x3 matrix (3 rows)");
    Mat3 t;
    for (int r = 0; r < 3; ++r) {
        const Json& row = j[key][static_cast<size_t>(r)];
        if (!row.is_array() || row.size() != 3)
            fail(where, "field '" + key + "' row must have 3 entries");
        for (int c = 0; c < 3; ++c)
            t(r, c) = need_number_at(row[static_cast<size_t>(c)], where + "." + key);
    }
    return t;
}

Cx need_complex(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(where, "complex entries must be [re, im] pairs");
    return Cx{need_number_at(j[0], where), need_number_at(j[1], where)};
}

std::pair<int, int> reduction_slots(ReductionPair r) {
    switch (r) {
        case ReductionPair::AB: return {0, 1};
        case ReductionPair::AC: return {0, 2};
        default: return {1, 2};
    }
}

}  // namespace

const char* to_string(RecordFormat f) {
    switch (f) {
        case RecordFormat::Matrix: return "matrix";
        case RecordFormat::Bloch: return "bloch";
        case RecordFormat::XState: return "xstate";
        default: return "family";
    }
}

const char* to_string(FamilyKind f) {
    switch (f) {
        case FamilyKind::Ghz: return "ghz";
        case FamilyKind::W: return "w";
        default: return "biseparable";
    }
}

const char* to_string(ReductionPair r) {
    switch (r) {
        case ReductionPair::AB: return "AB";
        case ReductionPair::AC: return "AC";
        default: return "BC";
    }
}

CMat cmat_from_json(const Json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        fail("matrix", "expected " + std::to_string(dim) + " rows");
    CMat m(dim);
    for (int r = 0; r < dim; ++r) {
        const Json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            fail("matrix", "row " + std::to_string(r) + " must have " +
                               std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c)
            m(r, c) = need_complex(row[static_cast<size_t>(c)],
                                   "matrix[" + std::to_string(r) + "][" +
                                       std::to_string(c) + "]");
    }
    return m;
}

StateRecord parse_record(const std::string& line, int line_number) {
    const std::string where0 = "line " + std::to_string(line_number);
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::exception& e) {   // parse errors and numeric overflow
        fail(where0, std::string("not valid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) fail(where0, "must be a JSON object");

    StateRecord rec;
    rec.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>()
                                                     : "line-" + std::to_string(line_number);
    const std::string where = "'" + rec.id + "'";

    if (!j.contains("format") || !j["format"].is_string())
        fail(where, "field 'format' must be one of matrix|bloch|xstate|family");
    const std::string fmt = j["format"].get<std::string>();

    if (fmt == "matrix") {
        rec.format = RecordFormat::Matrix;
        if (!j.contains("matrix") || !j["matrix"].is_array())
            fail(where, "matrix format needs field 'matrix' (array of rows)");
        const int d = static_cast<int>(j["matrix"].size());
        if (d != 2 && d != 4 && d != 8)
            fail(where, "matrix must be 2x2, 4x4, or 8x8");
        rec.matrix = cmat_from_json(j["matrix"], d);
    } else if (fmt == "bloch") {
        rec.format = RecordFormat::Bloch;
        rec.bloch.m = need_vec3(j, "m", where);
        rec.bloch.n = need_vec3(j, "n", where);
        rec.bloch.t = need_mat3(j, "T", where);
    } else if (fmt == "xstate") {
        rec.format = RecordFormat::XState;
        rec.xstate.x1 = need_number(j, "x1", where);
        rec.xstate.x2 = need_number(j, "x2", where);
        rec.xstate.x3 = need_number(j, "x3", where);
        rec.xstate.x4 = need_number(j, "x4", where);
        rec.xstate.y1 = need_number(j, "y1", where);
        rec.xstate.y2 = need_number(j, "y2", where);
    } else if (fmt == "family") {
        rec.format = RecordFormat::Family;
        if (!j.contains("family") || !j["family"].is_string())
            fail(where, "family format needs field 'family' (ghz|w|biseparable)");
        const std::string fam = j["family"].get<std::string>();
        size_t arity = 0;
        if (fam == "ghz") {
            rec.family = FamilyKind::Ghz;
            arity = 1;
        } else if (fam == "w") {
            rec.family = FamilyKind::W;
            arity = 2;
        } else if (fam == "biseparable") {
            rec.family = FamilyKind::Biseparable;
            arity = 4;
        } else {
            fail(where, "unknown family '" + fam + "'");
        }
        if (!j.contains("params") || !j["params"].is_array() || j["params"].size() != arity)
            fail(where, "family '" + fam + "' needs 'params' with " +
                            std::to_string(arity) + " entries");
        for (const Json& p : j["params"])
            rec.params.push_back(need_number_at(p, where + ".params"));
        if (j.contains("reduction")) {
            if (!j["reduction"].is_string())
                fail(where, "field 'reduction' must be AB|AC|BC");
            const std::string red = j["reduction"].get<std::string>();
            if (red == "AB") rec.reduction = ReductionPair::AB;
            else if (red == "AC") rec.reduction = ReductionPair::AC;
            else if (red == "BC") rec.reduction = ReductionPair::BC;
            else fail(where, "field 'reduction' must be AB|AC|BC");
        }
    } else {
        fail(where, "unknown format '" + fmt + "'");
    }
    return rec;
}

CMat record_to_raw(const StateRecord& rec) {
    switch (rec.format) {
        case RecordFormat::Matrix:
            return rec.matrix;
        case RecordFormat::Bloch:
            return bloch_compose(rec.bloch);
        case RecordFormat::XState:
            return xstate_matrix(rec.xstate);
        case RecordFormat::Family: {
            DensityMatrix pure = [&] {
                switch (rec.family) {
                    case FamilyKind::Ghz:
                        return ghz_state(rec.params[0]);
                    case FamilyKind::W:
                        return w_state(rec.params[0], rec.params[1]);
                    default:
                        return biseparable_state(rec.params[0], rec.params[1],
                                                 rec.params[2], rec.params[3]);
                }
            }();
            if (!rec.reduction) return pure.mat;
            const auto [a, b] = reduction_slots(*rec.reduction);
            return reduce_ordered_pair(pure, a, b).mat;
        }
    }
    throw std::logic_error("record_to_raw: unreachable");
}

DensityMatrix record_to_state(const StateRecord& rec) {
    return make_state(record_to_raw(rec));
}

bool is_three_qubit(const StateRecord& rec) {
    if (rec.format == RecordFormat::Family) return !rec.reduction;
    return rec.format == RecordFormat::Matrix && rec.matrix.dim() == 8;
}

ClassificationReport classify_record(const StateRecord& rec, const Thresholds& tol,
                                     bool with_oracle, int grid_n) {
    if (rec.format == RecordFormat::Family && !rec.reduction)
        throw std::invalid_argument(
            "record '" + rec.id +
            "': three-qubit family record needs a 'reduction' to classify");
    const DensityMatrix rho = record_to_state(rec);
    if (rho.dim() != 4)
        throw std::invalid_argument("record '" + rec.id +
                                    "': classification needs a two-qubit state");

    ClassificationReport rep;
    rep.id = rec.id;
    rep.bloch = bloch_decompose(rho);
    rep.tensor = analyze_tensor(rep.bloch, tol);
    rep.verdicts = classify(rho, tol);
    rep.tol = tol;
    if (with_oracle)
        rep.oracle = std::make_pair(discord_numeric(rho, Side::A, grid_n),
                                    discord_numeric(rho, Side::B, grid_n));
    return rep;
}

Json vec3_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json mat3_json(const Mat3& t) {
    Json rows = Json::array();
    for (int r = 0; r < 3; ++r)
        rows.push_back(Json::array({t(r, 0), t(r, 1), t(r, 2)}));
    return rows;
}

Json cmat_json(const CMat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.dim(); ++c)
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json matrix_record_json(const std::string& id, const DensityMatrix& rho) {
    return Json{{"id", id}, {"format", "matrix"}, {"matrix", cmat_json(rho.mat)}};
}

Json verdict_json(const DirectionVerdict& v) {
    Json residuals = Json::array();
    for (const BranchResidual& br : v.residuals)
        residuals.push_back(Json{{"condition", br.condition},
                                 {"residual", br.residual},
                                 {"threshold", br.threshold}});
    return Json{{"zero", v.zero},
                {"condition", v.condition},
                {"margin", v.margin},
                {"residuals", std::move(residuals)}};
}

Json estimate_json(const DiscordEstimate& est) {
    return Json{{"value", est.value},
                {"j_value", est.j_value},
                {"direction", vec3_json(est.best_direction.w)},
                {"grid_points", est.grid_points},
                {"refine_iterations", est.refine_iterations}};
}

Json to_json(const ClassificationReport& rep) {
    Json j{{"id", rep.id},
           {"bloch", Json{{"m", vec3_json(rep.bloch.m)},
                          {"n", vec3_json(rep.bloch.n)},
                          {"T", mat3_json(rep.bloch.t)}}},
           {"tensor", Json{{"rank_class", to_string(rep.tensor.rank_class)},
                           {"singular_values", vec3_json(rep.tensor.singular_values)},
                           {"rows_pattern", to_string(rep.tensor.rows.pattern)},
                           {"cols_pattern", to_string(rep.tensor.cols.pattern)}}},
           {"verdicts", Json{{"b_given_a", verdict_json(rep.verdicts.b_given_a)},
                             {"a_given_b", verdict_json(rep.verdicts.a_given_b)}}},
           {"broadcasting", Json{{"A_sender_usable", rep.verdicts.a_sender_usable},
                                 {"B_sender_usable", rep.verdicts.b_sender_usable}}},
           {"tol", Json{{"rank_rel", rep.tol.rank_rel},
                        {"condition", rep.tol.condition}}}};
    if (rep.oracle)
        j["oracle"] = Json{{"b_given_a", estimate_json(rep.oracle->first)},
                           {"a_given_b", estimate_json(rep.oracle->second)}};
    return j;
}

Json merging_json(const std::string& id, const MergingReport& rep) {
    return Json{{"id", id},
                {"sender", rep.sender},
                {"receiver", rep.receiver},
                {"purifier", rep.purifier},
                {"s_cond", rep.s_cond},
                {"eof_sr", rep.eof_sr},
                {"discord_sp", rep.discord_sp},
                {"identity_residual", rep.identity_residual},
                {"locc_feasible", rep.locc_feasible},
                {"ebit_gain", rep.ebit_gain}};
}

Json validation_json(const std::string& id, const ValidationReport& vr) {
    return Json{{"id", id},
                {"ok", vr.pass()},
                {"hermitian_deviation", vr.hermitian_deviation},
                {"trace_deviation", vr.trace_deviation},
                {"min_eigenvalue", vr.min_eigenvalue},
                {"hermitian_ok", vr.hermitian_ok},
                {"trace_ok", vr.trace_ok},
                {"psd_ok", vr.psd_ok}};
}

Json canonical_json(const std::string& id, const CanonicalForm& cf) {
    return Json{{"id", id},
                {"r", vec3_json(cf.r)},
                {"u_a", cmat_json(cf.u_a)},
                {"u_b", cmat_json(cf.u_b)}};
}

}  // namespace discordkit
