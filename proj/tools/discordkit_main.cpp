// discordkit — command-line front end.
//
// Reads line-delimited JSON state records (file path or "-" for stdin) and
// streams one JSON object per record to stdout, preserving input order.
// Malformed or out-of-domain records become {"id", "error"} objects in the
// stream (with a diagnostic on stderr) and the process exits with code 2;
// unreadable input exits 1; clean runs exit 0.
//
// Subcommands: classify, discord, canonicalize, merge, sample, sweep, validate.
// The RNG seed for sample/sweep comes from --seed, else the DISCORDKIT_SEED
// environment variable, else 12345; equal seeds give byte-identical output.

#include "discordkit/records.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace discordkit;

namespace {

int run_stream(const std::string& input,
               const std::function<Json(const StateRecord&)>& handle) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (input != "-") {
        file.open(input);
        if (!file) {
            std::cerr << "discordkit: cannot open '" << input << "'\n";
            return 1;
        }
        in = &file;
    }

    bool partial = false;
    std::string line;
    int line_no = 0;
    while (std::getline(*in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string id = "line-" + std::to_string(line_no);
        try {
            const StateRecord rec = parse_record(line, line_no);
            id = rec.id;
            std::cout << handle(rec).dump() << "\n";
        } catch (const std::exception& e) {
            partial = true;
            std::cout << Json{{"id", id}, {"error", e.what()}}.dump() << "\n";
            std::cerr << "discordkit: " << e.what() << "\n";
        }
    }
    return partial ? 2 : 0;
}

DensityMatrix two_qubit_state(const StateRecord& rec) {
    if (rec.format == RecordFormat::Family && !rec.reduction)
        throw std::invalid_argument("record '" + rec.id +
                                    "': family record needs a 'reduction' here");
    const DensityMatrix rho = record_to_state(rec);
    if (rho.dim() != 4)
        throw std::invalid_argument("record '" + rec.id +
                                    "': a two-qubit state is required");
    return rho;
}

DensityMatrix three_qubit_state(const StateRecord& rec) {
    if (!is_three_qubit(rec))
        throw std::invalid_argument(
            "record '" + rec.id +
            "': a three-qubit state is required (family without 'reduction', "
            "or an 8x8 matrix)");
    return record_to_state(rec);
}

DensityMatrix draw_sample(const std::string& kind, int row_flag, int index, Gaussian& g) {
    const int row = (row_flag > 0) ? row_flag : 1 + index % 4;
    if (kind == "ginibre2q") return sample_random(SampleKind::Ginibre2q, g);
    if (kind == "pure2q") return sample_random(SampleKind::Pure2q, g);
    if (kind == "pure3q") return sample_random(SampleKind::Pure3q, g);
    if (kind == "cq") return sample_cq(row, g);
    return sample_qc(row, g);
}

int cmd_sample(const std::string& kind, int count, uint64_t seed, int row_flag) {
    Gaussian g(seed);
    for (int i = 0; i < count; ++i) {
        const DensityMatrix rho = draw_sample(kind, row_flag, i, g);
        std::cout << matrix_record_json(kind + "-" + std::to_string(i), rho).dump()
                  << "\n";
    }
    return 0;
}

// Analytic verdicts vs numeric-oracle values on random full-rank states:
// confusion counts per direction plus the worst value on each side of the line.
int sweep_ginibre(int count, uint64_t seed, int grid, double floor_value) {
    Gaussian g(seed);
    int both_way_positive = 0;
    struct Cell {
        int zero_low = 0, zero_high = 0, pos_low = 0, pos_high = 0;
        double max_zero_value = 0.0, min_pos_value = 1.0;
    } cq, qc;
    for (int i = 0; i < count; ++i) {
        const DensityMatrix rho = sample_random(SampleKind::Ginibre2q, g);
        const DiscordClass dc = classify(rho);
        const double da = discord_numeric(rho, Side::A, grid).value;
        const double db = discord_numeric(rho, Side::B, grid).value;
        if (!dc.b_given_a.zero && !dc.a_given_b.zero) ++both_way_positive;
        const auto tally = [&](Cell& cell, bool zero, double value) {
            if (zero) {
                ++(value <= floor_value ? cell.zero_low : cell.zero_high);
                cell.max_zero_value = std::max(cell.max_zero_value, value);
            } else {
                ++(value <= floor_value ? cell.pos_low : cell.pos_high);
                cell.min_pos_value = std::min(cell.min_pos_value, value);
            }
        };
        tally(cq, dc.b_given_a.zero, da);
        tally(qc, dc.a_given_b.zero, db);
    }
    const auto cell_json = [](const Cell& c) {
        return Json{{"zero_low", c.zero_low},     {"zero_high", c.zero_high},
                    {"pos_low", c.pos_low},       {"pos_high", c.pos_high},
                    {"max_zero_value", c.max_zero_value},
                    {"min_pos_value", c.min_pos_value}};
    };
    std::cout << Json{{"mode", "ginibre"},
                      {"count", count},
                      {"seed", seed},
                      {"grid", grid},
                      {"floor", floor_value},
                      {"both_way_positive", both_way_positive},
                      {"b_given_a", cell_json(cq)},
                      {"a_given_b", cell_json(qc)}}
                     .dump()
              << "\n";
    return 0;
}

// Constructed classical states (row patterns cycling 1–4): the oracle must sit
// at numerical zero on the classical side.
int sweep_classical(bool classical_on_a, int count, uint64_t seed, int grid,
                    double threshold) {
    Gaussian g(seed);
    int above = 0, analytic_zero = 0;
    double max_value = 0.0;
    for (int i = 0; i < count; ++i) {
        const int row = 1 + i % 4;
        const DensityMatrix rho =
            classical_on_a ? sample_cq(row, g) : sample_qc(row, g);
        const BlochForm b = bloch_decompose(rho);
        const DirectionVerdict v = classical_on_a ? check_cq(b) : check_qc(b);
        if (v.zero) ++analytic_zero;
        const double d =
            discord_numeric(rho, classical_on_a ? Side::A : Side::B, grid).value;
        max_value = std::max(max_value, d);
        if (d > threshold) ++above;
    }
    std::cout << Json{{"mode", classical_on_a ? "cq" : "qc"},
                      {"count", count},
                      {"seed", seed},
                      {"grid", grid},
                      {"threshold", threshold},
                      {"analytic_zero", analytic_zero},
                      {"above_threshold", above},
                      {"max_value", max_value}}
                     .dump()
              << "\n";
    return 0;
}

// Merging identity D(S/P) = E_F(S:R) + S(S|R) over random pure three-qubit
// states and all three cyclic cuts.
int sweep_merge(int count, uint64_t seed, int grid, double threshold) {
    (void)grid;  // merging_report uses the oracle's default grid
    Gaussian g(seed);
    int above = 0, cuts = 0;
    double max_residual = 0.0;
    for (int i = 0; i < count; ++i) {
        const DensityMatrix psi = sample_random(SampleKind::Pure3q, g);
        for (const auto& [s, r, p] :
             {std::tuple{0, 1, 2}, std::tuple{1, 2, 0}, std::tuple{2, 0, 1}}) {
            const MergingReport rep = merging_report(psi, s, r, p);
            ++cuts;
            max_residual = std::max(max_residual, std::abs(rep.identity_residual));
            if (std::abs(rep.identity_residual) > threshold) ++above;
        }
    }
    std::cout << Json{{"mode", "merge"},
                      {"count", count},
                      {"cuts", cuts},
                      {"seed", seed},
                      {"threshold", threshold},
                      {"above_threshold", above},
                      {"max_residual", max_residual}}
                     .dump()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    uint64_t default_seed = 12345;
    if (const char* env = std::getenv("DISCORDKIT_SEED")) {
        try {
            default_seed = std::stoull(env);
        } catch (...) {
            std::cerr << "discordkit: DISCORDKIT_SEED must be an unsigned integer\n";
            return 1;
        }
    }

    CLI::App app{"analytic and numeric quantum-discord toolkit for two-qubit states"};
    app.require_subcommand(1);
    int rc = 0;

    // ——— classify ———
    std::string cls_input = "-";
    bool with_oracle = false;
    int cls_grid = 64;
    Thresholds tol;
    auto* cls = app.add_subcommand(
        "classify", "analytic zero-discord verdicts per direction, with margins");
    cls->add_option("input", cls_input, "records file or - for stdin");
    cls->add_flag("--with-oracle", with_oracle, "attach numeric discord both ways");
    cls->add_option("--grid", cls_grid, "oracle grid resolution")
        ->check(CLI::PositiveNumber);
    cls->add_option("--tol-rank", tol.rank_rel, "relative singular-value zero cutoff")
        ->check(CLI::PositiveNumber);
    cls->add_option("--tol-condition", tol.condition, "linear-condition cutoff")
        ->check(CLI::PositiveNumber);
    cls->callback([&] {
        rc = run_stream(cls_input, [&](const StateRecord& rec) {
            return to_json(classify_record(rec, tol, with_oracle, cls_grid));
        });
    });

    // ——— discord ———
    std::string dis_input = "-", side = "A";
    int dis_grid = 64;
    bool no_refine = false;
    auto* dis = app.add_subcommand("discord", "numeric discord via measurement search");
    dis->add_option("input", dis_input, "records file or - for stdin");
    dis->add_option("--side", side, "measured party: A or B")
        ->check(CLI::IsMember({"A", "B"}));
    dis->add_option("--grid", dis_grid, "grid resolution n (n*n directions)")
        ->check(CLI::PositiveNumber);
    dis->add_flag("--no-refine", no_refine, "skip simplex refinement after the grid");
    dis->callback([&] {
        rc = run_stream(dis_input, [&](const StateRecord& rec) {
            const DensityMatrix rho = two_qubit_state(rec);
            const DiscordEstimate est = discord_numeric(
                rho, side == "A" ? Side::A : Side::B, dis_grid, !no_refine);
            Json j = estimate_json(est);
            j["id"] = rec.id;
            j["side"] = side;
            return j;
        });
    });

    // ——— canonicalize ———
    std::string can_input = "-";
    auto* can = app.add_subcommand(
        "canonicalize", "rotate to the diagonal correlation-tensor frame");
    can->add_option("input", can_input, "records file or - for stdin");
    can->callback([&] {
        rc = run_stream(can_input, [&](const StateRecord& rec) {
            return canonical_json(rec.id, canonicalize(two_qubit_state(rec)));
        });
    });

    // ——— merge ———
    std::string mrg_input = "-", cut_spec = "0,1,2";
    auto* mrg = app.add_subcommand(
        "merge", "state-merging report for pure three-qubit records");
    mrg->add_option("input", mrg_input, "records file or - for stdin");
    mrg->add_option("--cut", cut_spec, "sender,receiver,purifier qubit indices, e.g. 0,1,2");
    mrg->callback([&] {
        int s = 0, r = 0, p = 0;
        char extra = 0;
        if (std::sscanf(cut_spec.c_str(), "%d,%d,%d%c", &s, &r, &p, &extra) != 3) {
            std::cerr << "discordkit: --cut needs three comma-separated indices\n";
            rc = 1;
            return;
        }
        rc = run_stream(mrg_input, [&, s, r, p](const StateRecord& rec) {
            const DensityMatrix psi = three_qubit_state(rec);
            return merging_json(rec.id, merging_report(psi, s, r, p));
        });
    });

    // ——— sample ———
    std::string kind;
    int count = 1, row_flag = 0;
    uint64_t seed = default_seed;
    auto* smp = app.add_subcommand("sample", "emit random states as matrix records");
    smp->add_option("kind", kind, "ginibre2q | pure2q | pure3q | cq | qc")
        ->required()
        ->check(CLI::IsMember({"ginibre2q", "pure2q", "pure3q", "cq", "qc"}));
    smp->add_option("--count", count, "number of records")->check(CLI::PositiveNumber);
    smp->add_option("--seed", seed, "RNG seed (default: DISCORDKIT_SEED or 12345)");
    smp->add_option("--row", row_flag, "cq/qc row pattern 1-4 (default: cycle)")
        ->check(CLI::Range(0, 4));
    smp->callback([&] { rc = cmd_sample(kind, count, seed, row_flag); });

    // ——— sweep ———
    std::string mode;
    int sw_count = 0, sw_grid = 64;
    uint64_t sw_seed = default_seed;
    double sw_threshold = 0.0;
    auto* swp = app.add_subcommand(
        "sweep", "analytic-vs-oracle agreement summary over random ensembles");
    swp->add_option("mode", mode, "ginibre | cq | qc | merge")
        ->required()
        ->check(CLI::IsMember({"ginibre", "cq", "qc", "merge"}));
    swp->add_option("--count", sw_count, "states (default 1000; merge 200)")
        ->check(CLI::PositiveNumber);
    swp->add_option("--seed", sw_seed, "RNG seed (default: DISCORDKIT_SEED or 12345)");
    swp->add_option("--grid", sw_grid, "oracle grid resolution")
        ->check(CLI::PositiveNumber);
    swp->add_option("--threshold", sw_threshold,
                    "agreement line (default: 1e-4 ginibre, 1e-3 cq/qc, 5e-3 merge)")
        ->check(CLI::PositiveNumber);
    swp->callback([&] {
        if (mode == "ginibre")
            rc = sweep_ginibre(sw_count ? sw_count : 1000, sw_seed, sw_grid,
                               sw_threshold > 0 ? sw_threshold : 1e-4);
        else if (mode == "cq" || mode == "qc")
            rc = sweep_classical(mode == "cq", sw_count ? sw_count : 1000, sw_seed,
                                 sw_grid, sw_threshold > 0 ? sw_threshold : 1e-3);
        else
            rc = sweep_merge(sw_count ? sw_count : 200, sw_seed, sw_grid,
                             sw_threshold > 0 ? sw_threshold : 5e-3);
    });

    // ——— validate ———
    std::string val_input = "-";
    auto* val = app.add_subcommand(
        "validate", "hermiticity / trace / positivity report per record");
    val->add_option("input", val_input, "records file or - for stdin");
    val->callback([&] {
        rc = run_stream(val_input, [&](const StateRecord& rec) {
            return validation_json(rec.id,
                                   validate(make_state_unchecked(record_to_raw(rec))));
        });
    });

    CLI11_PARSE(app, argc, argv);
    return rc;
}
