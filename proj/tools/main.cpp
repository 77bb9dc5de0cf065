// hankel-hurwitz: Hurwitz stability of column reduced complex matrix
// polynomials via Markov parameters and rectangular block Hankel matrices.

#include <CLI11.hpp>
#include <hurwitz/hurwitz.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNumeric = 70;

struct CommonOpts {
    std::string input;
    double tol = 1e-12;
    double hermitian_tol = 1e-8;
    double axis_tol = 1e-9;
    bool symmetrize = false;
};

hurwitz::Tolerances tolerances(const CommonOpts& o) {
    hurwitz::Tolerances t;
    t.zero_tol = o.tol;
    t.inertia_tol = std::max(o.tol, 1e-10);
    t.hermitian_tol = o.hermitian_tol;
    t.axis_tol = o.axis_tol;
    t.symmetrize = o.symmetrize;
    return t;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("input", o.input, "matrix polynomial JSON file")->required();
    cmd->add_option("--tol", o.tol, "relative zero/rank/inertia tolerance");
    cmd->add_option("--hermitian-tol", o.hermitian_tol, "Hermitian-sequence tolerance");
    cmd->add_option("--axis-tol", o.axis_tol, "imaginary-axis classification tolerance");
    cmd->add_flag("--symmetrize", o.symmetrize, "replace each Markov parameter by its Hermitian part");
}

int emit_error(const char* type, const std::string& message, int code) {
    hurwitz::Json body{{"error", {{"type", type}, {"message", message}}}};
    std::cout << body.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hurwitz stability of column reduced matrix polynomials via block Hankel matrices"};
    app.require_subcommand(1);

    CommonOpts check_o, markov_o, hankel_o, inertia_o, eig_o, bezout_o, perturb_o;
    bool with_oracle = false;
    std::vector<std::string> eps_items;
    int samples = 100;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string entry_kind = "real";

    CLI::App* check = app.add_subcommand("check", "stability verdict (exit 0 stable, 1 not stable, 2 indeterminate)");
    add_common(check, check_o);
    check->add_flag("--oracle", with_oracle, "append an eigenvalue-oracle cross check");

    CLI::App* markov = app.add_subcommand("markov", "dump the Markov parameter sequence");
    add_common(markov, markov_o);

    CLI::App* hankel = app.add_subcommand("hankel", "dump index sets and the Hankel pair");
    add_common(hankel, hankel_o);

    CLI::App* inertia = app.add_subcommand("inertia", "inertia triple of F with respect to the imaginary axis");
    add_common(inertia, inertia_o);

    CLI::App* eig = app.add_subcommand("eig", "finite spectrum via companion linearization");
    add_common(eig, eig_o);

    CLI::App* bezout = app.add_subcommand("bezout-verify", "Bezoutian congruence cross check of the Hankel pair");
    add_common(bezout, bezout_o);

    CLI::App* perturb = app.add_subcommand("perturb", "structured perturbation experiment");
    add_common(perturb, perturb_o);
    perturb->add_option("--eps", eps_items, "epsilon grid; fractional exponents allowed, e.g. 1e-3.5")
        ->required()
        ->delimiter(',');
    perturb->add_option("--samples", samples, "samples per epsilon");
    perturb->add_option("--seed", seed, "RNG seed");
    perturb->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    perturb->add_option("--entry-kind", entry_kind, "real or complex perturbation entries")
        ->check(CLI::IsMember({"real", "complex"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) {
            const auto in = hurwitz::parse_input_file(check_o.input);
            const auto tol = tolerances(check_o);
            const auto rep = hurwitz::hurwitz_check(in.poly, tol, in.column_degrees);
            hurwitz::Json j = hurwitz::to_json(rep);
            j["tolerances"] = {{"tol", tol.zero_tol},
                               {"hermitian_tol", tol.hermitian_tol},
                               {"inertia_tol", tol.inertia_tol},
                               {"axis_tol", tol.axis_tol},
                               {"symmetrize", tol.symmetrize}};
            if (with_oracle) {
                const auto spec = hurwitz::finite_spectrum(in.poly, tol.axis_tol);
                const bool oracle_stable = spec.hurwitz_stable();
                hurwitz::Json oj = hurwitz::to_json(spec);
                oj["verdict_agrees"] =
                    rep.verdict == hurwitz::Verdict::Indeterminate
                        ? nullptr
                        : hurwitz::Json(oracle_stable == (rep.verdict == hurwitz::Verdict::Stable));
                j["oracle"] = oj;
            }
            std::cout << j.dump(2) << "\n";
            switch (rep.verdict) {
                case hurwitz::Verdict::Stable: return 0;
                case hurwitz::Verdict::NotStable: return 1;
                default: return 2;
            }
        }
        if (markov->parsed()) {
            const auto in = hurwitz::parse_input_file(markov_o.input);
            const auto tol = tolerances(markov_o);
            const auto pl = hurwitz::run_pipeline(in.poly, tol, in.column_degrees);
            hurwitz::Json j = hurwitz::to_json(pl.seq);
            j["sa_residual"] = hurwitz::sa_residual(pl.seq, pl.sr);
            j["raw_hermitian_deviation"] = pl.raw_hermitian_deviation;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (hankel->parsed()) {
            const auto in = hurwitz::parse_input_file(hankel_o.input);
            const auto tol = tolerances(hankel_o);
            const auto pl = hurwitz::run_pipeline(in.poly, tol, in.column_degrees);
            hurwitz::Json j{{"index_sets", hurwitz::to_json(pl.idx)},
                            {"h0", hurwitz::to_json(pl.hankel.h0)},
                            {"h1", hurwitz::to_json(pl.hankel.h1)},
                            {"block_offsets_h0", pl.hankel.block_offsets_h0},
                            {"block_offsets_h1", pl.hankel.block_offsets_h1},
                            {"all_even", pl.hankel.all_even}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (inertia->parsed()) {
            const auto in = hurwitz::parse_input_file(inertia_o.input);
            const auto tol = tolerances(inertia_o);
            const auto rep = hurwitz::hurwitz_check(in.poly, tol, in.column_degrees);
            if (!rep.sequence_hermitian) {
                throw hurwitz::NotHermitianSequenceError(
                    "inertia representation requires a Hermitian Markov sequence");
            }
            hurwitz::Json j{{"gamma_plus", rep.inertia_f[0]},
                            {"gamma_minus", rep.inertia_f[1]},
                            {"gamma_zero", rep.inertia_f[2]},
                            {"determinate", rep.inertia_determinate},
                            {"h0_inertia", hurwitz::to_json(rep.h0_inertia)},
                            {"h1_inertia", hurwitz::to_json(rep.h1_inertia)}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (eig->parsed()) {
            const auto in = hurwitz::parse_input_file(eig_o.input);
            const auto spec = hurwitz::finite_spectrum(in.poly, tolerances(eig_o).axis_tol);
            std::cout << hurwitz::to_json(spec).dump(2) << "\n";
            return 0;
        }
        if (bezout->parsed()) {
            const auto in = hurwitz::parse_input_file(bezout_o.input);
            const auto chk = hurwitz::bezout_inertia_check(in.poly, tolerances(bezout_o), in.column_degrees);
            std::cout << hurwitz::to_json(chk).dump(2) << "\n";
            return chk.match ? 0 : 1;
        }
        if (perturb->parsed()) {
            const auto in = hurwitz::parse_input_file(perturb_o.input);
            hurwitz::PerturbConfig cfg;
            cfg.eps_grid = hurwitz::parse_eps_list(eps_items);
            cfg.samples_per_eps = samples;
            cfg.seed = seed;
            cfg.entry_kind = entry_kind == "complex" ? hurwitz::PerturbConfig::EntryKind::Complex
                                                     : hurwitz::PerturbConfig::EntryKind::Real;
            if (cfg.eps_grid.empty()) throw hurwitz::ParseError("empty epsilon grid");
            if (cfg.samples_per_eps < 1) throw hurwitz::ParseError("--samples must be >= 1");
            const auto res = hurwitz::run_experiment(in.poly, cfg, tolerances(perturb_o));
            if (format == "json") {
                std::cout << hurwitz::to_json(res).dump(2) << "\n";
            } else {
                hurwitz::write_csv(std::cout, res);
            }
            return 0;
        }
    } catch (const hurwitz::ParseError& e) {
        return emit_error("ParseError", e.what(), kExitData);
    } catch (const hurwitz::ShapeError& e) {
        return emit_error("ShapeError", e.what(), kExitData);
    } catch (const hurwitz::NotColumnReducedError& e) {
        return emit_error("NotColumnReduced", e.what(), kExitNumeric);
    } catch (const hurwitz::NotHermitianSequenceError& e) {
        return emit_error("NotHermitianSequence", e.what(), kExitNumeric);
    } catch (const hurwitz::SingularLeadingBlockError& e) {
        return emit_error("SingularLeadingBlock", e.what(), kExitNumeric);
    } catch (const hurwitz::NotRegularError& e) {
        return emit_error("NotRegular", e.what(), kExitNumeric);
    } catch (const hurwitz::SolverFailureError& e) {
        return emit_error("SolverFailure", e.what(), kExitNumeric);
    } catch (const hurwitz::Error& e) {
        return emit_error("Error", e.what(), kExitNumeric);
    }
    return kExitUsage;
}
