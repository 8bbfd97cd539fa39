#include <chrono>
#include <ostream>

#include "CLI11.hpp"
#include "pencillab/cli/commands.hpp"
#include "pencillab/cli/matrix_file.hpp"
#include "pencillab/errors.hpp"

namespace pencillab::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exponential-commutation checks, property L and pencil branch analysis for complex matrices",
                 "pencillab"};
    app.require_subcommand(1);

    GlobalOptions g;
    std::optional<std::uint64_t> seed;
    app.add_flag("--json", g.json, "Print the report as JSON");
    app.add_flag("--timing", g.timing, "Include wall time in the report");
    app.add_option("--seed", seed, "Random seed (default: $PENCILLAB_SEED, else 20240611)");
    app.add_option("--eps-root", g.tol.eps_root, "Root residual tolerance");
    app.add_option("--eps-rank", g.tol.eps_rank, "Relative rank threshold");
    app.add_option("--eps-cluster", g.tol.eps_cluster, "Relative eigenvalue identity threshold");
    app.add_option("--eps-verify", g.tol.eps_verify, "Verification residual threshold");
    app.add_option("--max-iter", g.tol.max_iter, "Iteration cap for root finding");

    CheckPairOptions cp;
    auto* check = app.add_subcommand("check-pair", "Exponential condition, commutator and property L for a pair");
    check->fallthrough();
    check->add_option("file", cp.file, "Matrix file")->required();
    check->add_option("a", cp.a, "Name of A")->required();
    check->add_option("b", cp.b, "Name of B")->required();
    check->add_option("--kind", cp.kind, "bourgeois3 | twosided4 | window")->capture_default_str();
    check->add_option("--window", cp.window, "k_lo:k_hi[,l_lo:l_hi]");
    check->add_option("--expect-holds", cp.expect_holds, "Assert the condition verdict");
    check->add_option("--expect-property-l", cp.expect_property_l, "Assert the property L verdict");
    check->add_option("--expect-commuting", cp.expect_commuting, "Assert the commutation verdict");

    PencilScanOptions ps;
    auto* scan = app.add_subcommand("pencil-scan", "Generic eigenvalue count, exceptional points and branch cycles");
    scan->fallthrough();
    scan->add_option("file", ps.file, "Matrix file")->required();
    scan->add_option("a", ps.a, "Name of A")->required();
    scan->add_option("b", ps.b, "Name of B")->required();
    scan->add_option("--center", ps.center, "Extra branch analysis point, re or re,im");
    scan->add_option("--radius", ps.radius, "Tracking circle radius")->capture_default_str();
    scan->add_option("--points", ps.points, "Samples on the circle")->capture_default_str();
    scan->add_option("--emit-csv", ps.csv_path, "Write eigenvalues tracked around --center as CSV");
    scan->add_option("--trajectory", ps.trajectory, "Real points for eigenprojection tracking")->delimiter(',');

    DecomposeOptions dc;
    auto* dec = app.add_subcommand("decompose", "Jordan-Chevalley decomposition and eigenprojections");
    dec->fallthrough();
    dec->add_option("file", dc.file, "Matrix file")->required();
    dec->add_option("name", dc.name, "Matrix name")->required();
    dec->add_flag("--assert", dc.assert_postconditions, "Fail unless the postconditions hold");

    GalleryOptions ga;
    auto* gal = app.add_subcommand("gallery", "Run the built-in example pairs and their claims");
    gal->fallthrough();
    gal->add_option("--case", ga.case_name, "Case name or all")->capture_default_str();
    gal->add_flag("--assert", ga.assert_claims, "Fail unless every claim verifies");
    gal->add_option("--export", ga.export_path, "Write the selected matrices to a matrix file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        g.seed = seed ? *seed : seed_from_env();
        g.tol.validate();
        const auto t0 = std::chrono::steady_clock::now();
        std::optional<Report> r;
        if (*check)
            r = cmd_check_pair(cp, g);
        else if (*scan)
            r = cmd_pencil_scan(ps, g);
        else if (*dec)
            r = cmd_decompose(dc, g);
        else
            r = cmd_gallery(ga, g);
        if (g.timing)
            r->set_timing(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
        out << (g.json ? r->json() : r->text());
        return r->ok() ? kExitOk : kExitAssertion;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace pencillab::cli
