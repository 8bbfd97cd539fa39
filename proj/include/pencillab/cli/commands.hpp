#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pencillab/cli/report.hpp"
#include "pencillab/types.hpp"
#include "pencillab/verifier.hpp"

namespace pencillab::cli {

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitInput = 2, kExitNumerical = 3 };

struct GlobalOptions {
    Tolerances tol;
    std::uint64_t seed = kDefaultSeed;
    bool json = false;
    bool timing = false;  // off by default so reports stay reproducible
};

struct CheckPairOptions {
    std::string file, a, b;
    std::string kind = "bourgeois3";
    std::optional<std::string> window;  // "k_lo:k_hi[,l_lo:l_hi]"
    std::optional<bool> expect_holds, expect_property_l, expect_commuting;
};

struct PencilScanOptions {
    std::string file, a, b;
    std::optional<std::string> center;  // "re" or "re,im"
    double radius = 1e-2;
    std::size_t points = 64;
    std::string csv_path;            // empty: no CSV
    std::vector<double> trajectory;  // real points for eigenprojection tracking
};

struct DecomposeOptions {
    std::string file, name;
    bool assert_postconditions = false;
};

struct GalleryOptions {
    std::string case_name = "all";
    bool assert_claims = false;
    std::string export_path;  // empty: no export
};

ConditionKind parse_kind(const std::string& s);
/// "k_lo:k_hi" or "k_lo:k_hi,l_lo:l_hi"; a single integer means lo = hi.
Window parse_window(const std::string& s, ConditionKind kind);
Cx parse_complex(const std::string& s);

/// Seed from PENCILLAB_SEED when set, kDefaultSeed otherwise.
std::uint64_t seed_from_env();

Report cmd_check_pair(const CheckPairOptions& o, const GlobalOptions& g);
Report cmd_pencil_scan(const PencilScanOptions& o, const GlobalOptions& g);
Report cmd_decompose(const DecomposeOptions& o, const GlobalOptions& g);
Report cmd_gallery(const GalleryOptions& o, const GlobalOptions& g);

/// Writes z_re,z_im,branch_id,lambda_re,lambda_im rows for eigenvalues
/// tracked around the circle.
void write_trajectory_csv(std::ostream& os, const std::vector<Cx>& z, const std::vector<std::vector<Cx>>& values);

/// Full command line: parse, dispatch, render, and map failures to exit
/// codes (0 ok, 1 assertion failed, 2 usage or input error, 3 numerical error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pencillab::cli
