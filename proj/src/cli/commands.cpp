#include "pencillab/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include "pencillab/chevalley.hpp"
#include "pencillab/cli/matrix_file.hpp"
#include "pencillab/errors.hpp"
#include "pencillab/expmat.hpp"
#include "pencillab/pencil.hpp"
#include "pencillab/subspace.hpp"

namespace pencillab::cli {

namespace {

template <class T>
T parse_number(std::string_view s, const char* what) {
    T v{};
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size())
        throw InputError(std::string("cannot parse ") + what + " from \"" + std::string(s) + "\"");
    return v;
}

std::pair<int, int> parse_range(std::string_view s) {
    const auto colon = s.find(':', 1);
    if (colon == std::string_view::npos) {
        const int v = parse_number<int>(s, "window");
        return {v, v};
    }
    return {parse_number<int>(s.substr(0, colon), "window"), parse_number<int>(s.substr(colon + 1), "window")};
}

bool commutes(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
    return commutator_report(a, b).norm <= tol.eps_verify * std::max(1.0, norm_fro(a) * norm_fro(b));
}

Json window_json(const Window& w) { return {{"k", {w.k_lo, w.k_hi}}, {"l", {w.l_lo, w.l_hi}}}; }

Json branch_json(const BranchStructure& bs) {
    Json j{{"center", complex_json(bs.center)}, {"radius", bs.radius}, {"points", bs.points}, {"q", bs.q}};
    Json cycles = Json::array();
    for (const auto& c : bs.cycles) {
        Json cj{{"d", c.d}, {"value", complex_json(c.value_at_center)}, {"members", c.members}};
        if (c.leading_term) cj["leading_term"] = {{"b", complex_json(c.leading_term->b)}, {"order", c.leading_term->order}};
        cycles.push_back(std::move(cj));
    }
    j["cycles"] = std::move(cycles);
    j["monodromy"] = bs.monodromy;
    return j;
}

}  // namespace

ConditionKind parse_kind(const std::string& s) {
    if (s == "bourgeois3") return ConditionKind::Bourgeois3;
    if (s == "twosided4") return ConditionKind::TwoSided4;
    if (s == "window") return ConditionKind::Window;
    throw InputError("unknown condition kind \"" + s + "\"");
}

Window parse_window(const std::string& s, ConditionKind kind) {
    Window w = default_window(kind);
    const auto comma = s.find(',');
    std::tie(w.k_lo, w.k_hi) = parse_range(std::string_view(s).substr(0, comma));
    if (comma != std::string::npos) std::tie(w.l_lo, w.l_hi) = parse_range(std::string_view(s).substr(comma + 1));
    if (w.k_lo > w.k_hi || w.l_lo > w.l_hi) throw InputError("empty window \"" + s + "\"");
    return w;
}

Cx parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return parse_number<double>(s, "complex number");
    return {parse_number<double>(std::string_view(s).substr(0, comma), "complex number"),
            parse_number<double>(std::string_view(s).substr(comma + 1), "complex number")};
}

std::uint64_t seed_from_env() {
    const char* v = std::getenv("PENCILLAB_SEED");
    if (v == nullptr || *v == '\0') return kDefaultSeed;
    return parse_number<std::uint64_t>(v, "PENCILLAB_SEED");
}

Report cmd_check_pair(const CheckPairOptions& o, const GlobalOptions& g) {
    const MatrixFile f = MatrixFile::load(o.file);
    const CMatrix a = require_matrix(f, o.a), b = require_matrix(f, o.b);
    if (a.n() != b.n()) throw InputError("matrices have different sizes");
    const ConditionKind kind = parse_kind(o.kind);
    const Window w = o.window ? parse_window(*o.window, kind) : default_window(kind);

    Report r("check-pair", g.tol, g.seed);
    const ConditionReport cond = check_condition(a, b, kind, w, g.tol);
    const CommutatorReport comm = commutator_report(a, b);
    const auto family = property_L_pair(a, b, g.tol, g.seed);
    const bool commuting = commutes(a, b, g.tol);

    auto put = [&](const char* name, bool value, const std::optional<bool>& expected) {
        if (expected)
            r.expect(name, value, *expected);
        else
            r.verdict(name, value);
    };
    put("holds", cond.holds, o.expect_holds);
    put("propertyL", family.has_value(), o.expect_property_l);
    put("commuting", commuting, o.expect_commuting);

    Json& d = r.details();
    d["input"] = {{"file", o.file}, {"a", o.a}, {"b", o.b}, {"n", a.n()}};
    d["condition"] = {{"kind", to_string(kind)},
                      {"window", window_json(cond.window)},
                      {"evaluated", cond.evaluated},
                      {"max_residual", cond.max_residual}};
    Json viol = Json::array();
    for (const auto& v : cond.violations)
        viol.push_back({{"k", v.k}, {"l", v.l}, {"equation", v.equation}, {"residual", v.residual}});
    d["condition"]["violations"] = std::move(viol);
    d["commutator_norm"] = comm.norm;
    if (family) {
        Json forms = Json::array();
        for (const auto& fm : family->forms) forms.push_back({{"c", complex_json(fm.c)}, {"b", complex_json(fm.b)}});
        d["affine_family"] = std::move(forms);
    }
    return r;
}

void write_trajectory_csv(std::ostream& os, const std::vector<Cx>& z, const std::vector<std::vector<Cx>>& values) {
    const auto old = os.precision(std::numeric_limits<double>::max_digits10);
    os << "z_re,z_im,branch_id,lambda_re,lambda_im\n";
    for (std::size_t k = 0; k < z.size(); ++k)
        for (std::size_t j = 0; j < values[k].size(); ++j)
            os << z[k].real() << ',' << z[k].imag() << ',' << j << ',' << values[k][j].real() << ','
               << values[k][j].imag() << '\n';
    os.precision(old);
}

Report cmd_pencil_scan(const PencilScanOptions& o, const GlobalOptions& g) {
    const MatrixFile f = MatrixFile::load(o.file);
    const CMatrix a = require_matrix(f, o.a), b = require_matrix(f, o.b);
    if (a.n() != b.n()) throw InputError("matrices have different sizes");
    if (o.points < 8) throw InputError("--points must be at least 8");
    if (!(o.radius > 0.0)) throw InputError("--radius must be positive");
    const Pencil pencil(a, b);

    Report r("pencil-scan", g.tol, g.seed);
    const PencilProfile pr = profile(pencil, g.tol, g.seed);
    Json& d = r.details();
    d["input"] = {{"file", o.file}, {"a", o.a}, {"b", o.b}, {"n", a.n()}};
    Json pts = Json::array();
    for (const Cx& z : pr.exceptional_points) pts.push_back(complex_json(z));
    d["profile"] = {{"p", pr.p},
                    {"exceptional_points", std::move(pts)},
                    {"samples_used", pr.samples_used},
                    {"degenerate_discriminant", pr.degenerate_discriminant}};

    const BranchOptions bo{o.radius, o.points, 5};
    bool all_trivial = true;
    Json branches = Json::array();
    auto scan = [&](Cx z0) {
        try {
            const BranchStructure bs = branch_structure(pencil, z0, g.tol, bo);
            for (const auto& c : bs.cycles) all_trivial = all_trivial && c.d == 1;
            branches.push_back(branch_json(bs));
        } catch (const TrackingAmbiguous& e) {
            branches.push_back({{"center", complex_json(z0)}, {"error", e.what()}});
        }
    };
    for (const Cx& z : pr.exceptional_points) scan(z);
    d["branches"] = std::move(branches);
    r.verdict("all_cycles_trivial", all_trivial);

    if (o.center) {
        const Cx z0 = parse_complex(*o.center);
        const BranchStructure bs = branch_structure(pencil, z0, g.tol, bo);
        d["center"] = branch_json(bs);
        if (!o.csv_path.empty()) {
            const TrackedLoop loop = track_circle(pencil, z0, bs.radius, bs.points, g.tol);
            std::ofstream csv(o.csv_path);
            if (!csv) throw InputError("cannot write " + o.csv_path);
            write_trajectory_csv(csv, loop.z, loop.values);
            d["csv"] = {{"path", o.csv_path}, {"rows", loop.z.size() * a.n()}};
        }
    } else if (!o.csv_path.empty()) {
        throw InputError("--emit-csv needs --center");
    }

    if (!o.trajectory.empty()) {
        std::vector<Cx> zs(o.trajectory.begin(), o.trajectory.end());
        const ProjectionTrajectory tr = eigenprojection_trajectory(pencil, zs, g.tol);
        d["trajectory"] = {{"points", o.trajectory},
                           {"branch_deviation", tr.branch_deviation},
                           {"max_deviation", tr.max_deviation}};
        r.verdict("projections_constant", tr.max_deviation <= g.tol.eps_verify);
    }
    return r;
}

Report cmd_decompose(const DecomposeOptions& o, const GlobalOptions& g) {
    const MatrixFile f = MatrixFile::load(o.file);
    const CMatrix m = require_matrix(f, o.name);
    const std::size_t n = m.n();

    Report r("decompose", g.tol, g.seed);
    const JCDecomposition jc = jordan_chevalley(m, g.tol);
    const EigenprojectionSet ps = eigenprojections(m, g.tol);
    const double scale = std::max(1.0, norm_fro(m));
    const double sum_res = norm_fro(jc.d + jc.n - m) / scale;
    const double nil_res = norm_fro(power(jc.n, unsigned(n))) / std::pow(scale, double(n));
    const double comm_res = norm_fro(commutator(jc.d, jc.n)) / (scale * scale);
    const double proj_res = ps.invariant_residual(m);
    const bool d_diag = is_diagonalizable(jc.d, g.tol);
    const bool post = d_diag && std::max({sum_res, nil_res, comm_res, proj_res}) <= g.tol.eps_verify;

    if (o.assert_postconditions)
        r.expect("postconditions", post, true);
    else
        r.verdict("postconditions", post);
    r.verdict("diagonalizable_input", norm_fro(jc.n) <= g.tol.eps_verify * scale);

    Json& d = r.details();
    d["input"] = {{"file", o.file}, {"name", o.name}, {"n", n}};
    Json ev = Json::array();
    for (const Cx& z : jc.eigenvalues) ev.push_back(complex_json(z));
    d["eigenvalues"] = std::move(ev);
    d["D"] = matrix_json(jc.d);
    d["N"] = matrix_json(jc.n);
    d["residuals"] = {{"d_plus_n", sum_res},
                      {"n_power", nil_res},
                      {"commutator", comm_res},
                      {"projections", proj_res},
                      {"d_diagonalizable", d_diag}};
    Json projections = Json::array();
    for (const auto& p : ps.pairs)
        projections.push_back({{"value", complex_json(p.value)}, {"multiplicity", p.multiplicity}});
    d["projections"] = std::move(projections);
    try {
        d["log"] = matrix_json(unipotent_log(m, g.tol));
    } catch (const NotUnipotent&) {
    }
    return r;
}

Report cmd_gallery(const GalleryOptions& o, const GlobalOptions& g) {
    std::vector<GalleryCase> cases;
    for (auto& c : gallery(g.seed))
        if (o.case_name == "all" || c.name == o.case_name) cases.push_back(std::move(c));
    if (cases.empty()) throw InputError("unknown gallery case \"" + o.case_name + "\"");

    Report r("gallery", g.tol, g.seed);
    Json out = Json::array();
    for (const auto& c : cases) {
        Json cj{{"name", c.name}, {"description", c.description}, {"n", c.a.n()}};
        Json claims = Json::array();
        for (const auto& claim : c.claims) {
            const ClaimResult res = claim.check(g.tol);
            const std::string key = c.name + ": " + claim.name;
            if (o.assert_claims)
                r.expect(key, res.ok, true);
            else
                r.verdict(key, res.ok);
            claims.push_back({{"claim", claim.name}, {"ok", res.ok}, {"detail", res.detail}});
        }
        cj["claims"] = std::move(claims);
        out.push_back(std::move(cj));
    }
    r.details()["cases"] = std::move(out);

    if (!o.export_path.empty()) {
        MatrixFile f;
        for (const auto& c : cases) {
            f.add({c.name + ".A", c.raw_a, c.scale});
            f.add({c.name + ".B", c.raw_b, c.scale});
        }
        f.save(o.export_path);
        r.details()["export"] = o.export_path;
    }
    return r;
}

}  // namespace pencillab::cli
