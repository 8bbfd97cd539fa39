#include "pencillab/cli/report.hpp"

#include <sstream>

namespace pencillab::cli {

namespace {

std::string scalar(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

bool is_flat(const Json& j) {
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
    return true;
}

void render(std::ostream& os, const Json& j, int indent) {
    const std::string pad(std::size_t(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (is_flat(value)) {
                os << pad << key << ": " << scalar(value) << "\n";
            } else {
                os << pad << key << ":\n";
                render(os, value, indent + 1);
            }
        }
    } else if (j.is_array()) {
        for (const auto& x : j) {
            if (is_flat(x)) {
                os << pad << "- " << scalar(x) << "\n";
            } else {
                os << pad << "-\n";
                render(os, x, indent + 1);
            }
        }
    } else {
        os << pad << scalar(j) << "\n";
    }
}

}  // namespace

Report::Report(std::string command, const Tolerances& tol, std::uint64_t seed) {
    doc_["command"] = std::move(command);
    doc_["seed"] = seed;
    doc_["tolerances"] = {{"eps_root", tol.eps_root},
                          {"eps_rank", tol.eps_rank},
                          {"eps_cluster", tol.eps_cluster},
                          {"eps_verify", tol.eps_verify},
                          {"max_iter", tol.max_iter}};
    doc_["verdicts"] = Json::object();
    doc_["assertions"] = Json::object();
    doc_["details"] = Json::object();
}

void Report::verdict(const std::string& name, bool value) { doc_["verdicts"][name] = value; }

void Report::expect(const std::string& name, bool value, bool expected) {
    verdict(name, value);
    const bool pass = value == expected;
    doc_["assertions"][name] = {{"expected", expected}, {"actual", value}, {"pass", pass}};
    ok_ = ok_ && pass;
}

std::string Report::json() const {
    Json d = doc_;
    d["result"] = ok_ ? "ok" : "assertion failed";
    return d.dump(2) + "\n";
}

std::string Report::text() const {
    std::ostringstream os;
    render(os, doc_, 0);
    os << "result: " << (ok_ ? "ok" : "assertion failed") << "\n";
    return os.str();
}

Json complex_json(Cx z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace pencillab::cli
