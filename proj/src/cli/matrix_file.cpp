#include "pencillab/cli/matrix_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pencillab/types.hpp"

namespace pencillab::cli {

using nlohmann::ordered_json;

namespace {

double number_at(const ordered_json& pair, std::size_t i, const std::string& where) {
    if (!pair[i].is_number()) throw InputError(where + ": entries must be numbers");
    const double x = pair[i].get<double>();
    if (!std::isfinite(x)) throw InputError(where + ": non-finite entry");
    return x;
}

StoredMatrix matrix_from_json(const std::string& name, const ordered_json& j) {
    if (!j.is_object()) throw InputError(name + ": expected an object");
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw InputError(name + ": \"n\" must be a positive integer");
    const auto n = std::size_t(j["n"].get<long long>());
    if (!j.contains("entries") || !j["entries"].is_array()) throw InputError(name + ": missing \"entries\" array");
    const auto& e = j["entries"];
    if (e.size() != n * n) throw InputError(name + ": expected n^2 entries");

    StoredMatrix m{name, CMatrix(n), "1"};
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (!e[k].is_array() || e[k].size() != 2) throw InputError(name + ": each entry must be [re, im]");
        m.entries(k / n, k % n) = Cx(number_at(e[k], 0, name), number_at(e[k], 1, name));
    }
    if (j.contains("scale")) {
        if (!j["scale"].is_string()) throw InputError(name + ": \"scale\" must be a string");
        m.scale = j["scale"].get<std::string>();
        if (m.scale != "1" && m.scale != "2pi_i") throw InputError(name + ": unknown scale \"" + m.scale + "\"");
    }
    for (const auto& [key, _] : j.items())
        if (key != "n" && key != "entries" && key != "scale") throw InputError(name + ": unknown key \"" + key + "\"");
    if (!m.value().all_finite()) throw InputError(name + ": non-finite entry after scaling");
    return m;
}

}  // namespace

CMatrix StoredMatrix::value() const { return scale == "2pi_i" ? kTwoPiI * entries : entries; }

const StoredMatrix* MatrixFile::find(const std::string& name) const {
    for (const auto& m : matrices_)
        if (m.name == name) return &m;
    return nullptr;
}

void MatrixFile::add(StoredMatrix m) {
    if (find(m.name)) throw InputError("duplicate matrix name \"" + m.name + "\"");
    matrices_.push_back(std::move(m));
}

MatrixFile MatrixFile::parse(const std::string& text) {
    // The parser keeps the last of repeated keys, so repeats are caught here.
    std::vector<std::set<std::string>> keys;
    std::string duplicate;
    const ordered_json::parser_callback_t cb = [&](int, ordered_json::parse_event_t ev, ordered_json& parsed) {
        if (ev == ordered_json::parse_event_t::object_start) keys.emplace_back();
        if (ev == ordered_json::parse_event_t::object_end && !keys.empty()) keys.pop_back();
        if (ev == ordered_json::parse_event_t::key && !keys.empty() &&
            !keys.back().insert(parsed.get<std::string>()).second && duplicate.empty())
            duplicate = parsed.get<std::string>();
        return true;
    };
    ordered_json j;
    try {
        j = ordered_json::parse(text, cb);
    } catch (const ordered_json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!duplicate.empty()) throw InputError("duplicate key \"" + duplicate + "\"");
    if (!j.is_object()) throw InputError("top level must be an object of named matrices");
    MatrixFile f;
    for (const auto& [name, value] : j.items()) f.add(matrix_from_json(name, value));
    return f;
}

MatrixFile MatrixFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string MatrixFile::dump() const {
    // One matrix row per line; numbers go through the JSON serializer.
    std::ostringstream os;
    os << "{";
    for (std::size_t k = 0; k < matrices_.size(); ++k) {
        const StoredMatrix& m = matrices_[k];
        const std::size_t n = m.entries.n();
        os << (k ? ",\n" : "\n") << "  " << ordered_json(m.name).dump() << ": {\"n\": " << n;
        if (m.scale != "1") os << ", \"scale\": " << ordered_json(m.scale).dump();
        os << ", \"entries\": [";
        for (std::size_t i = 0; i < n; ++i) {
            os << "\n   ";
            for (std::size_t j = 0; j < n; ++j) {
                const Cx z = m.entries(i, j);
                os << " [" << ordered_json(z.real()).dump() << ", " << ordered_json(z.imag()).dump() << "]"
                   << (i + 1 < n || j + 1 < n ? "," : "");
            }
        }
        os << "\n  ]}";
    }
    os << "\n}\n";
    return os.str();
}

void MatrixFile::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << dump();
    if (!out) throw InputError("write failed: " + path);
}

CMatrix require_matrix(const MatrixFile& f, const std::string& name) {
    const StoredMatrix* m = f.find(name);
    if (!m) throw InputError("no matrix named \"" + name + "\"");
    return m->value();
}

}  // namespace pencillab::cli
