#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "pencillab/matrix.hpp"
#include "pencillab/types.hpp"

namespace pencillab::cli {

using Json = nlohmann::ordered_json;

/// Command result. The text and JSON renderings are produced from the same
/// document, so they carry the same verdicts.
class Report {
   public:
    Report(std::string command, const Tolerances& tol, std::uint64_t seed);

    /// Record a verdict. With an expectation it also becomes an assertion.
    void verdict(const std::string& name, bool value);
    void expect(const std::string& name, bool value, bool expected);

    Json& details() { return doc_["details"]; }
    void set_timing(double ms) { doc_["timing_ms"] = ms; }

    /// True unless some assertion failed.
    bool ok() const noexcept { return ok_; }
    const Json& document() const noexcept { return doc_; }

    std::string json() const;
    std::string text() const;

   private:
    Json doc_;
    bool ok_ = true;
};

Json complex_json(Cx z);
Json matrix_json(const CMatrix& m);

}  // namespace pencillab::cli
