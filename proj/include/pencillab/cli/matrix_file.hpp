#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pencillab/matrix.hpp"

namespace pencillab::cli {

/// Unreadable file, malformed JSON, or content that violates the format.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One named matrix as stored. The value used for computation is
/// entries * 2 i pi when scale == "2pi_i", entries otherwise.
struct StoredMatrix {
    std::string name;
    CMatrix entries;
    std::string scale = "1";

    CMatrix value() const;
};

/// JSON object mapping names to {"n": int, "entries": [[re, im], ...] (row-major),
/// "scale": "1" | "2pi_i" (optional)}.
class MatrixFile {
   public:
    const std::vector<StoredMatrix>& matrices() const noexcept { return matrices_; }
    const StoredMatrix* find(const std::string& name) const;
    /// Throws InputError if the name is taken.
    void add(StoredMatrix m);

    /// Throws InputError on duplicate names or keys, a wrong entry count,
    /// non-finite values or an unknown scale.
    static MatrixFile parse(const std::string& text);
    static MatrixFile load(const std::string& path);

    /// Doubles are printed in shortest round-trip form, so parse(dump())
    /// reproduces every entry bit for bit.
    std::string dump() const;
    void save(const std::string& path) const;

   private:
    std::vector<StoredMatrix> matrices_;
};

/// The value of a named matrix; throws InputError if it is missing.
CMatrix require_matrix(const MatrixFile& f, const std::string& name);

}  // namespace pencillab::cli
