#pragma once

// Seeded constructors for structured random test matrices.

#include <cstddef>
#include <vector>

#include "pencillab/matrix.hpp"
#include "pencillab/random.hpp"

namespace gen {

using pencillab::CMatrix;
using pencillab::Cx;
using pencillab::Rng;

struct JordanBlock {
    Cx value;
    std::size_t size;
};

struct Engineered {
    CMatrix m;
    CMatrix p;  // similarity used, m = p * j * p^{-1}
    CMatrix j;  // block-diagonal Jordan form
    std::vector<JordanBlock> blocks;
};

/// Block-diagonal Jordan matrix.
CMatrix jordan_matrix(const std::vector<JordanBlock>& blocks);

/// n x n matrix with eigenvalues from a small pool of well-separated values,
/// so that repeats (and nontrivial Jordan blocks of size <= 3) occur often.
Engineered engineered(Rng& rng, std::size_t n);

/// Nilpotent P U P^{-1}, U strictly upper triangular, ||.||_1 of order `scale`.
CMatrix nilpotent(Rng& rng, std::size_t n, double scale);

/// (p(C), q(C)) for random C and random low-degree polynomials, rescaled so
/// each has 1-norm at most max_norm.
std::pair<CMatrix, CMatrix> commuting_pair(Rng& rng, std::size_t n, double max_norm);

/// (P Da P^{-1}, P Db P^{-1}) with random diagonal entries.
struct DiagonalPair {
    CMatrix a, b, p;
    std::vector<Cx> da, db;
};
DiagonalPair commuting_diagonalizable(Rng& rng, std::size_t n, double scale);

/// (P U1 P^{-1}, P U2 P^{-1}) with U1, U2 random upper triangular.
struct TriangularPair {
    CMatrix a, b;
    std::vector<Cx> da, db;
};
TriangularPair triangularizable(Rng& rng, std::size_t n);

}  // namespace gen
