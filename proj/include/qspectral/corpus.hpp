#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qspectral/linalg.hpp"
#include "qspectral/structured_operator.hpp"

namespace qspectral {

using Rng = std::mt19937_64;

/// QSPECTRAL_SEED from the environment when set and numeric, else fallback.
std::uint64_t corpus_seed(std::uint64_t fallback);

/// Quaternion with Gaussian components.
Quaterniond random_quaternion(Rng& rng);
/// Quaternion whose components are multiples of 1/4 in [-2, 2], each
/// imaginary part zero with probability 1/2.
Quaterniond random_dyadic_quaternion(Rng& rng);

QVectord random_vector(Rng& rng, std::size_t n);
QMatrixd random_matrix(Rng& rng, std::size_t rows, std::size_t cols);

/// Small-integer rational matrix that is singular with a nontrivial Jordan
/// structure half of the time (a conjugated nilpotent part or a low-rank
/// product), generic otherwise.
QMatrixq random_rational_matrix(Rng& rng, std::size_t n);
QMatrixq random_integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound);

/// Orthonormal basis from Gram-Schmidt on Gaussian vectors.
HilbertBasis<double> random_basis(Rng& rng, std::size_t n);

/// Unperturbed structured operator with at least one infinite component and
/// dyadic parameters: up to a 2 x 2 finite block, up to two diagonal families
/// and up to two shift tails of weight 0.5 .. 2.5.
StructuredOperator random_structured_operator(Rng& rng);

std::vector<StructuredOperator> structured_corpus(std::uint64_t seed, std::size_t count);

/// Finite-rank term of the given rank supported on the first 8 global
/// coordinates (or the finite space when a has no infinite component).
std::vector<PerturbationPair> random_perturbation(Rng& rng, const StructuredOperator& a,
                                                  std::size_t rank);

}  // namespace qspectral
