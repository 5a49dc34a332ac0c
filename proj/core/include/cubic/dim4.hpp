#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cubic/boundary.hpp"
#include "cubic/census.hpp"
#include "cubic/decomp3d.hpp"

namespace cubic {

// Boundary condition along the fourth axis: (a) periodic, (b) zero lowest input.
enum class ChainCase { Periodic4, ZeroInput4 };

std::string to_string(ChainCase c);
ChainCase parse_chain_case(std::string_view text);

// 4x4 brick with the split B = [[K, L], [M, b44]].
struct Brick4 {
  Matrix<GaloisField> b;

  explicit Brick4(Matrix<GaloisField> m);
  static Brick4 from_parts(const Matrix<GaloisField>& k, const Matrix<GaloisField>& l, const Matrix<GaloisField>& m,
                           const GfElement& b44);

  const GaloisField& field() const { return b.ring(); }
  Matrix<GaloisField> k() const { return submatrix(b, 0, 0, 3, 3); }
  Matrix<GaloisField> l() const { return submatrix(b, 0, 3, 3, 1); }
  Matrix<GaloisField> m() const { return submatrix(b, 3, 0, 1, 3); }
  const GfElement& b44() const { return b(3, 3); }
};

enum class AlgebraTag { Circulant, UpperToeplitz, General };

std::string to_string(AlgebraTag t);

// An l x l matrix with its structure tag; first_row is filled for tagged forms.
struct AlgebraElement {
  Matrix<GaloisField> value;
  AlgebraTag tag = AlgebraTag::General;
  std::vector<GfElement> first_row;
};

AlgebraElement classify_algebra_element(const Matrix<GaloisField>& m);
Matrix<GaloisField> circulant_matrix(const GaloisField& field, std::span<const GfElement> first_row);

// Ones on the superdiagonal; case (a) adds the lower-left corner.
AlgebraElement shift_matrix(const GaloisField& field, std::size_t l, ChainCase c);

struct ReducedBrick {
  ChainCase chain = ChainCase::Periodic4;
  std::size_t l = 1;
  Matrix<MatrixAlgebra<GaloisField>> a;  // 3x3 over l x l matrices
  std::array<AlgebraTag, 9> tags{};

  // The same brick as a 3l x 3l matrix with thin dimensions (l, l, l).
  BrickSpec<GaloisField> flattened() const;
};

// A = K~ + L~ (1 - b44 T)^{-1} T M~, tilde = tensor with 1_l, index i * l + h.
// Case (a) throws SingularMatrixError when b44^l = 1.
ReducedBrick reduce_chain_4d(const Brick4& b, std::size_t l, ChainCase c);

// det of the circulant with this first row: (sum of entries)^(p^n) when the
// size is p^n, mat_det otherwise.
GfElement circulant_det_charp(const GaloisField& field, std::span<const GfElement> first_row);

struct Nondegeneracy {
  bool formula = false;  // entry inequality on b
  bool direct = false;   // det over F of a12 a23 a31 - a13 a32 a21 of the reduction
  GfElement d;
  bool holds() const { return formula && direct; }
};

// Requires characteristic two and l = 2^n. Case (a) uses s_ij = b_ij +
// b_i4 b_4j / (1 + b44) (b_ij + b_i4 b_4j when b44 = 0) and also needs b44 != 1.
Nondegeneracy nondegeneracy_4d_detail(const Brick4& b, ChainCase c, std::size_t n);
bool nondegeneracy_4d(const Brick4& b, ChainCase c, std::size_t n);

// Uniform brick redrawn until nondegenerate_4d holds; InputError after
// `attempts` draws.
Brick4 random_nondegenerate_brick4(const GaloisField& field, ChainCase c, std::size_t n, std::mt19937_64& rng,
                                   std::size_t attempts = 256);

// B~ of the stratified layers after n steps.
Matrix<GaloisField> stratified_brick(const Brick4& b, ChainCase c, std::size_t n);

// n evolution steps on the reduced brick, l = 2^n, n <= 2.
DecompositionReport verify_stratification(const Brick4& b, std::size_t n, ChainCase c);

struct CrossCheck4d {
  ConfigCount genuine;
  ConfigCount reduced;
  bool equal() const { return genuine == reduced; }
};

// Census of the genuine 2x2x2xl block with the chain case on the fourth axis
// against the census of the 2x2x2 block of the reduced brick.
CrossCheck4d census_cross_check_4d(const Brick4& b, std::size_t l, ChainCase c, const BoundaryConditions& bcs3);

inline constexpr std::size_t kMaxStratificationSteps = 2;

}  // namespace cubic
