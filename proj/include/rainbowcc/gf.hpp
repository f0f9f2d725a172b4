#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rainbowcc {

enum class Field { kGF2, kGF256 };

std::string_view to_string(Field field);
Field field_from_string(std::string_view name);

using Packet = std::vector<std::uint8_t>;

namespace gf256 {

/// Reduction polynomial x^8 + x^4 + x^3 + x^2 + 1.
inline constexpr unsigned kPolynomial = 0x11D;

std::uint8_t mul(std::uint8_t a, std::uint8_t b);
/// Throws RANGE for zero.
std::uint8_t inv(std::uint8_t a);
std::uint8_t div(std::uint8_t a, std::uint8_t b);

/// dst ^= coef * src, bytewise.
void axpy(std::span<std::uint8_t> dst, std::uint8_t coef, std::span<const std::uint8_t> src);
/// dst *= coef, bytewise.
void scale(std::span<std::uint8_t> dst, std::uint8_t coef);

}  // namespace gf256

/// Dense matrix over GF(2) or GF(2^8). GF(2) entries are 0/1 and embed in
/// GF(2^8), so both fields share one set of kernels.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(Field field, std::size_t n);
    static Matrix from_rows(Field field, const std::vector<std::vector<std::uint8_t>>& rows);

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint8_t v);

    std::vector<std::vector<std::uint8_t>> to_rows() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    Field field_ = Field::kGF2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

/// m×n MDS matrix. GF2 supports m ∈ {0, 1, n-1, n}: the all-ones row, the
/// [I | 1] parity form, and the identity. GF256 uses the Cauchy matrix
/// 1/(x_i + y_j) with x_i = i, y_j = m + j (identity when m = n).
Matrix mds_matrix(std::size_t m, std::size_t n, Field field);

inline constexpr std::size_t kMdsVerifyRowLimit = 12;

/// True iff every rows×rows submatrix is invertible.
bool verify_mds(const Matrix& p);

std::size_t rank(const Matrix& p);

/// Row i = Σ_j P[i][j]·V[j].
std::vector<Packet> combine(const Matrix& p, std::span<const Packet> packets);

/// Recovers the unknown columns of P·V from the received rows. `known` holds
/// one entry per column (nullopt for unknowns). Returns the unknown packets
/// in increasing column order.
std::vector<Packet> solve_submatrix(const Matrix& p, std::span<const std::optional<Packet>> known,
                                    std::span<const Packet> received);

/// Sparse linear system over GF(2^8) with packet right-hand sides, solved by
/// Gauss-Jordan elimination. Variables are dense ids 0..num_vars-1.
class PacketSystem {
public:
    PacketSystem(std::size_t num_vars, std::size_t packet_size)
        : num_vars_(num_vars), packet_size_(packet_size) {}

    /// Adds Σ coef·x_var = rhs. Shorter right-hand sides are zero padded.
    void add_equation(const std::vector<std::pair<std::size_t, std::uint8_t>>& terms, Packet rhs);

    /// Values of every variable the equations pin down; nullopt otherwise.
    std::vector<std::optional<Packet>> solve() const;

private:
    std::size_t num_vars_;
    std::size_t packet_size_;
    std::vector<std::vector<std::uint8_t>> coeffs_;
    std::vector<Packet> rhs_;
};

}  // namespace rainbowcc
