#include "rainbowcc/gf.hpp"

#include "rainbowcc/error.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace rainbowcc {

std::string_view to_string(Field field) {
    return field == Field::kGF2 ? "GF2" : "GF256";
}

Field field_from_string(std::string_view name) {
    if (name == "GF2" || name == "gf2") return Field::kGF2;
    if (name == "GF256" || name == "gf256") return Field::kGF256;
    throw Error(ErrorCode::kParse, "unknown field '" + std::string(name) + "'");
}

namespace gf256 {
namespace {

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<int, 256> log{};

    constexpr Tables() {
        unsigned x = 1;
        for (int i = 0; i < 255; ++i) {
            exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x);
            log[x] = i;
            x <<= 1;
            if (x & 0x100) x ^= kPolynomial;
        }
        for (int i = 255; i < 512; ++i) {
            exp[static_cast<std::size_t>(i)] = exp[static_cast<std::size_t>(i - 255)];
        }
        log[0] = -1;
    }
};

constexpr Tables kTables{};

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    return kTables.exp[static_cast<std::size_t>(kTables.log[a] + kTables.log[b])];
}

std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw Error(ErrorCode::kRange, "zero has no inverse in GF(256)");
    return kTables.exp[static_cast<std::size_t>(255 - kTables.log[a])];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) {
    return mul(a, inv(b));
}

void axpy(std::span<std::uint8_t> dst, std::uint8_t coef, std::span<const std::uint8_t> src) {
    if (coef == 0) return;
    const std::size_t n = std::min(dst.size(), src.size());
    if (coef == 1) {
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
        return;
    }
    const int lc = kTables.log[coef];
    for (std::size_t i = 0; i < n; ++i) {
        if (src[i] != 0) dst[i] ^= kTables.exp[static_cast<std::size_t>(lc + kTables.log[src[i]])];
    }
}

void scale(std::span<std::uint8_t> dst, std::uint8_t coef) {
    for (auto& b : dst) b = mul(b, coef);
}

}  // namespace gf256

Matrix Matrix::identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<std::uint8_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorCode::kDimension, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, std::uint8_t v) {
    if (field_ == Field::kGF2 && v > 1) throw Error(ErrorCode::kRange, "GF2 entries are 0 or 1");
    data_[r * cols_ + c] = v;
}

std::vector<std::vector<std::uint8_t>> Matrix::to_rows() const {
    std::vector<std::vector<std::uint8_t>> out(rows_, std::vector<std::uint8_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out[r][c] = at(r, c);
    }
    return out;
}

Matrix mds_matrix(std::size_t m, std::size_t n, Field field) {
    if (m > n) {
        throw Error(ErrorCode::kDimension,
                    "MDS matrix needs rows <= cols, got " + std::to_string(m) + "x" + std::to_string(n));
    }
    if (m == n) return Matrix::identity(field, n);
    if (field == Field::kGF2) {
        if (m == 0) return Matrix(field, 0, n);
        if (m + 1 == n) {
            Matrix p(field, m, n);
            for (std::size_t i = 0; i < m; ++i) {
                p.set(i, i, 1);
                p.set(i, n - 1, 1);
            }
            return p;
        }
        if (m == 1) {
            Matrix p(field, 1, n);
            for (std::size_t j = 0; j < n; ++j) p.set(0, j, 1);
            return p;
        }
        throw Error(ErrorCode::kNoBinaryMds,
                    "no binary MDS matrix of size " + std::to_string(m) + "x" + std::to_string(n));
    }
    if (m + n > 256) throw Error(ErrorCode::kDimension, "Cauchy construction needs m + n <= 256");
    Matrix p(field, m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto x = static_cast<std::uint8_t>(i);
            const auto y = static_cast<std::uint8_t>(m + j);
            p.set(i, j, gf256::inv(static_cast<std::uint8_t>(x ^ y)));
        }
    }
    return p;
}

namespace {

std::size_t rank_of(std::vector<std::vector<std::uint8_t>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const auto inv = gf256::inv(rows[r][c]);
        gf256::scale(rows[r], inv);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k != r && rows[k][c] != 0) gf256::axpy(rows[k], rows[k][c], rows[r]);
        }
        ++r;
    }
    return r;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::size_t rank(const Matrix& p) {
    return rank_of(p.to_rows());
}

bool verify_mds(const Matrix& p) {
    if (p.rows() > p.cols()) throw Error(ErrorCode::kDimension, "verify_mds needs rows <= cols");
    if (p.rows() > kMdsVerifyRowLimit) {
        throw Error(ErrorCode::kTooLarge, "exhaustive minor check limited to " +
                                              std::to_string(kMdsVerifyRowLimit) + " rows");
    }
    const std::size_t k = p.rows();
    if (k == 0) return true;
    std::vector<std::size_t> cols(k);
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
        std::vector<std::vector<std::uint8_t>> sub(k, std::vector<std::uint8_t>(k));
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) sub[r][c] = p.at(r, cols[c]);
        }
        if (rank_of(std::move(sub)) != k) return false;
    } while (next_combination(cols, p.cols()));
    return true;
}

std::vector<Packet> combine(const Matrix& p, std::span<const Packet> packets) {
    if (packets.size() != p.cols()) {
        throw Error(ErrorCode::kDimension, "combine needs one packet per column");
    }
    const std::size_t len = packets.empty() ? 0 : packets.front().size();
    for (const auto& pk : packets) {
        if (pk.size() != len) throw Error(ErrorCode::kLengthMismatch, "packets differ in length");
    }
    std::vector<Packet> out(p.rows(), Packet(len, 0));
    for (std::size_t r = 0; r < p.rows(); ++r) {
        for (std::size_t c = 0; c < p.cols(); ++c) gf256::axpy(out[r], p.at(r, c), packets[c]);
    }
    return out;
}

std::vector<Packet> solve_submatrix(const Matrix& p, std::span<const std::optional<Packet>> known,
                                    std::span<const Packet> received) {
    if (known.size() != p.cols() || received.size() != p.rows()) {
        throw Error(ErrorCode::kDimension, "solve_submatrix dimension mismatch");
    }
    const std::size_t len = received.empty() ? 0 : received.front().size();
    for (const auto& pk : received) {
        if (pk.size() != len) throw Error(ErrorCode::kLengthMismatch, "received packets differ in length");
    }
    std::vector<std::size_t> unknown;
    for (std::size_t c = 0; c < known.size(); ++c) {
        if (!known[c]) {
            unknown.push_back(c);
        } else if (known[c]->size() != len && p.rows() > 0) {
            throw Error(ErrorCode::kLengthMismatch, "known packet length differs");
        }
    }
    if (unknown.empty()) return {};
    if (unknown.size() > p.rows()) {
        throw Error(ErrorCode::kUnderdetermined, std::to_string(unknown.size()) +
                                                     " unknown columns but only " +
                                                     std::to_string(p.rows()) + " rows");
    }
    PacketSystem system(unknown.size(), len);
    for (std::size_t r = 0; r < p.rows(); ++r) {
        Packet residual = received[r];
        std::vector<std::pair<std::size_t, std::uint8_t>> terms;
        std::size_t u = 0;
        for (std::size_t c = 0; c < p.cols(); ++c) {
            if (known[c]) {
                gf256::axpy(residual, p.at(r, c), *known[c]);
            } else {
                if (p.at(r, c) != 0) terms.emplace_back(u, p.at(r, c));
                ++u;
            }
        }
        system.add_equation(terms, std::move(residual));
    }
    auto solved = system.solve();
    std::vector<Packet> out;
    out.reserve(unknown.size());
    for (std::size_t u = 0; u < unknown.size(); ++u) {
        if (!solved[u]) {
            throw Error(ErrorCode::kUnderdetermined,
                        "column " + std::to_string(unknown[u]) + " is not recoverable");
        }
        out.push_back(std::move(*solved[u]));
    }
    return out;
}

void PacketSystem::add_equation(const std::vector<std::pair<std::size_t, std::uint8_t>>& terms,
                                Packet rhs) {
    std::vector<std::uint8_t> row(num_vars_, 0);
    for (const auto& [var, coef] : terms) {
        if (var >= num_vars_) throw Error(ErrorCode::kRange, "variable id out of range");
        row[var] ^= coef;
    }
    rhs.resize(std::max(rhs.size(), packet_size_), 0);
    coeffs_.push_back(std::move(row));
    rhs_.push_back(std::move(rhs));
}

std::vector<std::optional<Packet>> PacketSystem::solve() const {
    auto rows = coeffs_;
    auto rhs = rhs_;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < num_vars_ && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        std::swap(rhs[r], rhs[pivot]);
        const auto inv = gf256::inv(rows[r][c]);
        gf256::scale(rows[r], inv);
        gf256::scale(rhs[r], inv);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r || rows[k][c] == 0) continue;
            const auto f = rows[k][c];
            gf256::axpy(rows[k], f, rows[r]);
            gf256::axpy(rhs[k], f, rhs[r]);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::optional<Packet>> out(num_vars_);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        std::size_t nonzero = 0;
        for (auto v : rows[i]) nonzero += (v != 0);
        if (nonzero == 1) {
            Packet value = rhs[i];
            value.resize(packet_size_);
            out[pivot_col[i]] = std::move(value);
        }
    }
    return out;
}

}  // namespace rainbowcc
