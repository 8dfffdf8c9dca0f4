#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cnf/gauss_int.hpp"

namespace cnf::ff {

bool is_prime(std::int64_t p);

// Representative of x mod p in [0, p); g itself is the identity embedding of
// {0..p-1} into the integers.
std::int64_t g_inv(std::int64_t x, std::int64_t p);

// Row-major matrix over F_p with entries kept reduced.
class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols, std::int64_t p);
    FieldMatrix(std::size_t rows, std::size_t cols, std::int64_t p,
                std::vector<std::int64_t> entries);
    static FieldMatrix identity(std::size_t n, std::int64_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t modulus() const { return p_; }

    std::int64_t at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v);

    bool operator==(const FieldMatrix& o) const = default;

private:
    std::size_t rows_, cols_;
    std::int64_t p_;
    std::vector<std::int64_t> e_;
};

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);

// Real/imaginary parts of a coefficient vector reduced mod p.
std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
coeffs_to_field(const CoeffVector& a, std::int64_t p);

// 2M x 2L block matrix [[Q^R, -Q^I], [Q^I, Q^R]] from M coefficient vectors
// of length L.
FieldMatrix build_Q(const std::vector<CoeffVector>& a_list, std::int64_t p, std::size_t L);

// In-place reduced row echelon form of a row-major entry buffer over F_p;
// returns the pivot columns in ascending order.
std::vector<std::size_t> row_reduce(std::vector<std::int64_t>& entries, std::size_t rows,
                                    std::size_t cols, std::int64_t p);

std::size_t rank(const FieldMatrix& m);

// Inverse of a square full-rank matrix; throws SingularError otherwise.
FieldMatrix invert(const FieldMatrix& m);

// w = Q^-1 * u for a full-rank 2L x 2L coefficient matrix.
FieldMatrix solve_all_messages(const FieldMatrix& q, const FieldMatrix& u_stack);

// A 2 x 2K matrix Phi with Phi*Q = [delta_ell^T; delta_{ell+L}^T], when those
// target rows lie in the row space of Q. ell is 1-based.
std::optional<FieldMatrix> recovery_matrix(const FieldMatrix& q, std::size_t ell,
                                           std::size_t L);

struct GaussianIntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<GaussInt> entries; // row-major

    const GaussInt& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// Exact nonzero-determinant test via fraction-free elimination.
bool complex_full_rank(const GaussianIntMatrix& a);

// {"p": int, "rows": int, "cols": int, "entries": [[int,...],...]}
FieldMatrix matrix_from_json_text(const std::string& text);
std::string matrix_to_json_text(const FieldMatrix& m);

} // namespace cnf::ff
