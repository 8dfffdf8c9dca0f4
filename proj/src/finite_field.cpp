#include "cnf/finite_field.hpp"

#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "cnf/errors.hpp"

namespace cnf::ff {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % p);
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t p) {
    std::int64_t r = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t p) { return powmod(a, p - 2, p); }

void check_prime(std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
}

} // namespace

std::vector<std::size_t> row_reduce(std::vector<std::int64_t>& e, std::size_t rows,
                                    std::size_t cols, std::int64_t p) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && e[pr * cols + c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(e[pr * cols + j], e[r * cols + j]);
        std::int64_t inv = invmod(e[r * cols + c], p);
        for (std::size_t j = 0; j < cols; ++j) e[r * cols + j] = mulmod(e[r * cols + j], inv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || e[i * cols + c] == 0) continue;
            std::int64_t f = e[i * cols + c];
            for (std::size_t j = 0; j < cols; ++j) {
                std::int64_t v = e[i * cols + j] - mulmod(f, e[r * cols + j], p);
                e[i * cols + j] = v < 0 ? v + p : v;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t g_inv(std::int64_t x, std::int64_t p) {
    check_prime(p);
    return ((x % p) + p) % p;
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::int64_t p)
    : rows_(rows), cols_(cols), p_(p), e_(rows * cols, 0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
    check_prime(p);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::int64_t p,
                         std::vector<std::int64_t> entries)
    : FieldMatrix(rows, cols, p) {
    if (entries.size() != rows * cols)
        throw std::invalid_argument("entry count does not match dimensions");
    for (std::size_t i = 0; i < entries.size(); ++i) e_[i] = ((entries[i] % p) + p) % p;
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::int64_t p) {
    FieldMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::int64_t v) {
    e_[r * cols_ + c] = ((v % p_) + p_) % p_;
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows() || a.modulus() != b.modulus())
        throw std::invalid_argument("incompatible matrices");
    std::int64_t p = a.modulus();
    FieldMatrix out(a.rows(), b.cols(), p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s = (s + mulmod(a.at(i, k), b.at(k, j), p)) % p;
            out.set(i, j, s);
        }
    }
    return out;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
coeffs_to_field(const CoeffVector& a, std::int64_t p) {
    std::vector<std::int64_t> qr(a.size()), qi(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        qr[l] = g_inv(a[l].re, p);
        qi[l] = g_inv(a[l].im, p);
    }
    return {qr, qi};
}

FieldMatrix build_Q(const std::vector<CoeffVector>& a_list, std::int64_t p, std::size_t L) {
    if (a_list.empty()) throw std::invalid_argument("need at least one coefficient vector");
    std::size_t M = a_list.size();
    FieldMatrix q(2 * M, 2 * L, p);
    for (std::size_t m = 0; m < M; ++m) {
        if (a_list[m].size() != L)
            throw std::invalid_argument("coefficient vector length mismatch");
        auto [qr, qi] = coeffs_to_field(a_list[m], p);
        for (std::size_t l = 0; l < L; ++l) {
            q.set(m, l, qr[l]);
            q.set(m, l + L, -qi[l]);
            q.set(m + M, l, qi[l]);
            q.set(m + M, l + L, qr[l]);
        }
    }
    return q;
}

std::size_t rank(const FieldMatrix& m) {
    std::vector<std::int64_t> e(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e[i * m.cols() + j] = m.at(i, j);
    return row_reduce(e, m.rows(), m.cols(), m.modulus()).size();
}

FieldMatrix invert(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse requires a square matrix");
    std::size_t n = m.rows();
    std::int64_t p = m.modulus();
    // Augmented [M | I], reduce, read off the right block.
    std::vector<std::int64_t> e(n * 2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) e[i * 2 * n + j] = m.at(i, j);
        e[i * 2 * n + n + i] = 1;
    }
    auto pivots = row_reduce(e, n, 2 * n, p);
    if (pivots.size() != n || pivots.back() >= n)
        throw SingularError("matrix is singular over F_p");
    FieldMatrix out(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, e[i * 2 * n + n + j]);
    return out;
}

FieldMatrix solve_all_messages(const FieldMatrix& q, const FieldMatrix& u_stack) {
    if (q.rows() != u_stack.rows())
        throw std::invalid_argument("equation stack height must match the coefficient matrix");
    return multiply(invert(q), u_stack);
}

std::optional<FieldMatrix> recovery_matrix(const FieldMatrix& q, std::size_t ell,
                                           std::size_t L) {
    if (q.cols() != 2 * L) throw std::invalid_argument("coefficient matrix must have 2L columns");
    if (ell < 1 || ell > L) throw std::invalid_argument("message index out of range");
    std::size_t K2 = q.rows();
    std::int64_t p = q.modulus();
    // Solve Q^T * X = T^T, X = Phi^T (K2 x 2). Augment Q^T with the two
    // target columns (the unit vectors at ell-1 and ell-1+L).
    std::size_t rows = 2 * L, cols = K2 + 2;
    std::vector<std::int64_t> e(rows * cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < K2; ++j) e[i * cols + j] = q.at(j, i);
    e[(ell - 1) * cols + K2] = 1;
    e[(ell - 1 + L) * cols + K2 + 1] = 1;
    auto pivots = row_reduce(e, rows, cols, p);
    // Inconsistent when a pivot lands in the augmented columns.
    if (!pivots.empty() && pivots.back() >= K2) return std::nullopt;
    FieldMatrix phi(2, K2, p);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::size_t col = pivots[r];
        phi.set(0, col, e[r * cols + K2]);
        phi.set(1, col, e[r * cols + K2 + 1]);
    }
    return phi;
}

namespace {

struct Gauss128 {
    __int128 re = 0, im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    Gauss128 operator*(const Gauss128& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Gauss128 operator-(const Gauss128& o) const { return {re - o.re, im - o.im}; }
    // Exact quotient; only called when o divides *this in Z[j].
    Gauss128 divide_exact(const Gauss128& o) const {
        __int128 n = o.re * o.re + o.im * o.im;
        Gauss128 num{re * o.re + im * o.im, im * o.re - re * o.im};
        return {num.re / n, num.im / n};
    }
};

} // namespace

bool complex_full_rank(const GaussianIntMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("rank test requires a square matrix");
    std::size_t n = a.rows;
    std::vector<Gauss128> m(n * n);
    for (std::size_t i = 0; i < n * n; ++i)
        m[i] = Gauss128{a.entries[i].re, a.entries[i].im};
    Gauss128 prev{1, 0};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k * n + k].is_zero()) {
            std::size_t pr = k + 1;
            while (pr < n && m[pr * n + k].is_zero()) ++pr;
            if (pr == n) return false;
            for (std::size_t j = 0; j < n; ++j) std::swap(m[pr * n + j], m[k * n + j]);
            // A row swap flips the determinant's sign only; zero-ness is
            // unaffected.
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Gauss128 v = m[k * n + k] * m[i * n + j] - m[i * n + k] * m[k * n + j];
                m[i * n + j] = v.divide_exact(prev);
            }
            m[i * n + k] = Gauss128{};
        }
        prev = m[k * n + k];
    }
    return !m[(n - 1) * n + (n - 1)].is_zero();
}

FieldMatrix matrix_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::int64_t p = j.at("p").get<std::int64_t>();
    auto rows = j.at("rows").get<std::size_t>();
    auto cols = j.at("cols").get<std::size_t>();
    const auto& rows_json = j.at("entries");
    if (rows_json.size() != rows) throw std::invalid_argument("row count mismatch in JSON");
    std::vector<std::int64_t> entries;
    entries.reserve(rows * cols);
    for (const auto& row : rows_json) {
        if (row.size() != cols) throw std::invalid_argument("column count mismatch in JSON");
        for (const auto& v : row) entries.push_back(v.get<std::int64_t>());
    }
    return FieldMatrix(rows, cols, p, std::move(entries));
}

std::string matrix_to_json_text(const FieldMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    nlohmann::json j{{"p", m.modulus()}, {"rows", m.rows()}, {"cols", m.cols()},
                     {"entries", std::move(rows)}};
    return j.dump();
}

} // namespace cnf::ff
