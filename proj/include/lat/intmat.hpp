#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lat {

using Int = mpz_class;
using Rat = mpq_class;
using Ivec = std::vector<Int>;
using Rvec = std::vector<Rat>;

// Thrown when an enumeration or search exceeds its configured cap.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// q-values live in Q/2Z, bilinear values in Q/Z; both reduced to the
// least nonnegative representative.
Rat mod_1(const Rat& x);
Rat mod_2(const Rat& x);

// Dense matrix of arbitrary-precision integers, row-major.
class IntMat {
  public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("IntMat: negative size");
    }
    IntMat(std::initializer_list<std::initializer_list<long>> rows);

    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat from_rows(const std::vector<Ivec>& rows, int cols_if_empty = 0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    Ivec row(int i) const;
    Ivec col(int j) const;

    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat operator-() const;
    IntMat transpose() const;

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    bool is_zero() const;
    bool is_identity() const;

    Ivec mul_vec(const Ivec& v) const;       // A * v (column vector)
    Ivec mul_vec_left(const Ivec& v) const;  // v^T * A, returned as a plain vector

    std::string str() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

// Dense exact-rational matrix; every entry kept canonical.
class RatMat {
  public:
    RatMat() = default;
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
    explicit RatMat(const IntMat& m);

    static RatMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    RatMat operator*(const RatMat& o) const;
    RatMat transpose() const;

    Rvec mul_vec(const Rvec& v) const;

    // True when every entry is an integer.
    bool is_integral() const;
    IntMat to_int() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

struct SmithDecomposition {
    IntMat U;  // unimodular, rows x rows
    IntMat D;  // diagonal, nonnegative, d_i | d_{i+1}
    IntMat V;  // unimodular, cols x cols
};

// Row Hermite normal form: returns (H, U) with U unimodular and U*A = H.
// H is in row echelon form with positive pivots and reduced entries above them.
std::pair<IntMat, IntMat> hnf(const IntMat& a);

// Smith normal form, U*A*V = D.
SmithDecomposition snf(const IntMat& a);

// Exact determinant via Bareiss fraction-free elimination.
Int det_exact(const IntMat& a);

// Basis of the integer kernel {x : A*x = 0}; saturated, HNF-reduced rows.
std::vector<Ivec> kernel_basis(const IntMat& a);

// Monic characteristic polynomial, coefficient of x^i at index i.
using Poly = std::vector<Int>;
Poly char_poly(const IntMat& a);

Poly poly_mul(const Poly& a, const Poly& b);
// Exact division; returns false when the division leaves a remainder.
bool poly_divexact(const Poly& num, const Poly& den, Poly& quot);
Poly cyclotomic(int e);

// Signature of a nondegenerate symmetric matrix via exact symmetric
// Gaussian reduction; returns (n_plus, n_minus).
std::pair<int, int> inertia(const IntMat& g);

// Rank over Q.
int rank_rational(const IntMat& a);

// Inverse over Q; throws std::invalid_argument when singular.
RatMat inverse_rational(const IntMat& a);
RatMat inverse_rational(const RatMat& a);

IntMat mul(const IntMat& a, const IntMat& b);

Int dot(const Ivec& a, const Ivec& b);
Ivec add(const Ivec& a, const Ivec& b);
Ivec sub(const Ivec& a, const Ivec& b);
Ivec scale(const Int& c, const Ivec& v);
bool is_zero_vec(const Ivec& v);

// Lexicographic comparison of coordinate vectors.
bool lex_less(const Ivec& a, const Ivec& b);

}  // namespace lat
