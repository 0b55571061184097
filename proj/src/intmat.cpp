#include "lat/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace lat {

Rat mod_1(const Rat& x) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rat r = x - Rat(fl);
    r.canonicalize();
    return r;
}

Rat mod_2(const Rat& x) {
    Rat half = x / 2;
    Rat r = mod_1(half) * 2;
    r.canonicalize();
    return r;
}

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    e_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("IntMat: ragged rows");
        for (long v : r) e_.emplace_back(v);
    }
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(const std::vector<Ivec>& rows, int cols_if_empty) {
    if (rows.empty()) return IntMat(0, cols_if_empty);
    IntMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols()) throw std::invalid_argument("from_rows: ragged rows");
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Ivec IntMat::row(int i) const {
    Ivec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Ivec IntMat::col(int j) const {
    Ivec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat*: size mismatch");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat+: size mismatch");
    IntMat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("IntMat-: size mismatch");
    IntMat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMat IntMat::operator-() const {
    IntMat r(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMat::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

bool IntMat::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

Ivec IntMat::mul_vec(const Ivec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("mul_vec: size mismatch");
    Ivec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

Ivec IntMat::mul_vec_left(const Ivec& v) const {
    if (static_cast<int>(v.size()) != rows_) throw std::invalid_argument("mul_vec_left: size mismatch");
    Ivec r(cols_);
    for (int i = 0; i < rows_; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < cols_; ++j) r[j] += v[i] * at(i, j);
    }
    return r;
}

std::string IntMat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

RatMat::RatMat(const IntMat& m) : rows_(m.rows()), cols_(m.cols()), e_(static_cast<size_t>(rows_) * cols_) {
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) at(i, j) = Rat(m.at(i, j));
}

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat*: size mismatch");
    RatMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RatMat RatMat::transpose() const {
    RatMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Rvec RatMat::mul_vec(const Rvec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("RatMat mul_vec: size mismatch");
    Rvec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

bool RatMat::is_integral() const {
    for (const auto& v : e_)
        if (v.get_den() != 1) return false;
    return true;
}

IntMat RatMat::to_int() const {
    if (!is_integral()) throw std::invalid_argument("to_int: non-integral entry");
    IntMat m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).get_num();
    return m;
}

namespace {

// Pivot rule shared by HNF and SNF: smallest nonzero absolute value,
// ties broken by lowest index, so outputs are reproducible.
int pick_pivot_row(const IntMat& h, int col, int from_row) {
    int best = -1;
    Int best_abs;
    for (int i = from_row; i < h.rows(); ++i) {
        if (h.at(i, col) == 0) continue;
        Int a = abs(h.at(i, col));
        if (best < 0 || a < best_abs) {
            best = i;
            best_abs = a;
        }
    }
    return best;
}

void swap_rows(IntMat& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMat& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_row(IntMat& m, int r) {
    for (int j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

// row_i -= q * row_r
void row_axpy(IntMat& m, int i, int r, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= q * m.at(r, j);
}

void col_axpy(IntMat& m, int i, int r, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < m.rows(); ++k) m.at(k, i) -= q * m.at(k, r);
}

Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

std::pair<IntMat, IntMat> hnf(const IntMat& a) {
    IntMat h = a;
    IntMat u = IntMat::identity(a.rows());
    int r = 0;
    for (int c = 0; c < h.cols() && r < h.rows(); ++c) {
        // clear the column below position r
        while (true) {
            int p = pick_pivot_row(h, c, r);
            if (p < 0) break;
            swap_rows(h, r, p);
            swap_rows(u, r, p);
            if (h.at(r, c) < 0) {
                negate_row(h, r);
                negate_row(u, r);
            }
            bool clean = true;
            for (int i = r + 1; i < h.rows(); ++i) {
                Int q = fdiv(h.at(i, c), h.at(r, c));
                row_axpy(h, i, r, q);
                row_axpy(u, i, r, q);
                if (h.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, c) == 0) continue;
        for (int i = 0; i < r; ++i) {
            Int q = fdiv(h.at(i, c), h.at(r, c));
            row_axpy(h, i, r, q);
            row_axpy(u, i, r, q);
        }
        ++r;
    }
    return {h, u};
}

SmithDecomposition snf(const IntMat& a) {
    IntMat d = a;
    IntMat u = IntMat::identity(a.rows());
    IntMat v = IntMat::identity(a.cols());
    int n = std::min(a.rows(), a.cols());

    for (int t = 0; t < n; ++t) {
        // locate a pivot in the trailing block
        int pi = -1, pj = -1;
        Int best_abs;
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j) {
                if (d.at(i, j) == 0) continue;
                Int ab = abs(d.at(i, j));
                if (pi < 0 || ab < best_abs) {
                    pi = i;
                    pj = j;
                    best_abs = ab;
                }
            }
        if (pi < 0) break;  // trailing block is zero
        swap_rows(d, t, pi);
        swap_rows(u, t, pi);
        swap_cols(d, t, pj);
        swap_cols(v, t, pj);

        while (true) {
            if (d.at(t, t) < 0) {
                negate_row(d, t);
                negate_row(u, t);
            }
            bool dirty = false;
            for (int i = t + 1; i < d.rows(); ++i) {
                Int q = fdiv(d.at(i, t), d.at(t, t));
                row_axpy(d, i, t, q);
                row_axpy(u, i, t, q);
                if (d.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < d.cols(); ++j) {
                Int q = fdiv(d.at(t, j), d.at(t, t));
                col_axpy(d, j, t, q);
                col_axpy(v, j, t, q);
                if (d.at(t, j) != 0) dirty = true;
            }
            if (dirty) {
                // a smaller remainder appeared; promote it and repeat
                int qi = pick_pivot_row(d, t, t);
                swap_rows(d, t, qi);
                swap_rows(u, t, qi);
                int qj = -1;
                Int ba;
                for (int j = t; j < d.cols(); ++j) {
                    if (d.at(t, j) == 0) continue;
                    Int ab = abs(d.at(t, j));
                    if (qj < 0 || ab < ba) {
                        qj = j;
                        ba = ab;
                    }
                }
                swap_cols(d, t, qj);
                swap_cols(v, t, qj);
                continue;
            }
            // pivot must divide every entry of the trailing block
            bool fixed = false;
            for (int i = t + 1; i < d.rows() && !fixed; ++i)
                for (int j = t + 1; j < d.cols() && !fixed; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        for (int k = 0; k < d.cols(); ++k) d.at(t, k) += d.at(i, k);
                        for (int k = 0; k < u.cols(); ++k) u.at(t, k) += u.at(i, k);
                        fixed = true;
                    }
            if (!fixed) break;
        }
    }
    return {u, d, v};
}

Int det_exact(const IntMat& a) {
    if (!a.is_square()) throw std::invalid_argument("det_exact: non-square input");
    int n = a.rows();
    if (n == 0) return 1;
    IntMat m = a;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int p = -1;
            Int best_abs;
            for (int i = k + 1; i < n; ++i) {
                if (m.at(i, k) == 0) continue;
                Int ab = abs(m.at(i, k));
                if (p < 0 || ab < best_abs) {
                    p = i;
                    best_abs = ab;
                }
            }
            if (p < 0) return 0;
            swap_rows(m, k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign == 1 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

std::vector<Ivec> kernel_basis(const IntMat& a) {
    SmithDecomposition s = snf(a);
    int n = a.cols();
    std::vector<Ivec> gens;
    for (int j = 0; j < n; ++j) {
        bool diag_zero = j >= std::min(a.rows(), a.cols()) ? true : s.D.at(j, j) == 0;
        if (j < std::min(a.rows(), a.cols()) && s.D.at(j, j) != 0) continue;
        if (!diag_zero) continue;
        gens.push_back(s.V.col(j));
    }
    if (gens.empty()) return {};
    auto [h, u] = hnf(IntMat::from_rows(gens));
    std::vector<Ivec> out;
    for (int i = 0; i < h.rows(); ++i) {
        Ivec r = h.row(i);
        if (!is_zero_vec(r)) out.push_back(std::move(r));
    }
    return out;
}

Poly char_poly(const IntMat& a) {
    if (!a.is_square()) throw std::invalid_argument("char_poly: non-square input");
    int n = a.rows();
    // Faddeev-LeVerrier; every division is exact over Z
    Poly c(static_cast<size_t>(n) + 1);
    c[n] = 1;
    IntMat m = IntMat::zero(n, n);
    for (int k = 1; k <= n; ++k) {
        IntMat shifted = m;
        if (k > 1)
            for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
        m = k == 1 ? a : a * shifted;
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += m.at(i, i);
        Int ck;
        Int negtr = -tr;
        mpz_divexact_ui(ck.get_mpz_t(), negtr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = ck;
    }
    return c;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

bool poly_divexact(const Poly& num, const Poly& den, Poly& quot) {
    Poly r = num;
    while (!r.empty() && r.back() == 0) r.pop_back();
    Poly d = den;
    while (!d.empty() && d.back() == 0) d.pop_back();
    if (d.empty()) throw std::invalid_argument("poly_divexact: zero divisor");
    if (r.size() < d.size()) return false;
    quot.assign(r.size() - d.size() + 1, Int(0));
    for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
        Int lead = r[i + d.size() - 1];
        if (lead % d.back() != 0) return false;
        Int q = lead / d.back();
        quot[i] = q;
        if (q == 0) continue;
        for (size_t j = 0; j < d.size(); ++j) r[i + j] -= q * d[j];
    }
    for (const Int& v : r)
        if (v != 0) return false;
    return true;
}

Poly cyclotomic(int e) {
    if (e < 1) throw std::invalid_argument("cyclotomic: e >= 1 required");
    // x^e - 1 divided by all proper cyclotomic factors
    Poly num(static_cast<size_t>(e) + 1);
    num[0] = -1;
    num[e] = 1;
    for (int d = 1; d < e; ++d) {
        if (e % d != 0) continue;
        Poly q;
        if (!poly_divexact(num, cyclotomic(d), q)) throw std::logic_error("cyclotomic: inexact division");
        num = q;
    }
    return num;
}

std::pair<int, int> inertia(const IntMat& g) {
    if (!g.is_square() || !g.is_symmetric()) throw std::invalid_argument("inertia: symmetric matrix required");
    int n = g.rows();
    RatMat a(g);
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        // prefer a nonzero diagonal pivot
        int p = -1;
        for (int i = k; i < n; ++i)
            if (a.at(i, i) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // need a symmetric off-diagonal repair; find first nonzero pair
            int bi = -1, bj = -1;
            for (int i = k; i < n && bi < 0; ++i)
                for (int j = i + 1; j < n && bi < 0; ++j)
                    if (a.at(i, j) != 0) {
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) throw std::invalid_argument("inertia: degenerate form");
            for (int t = 0; t < n; ++t) a.at(bi, t) += a.at(bj, t);
            for (int t = 0; t < n; ++t) a.at(t, bi) += a.at(t, bj);
            p = bi;
        }
        if (p != k) {
            for (int t = 0; t < n; ++t) std::swap(a.at(p, t), a.at(k, t));
            for (int t = 0; t < n; ++t) std::swap(a.at(t, p), a.at(t, k));
        }
        if (a.at(k, k) > 0)
            ++pos;
        else
            ++neg;
        for (int i = k + 1; i < n; ++i) {
            if (a.at(i, k) == 0) continue;
            Rat f = a.at(i, k) / a.at(k, k);
            for (int t = k; t < n; ++t) a.at(i, t) -= f * a.at(k, t);
        }
        for (int j = k + 1; j < n; ++j) {
            if (a.at(k, j) == 0) continue;
            Rat f = a.at(k, j) / a.at(k, k);
            for (int t = k; t < n; ++t) a.at(t, j) -= f * a.at(t, k);
        }
    }
    return {pos, neg};
}

int rank_rational(const IntMat& a) {
    RatMat m(a);
    int rank = 0;
    int rows = m.rows(), cols = m.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int t = 0; t < cols; ++t) std::swap(m.at(p, t), m.at(r, t));
        for (int i = r + 1; i < rows; ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) / m.at(r, c);
            for (int t = c; t < cols; ++t) m.at(i, t) -= f * m.at(r, t);
        }
        ++r;
        ++rank;
    }
    return rank;
}

RatMat inverse_rational(const RatMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: non-square");
    int n = a.rows();
    RatMat m = a;
    RatMat inv = RatMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) throw std::invalid_argument("inverse: singular matrix");
        if (p != c)
            for (int t = 0; t < n; ++t) {
                std::swap(m.at(p, t), m.at(c, t));
                std::swap(inv.at(p, t), inv.at(c, t));
            }
        Rat piv = m.at(c, c);
        for (int t = 0; t < n; ++t) {
            m.at(c, t) /= piv;
            inv.at(c, t) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (int t = 0; t < n; ++t) {
                m.at(i, t) -= f * m.at(c, t);
                inv.at(i, t) -= f * inv.at(c, t);
            }
        }
    }
    return inv;
}

RatMat inverse_rational(const IntMat& a) { return inverse_rational(RatMat(a)); }

IntMat mul(const IntMat& a, const IntMat& b) { return a * b; }

Int dot(const Ivec& a, const Ivec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Int r = 0;
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

Ivec add(const Ivec& a, const Ivec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
    Ivec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Ivec sub(const Ivec& a, const Ivec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
    Ivec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Ivec scale(const Int& c, const Ivec& v) {
    Ivec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero_vec(const Ivec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool lex_less(const Ivec& a, const Ivec& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

}  // namespace lat
