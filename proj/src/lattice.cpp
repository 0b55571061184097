#include "lat/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lat {

Lattice::Lattice(IntMat gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_square()) throw std::invalid_argument("Lattice: Gram matrix must be square");
    if (!gram_.is_symmetric()) throw std::invalid_argument("Lattice: Gram matrix must be symmetric");
    det_ = det_exact(gram_);
    if (det_ == 0) throw std::invalid_argument("Lattice: degenerate Gram matrix");
}

bool Lattice::is_even() const {
    for (int i = 0; i < rank(); ++i)
        if (gram_.at(i, i) % 2 != 0) return false;
    return true;
}

Embedding Embedding::make(const Lattice& ambient, const IntMat& basis_rows) {
    if (basis_rows.cols() != ambient.rank()) throw std::invalid_argument("Embedding: basis width != ambient rank");
    IntMat induced = basis_rows * ambient.gram() * basis_rows.transpose();
    return Embedding{ambient, basis_rows, std::move(induced)};
}

Lattice Embedding::sub_lattice(const std::string& label) const { return Lattice(induced_gram, label); }

Ivec Embedding::to_ambient(const Ivec& v_sub) const {
    if (static_cast<int>(v_sub.size()) != basis.rows()) throw std::invalid_argument("to_ambient: size mismatch");
    return basis.mul_vec_left(v_sub);
}

namespace {

// Bourbaki adjacency for the ADE diagrams.
std::vector<std::pair<int, int>> ade_edges(char family, int n) {
    std::vector<std::pair<int, int>> e;
    if (family == 'A') {
        for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    } else if (family == 'D') {
        if (n < 4) throw std::invalid_argument("catalog: Dn needs n >= 4");
        for (int i = 1; i + 1 <= n - 2; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(n - 2, n - 1);
        e.emplace_back(n - 2, n);
    } else if (family == 'E') {
        if (n < 6 || n > 8) throw std::invalid_argument("catalog: En needs n in {6,7,8}");
        e.emplace_back(1, 3);
        e.emplace_back(3, 4);
        e.emplace_back(2, 4);
        for (int i = 4; i < n; ++i) e.emplace_back(i, i + 1);
    } else {
        throw std::invalid_argument("catalog: unknown family");
    }
    return e;
}

IntMat ade_gram(char family, int n, const Int& scale) {
    IntMat g(n, n);
    for (int i = 0; i < n; ++i) g.at(i, i) = 2 * scale;
    for (auto [a, b] : ade_edges(family, n)) {
        g.at(a - 1, b - 1) = -scale;
        g.at(b - 1, a - 1) = -scale;
    }
    return g;
}

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char get() {
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("catalog: unexpected end of spec");
        return s[pos++];
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw std::invalid_argument("catalog: integer expected in '" + s + "'");
        return std::stol(s.substr(start, pos - start));
    }

    // optional "(s)" scale suffix
    Int scale_suffix() {
        if (peek() != '(') return Int(1);
        get();
        long v = integer();
        if (get() != ')') throw std::invalid_argument("catalog: missing ')'");
        if (v == 0) throw std::invalid_argument("catalog: scale 0 not allowed");
        return Int(v);
    }

    IntMat block() {
        char c = peek();
        if (c == '<') {
            get();
            long v = integer();
            if (get() != '>') throw std::invalid_argument("catalog: missing '>'");
            if (v == 0) throw std::invalid_argument("catalog: <0> is degenerate");
            IntMat g(1, 1);
            g.at(0, 0) = v;
            return g;
        }
        if (c == 'U' || c == 'u') {
            get();
            Int s = scale_suffix();
            IntMat g(2, 2);
            g.at(0, 1) = s;
            g.at(1, 0) = s;
            return g;
        }
        if (c == 'A' || c == 'D' || c == 'E' || c == 'a' || c == 'd' || c == 'e') {
            char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(get())));
            long n = integer();
            if (n < 1) throw std::invalid_argument("catalog: bad rank");
            Int s = scale_suffix();
            return ade_gram(fam, static_cast<int>(n), s);
        }
        throw std::invalid_argument("catalog: cannot parse '" + s + "' at position " + std::to_string(pos));
    }
};

IntMat block_diag(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return r;
}

}  // namespace

Lattice catalog(const std::string& spec) {
    Parser p(spec);
    IntMat g = p.block();
    while (!p.eof()) {
        if (p.get() != '+') throw std::invalid_argument("catalog: expected '+' in '" + spec + "'");
        g = block_diag(g, p.block());
    }
    return Lattice(std::move(g), spec);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    std::string label;
    if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
    return Lattice(block_diag(a.gram(), b.gram()), label);
}

Int inner(const Lattice& l, const Ivec& v, const Ivec& w) {
    if (static_cast<int>(v.size()) != l.rank() || static_cast<int>(w.size()) != l.rank())
        throw std::invalid_argument("inner: dimension mismatch");
    return dot(v, l.gram().mul_vec(w));
}

Int norm_of(const Lattice& l, const Ivec& v) { return inner(l, v, v); }

std::pair<int, int> signature(const Lattice& l) { return inertia(l.gram()); }

bool is_definite(const Lattice& l) {
    auto [p, n] = signature(l);
    return p == 0 || n == 0;
}

namespace {

// Largest integer m with m + s <= sqrt(z); z >= 0.
Int upper_bound_int(const Rat& z, const Rat& s) {
    Int zfloor;
    mpz_fdiv_q(zfloor.get_mpz_t(), z.get_num().get_mpz_t(), z.get_den().get_mpz_t());
    Int a = sqrt(zfloor);  // truncated integer sqrt
    Rat start = Rat(a + 2) - s;
    Int m;
    mpz_fdiv_q(m.get_mpz_t(), start.get_num().get_mpz_t(), start.get_den().get_mpz_t());
    auto ok = [&](const Int& mm) {
        Rat t = Rat(mm) + s;
        if (t <= 0) return true;
        return t * t <= z;
    };
    while (!ok(m)) --m;
    return m;
}

// Smallest integer m with -(m + s) <= sqrt(z).
Int lower_bound_int(const Rat& z, const Rat& s) {
    Int zfloor;
    mpz_fdiv_q(zfloor.get_mpz_t(), z.get_num().get_mpz_t(), z.get_den().get_mpz_t());
    Int a = sqrt(zfloor);
    Rat start = Rat(-a - 2) - s;
    Int m;
    mpz_cdiv_q(m.get_mpz_t(), start.get_num().get_mpz_t(), start.get_den().get_mpz_t());
    auto ok = [&](const Int& mm) {
        Rat t = Rat(mm) + s;
        if (t >= 0) return true;
        return t * t <= z;
    };
    while (!ok(m)) ++m;
    return m;
}

void enumerate_level(const RatMat& q, int i, Ivec& x, const Rat& t, std::vector<Ivec>& out) {
    int n = q.rows();
    Rat s = 0;
    for (int j = i + 1; j < n; ++j) s += q.at(i, j) * Rat(x[j]);
    Rat z = t / q.at(i, i);
    Int lo = lower_bound_int(z, s);
    Int hi = upper_bound_int(z, s);
    for (Int xi = lo; xi <= hi; ++xi) {
        Rat d = Rat(xi) + s;
        Rat rem = t - q.at(i, i) * d * d;
        if (rem < 0) continue;
        x[i] = xi;
        if (i == 0) {
            if (rem == 0 && !is_zero_vec(x)) out.push_back(x);
        } else {
            enumerate_level(q, i - 1, x, rem, out);
        }
    }
    x[i] = 0;
}

}  // namespace

std::vector<Ivec> vectors_of_norm(const Lattice& l, const Int& n) {
    auto [np, nm] = signature(l);
    if (np != 0 && nm != 0) throw std::invalid_argument("vectors_of_norm: lattice must be definite");
    bool positive = nm == 0;
    if (n == 0 || (positive && n < 0) || (!positive && n > 0))
        throw std::invalid_argument("vectors_of_norm: norm has the wrong sign for this lattice");

    int r = l.rank();
    RatMat q(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) q.at(i, j) = Rat(positive ? l.gram().at(i, j) : -l.gram().at(i, j));
    Int target = positive ? n : Int(-n);

    // rational Cholesky-style decomposition Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            q.at(j, i) = q.at(i, j);
            q.at(i, j) /= q.at(i, i);
        }
        for (int k = i + 1; k < r; ++k)
            for (int m = k; m < r; ++m) q.at(k, m) -= q.at(k, i) * q.at(i, m);
    }

    std::vector<Ivec> out;
    Ivec x(r, Int(0));
    enumerate_level(q, r - 1, x, Rat(target), out);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

}  // namespace lat
