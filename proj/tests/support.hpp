#pragma once

// Test-only oracles and randomized property suites. Everything here stays
// independent of the library code paths it checks: the box enumerator
// bounds coordinates with a Cauchy-Schwarz estimate instead of the
// Fincke-Pohst recursion, and the determinant oracle is plain cofactor
// expansion.

#include <random>
#include <vector>

#include "lat/discform.hpp"
#include "lat/glue.hpp"
#include "lat/isometry.hpp"
#include "lat/lattice.hpp"

namespace testsupport {

using lat::Int;
using lat::IntMat;
using lat::Ivec;
using lat::Lattice;
using lat::Rat;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    long uniform(long lo, long hi) { return lo + static_cast<long>(eng() % static_cast<uint64_t>(hi - lo + 1)); }
};

inline Int naive_det(const IntMat& a) {
    int n = a.rows();
    if (n == 0) return 1;
    if (n == 1) return a.at(0, 0);
    Int sum = 0;
    for (int j = 0; j < n; ++j) {
        if (a.at(0, j) == 0) continue;
        IntMat minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = a.at(r, c);
            }
        }
        Int term = a.at(0, j) * naive_det(minor);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

// Complete enumeration over the box |x_i| <= floor(sqrt(|n| * (G^-1)_ii)),
// which contains every solution of x^T G x = n by Cauchy-Schwarz in the
// G-inner product.
inline std::vector<Ivec> box_vectors_of_norm(const Lattice& l, const Int& n, unsigned long volume_cap = 0,
                                             bool* feasible = nullptr) {
    auto [np, nm] = lat::signature(l);
    if (np != 0 && nm != 0) throw std::invalid_argument("box oracle: definite only");
    bool positive = nm == 0;
    IntMat g = positive ? l.gram() : -l.gram();
    Int target = positive ? n : Int(-n);
    if (target <= 0) throw std::invalid_argument("box oracle: wrong-sign norm");
    lat::RatMat ginv = lat::inverse_rational(g);
    int r = l.rank();
    std::vector<long> bound(r);
    unsigned long volume = 1;
    for (int i = 0; i < r; ++i) {
        Rat bi = Rat(target) * ginv.at(i, i);
        Int num = bi.get_num(), den = bi.get_den();
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Int k = sqrt(fl);
        while (Rat(k + 1) * Rat(k + 1) <= bi) ++k;
        bound[i] = k.get_si();
        volume *= static_cast<unsigned long>(2 * bound[i] + 1);
        if (volume_cap && volume > volume_cap) {
            if (feasible) *feasible = false;
            return {};
        }
    }
    if (feasible) *feasible = true;
    std::vector<Ivec> out;
    Ivec x(r);
    for (int i = 0; i < r; ++i) x[i] = -bound[i];
    while (true) {
        if (!lat::is_zero_vec(x) && lat::inner(l, x, x) == n) out.push_back(x);
        int i = r - 1;
        for (; i >= 0; --i) {
            if (x[i] < bound[i]) {
                x[i] += 1;
                break;
            }
            x[i] = -bound[i];
        }
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end(), lat::lex_less);
    return out;
}

inline IntMat random_matrix(Rng& rng, int r, int c, long lo, long hi) {
    IntMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rng.uniform(lo, hi);
    return m;
}

inline IntMat random_unimodular(Rng& rng, int n, int steps = 14) {
    IntMat m = IntMat::identity(n);
    for (int s = 0; s < steps; ++s) {
        int op = static_cast<int>(rng.uniform(0, 2));
        int i = static_cast<int>(rng.uniform(0, n - 1));
        int j = static_cast<int>(rng.uniform(0, n - 1));
        if (op == 0 && i != j) {
            long c = rng.uniform(-2, 2);
            for (int k = 0; k < n; ++k) m.at(i, k) += c * m.at(j, k);
        } else if (op == 1 && i != j) {
            for (int k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
        } else {
            for (int k = 0; k < n; ++k) m.at(i, k) = -m.at(i, k);
        }
    }
    return m;
}

inline Lattice random_definite(Rng& rng, int max_rank, long max_entry, bool allow_negative = true) {
    while (true) {
        int r = static_cast<int>(rng.uniform(1, max_rank));
        IntMat b = random_matrix(rng, r, r, -2, 2);
        if (lat::det_exact(b) == 0) continue;
        IntMat g = b.transpose() * b;
        bool small = true;
        for (int i = 0; i < r && small; ++i)
            for (int j = 0; j < r && small; ++j)
                if (abs(g.at(i, j)) > max_entry) small = false;
        if (!small) continue;
        if (allow_negative && rng.uniform(0, 1)) g = -g;
        return Lattice(std::move(g));
    }
}

inline Lattice random_even_nondegenerate(Rng& rng, int max_rank, long half_entry) {
    while (true) {
        int r = static_cast<int>(rng.uniform(2, max_rank));
        IntMat g(r, r);
        for (int i = 0; i < r; ++i) {
            g.at(i, i) = 2 * rng.uniform(-half_entry, half_entry);
            for (int j = i + 1; j < r; ++j) {
                g.at(i, j) = rng.uniform(-half_entry, half_entry);
                g.at(j, i) = g.at(i, j);
            }
        }
        if (lat::det_exact(g) == 0) continue;
        return Lattice(std::move(g));
    }
}

// ---- property suites (return the number of failing cases) ----

inline int prop_hnf_contract(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        int r = static_cast<int>(rng.uniform(1, 8)), n = static_cast<int>(rng.uniform(1, 8));
        IntMat a = random_matrix(rng, r, n, -50, 50);
        auto [h, u] = lat::hnf(a);
        bool ok = u * a == h && (lat::det_exact(u) == 1 || lat::det_exact(u) == -1);
        ok = ok && lat::hnf(h).first == h;
        // echelon shape with reduced columns above positive pivots
        int last_pivot = -1;
        for (int i = 0; i < r && ok; ++i) {
            int p = -1;
            for (int j = 0; j < n; ++j)
                if (h.at(i, j) != 0) {
                    p = j;
                    break;
                }
            if (p < 0) {
                for (int k = i + 1; k < r && ok; ++k)
                    for (int j = 0; j < n; ++j)
                        if (h.at(k, j) != 0) ok = false;
                break;
            }
            if (p <= last_pivot || h.at(i, p) <= 0) ok = false;
            for (int k = 0; k < i && ok; ++k)
                if (h.at(k, p) < 0 || h.at(k, p) >= h.at(i, p)) ok = false;
            last_pivot = p;
        }
        if (!ok) ++bad;
    }
    return bad;
}

inline int prop_snf_contract(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        int r = static_cast<int>(rng.uniform(1, 8)), n = static_cast<int>(rng.uniform(1, 8));
        IntMat a = random_matrix(rng, r, n, -50, 50);
        auto s = lat::snf(a);
        bool ok = s.U * a * s.V == s.D;
        ok = ok && (lat::det_exact(s.U) == 1 || lat::det_exact(s.U) == -1);
        ok = ok && (lat::det_exact(s.V) == 1 || lat::det_exact(s.V) == -1);
        for (int i = 0; i < s.D.rows() && ok; ++i)
            for (int j = 0; j < s.D.cols() && ok; ++j)
                if (i != j && s.D.at(i, j) != 0) ok = false;
        for (int i = 0; i + 1 < std::min(s.D.rows(), s.D.cols()) && ok; ++i) {
            if (s.D.at(i, i) < 0 || s.D.at(i + 1, i + 1) < 0) ok = false;
            if (s.D.at(i + 1, i + 1) != 0 && s.D.at(i, i) == 0) ok = false;
            if (s.D.at(i, i) != 0 && s.D.at(i + 1, i + 1) != 0 && s.D.at(i + 1, i + 1) % s.D.at(i, i) != 0)
                ok = false;
        }
        if (!ok) ++bad;
    }
    return bad;
}

inline int prop_det_mult(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        int n = static_cast<int>(rng.uniform(1, 6));
        IntMat a = random_matrix(rng, n, n, -9, 9), b = random_matrix(rng, n, n, -9, 9);
        if (lat::det_exact(a * b) != lat::det_exact(a) * lat::det_exact(b)) ++bad;
        if (n <= 4 && lat::det_exact(a) != naive_det(a)) ++bad;
    }
    return bad;
}

inline int prop_cayley_hamilton(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        int n = static_cast<int>(rng.uniform(1, 6));
        IntMat a = random_matrix(rng, n, n, -9, 9);
        lat::Poly p = lat::char_poly(a);
        IntMat acc(n, n);
        IntMat pow = IntMat::identity(n);
        for (size_t k = 0; k < p.size(); ++k) {
            if (p[k] != 0)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) acc.at(i, j) += p[k] * pow.at(i, j);
            if (k + 1 < p.size()) pow = pow * a;
        }
        if (!acc.is_zero()) ++bad;
    }
    return bad;
}

inline int prop_inertia_congruence(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        int n = static_cast<int>(rng.uniform(1, 6));
        IntMat g(n, n);
        do {
            for (int i = 0; i < n; ++i) {
                g.at(i, i) = rng.uniform(-9, 9);
                for (int j = i + 1; j < n; ++j) {
                    g.at(i, j) = rng.uniform(-9, 9);
                    g.at(j, i) = g.at(i, j);
                }
            }
        } while (lat::det_exact(g) == 0);
        IntMat b = random_unimodular(rng, n);
        if (lat::inertia(g) != lat::inertia(b.transpose() * g * b)) ++bad;
    }
    return bad;
}

inline int prop_fincke_pohst_box(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        while (true) {
            Lattice l = random_definite(rng, 4, 6);
            bool positive = lat::signature(l).second == 0;
            long mag = rng.uniform(1, 20);
            Int n = positive ? Int(mag) : Int(-mag);
            bool feasible = true;
            auto expect = box_vectors_of_norm(l, n, 2000000, &feasible);
            if (!feasible) continue;  // resample: the oracle box would be too large
            auto got = lat::vectors_of_norm(l, n);
            if (got != expect) ++bad;
            break;
        }
    }
    return bad;
}

inline int prop_vectors_negation_closed(Rng& rng, int cases) {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        Lattice l = random_definite(rng, 4, 6);
        bool positive = lat::signature(l).second == 0;
        long mag = rng.uniform(1, 12);
        Int n = positive ? Int(mag) : Int(-mag);
        auto got = lat::vectors_of_norm(l, n);
        bool ok = true;
        for (size_t i = 0; i + 1 < got.size(); ++i)
            if (!lat::lex_less(got[i], got[i + 1])) ok = false;  // strictly sorted => no duplicates
        for (const auto& v : got) {
            Ivec neg(v.size());
            for (size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
            if (!std::binary_search(got.begin(), got.end(), neg, lat::lex_less)) ok = false;
        }
        if (!ok) ++bad;
    }
    return bad;
}

inline int prop_disc_welldef(Rng& rng, int cases) {
    std::vector<Lattice> pool = {lat::catalog("A2(-1)"),      lat::catalog("D4(-1)"), lat::catalog("<6>"),
                                 lat::catalog("U(3)+<-2>"),   lat::catalog("E6(-1)"), lat::catalog("A2(-2)"),
                                 lat::catalog("U+A2(-2)"),    lat::catalog("<6>+A2(-1)")};
    std::vector<lat::FqForm> forms;
    for (const auto& l : pool) forms.push_back(lat::discriminant_form(l));
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        size_t pick = static_cast<size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1));
        const auto& f = forms[pick];
        if (f.is_trivial()) continue;
        Ivec e(f.ngens());
        for (int i = 0; i < f.ngens(); ++i) e[i] = rng.uniform(0, 40);
        lat::Rvec w = f.lift(f.reduce(e));
        // shift the representative by a random lattice vector
        for (size_t i = 0; i < w.size(); ++i) w[i] += Rat(rng.uniform(-5, 5));
        Rat q2 = 0;
        for (int i = 0; i < f.gram.rows(); ++i)
            for (int j = 0; j < f.gram.cols(); ++j) q2 += w[i] * Rat(f.gram.at(i, j)) * w[j];
        if (lat::mod_2(q2) != f.q(e)) ++bad;
    }
    return bad;
}

inline int prop_induced_functorial(Rng& rng, int cases) {
    struct GroupCase {
        Lattice l;
        lat::FqForm f;
        std::vector<IntMat> elems;
    };
    std::vector<GroupCase> gs;
    for (const char* spec : {"A2(-1)", "D4(-1)"}) {
        GroupCase g{lat::catalog(spec), {}, {}};
        g.f = lat::discriminant_form(g.l);
        lat::OrthogonalGroup og = lat::orthogonal_group(g.l);
        for (size_t i = 0; i < og.elements.size(); ++i) g.elems.push_back(og.matrix(static_cast<int>(i)));
        gs.push_back(std::move(g));
    }
    {
        // E6(-1): random words in a few explicit isometries instead of the
        // full 103680-element enumeration
        GroupCase g{lat::catalog("E6(-1)"), {}, {}};
        g.f = lat::discriminant_form(g.l);
        std::vector<IntMat> gens;
        IntMat rot{{-1, 0, 0, 0, 0, 1}, {0, 0, -1, 0, 0, 1}, {-1, 1, -1, 0, 0, 1},
                   {-1, 1, -1, -1, 1, 1}, {-1, 1, 0, -1, 0, 1}, {-1, 0, 0, 0, 0, 0}};
        gens.push_back(rot);
        gens.push_back(-IntMat::identity(6));
        for (int r = 0; r < 6; ++r) {
            IntMat m = IntMat::identity(6);
            Ivec v(6, Int(0));
            v[r] = 1;
            Ivec gv = g.l.gram().mul_vec(v);
            for (int j = 0; j < 6; ++j)
                for (int i = 0; i < 6; ++i) m.at(i, j) += gv[j] * v[i];  // root norm -2
            gens.push_back(m);
        }
        for (int w = 0; w < 40; ++w) {
            IntMat m = IntMat::identity(6);
            int len = static_cast<int>(rng.uniform(1, 6));
            for (int s = 0; s < len; ++s) m = m * gens[static_cast<size_t>(rng.uniform(0, static_cast<long>(gens.size()) - 1))];
            g.elems.push_back(m);
        }
        gs.push_back(std::move(g));
    }
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        const auto& g = gs[static_cast<size_t>(rng.uniform(0, static_cast<long>(gs.size()) - 1))];
        const IntMat& ma = g.elems[static_cast<size_t>(rng.uniform(0, static_cast<long>(g.elems.size()) - 1))];
        const IntMat& mb = g.elems[static_cast<size_t>(rng.uniform(0, static_cast<long>(g.elems.size()) - 1))];
        lat::Isometry fa{g.l, ma}, fb{g.l, mb}, fab{g.l, ma * mb};
        lat::DiscMap da = lat::induced_action(g.f, fa);
        lat::DiscMap db = lat::induced_action(g.f, fb);
        lat::DiscMap dab = lat::induced_action(g.f, fab);
        lat::DiscMap comp = lat::disc_compose(da, db, g.f, g.f);
        if (!lat::disc_maps_equal(g.f, dab, comp)) ++bad;
    }
    return bad;
}

inline IntMat random_independent_rows(Rng& rng, const Lattice& ambient, int k) {
    while (true) {
        IntMat rows = random_matrix(rng, k, ambient.rank(), -3, 3);
        if (lat::rank_rational(rows) == k) return rows;
    }
}

inline int prop_saturate_idempotent(Rng& rng, int cases) {
    std::vector<Lattice> pool = {lat::catalog("U+A2(-1)"), lat::catalog("E6(-1)"), lat::catalog("U+U"),
                                 lat::catalog("D4(-1)+<6>"), lat::catalog("U(3)+<-2>")};
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        const Lattice& amb = pool[static_cast<size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
        int k = static_cast<int>(rng.uniform(1, amb.rank() - 1));
        IntMat rows = random_independent_rows(rng, amb, k);
        lat::Embedding e = lat::saturate(amb, rows);
        lat::Embedding e2 = lat::saturate(amb, e.basis);
        bool ok = e2.basis == e.basis;
        // rational span is preserved
        std::vector<Ivec> stacked;
        for (int i = 0; i < rows.rows(); ++i) stacked.push_back(rows.row(i));
        for (int i = 0; i < e.basis.rows(); ++i) stacked.push_back(e.basis.row(i));
        ok = ok && lat::rank_rational(IntMat::from_rows(stacked)) == k && e.basis.rows() == k;
        if (!ok) ++bad;
    }
    return bad;
}

inline int prop_double_complement(Rng& rng, int cases) {
    std::vector<Lattice> pool = {lat::catalog("U+A2(-1)"), lat::catalog("E6(-1)"), lat::catalog("U+U"),
                                 lat::catalog("D4(-1)+<6>"), lat::catalog("U(3)+<-2>+A2(-1)")};
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        while (true) {
            const Lattice& amb = pool[static_cast<size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
            int k = static_cast<int>(rng.uniform(1, amb.rank() - 1));
            IntMat rows = random_independent_rows(rng, amb, k);
            lat::Embedding e = lat::saturate(amb, rows);
            if (lat::det_exact(e.induced_gram) == 0) continue;
            lat::Embedding comp = lat::orth_complement(e);
            if (comp.basis.rows() != amb.rank() - k || lat::det_exact(comp.induced_gram) == 0) continue;
            lat::Embedding back = lat::orth_complement(comp);
            if (back.basis != e.basis) ++bad;
            break;
        }
    }
    return bad;
}

inline int prop_overlattice_det_law(Rng& rng, int cases) {
    std::vector<Lattice> pool = {lat::catalog("U(3)"),   lat::catalog("A2(-2)"), lat::catalog("A2(-1)"),
                                 lat::catalog("A2"),     lat::catalog("<6>"),    lat::catalog("D4(-1)"),
                                 lat::catalog("E6(-1)"), lat::catalog("<-6>"),   lat::catalog("U(2)"),
                                 lat::catalog("A2(-1)+<6>")};
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
        const Lattice& s = pool[static_cast<size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
        const Lattice& t = pool[static_cast<size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1))];
        lat::FqForm fs = lat::discriminant_form(s);
        lat::FqForm ft = lat::discriminant_form(t);
        // collect isotropic injective pairs for a cyclic glue
        std::vector<lat::GluePair> candidates;
        for (const auto& x : fs.all_elements())
            for (const auto& y : ft.all_elements()) {
                if (lat::is_zero_vec(x) || lat::is_zero_vec(y)) continue;
                if (fs.element_order(x) != ft.element_order(y)) continue;
                if (lat::mod_2(fs.q(x) + ft.q(y)) != 0) continue;
                candidates.push_back(lat::GluePair{x, y});
            }
        lat::GluingData g;
        if (!candidates.empty())
            g.generators.push_back(candidates[static_cast<size_t>(
                rng.uniform(0, static_cast<long>(candidates.size()) - 1))]);
        lat::Overlattice over;
        try {
            over = lat::overlattice_from_glue(s, t, g);
        } catch (const std::invalid_argument&) {
            continue;  // cyclic subgroup generated was not fully isotropic
        }
        Int lhs = abs(over.lattice.det()) * over.glue_order * over.glue_order;
        Int rhs = abs(Int(s.det() * t.det()));
        bool ok = lhs == rhs && over.lattice.is_even();
        if (!ok) ++bad;
    }
    return bad;
}

}  // namespace testsupport
