#include "lat/isometry.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace lat {

bool verify_isometry(const Lattice& l, const IntMat& m) {
    if (!m.is_square() || m.rows() != l.rank()) throw std::invalid_argument("verify_isometry: size mismatch");
    if (m.transpose() * l.gram() * m != l.gram()) return false;
    Int d = det_exact(m);
    return d == 1 || d == -1;
}

Isometry make_isometry(const Lattice& l, const IntMat& m) {
    if (!verify_isometry(l, m)) throw std::invalid_argument("make_isometry: matrix does not preserve the Gram form");
    return Isometry{l, m};
}

std::optional<long> order_of(const Isometry& f, long cap) {
    IntMat p = f.mat;
    for (long k = 1; k <= cap; ++k) {
        if (p.is_identity()) return k;
        p = p * f.mat;
    }
    return std::nullopt;
}

Embedding fixed_sublattice(const Isometry& f) {
    IntMat d = f.mat - IntMat::identity(f.lattice.rank());
    auto ker = kernel_basis(d);
    IntMat basis = IntMat::from_rows(ker, f.lattice.rank());
    // the induced Gram may be degenerate only for rank 0; Embedding::make
    // handles nonempty bases, rank-0 gets an explicit empty lattice
    if (basis.rows() == 0) return Embedding{f.lattice, IntMat(0, f.lattice.rank()), IntMat(0, 0)};
    return Embedding::make(f.lattice, basis);
}

int eigen_multiplicity(const Isometry& f, int e) {
    Poly cp = char_poly(f.mat);
    Poly phi = cyclotomic(e);
    int mult = 0;
    Poly q;
    while (poly_divexact(cp, phi, q)) {
        ++mult;
        cp = q;
    }
    return mult;
}

IntMat OrthogonalGroup::matrix(int idx) const { return flat_to_intmat(n, elements[idx]); }

Isometry OrthogonalGroup::isometry(int idx) const { return Isometry{lattice, matrix(idx)}; }

int OrthogonalGroup::index_of(const FlatMat& m) const {
    auto it = index.find(m);
    return it == index.end() ? -1 : it->second;
}

FlatMat flat_identity(int n) {
    FlatMat m(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
    return m;
}

FlatMat flat_mul(int n, const FlatMat& a, const FlatMat& b) {
    FlatMat c(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int64_t aik = a[static_cast<size_t>(i) * n + k];
            if (!aik) continue;
            for (int j = 0; j < n; ++j)
                c[static_cast<size_t>(i) * n + j] += static_cast<int32_t>(aik * b[static_cast<size_t>(k) * n + j]);
        }
    return c;
}

FlatMat flat_from_intmat(const IntMat& m) {
    FlatMat f(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (!m.at(i, j).fits_slong_p()) throw std::invalid_argument("flat_from_intmat: entry too large");
            f[static_cast<size_t>(i) * m.cols() + j] = static_cast<int32_t>(m.at(i, j).get_si());
        }
    return f;
}

IntMat flat_to_intmat(int n, const FlatMat& m) {
    IntMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = m[static_cast<size_t>(i) * n + j];
    return r;
}

long flat_order(int n, const FlatMat& m, long cap) {
    FlatMat id = flat_identity(n);
    FlatMat p = m;
    for (long k = 1; k <= cap; ++k) {
        if (p == id) return k;
        p = flat_mul(n, p, m);
    }
    return -1;
}

bool flat_is_fpf(int n, const FlatMat& m) {
    IntMat d = flat_to_intmat(n, m) - IntMat::identity(n);
    return rank_rational(d) == n;
}

namespace {

int64_t to_i64(const Int& v) {
    if (!v.fits_slong_p()) throw std::invalid_argument("orthogonal_group: Gram entry too large for the fast path");
    return v.get_si();
}

struct BacktrackContext {
    int n;
    std::vector<Ivec> pool;                      // candidate vectors
    std::vector<std::vector<int64_t>> pairings;  // pool x pool inner products
    std::vector<std::vector<int>> col_candidates;
    std::vector<int> col_order;
    std::vector<int64_t> gram;  // n x n as int64
};

BacktrackContext prepare_backtracking(const Lattice& l) {
    BacktrackContext ctx;
    int n = l.rank();
    ctx.n = n;
    ctx.gram.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ctx.gram[static_cast<size_t>(i) * n + j] = to_i64(l.gram().at(i, j));

    // one candidate pool per distinct diagonal norm
    std::vector<std::pair<Int, std::vector<int>>> by_norm;
    for (int j = 0; j < n; ++j) {
        Int nj = l.gram().at(j, j);
        bool found = false;
        for (auto& [nv, cols] : by_norm)
            if (nv == nj) {
                cols.push_back(j);
                found = true;
            }
        if (!found) by_norm.push_back({nj, {j}});
    }
    ctx.col_candidates.assign(n, {});
    for (auto& [nv, cols] : by_norm) {
        auto vecs = vectors_of_norm(l, nv);
        std::vector<int> idxs;
        for (auto& v : vecs) {
            idxs.push_back(static_cast<int>(ctx.pool.size()));
            ctx.pool.push_back(v);
        }
        for (int c : cols) ctx.col_candidates[c] = idxs;
    }

    size_t p = ctx.pool.size();
    ctx.pairings.assign(p, std::vector<int64_t>(p, 0));
    std::vector<std::vector<int64_t>> gv(p, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < p; ++i)
        for (int r = 0; r < n; ++r) {
            int64_t s = 0;
            for (int c = 0; c < n; ++c) s += ctx.gram[static_cast<size_t>(r) * n + c] * ctx.pool[i][c].get_si();
            gv[i][r] = s;
        }
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < p; ++j) {
            int64_t s = 0;
            for (int r = 0; r < n; ++r) s += ctx.pool[i][r].get_si() * gv[j][r];
            ctx.pairings[i][j] = s;
        }

    // seed columns in increasing candidate-set size, ties by index
    ctx.col_order.resize(n);
    for (int i = 0; i < n; ++i) ctx.col_order[i] = i;
    std::stable_sort(ctx.col_order.begin(), ctx.col_order.end(), [&](int a, int b) {
        return ctx.col_candidates[a].size() < ctx.col_candidates[b].size();
    });
    return ctx;
}

void backtrack(const BacktrackContext& ctx, int depth, std::vector<int>& chosen, std::vector<FlatMat>& out,
               long cap) {
    int n = ctx.n;
    if (depth == n) {
        FlatMat m(static_cast<size_t>(n) * n);
        for (int d = 0; d < n; ++d) {
            int col = ctx.col_order[d];
            const Ivec& v = ctx.pool[chosen[d]];
            for (int r = 0; r < n; ++r) m[static_cast<size_t>(r) * n + col] = static_cast<int32_t>(v[r].get_si());
        }
        out.push_back(std::move(m));
        if (static_cast<long>(out.size()) > cap) throw cap_exceeded("orthogonal_group: element cap exceeded");
        return;
    }
    int col = ctx.col_order[depth];
    for (int cand : ctx.col_candidates[col]) {
        bool ok = true;
        for (int k = 0; k < depth && ok; ++k) {
            int prev_col = ctx.col_order[k];
            if (ctx.pairings[cand][chosen[k]] != ctx.gram[static_cast<size_t>(col) * n + prev_col]) ok = false;
        }
        if (!ok) continue;
        chosen[depth] = cand;
        backtrack(ctx, depth + 1, chosen, out, cap);
    }
}

}  // namespace

OrthogonalGroup orthogonal_group(const Lattice& l, long element_cap) {
    if (!is_definite(l)) throw std::invalid_argument("orthogonal_group: lattice must be definite");
    if (l.rank() > 8) throw std::invalid_argument("orthogonal_group: rank must be <= 8");

    BacktrackContext ctx = prepare_backtracking(l);
    std::vector<FlatMat> elems;
    std::vector<int> chosen(ctx.n, -1);
    backtrack(ctx, 0, chosen, elems, element_cap);
    std::sort(elems.begin(), elems.end());

    OrthogonalGroup g;
    g.lattice = l;
    g.n = ctx.n;
    g.elements = std::move(elems);
    g.index.reserve(g.elements.size() * 2);
    for (size_t i = 0; i < g.elements.size(); ++i) g.index.emplace(g.elements[i], static_cast<int>(i));

    // greedy generating set: close under products, then add the first
    // element still missing
    std::vector<char> in_closure(g.elements.size(), 0);
    FlatMat id = flat_identity(g.n);
    int id_idx = g.index_of(id);
    in_closure[id_idx] = 1;
    size_t closed_count = 1;
    while (closed_count < g.elements.size()) {
        int next = -1;
        for (size_t i = 0; i < g.elements.size(); ++i)
            if (!in_closure[i]) {
                next = static_cast<int>(i);
                break;
            }
        g.generators.push_back(next);
        std::deque<int> queue;
        for (size_t i = 0; i < g.elements.size(); ++i)
            if (in_closure[i]) queue.push_back(static_cast<int>(i));
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            for (int gen : g.generators) {
                int p = g.index_of(flat_mul(g.n, g.elements[t], g.elements[gen]));
                if (p < 0) throw std::logic_error("orthogonal_group: closure left the element set");
                if (!in_closure[p]) {
                    in_closure[p] = 1;
                    ++closed_count;
                    queue.push_back(p);
                }
            }
        }
    }
    return g;
}

namespace {

FlatMat flat_inverse(const OrthogonalGroup& g, const FlatMat& m) {
    RatMat inv = inverse_rational(flat_to_intmat(g.n, m));
    return flat_from_intmat(inv.to_int());
}

}  // namespace

std::vector<std::vector<int>> conjugacy_partition(const OrthogonalGroup& g, const std::vector<int>& subset) {
    for (int s : subset)
        if (s < 0 || s >= static_cast<int>(g.elements.size()))
            throw std::invalid_argument("conjugacy_partition: element not in group");
    std::vector<std::pair<FlatMat, FlatMat>> gens;  // (g, g^-1)
    for (int gi : g.generators) gens.push_back({g.elements[gi], flat_inverse(g, g.elements[gi])});

    std::unordered_set<int> wanted(subset.begin(), subset.end());
    std::vector<char> assigned(g.elements.size(), 0);
    std::vector<std::vector<int>> classes;
    for (int s : subset) {
        if (assigned[s]) continue;
        std::vector<int> members;
        std::unordered_set<int> orbit{s};
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            if (wanted.count(t)) {
                members.push_back(t);
                assigned[t] = 1;
            }
            for (auto& [gm, gmi] : gens) {
                int c = g.index_of(flat_mul(g.n, gmi, flat_mul(g.n, g.elements[t], gm)));
                if (c < 0) throw std::logic_error("conjugacy_partition: conjugate left the group");
                if (orbit.insert(c).second) queue.push_back(c);
            }
        }
        std::sort(members.begin(), members.end());
        classes.push_back(std::move(members));
    }
    return classes;
}

std::vector<int> reflection_subgroup(const OrthogonalGroup& g) {
    const Lattice& l = g.lattice;
    auto [np, nm] = signature(l);
    Int root_norm = nm == 0 ? Int(2) : Int(-2);
    auto roots = vectors_of_norm(l, root_norm);

    std::vector<int> gens;
    for (const auto& v : roots) {
        // sigma_v(x) = x - (x,v) v for a (+-2)-root of an even lattice
        IntMat m = IntMat::identity(g.n);
        Ivec gv = l.gram().mul_vec(v);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) m.at(i, j) -= (nm == 0 ? gv[j] : -gv[j]) * v[i];
        int idx = g.index_of(flat_from_intmat(m));
        if (idx < 0) throw std::logic_error("reflection_subgroup: reflection not in group");
        gens.push_back(idx);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    std::unordered_set<int> closed;
    std::deque<int> queue;
    int id_idx = g.index_of(flat_identity(g.n));
    closed.insert(id_idx);
    queue.push_back(id_idx);
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int gen : gens) {
            int p = g.index_of(flat_mul(g.n, g.elements[t], g.elements[gen]));
            if (closed.insert(p).second) queue.push_back(p);
        }
    }
    std::vector<int> out(closed.begin(), closed.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> conjugacy_partition_in(const OrthogonalGroup& g, const std::vector<int>& subgroup,
                                                     const std::vector<int>& subset) {
    std::unordered_set<int> sub_set(subgroup.begin(), subgroup.end());
    // generators: root reflections are enough, but the greedy generators of
    // the subgroup are simplest: reuse the subgroup's own elements as
    // conjugators via BFS over a small generating set found greedily.
    std::vector<int> gens;
    {
        std::unordered_set<int> closed;
        int id_idx = g.index_of(flat_identity(g.n));
        closed.insert(id_idx);
        std::deque<int> frontier;
        for (int cand : subgroup) {
            if (closed.count(cand)) continue;
            gens.push_back(cand);
            std::deque<int> queue(closed.begin(), closed.end());
            while (!queue.empty()) {
                int t = queue.front();
                queue.pop_front();
                for (int gen : gens) {
                    int p = g.index_of(flat_mul(g.n, g.elements[t], g.elements[gen]));
                    if (closed.insert(p).second) queue.push_back(p);
                }
            }
            if (closed.size() == subgroup.size()) break;
        }
    }
    std::vector<std::pair<FlatMat, FlatMat>> conj;
    for (int gi : gens) conj.push_back({g.elements[gi], flat_inverse(g, g.elements[gi])});

    std::vector<int> inside;
    for (int s : subset)
        if (sub_set.count(s)) inside.push_back(s);

    std::vector<char> assigned(g.elements.size(), 0);
    std::unordered_set<int> wanted(inside.begin(), inside.end());
    std::vector<std::vector<int>> classes;
    for (int s : inside) {
        if (assigned[s]) continue;
        std::vector<int> members;
        std::unordered_set<int> orbit{s};
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            if (wanted.count(t)) {
                members.push_back(t);
                assigned[t] = 1;
            }
            for (auto& [gm, gmi] : conj) {
                int c = g.index_of(flat_mul(g.n, gmi, flat_mul(g.n, g.elements[t], gm)));
                if (orbit.insert(c).second) queue.push_back(c);
            }
        }
        std::sort(members.begin(), members.end());
        classes.push_back(std::move(members));
    }
    return classes;
}

std::vector<int> find_order_e_fpf_indices(const OrthogonalGroup& g, int e) {
    std::vector<int> out;
    for (size_t i = 0; i < g.elements.size(); ++i) {
        if (flat_order(g.n, g.elements[i], e + 1) != e) continue;
        if (!flat_is_fpf(g.n, g.elements[i])) continue;
        out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<Isometry> find_order_e_fpf(const Lattice& l, int e, long element_cap) {
    OrthogonalGroup g = orthogonal_group(l, element_cap);
    std::vector<Isometry> out;
    for (int idx : find_order_e_fpf_indices(g, e)) out.push_back(g.isometry(idx));
    return out;
}

namespace {

bool between_backtrack(const BacktrackContext& ctx, const Lattice& b, int depth, std::vector<int>& chosen) {
    int n = ctx.n;
    if (depth == n) return true;
    for (size_t cand = 0; cand < ctx.pool.size(); ++cand) {
        if (ctx.pairings[cand][cand] != to_i64(b.gram().at(depth, depth))) continue;
        bool ok = true;
        for (int k = 0; k < depth && ok; ++k)
            if (ctx.pairings[cand][chosen[k]] != to_i64(b.gram().at(depth, k))) ok = false;
        if (!ok) continue;
        chosen[depth] = static_cast<int>(cand);
        if (between_backtrack(ctx, b, depth + 1, chosen)) return true;
    }
    return false;
}

}  // namespace

std::optional<IntMat> find_isometry_between(const Lattice& a, const Lattice& b) {
    if (a.rank() != b.rank()) return std::nullopt;
    if (!is_definite(a) || !is_definite(b)) throw std::invalid_argument("find_isometry_between: definite lattices only");
    int n = a.rank();

    // candidate pool in `a` for each norm showing up on b's diagonal
    BacktrackContext ctx;
    ctx.n = n;
    ctx.gram.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ctx.gram[static_cast<size_t>(i) * n + j] = to_i64(a.gram().at(i, j));
    {
        std::vector<Int> norms;
        for (int j = 0; j < n; ++j) {
            Int nj = b.gram().at(j, j);
            if (std::find(norms.begin(), norms.end(), nj) == norms.end()) norms.push_back(nj);
        }
        for (const Int& nv : norms) {
            for (auto& v : vectors_of_norm(a, nv)) ctx.pool.push_back(v);
        }
        size_t p = ctx.pool.size();
        ctx.pairings.assign(p, std::vector<int64_t>(p, 0));
        for (size_t i = 0; i < p; ++i) {
            Ivec gv = a.gram().mul_vec(ctx.pool[i]);
            for (size_t j = 0; j < p; ++j) {
                int64_t s = 0;
                for (int r = 0; r < n; ++r) s += ctx.pool[j][r].get_si() * gv[r].get_si();
                ctx.pairings[j][i] = s;
            }
        }
    }
    std::vector<int> chosen(n, -1);
    if (!between_backtrack(ctx, b, 0, chosen)) return std::nullopt;
    IntMat m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m.at(i, j) = ctx.pool[chosen[j]][i];
    return m;
}

}  // namespace lat
