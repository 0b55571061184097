#include "lat/glue.hpp"

#include <algorithm>
#include <set>

namespace lat {

Embedding saturate(const Lattice& ambient, const IntMat& rows) {
    if (rows.cols() != ambient.rank()) throw std::invalid_argument("saturate: basis width != ambient rank");
    if (rank_rational(rows) != rows.rows()) throw std::invalid_argument("saturate: dependent rows");
    if (rows.rows() == ambient.rank()) {
        return Embedding::make(ambient, hnf(IntMat::identity(ambient.rank())).first);
    }
    auto null_cols = kernel_basis(rows);  // {y : rows * y = 0}
    IntMat y = IntMat::from_rows(null_cols, ambient.rank());
    auto sat_rows = kernel_basis(y);  // {x : y * x = 0} = rational row span of `rows` over Z
    return Embedding::make(ambient, IntMat::from_rows(sat_rows, ambient.rank()));
}

Int saturation_index(const Lattice& ambient, const IntMat& rows) {
    Embedding sat = saturate(ambient, rows);
    // express the original rows in the saturated basis and take |det|
    RatMat coeff = RatMat(rows) * RatMat(sat.basis.transpose()) *
                   inverse_rational(sat.basis * sat.basis.transpose());
    if (!coeff.is_integral()) throw std::logic_error("saturation_index: rows not inside saturation");
    return abs(det_exact(coeff.to_int()));
}

Embedding orth_complement(const Embedding& e) {
    if (det_exact(e.induced_gram) == 0) throw std::invalid_argument("orth_complement: degenerate induced form");
    IntMat pairing = e.basis * e.ambient.gram();  // k x n
    auto comp = kernel_basis(pairing);
    return Embedding::make(e.ambient, IntMat::from_rows(comp, e.ambient.rank()));
}

namespace {

std::vector<GluePair> enumerate_graph(const FqForm& fa, const FqForm& fb, const GluingData& g) {
    std::set<std::pair<Ivec, Ivec>> seen;
    std::pair<Ivec, Ivec> zero{Ivec(fa.ngens(), Int(0)), Ivec(fb.ngens(), Int(0))};
    seen.insert(zero);
    std::vector<std::pair<Ivec, Ivec>> frontier{zero};
    while (!frontier.empty()) {
        std::vector<std::pair<Ivec, Ivec>> next;
        for (const auto& cur : frontier)
            for (const auto& gen : g.generators) {
                Ivec na(cur.first.size()), nb(cur.second.size());
                for (size_t i = 0; i < na.size(); ++i) na[i] = cur.first[i] + gen.a[i];
                for (size_t i = 0; i < nb.size(); ++i) nb[i] = cur.second[i] + gen.b[i];
                std::pair<Ivec, Ivec> p{fa.reduce(na), fb.reduce(nb)};
                if (seen.insert(p).second) next.push_back(std::move(p));
            }
        frontier = std::move(next);
        if (seen.size() > 100000) throw cap_exceeded("overlattice_from_glue: graph too large");
    }
    std::vector<GluePair> out;
    for (const auto& p : seen) out.push_back(GluePair{p.first, p.second});
    return out;
}

RatMat block_diag_rat(const IntMat& a, const IntMat& b) {
    RatMat r(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.at(i, j) = Rat(a.at(i, j));
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = Rat(b.at(i, j));
    return r;
}

}  // namespace

Overlattice overlattice_from_glue(const Lattice& a, const Lattice& b, const GluingData& g) {
    FqForm fa = discriminant_form(a);
    FqForm fb = discriminant_form(b);
    for (const auto& gen : g.generators) {
        if (static_cast<int>(gen.a.size()) != fa.ngens() || static_cast<int>(gen.b.size()) != fb.ngens())
            throw std::invalid_argument("overlattice_from_glue: generator coordinate length mismatch");
    }
    auto graph = enumerate_graph(fa, fb, g);

    for (const auto& el : graph) {
        bool a_zero = is_zero_vec(el.a), b_zero = is_zero_vec(el.b);
        if (a_zero != b_zero)
            throw std::invalid_argument("overlattice_from_glue: graph is not the graph of an injective map");
        Rat qsum = mod_2(fa.q(el.a) + fb.q(el.b));
        if (qsum != 0) throw std::invalid_argument("overlattice_from_glue: non-isotropic glue (odd overlattice)");
    }

    int s = a.rank(), t = b.rank();
    int n = s + t;

    // stack the standard basis with rational lifts of the graph generators
    std::vector<Rvec> raw;
    for (int i = 0; i < n; ++i) {
        Rvec r(n);
        r[i] = 1;
        raw.push_back(std::move(r));
    }
    for (const auto& gen : g.generators) {
        Rvec la = fa.lift(gen.a);
        Rvec lb = fb.lift(gen.b);
        Rvec r(n);
        for (int i = 0; i < s; ++i) r[i] = la[i];
        for (int i = 0; i < t; ++i) r[s + i] = lb[i];
        raw.push_back(std::move(r));
    }
    Int denom = 1;
    for (const auto& r : raw)
        for (const auto& v : r) denom = lcm(denom, Int(v.get_den()));
    IntMat scaled(static_cast<int>(raw.size()), n);
    for (size_t i = 0; i < raw.size(); ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = raw[i][j] * Rat(denom);
            scaled.at(static_cast<int>(i), j) = v.get_num();
        }
    auto [h, u] = hnf(scaled);
    RatMat basis(n, n);
    int nz = 0;
    for (int i = 0; i < h.rows(); ++i) {
        if (is_zero_vec(h.row(i))) continue;
        if (nz >= n) throw std::logic_error("overlattice_from_glue: basis rank exceeded ambient rank");
        for (int j = 0; j < n; ++j) basis.at(nz, j) = make_rat(h.at(i, j), denom);
        ++nz;
    }
    if (nz != n) throw std::logic_error("overlattice_from_glue: overlattice does not have full rank");

    RatMat gsum = block_diag_rat(a.gram(), b.gram());
    RatMat over_gram_q = basis * gsum * basis.transpose();
    if (!over_gram_q.is_integral())
        throw std::invalid_argument("overlattice_from_glue: non-integral overlattice (glue not b-isotropic)");
    IntMat over_gram = over_gram_q.to_int();
    for (int i = 0; i < n; ++i)
        if (over_gram.at(i, i) % 2 != 0)
            throw std::invalid_argument("overlattice_from_glue: odd overlattice (glue not q-isotropic)");

    Overlattice out;
    out.lattice = Lattice(over_gram, "glue(" + a.label() + "," + b.label() + ")");
    out.basis = basis;
    out.glue_order = static_cast<long>(graph.size());
    out.disc_a = std::move(fa);
    out.disc_b = std::move(fb);
    out.graph = std::move(graph);

    // determinant law |det over| * index^2 = |det(A+B)|
    Int det_sum = a.det() * b.det();
    if (abs(out.lattice.det()) * out.glue_order * out.glue_order != abs(det_sum))
        throw std::logic_error("overlattice_from_glue: determinant law violated");

    RatMat binv = inverse_rational(basis);
    IntMat emb_a_rows(s, n), emb_b_rows(t, n);
    // row i of binv expresses e_i (A+B coords) in overlattice coordinates
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < n; ++j) {
            if (binv.at(i, j).get_den() != 1) throw std::logic_error("overlattice_from_glue: summand left the overlattice");
            emb_a_rows.at(i, j) = binv.at(i, j).get_num();
        }
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < n; ++j) {
            if (binv.at(s + i, j).get_den() != 1)
                throw std::logic_error("overlattice_from_glue: summand left the overlattice");
            emb_b_rows.at(i, j) = binv.at(s + i, j).get_num();
        }
    out.emb_a = Embedding::make(out.lattice, emb_a_rows);
    out.emb_b = Embedding::make(out.lattice, emb_b_rows);
    if (out.emb_a.induced_gram != a.gram() || out.emb_b.induced_gram != b.gram())
        throw std::logic_error("overlattice_from_glue: embeddings distort the Gram forms");
    return out;
}

LiftOutcome lift_isometry(const Isometry& fa, const Isometry& fb, const Overlattice& over) {
    if (fa.lattice.gram() != over.emb_a.induced_gram || fb.lattice.gram() != over.emb_b.induced_gram)
        throw std::invalid_argument("lift_isometry: isometries do not match the glued summands");

    DiscMap da = induced_action(over.disc_a, fa);
    DiscMap db = induced_action(over.disc_b, fb);

    // H = proj_A(graph) must be preserved by the induced action of fa
    std::set<Ivec> h_set;
    std::set<std::pair<Ivec, Ivec>> graph_set;
    for (const auto& el : over.graph) {
        h_set.insert(el.a);
        graph_set.insert({el.a, el.b});
    }
    for (const auto& el : over.graph) {
        if (!h_set.count(disc_apply(da, over.disc_a, el.a)))
            return LiftOutcome{LiftStatus::graph_not_preserved, std::nullopt};
    }
    for (const auto& el : over.graph) {
        Ivec ia = disc_apply(da, over.disc_a, el.a);
        Ivec ib = disc_apply(db, over.disc_b, el.b);
        if (!graph_set.count({ia, ib})) return LiftOutcome{LiftStatus::condition_failed, std::nullopt};
    }

    int s = fa.lattice.rank(), t = fb.lattice.rank();
    int n = s + t;
    RatMat block(n, n);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) block.at(i, j) = Rat(fa.mat.at(i, j));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) block.at(s + i, s + j) = Rat(fb.mat.at(i, j));

    RatMat bt = over.basis.transpose();
    RatMat m_over = inverse_rational(bt) * block * bt;
    if (!m_over.is_integral()) throw std::logic_error("lift_isometry: lifted matrix is not integral");
    IntMat m = m_over.to_int();
    if (!verify_isometry(over.lattice, m)) throw std::logic_error("lift_isometry: lifted matrix is not an isometry");
    return LiftOutcome{LiftStatus::lifted, Isometry{over.lattice, m}};
}

std::optional<UnimodularGlue> unimodular_embedding_search(const Lattice& a, const Lattice& b,
                                                          std::pair<int, int> target_sig) {
    auto sa = signature(a);
    auto sb = signature(b);
    if (sa.first + sb.first != target_sig.first || sa.second + sb.second != target_sig.second)
        throw std::invalid_argument("unimodular_embedding_search: signatures do not sum to the target");
    FqForm fa = discriminant_form(a);
    FqForm fb = discriminant_form(b);
    if (fa.order() != fb.order())
        throw std::invalid_argument("unimodular_embedding_search: discriminant orders differ");
    auto gamma = anti_isometry_search(fa, fb);
    if (!gamma) return std::nullopt;

    GluingData g;
    for (int i = 0; i < fa.ngens(); ++i) {
        Ivec e(fa.ngens(), Int(0));
        e[i] = 1;
        g.generators.push_back(GluePair{e, gamma->images[i]});
    }
    Overlattice over = overlattice_from_glue(a, b, g);
    if (abs(over.lattice.det()) != 1) throw std::logic_error("unimodular_embedding_search: overlattice not unimodular");
    if (!over.lattice.is_even()) throw std::logic_error("unimodular_embedding_search: overlattice not even");
    if (signature(over.lattice) != target_sig)
        throw std::logic_error("unimodular_embedding_search: wrong overlattice signature");
    return UnimodularGlue{std::move(over), std::move(*gamma)};
}

}  // namespace lat
