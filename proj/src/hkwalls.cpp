#include "lat/hkwalls.hpp"

#include <algorithm>

namespace lat {

Lattice k3_lattice() { return catalog("U+U+U+E8(-1)+E8(-1)"); }

Lattice k3sq_lattice() { return catalog("U+U+U+E8(-1)+E8(-1)+<-2>"); }

PolarizedPicard hilbert_square_picard(const Lattice& pic_k3, const Ivec& x, const Lattice& tr) {
    if (inner(pic_k3, x, x) != 6) throw std::invalid_argument("hilbert_square_picard: x must have square 6");
    auto glue = unimodular_embedding_search(pic_k3, tr, {3, 19});
    if (!glue) throw std::invalid_argument("hilbert_square_picard: K3-part embedding search failed");

    PolarizedPicard p;
    p.k3_glue = std::move(glue->over);
    p.tr = tr;
    Lattice eps = catalog("<-2>");
    p.pic = direct_sum(pic_k3, eps);
    p.pic.set_label(pic_k3.label().empty() ? "pic" : pic_k3.label() + "+<-2>");
    Lattice ambient_l = direct_sum(p.k3_glue.lattice, eps);
    ambient_l.set_label("L");

    int k = pic_k3.rank();
    int n = ambient_l.rank();
    IntMat rows(k + 1, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n - 1; ++j) rows.at(i, j) = p.k3_glue.emb_a.basis.at(i, j);
    rows.at(k, n - 1) = 1;  // eps is the last ambient basis vector
    p.ambient = Embedding::make(ambient_l, rows);
    if (p.ambient.induced_gram != p.pic.gram()) throw std::logic_error("hilbert_square_picard: embedding distorts pic");

    p.eps_index = k;
    p.theta.assign(k + 1, Int(0));
    for (int i = 0; i < k; ++i) p.theta[i] = 2 * x[i];
    p.theta[k] = -3;
    p.x_k3.assign(k + 1, Int(0));
    for (int i = 0; i < k; ++i) p.x_k3[i] = x[i];

    if (inner(p.pic, p.theta, p.theta) != 6) throw std::logic_error("hilbert_square_picard: theta square != 6");
    Ivec eps_vec(k + 1, Int(0));
    eps_vec[k] = 1;
    if (divisibility(eps_vec, p.ambient) != 2) throw std::logic_error("hilbert_square_picard: eps divisibility != 2");
    return p;
}

Int divisibility(const Ivec& v_sub, const Embedding& e) {
    if (is_zero_vec(v_sub)) throw std::invalid_argument("divisibility: zero vector");
    Ivec amb = e.to_ambient(v_sub);
    Ivec pairings = e.ambient.gram().mul_vec(amb);
    Int g = 0;
    for (const auto& p : pairings) g = gcd(g, p);
    return abs(g);
}

bool is_wall_divisor(const Ivec& v_sub, const Embedding& e) {
    if (is_zero_vec(v_sub)) throw std::invalid_argument("is_wall_divisor: zero vector");
    Int sq = dot(v_sub, e.induced_gram.mul_vec(v_sub));
    if (sq == -2) return true;
    if (sq == -10) return divisibility(v_sub, e) == 2;
    return false;
}

namespace {

bool next_box_point(Ivec& v, long bound) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
        if (v[i] < bound) {
            v[i] += 1;
            return true;
        }
        v[i] = -bound;
    }
    return false;
}

}  // namespace

std::optional<KgenWitness> kgen_obstruction(const PolarizedPicard& p, const Isometry& f, long bound,
                                            const std::vector<long>& squares) {
    if (f.lattice.gram() != p.pic.gram())
        throw std::invalid_argument("kgen_obstruction: isometry does not act on pic");
    int n = p.pic.rank();
    Embedding fix = fixed_sublattice(f);
    int fr = fix.basis.rows();

    bool want_m2 = std::find(squares.begin(), squares.end(), -2L) != squares.end();
    bool want_m10 = std::find(squares.begin(), squares.end(), -10L) != squares.end();

    Ivec mu(n, Int(-bound));
    do {
        if (is_zero_vec(mu)) continue;
        Int sq = dot(mu, p.pic.gram().mul_vec(mu));
        bool sq_ok = (want_m2 && sq == -2) || (want_m10 && sq == -10);
        if (!sq_ok) continue;
        if (!is_wall_divisor(mu, p.ambient)) continue;
        if (f.mat.mul_vec(mu) == mu) continue;
        // invariant positive-square class orthogonal to mu
        if (fr == 0) continue;
        Ivec gmu = p.pic.gram().mul_vec(mu);
        Ivec coeff(fr, Int(-bound));
        do {
            if (is_zero_vec(coeff)) continue;
            Ivec w = fix.basis.mul_vec_left(coeff);
            if (dot(w, gmu) != 0) continue;
            if (dot(w, p.pic.gram().mul_vec(w)) <= 0) continue;
            return KgenWitness{mu, w};
        } while (next_box_point(coeff, bound));
    } while (next_box_point(mu, bound));
    return std::nullopt;
}

}  // namespace lat
