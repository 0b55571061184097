#include "lat/discform.hpp"

#include <algorithm>
#include <set>

namespace lat {

Int FqForm::order() const {
    Int o = 1;
    for (const auto& d : orders) o *= d;
    return o;
}

Ivec FqForm::reduce(const Ivec& e) const {
    if (e.size() != orders.size()) throw std::invalid_argument("FqForm::reduce: wrong length");
    Ivec r(e.size());
    for (size_t i = 0; i < e.size(); ++i) {
        mpz_fdiv_r(r[i].get_mpz_t(), e[i].get_mpz_t(), orders[i].get_mpz_t());
    }
    return r;
}

Rvec FqForm::lift(const Ivec& e) const {
    if (e.size() != orders.size()) throw std::invalid_argument("FqForm::lift: wrong length");
    Rvec w(gram.rows());
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        for (int j = 0; j < gram.rows(); ++j) w[j] += Rat(e[i]) * gen_lifts.at(static_cast<int>(i), j);
    }
    return w;
}

std::optional<Ivec> FqForm::element_of_dual(const Rvec& w) const {
    if (static_cast<int>(w.size()) != gram.rows()) throw std::invalid_argument("element_of_dual: wrong length");
    // x = G w must be integral for w to lie in the dual lattice
    Rvec x(gram.rows());
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.cols(); ++j) x[i] += Rat(gram.at(i, j)) * w[j];
    Ivec xi(gram.rows());
    for (int i = 0; i < gram.rows(); ++i) {
        if (x[i].get_den() != 1) return std::nullopt;
        xi[i] = x[i].get_num();
    }
    Ivec y = snf_u.mul_vec(xi);
    Ivec e(orders.size());
    for (size_t i = 0; i < gen_pos.size(); ++i) e[i] = y[gen_pos[i]];
    return reduce(e);
}

Int FqForm::element_order(const Ivec& e) const {
    Ivec r = reduce(e);
    Int o = 1;
    for (size_t i = 0; i < r.size(); ++i) {
        Int g = gcd(r[i], orders[i]);
        Int k = orders[i] / g;
        o = lcm(o, k);
    }
    return o;
}

Rat FqForm::q(const Ivec& e) const {
    Rvec w = lift(reduce(e));
    Rat s = 0;
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.cols(); ++j) s += w[i] * Rat(gram.at(i, j)) * w[j];
    return mod_2(s);
}

Rat FqForm::b(const Ivec& e1, const Ivec& e2) const {
    Rvec w1 = lift(reduce(e1));
    Rvec w2 = lift(reduce(e2));
    Rat s = 0;
    for (int i = 0; i < gram.rows(); ++i)
        for (int j = 0; j < gram.cols(); ++j) s += w1[i] * Rat(gram.at(i, j)) * w2[j];
    return mod_1(s);
}

std::vector<Ivec> FqForm::all_elements(unsigned long cap) const {
    Int total = order();
    if (total > static_cast<long>(cap)) throw cap_exceeded("FqForm::all_elements: group too large");
    std::vector<Ivec> out;
    Ivec cur(orders.size(), Int(0));
    long n = total.get_si();
    for (long c = 0; c < n; ++c) {
        out.push_back(cur);
        for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
            cur[i] += 1;
            if (cur[i] < orders[i]) break;
            cur[i] = 0;
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

FqForm discriminant_form(const Lattice& l) {
    if (!l.is_even()) throw std::invalid_argument("discriminant_form: only even lattices are supported");
    SmithDecomposition s = snf(l.gram());
    int n = l.rank();
    FqForm f;
    f.gram = l.gram();
    f.snf_u = s.U;
    f.all_diag.resize(n);
    for (int i = 0; i < n; ++i) f.all_diag[i] = s.D.at(i, i);
    std::vector<Rvec> lifts;
    for (int i = 0; i < n; ++i) {
        if (s.D.at(i, i) <= 1) continue;
        f.orders.push_back(s.D.at(i, i));
        f.gen_pos.push_back(i);
        Rvec lift(n);
        for (int r = 0; r < n; ++r) lift[r] = make_rat(s.V.at(r, i), s.D.at(i, i));
        lifts.push_back(std::move(lift));
    }
    f.gen_lifts = RatMat(static_cast<int>(lifts.size()), n);
    for (size_t i = 0; i < lifts.size(); ++i)
        for (int j = 0; j < n; ++j) f.gen_lifts.at(static_cast<int>(i), j) = lifts[i][j];
    return f;
}

DiscMap disc_identity(const FqForm& f) {
    DiscMap m;
    for (int i = 0; i < f.ngens(); ++i) {
        Ivec e(f.ngens(), Int(0));
        e[i] = 1;
        m.images.push_back(std::move(e));
    }
    return m;
}

DiscMap make_disc_map(const FqForm& source, const FqForm& target, std::vector<Ivec> images) {
    if (static_cast<int>(images.size()) != source.ngens())
        throw std::invalid_argument("make_disc_map: one image per generator required");
    for (int i = 0; i < source.ngens(); ++i) {
        images[i] = target.reduce(images[i]);
        // d_i * image must vanish for the assignment to define a homomorphism
        Ivec scaled(images[i].size());
        for (size_t j = 0; j < images[i].size(); ++j) scaled[j] = source.orders[i] * images[i][j];
        if (!is_zero_vec(target.reduce(scaled)))
            throw std::invalid_argument("make_disc_map: generator image order mismatch");
    }
    return DiscMap{std::move(images)};
}

Ivec disc_apply(const DiscMap& m, const FqForm& target, const Ivec& e) {
    Ivec out(target.ngens(), Int(0));
    for (size_t i = 0; i < m.images.size(); ++i) {
        if (e[i] == 0) continue;
        for (int j = 0; j < target.ngens(); ++j) out[j] += e[i] * m.images[i][j];
    }
    return target.reduce(out);
}

DiscMap disc_compose(const DiscMap& f, const DiscMap& g, const FqForm& mid_target, const FqForm& final_target) {
    (void)mid_target;
    DiscMap r;
    for (const auto& img : g.images) r.images.push_back(disc_apply(f, final_target, img));
    return r;
}

bool disc_maps_equal(const FqForm& target, const DiscMap& a, const DiscMap& b) {
    if (a.images.size() != b.images.size()) return false;
    for (size_t i = 0; i < a.images.size(); ++i)
        if (target.reduce(a.images[i]) != target.reduce(b.images[i])) return false;
    return true;
}

bool is_trivial_action(const FqForm& f, const DiscMap& m) {
    return disc_maps_equal(f, m, disc_identity(f));
}

DiscMap induced_action(const FqForm& f, const Isometry& iso) {
    if (iso.lattice.gram() != f.gram) throw std::invalid_argument("induced_action: form does not match the lattice");
    if (!verify_isometry(iso.lattice, iso.mat)) throw std::invalid_argument("induced_action: not an isometry");
    DiscMap m;
    RatMat mat(iso.mat);
    for (int i = 0; i < f.ngens(); ++i) {
        Rvec lift(f.gram.rows());
        for (int j = 0; j < f.gram.rows(); ++j) lift[j] = f.gen_lifts.at(i, j);
        Rvec img = mat.mul_vec(lift);
        auto e = f.element_of_dual(img);
        if (!e) throw std::logic_error("induced_action: image left the dual lattice");
        m.images.push_back(*e);
    }
    return m;
}

namespace {

bool span_is_everything(const FqForm& target, const std::vector<Ivec>& images) {
    // subgroup generated by the images, grown by BFS
    std::set<Ivec> seen;
    Ivec zero(target.ngens(), Int(0));
    seen.insert(zero);
    std::vector<Ivec> frontier{zero};
    while (!frontier.empty()) {
        std::vector<Ivec> next;
        for (const auto& cur : frontier)
            for (const auto& img : images) {
                Ivec s(cur.size());
                for (size_t i = 0; i < cur.size(); ++i) s[i] = cur[i] + img[i];
                s = target.reduce(s);
                if (seen.insert(s).second) next.push_back(std::move(s));
            }
        frontier = std::move(next);
    }
    return Int(static_cast<long>(seen.size())) == target.order();
}

bool hom_search_rec(const FqForm& f1, const FqForm& f2, int sign, const std::vector<Ivec>& pool, int depth,
                    std::vector<Ivec>& images) {
    if (depth == f1.ngens()) return span_is_everything(f2, images);
    Ivec gen(f1.ngens(), Int(0));
    gen[depth] = 1;
    for (const auto& cand : pool) {
        // image order must divide the generator order
        Ivec scaled(cand.size());
        for (size_t j = 0; j < cand.size(); ++j) scaled[j] = f1.orders[depth] * cand[j];
        if (!is_zero_vec(f2.reduce(scaled))) continue;
        if (f2.q(cand) != mod_2(Rat(sign) * f1.q(gen))) continue;
        bool ok = true;
        for (int k = 0; k < depth && ok; ++k) {
            Ivec gk(f1.ngens(), Int(0));
            gk[k] = 1;
            if (f2.b(cand, images[k]) != mod_1(Rat(sign) * f1.b(gen, gk))) ok = false;
        }
        if (!ok) continue;
        images.push_back(cand);
        if (hom_search_rec(f1, f2, sign, pool, depth + 1, images)) return true;
        images.pop_back();
    }
    return false;
}

}  // namespace

std::optional<DiscMap> form_hom_search(const FqForm& f1, const FqForm& f2, int sign, unsigned long order_cap) {
    if (f1.order() != f2.order()) return std::nullopt;
    if (f1.order() > static_cast<long>(order_cap)) throw cap_exceeded("form_hom_search: order cap exceeded");
    if (f1.is_trivial()) return DiscMap{};
    auto pool = f2.all_elements(order_cap);
    std::vector<Ivec> images;
    if (!hom_search_rec(f1, f2, sign, pool, 0, images)) return std::nullopt;
    return DiscMap{std::move(images)};
}

std::optional<DiscMap> anti_isometry_search(const FqForm& f1, const FqForm& f2, unsigned long order_cap) {
    if (f1.order() != f2.order())
        throw std::invalid_argument("anti_isometry_search: discriminant orders differ");
    return form_hom_search(f1, f2, -1, order_cap);
}

std::optional<DiscMap> form_isomorphism_search(const FqForm& f1, const FqForm& f2, unsigned long order_cap) {
    if (f1.order() != f2.order()) return std::nullopt;
    return form_hom_search(f1, f2, +1, order_cap);
}

}  // namespace lat
