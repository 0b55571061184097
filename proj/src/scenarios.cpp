#include "lat/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "lat/springer.hpp"

namespace lat {

namespace {

std::string ivec_str(const Ivec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

std::string sig_str(std::pair<int, int> s) {
    return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
}

Ivec iv(std::initializer_list<long> xs) {
    Ivec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

IntMat a2_rotation_matrix() { return IntMat{{0, -1}, {1, -1}}; }

IntMat e6_fpf_matrix() {
    // columns are the images e1 -> -e1-e3-e4-e5-e6, e2 -> e3+e4+e5,
    // e3 -> -e2-e3-e4, e4 -> -e4-e5, e5 -> e4, e6 -> e1+e2+e3+e4+e5
    return IntMat{{-1, 0, 0, 0, 0, 1},
                  {0, 0, -1, 0, 0, 1},
                  {-1, 1, -1, 0, 0, 1},
                  {-1, 1, -1, -1, 1, 1},
                  {-1, 1, 0, -1, 0, 1},
                  {-1, 0, 0, 0, 0, 0}};
}

IntMat paper_d4_gram() {
    return IntMat{{-2, 0, -1, 0}, {0, -2, 1, 0}, {-1, 1, -2, 1}, {0, 0, 1, -2}};
}

IntMat paper_d4_matrix() {
    // printed images d1 -> -d1+d3-d4, d2 -> -d1+d2-d3, d3 -> -d1-d2+d3+d4,
    // d4 -> -d2+d3-d4 (kept verbatim; it does not verify, see run_scenario)
    return IntMat{{-1, -1, -1, 0}, {0, 1, -1, -1}, {1, -1, 1, 1}, {-1, 0, 1, -1}};
}

IntMat block_isometry(const Lattice& l, int offset, const IntMat& block) {
    if (offset < 0 || offset + block.rows() > l.rank())
        throw std::invalid_argument("block_isometry: block does not fit");
    IntMat m = IntMat::identity(l.rank());
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) m.at(offset + i, offset + j) = block.at(i, j);
    return m;
}

IntMat e8_fpf_matrix() {
    // Glue E6(-1)+A2(-1) along their Z/3 discriminants into a rank-8 even
    // unimodular negative definite lattice, lift the blockwise order-3
    // fixed-point-free maps, and transport to the catalog E8(-1) basis.
    Lattice e6m = catalog("E6(-1)");
    Lattice a2m = catalog("A2(-1)");
    auto glue = unimodular_embedding_search(e6m, a2m, {0, 8});
    if (!glue) throw std::logic_error("e8_fpf_matrix: E6(-1)+A2(-1) glue not found");
    Isometry f6 = make_isometry(e6m, e6_fpf_matrix());
    Isometry f2 = make_isometry(a2m, a2_rotation_matrix());
    LiftOutcome lift = lift_isometry(f6, f2, glue->over);
    if (lift.status != LiftStatus::lifted) throw std::logic_error("e8_fpf_matrix: blockwise map did not lift");

    Lattice e8m = catalog("E8(-1)");
    auto t = find_isometry_between(e8m, glue->over.lattice);
    if (!t) throw std::logic_error("e8_fpf_matrix: overlattice is not isometric to E8(-1)");
    RatMat tinv = inverse_rational(*t);
    RatMat conj = RatMat(*t) * RatMat(lift.iso->mat) * tinv;
    if (!conj.is_integral()) throw std::logic_error("e8_fpf_matrix: conjugated matrix not integral");
    IntMat m = conj.to_int();
    if (!verify_isometry(e8m, m)) throw std::logic_error("e8_fpf_matrix: transported matrix is not an isometry");
    return m;
}

ScenarioData scenario_data(int i) {
    ScenarioData d;
    d.index = i;
    switch (i) {
        case 1:
            d.pic_k3_gram = IntMat{{0, 3}, {3, 0}};
            d.k3_basis_change = {iv({1, 0}), iv({0, 1})};
            d.k3_target = "U(3)";
            d.theta_x = iv({1, 1});
            d.degeneracy = "A2(-1)";
            d.table_t = "U(3)+<-2>";
            d.tr = "U+U(3)+E8(-1)+E8(-1)";
            d.expects_lift = true;
            d.theta_block_basis = {iv({1, 0, -1}), iv({0, -1, 1})};
            d.standin_block_offset = 4;
            d.standin_block = "E8(-1)";
            break;
        case 2:
            d.pic_k3_gram = IntMat{{0, 1, 1, 1}, {1, -2, 0, 0}, {1, 0, -2, 0}, {1, 0, 0, -2}};
            d.k3_basis_change = {iv({1, 0, 0, 0}), iv({1, 1, 0, 0}), iv({-2, -1, 1, 0}), iv({0, 0, -1, 1})};
            d.k3_target = "U+A2(-2)";
            d.theta_x = iv({2, 1, 1, 1});
            d.degeneracy = "D4(-1)";
            d.table_t = "U+A2(-2)+<-2>";
            d.tr = "U+U+E8(-1)+A2(-1)+D4(-1)";
            d.expects_lift = false;
            d.theta_block_basis = {iv({0, -1, 0, 0, 0}), iv({0, 0, 1, 0, 0}), iv({1, 0, 0, 0, -1}),
                                   iv({0, 0, 0, 1, 0})};
            d.standin_block_offset = 14;
            d.standin_block = "D4(-1)";
            break;
        case 3:
            d.pic_k3_gram = IntMat{{0, 0, 0, 1, 0, 0}, {0, -2, 1, 0, 0, 0}, {0, 1, -2, 1, 0, 0},
                                   {1, 0, 1, -2, 1, 0}, {0, 0, 0, 1, -2, 1}, {0, 0, 0, 0, 1, -2}};
            d.k3_basis_change = {iv({1, 0, 0, 1, 0, 0}), iv({1, 0, 0, 0, 0, 0}), iv({0, 1, 0, 0, 0, 0}),
                                 iv({-1, 0, 1, 0, 0, 0}), iv({-1, 0, 0, 0, 1, 0}), iv({0, 0, 0, 0, 0, 1})};
            d.k3_target = "U+A2(-1)+A2(-1)";
            d.theta_x = iv({2, 1, 2, 3, 2, 1});
            d.degeneracy = "E6(-1)";
            d.table_t = "U+A2(-1)+A2(-1)+<-2>";
            d.tr = "U+U+E8(-1)+A2(-1)+A2(-1)";
            d.expects_lift = true;
            d.theta_block_basis = {iv({0, 1, 0, 0, 0, 0, 0}), iv({0, 0, 1, 0, 0, 0, 0}),
                                   iv({0, 0, 0, 1, 0, 0, 0}), iv({0, 0, 0, 0, 1, 0, 0}),
                                   iv({0, 0, 0, 0, 0, 1, 0}), iv({1, 0, 0, 0, 0, 0, -1})};
            d.standin_block_offset = 12;
            d.standin_block = "A2(-1)";
            break;
        case 4:
            d.pic_k3_gram = IntMat{{0, 1, 0, 0, 0, 0, 0, 0}, {1, -2, 1, 0, 0, 0, 0, 0},
                                   {0, 1, -2, 1, 0, 0, 0, 0}, {0, 0, 1, -2, 1, 0, 0, 0},
                                   {0, 0, 0, 1, -2, 1, 0, 1}, {0, 0, 0, 0, 1, -2, 1, 0},
                                   {0, 0, 0, 0, 0, 1, -2, 0}, {0, 0, 0, 0, 1, 0, 0, -2}};
            d.k3_basis_change = {iv({1, 0, 0, 0, 0, 0, 0, 0}), iv({1, 1, 0, 0, 0, 0, 0, 0}),
                                 iv({-1, 0, 1, 0, 0, 0, 0, 0}), iv({0, 0, 0, 1, 0, 0, 0, 0}),
                                 iv({0, 0, 0, 0, 1, 0, 0, 0}), iv({0, 0, 0, 0, 0, 1, 0, 0}),
                                 iv({0, 0, 0, 0, 0, 0, 1, 0}), iv({0, 0, 0, 0, 0, 0, 0, 1})};
            d.k3_target = "U+E6(-1)";
            // the printed class has -2*C1, which fails x^2 = 6; the
            // orthogonality conditions force the +2 coefficient (unique)
            d.theta_x = iv({2, 3, 4, 5, 6, 4, 2, 3});
            d.degeneracy = "E8(-1)";
            d.table_t = "U+E6(-1)+<-2>";
            d.tr = "U+U+E8(-1)+A2(-1)";
            d.expects_lift = true;
            d.theta_block_basis = {iv({0, 1, 0, 0, 0, 0, 0, 0, 0}), iv({0, 0, 1, 0, 0, 0, 0, 0, 0}),
                                   iv({0, 0, 0, 1, 0, 0, 0, 0, 0}), iv({0, 0, 0, 0, 1, 0, 0, 0, 0}),
                                   iv({0, 0, 0, 0, 0, 1, 0, 0, 0}), iv({0, 0, 0, 0, 0, 0, 1, 0, 0}),
                                   iv({0, 0, 0, 0, 0, 0, 0, 1, 0}), iv({1, 0, 0, 0, 0, 0, 0, 0, -1})};
            d.standin_block_offset = 12;
            d.standin_block = "A2(-1)";
            break;
        default:
            throw std::invalid_argument("scenario_data: index must be 1..4");
    }
    return d;
}

namespace {

bool signed_perm_rec(const IntMat& a, const IntMat& b, std::vector<int>& perm, std::vector<int>& sign,
                     std::vector<char>& used, int depth) {
    int n = a.rows();
    if (depth == n) return true;
    for (int p = 0; p < n; ++p) {
        if (used[p]) continue;
        for (int s : {1, -1}) {
            if (b.at(depth, depth) != a.at(p, p)) break;  // diagonal is sign-independent
            bool ok = true;
            for (int k = 0; k < depth && ok; ++k)
                if (b.at(depth, k) != s * sign[k] * a.at(p, perm[k])) ok = false;
            if (!ok) continue;
            perm[depth] = p;
            sign[depth] = s;
            used[p] = 1;
            if (signed_perm_rec(a, b, perm, sign, used, depth + 1)) return true;
            used[p] = 0;
        }
    }
    return false;
}

}  // namespace

bool signed_perm_congruent(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() || !a.is_square() || !b.is_square()) return false;
    int n = a.rows();
    std::vector<int> perm(n, -1), sign(n, 1);
    std::vector<char> used(n, 0);
    return signed_perm_rec(a, b, perm, sign, used, 0);
}

bool verify_basis_change(const Lattice& l, const std::vector<Ivec>& basis, const Lattice& target) {
    if (static_cast<int>(basis.size()) != l.rank() || target.rank() != l.rank())
        throw std::invalid_argument("verify_basis_change: size mismatch");
    IntMat b = IntMat::from_rows(basis);
    Int d = det_exact(b);
    if (d != 1 && d != -1) return false;
    IntMat gb = b * l.gram() * b.transpose();
    return signed_perm_congruent(gb, target.gram());
}

DimBreakdown scenario_dimensions(int i) {
    if (i < 1 || i > 4) throw std::invalid_argument("scenario_dimensions: index must be 1..4");
    DimBreakdown d;
    d.quadric_params = 10;       // coefficients of a quadric in x1..x4
    d.cubic_params = 21;         // cubic in x1..x4 plus the x5^3 coefficient
    d.cubic_mod_quadric = 4;     // cubics differing by a linear multiple of the quadric
    d.scalings = 2;              // each equation is defined up to a constant
    d.projectivities = 4 * 4 + 1 - 1;  // transformations preserving the family
    d.corank_conditions = i >= 2 ? 1 : 0;
    d.recognition_conditions = i >= 2 ? i - 2 : 0;
    long params = d.quadric_params + d.cubic_params - d.cubic_mod_quadric - d.scalings;
    d.dim = params - d.projectivities - d.corank_conditions - d.recognition_conditions;
    d.picard_rank = 22 - 2 * (10 - i + 1);
    return d;
}

namespace {

struct CheckRecorder {
    std::vector<CheckResult> checks;

    void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        try {
            auto [ok, details] = body();
            checks.push_back({name, ok ? "pass" : "fail", details});
        } catch (const std::exception& e) {
            checks.push_back({name, "fail", std::string("exception: ") + e.what()});
        }
    }
    void skip(const std::string& name, const std::string& details) {
        checks.push_back({name, "skipped", details});
    }
};

// expresses the K3-level glue graph inside D_(picK3 + <-2>) x D_tr
GluingData pad_glue_to_pic(const FqForm& f_pic, const FqForm& f_pic_k3, const Overlattice& k3_glue) {
    GluingData g;
    for (const auto& el : k3_glue.graph) {
        if (is_zero_vec(el.a) && is_zero_vec(el.b)) continue;
        Rvec lift = f_pic_k3.lift(el.a);
        Rvec ext(lift.size() + 1);
        for (size_t i = 0; i < lift.size(); ++i) ext[i] = lift[i];
        auto a2 = f_pic.element_of_dual(ext);
        if (!a2) throw std::logic_error("pad_glue_to_pic: lift left the dual lattice");
        g.generators.push_back(GluePair{*a2, el.b});
    }
    return g;
}

std::string lift_status_str(LiftStatus s) {
    switch (s) {
        case LiftStatus::lifted: return "lifted";
        case LiftStatus::condition_failed: return "condition-failed";
        case LiftStatus::graph_not_preserved: return "graph-not-preserved";
    }
    return "?";
}

}  // namespace

ScenarioReport run_scenario(int i) {
    ScenarioData data = scenario_data(i);
    CheckRecorder rec;

    Lattice pic_k3(data.pic_k3_gram, "picK3(a" + std::to_string(i) + ")");
    Lattice target_k3 = catalog(data.k3_target);
    Lattice degeneracy = catalog(data.degeneracy);
    Lattice table_t = catalog(data.table_t);
    Lattice tr = catalog(data.tr);

    rec.run("picard-invariants", [&]() -> std::pair<bool, std::string> {
        auto sig = signature(pic_k3);
        bool ok = pic_k3.rank() == 2 * i && pic_k3.is_even() && sig == std::make_pair(1, 2 * i - 1);
        return {ok, "rank=" + std::to_string(pic_k3.rank()) + " sig=" + sig_str(sig) +
                        " det=" + pic_k3.det().get_str() + " even=" + (pic_k3.is_even() ? "yes" : "no")};
    });

    rec.run("k3-basis-change", [&]() -> std::pair<bool, std::string> {
        bool ok = verify_basis_change(pic_k3, data.k3_basis_change, target_k3);
        return {ok, "explicit basis matches " + data.k3_target + " (unimodular change, signed-permutation Gram match)"};
    });

    // the Hilbert-square construction is shared by the remaining checks;
    // when it fails the report carries the failure instead of throwing
    std::optional<PolarizedPicard> p_built;
    try {
        p_built = hilbert_square_picard(pic_k3, data.theta_x, tr);
    } catch (const std::exception& e) {
        rec.checks.push_back({"hilbert-square-theta", "fail", std::string("exception: ") + e.what()});
        ScenarioReport rep;
        rep.index = i;
        rep.checks = std::move(rec.checks);
        rep.overall = "fail";
        return rep;
    }
    PolarizedPicard& p = *p_built;

    rec.run("hilbert-square-theta", [&]() -> std::pair<bool, std::string> {
        bool ok = inner(p.pic, p.theta, p.theta) == 6 && inner(pic_k3, data.theta_x, data.theta_x) == 6;
        std::string note;
        if (i == 4) note = "; x = 2C1+3E1+4E2+5E3+6E4+4E5+2E6+3E7 (printed coefficient -2C1 fails x^2=6; +2 is the unique fix)";
        return {ok, "theta = 2x-3eps = " + ivec_str(p.theta) + ", theta^2 = 6" + note};
    });

    rec.run("k3-glue-unimodular", [&]() -> std::pair<bool, std::string> {
        const Lattice& o = p.k3_glue.lattice;
        auto sig = signature(o);
        bool ok = abs(o.det()) == 1 && o.is_even() && sig == std::make_pair(3, 19);
        Ivec eps(p.pic.rank(), Int(0));
        eps[p.eps_index] = 1;
        Int div_eps = divisibility(eps, p.ambient);
        ok = ok && div_eps == 2;
        return {ok, "picK3+TR glue: |det|=" + Int(abs(o.det())).get_str() + " sig=" + sig_str(sig) +
                        " even=yes; eps divisibility in L = " + div_eps.get_str()};
    });

    rec.run("theta-complement", [&]() -> std::pair<bool, std::string> {
        IntMat theta_row(1, p.pic.rank());
        for (int j = 0; j < p.pic.rank(); ++j) theta_row.at(0, j) = p.theta[j];
        Embedding theta_emb = Embedding::make(p.pic, theta_row);
        Embedding comp = orth_complement(theta_emb);
        bool ok = comp.basis.rows() == 2 * i;

        IntMat block = IntMat::from_rows(data.theta_block_basis);
        for (const auto& v : data.theta_block_basis)
            if (inner(p.pic, v, p.theta) != 0) ok = false;
        Embedding block_sat = saturate(p.pic, block);
        ok = ok && block_sat.basis == comp.basis && saturation_index(p.pic, block) == 1;

        IntMat block_gram = block * p.pic.gram() * block.transpose();
        ok = ok && signed_perm_congruent(block_gram, degeneracy.gram());
        ok = ok && signature(comp.sub_lattice()) == signature(degeneracy) && abs(comp.sub_lattice().det()) == abs(degeneracy.det());
        bool disc_iso =
            form_isomorphism_search(discriminant_form(comp.sub_lattice()), discriminant_form(degeneracy)).has_value();
        ok = ok && disc_iso;
        std::string extra;
        if (i == 2) extra = block_gram == paper_d4_gram() ? "; block Gram equals the printed D4(-1) Gram" : "";
        return {ok, "rank-" + std::to_string(2 * i) + " complement of theta matches " + data.degeneracy +
                        " (exact basis, signed-permutation Gram, invariants, discriminant form)" + extra};
    });

    rec.run("theorem1-table", [&]() -> std::pair<bool, std::string> {
        bool ok = p.pic.rank() == table_t.rank();
        ok = ok && signature(p.pic) == signature(table_t);
        ok = ok && abs(p.pic.det()) == abs(table_t.det());
        ok = ok && form_isomorphism_search(discriminant_form(p.pic), discriminant_form(table_t)).has_value();
        std::vector<Ivec> full_basis;
        for (const auto& v : data.k3_basis_change) {
            Ivec ext(v.size() + 1, Int(0));
            for (size_t k = 0; k < v.size(); ++k) ext[k] = v[k];
            full_basis.push_back(std::move(ext));
        }
        Ivec eps(p.pic.rank(), Int(0));
        eps[p.eps_index] = 1;
        full_basis.push_back(eps);
        ok = ok && verify_basis_change(p.pic, full_basis, table_t);
        return {ok, "constructed Pic matches T" + std::to_string(i) + " = " + data.table_t +
                        " (signature, discriminant form, exact basis change)"};
    });

    rec.run("tr-complement", [&]() -> std::pair<bool, std::string> {
        Embedding comp = orth_complement(p.k3_glue.emb_a);
        Embedding tr_sat = saturate(p.k3_glue.lattice, p.k3_glue.emb_b.basis);
        bool ok = comp.basis == tr_sat.basis;
        ok = ok && signature(comp.sub_lattice()) == signature(tr) && abs(comp.sub_lattice().det()) == abs(tr.det());
        ok = ok && discriminant_form(comp.sub_lattice()).order() == discriminant_form(tr).order();
        return {ok, "complement of picK3 in the glue equals the embedded TR = " + data.tr};
    });

    // degeneracy-block analysis (the engine of the lifting dichotomy)
    std::vector<Isometry> fpf_list;
    if (i == 1 || i == 2) {
        rec.run("degeneracy-fpf", [&]() -> std::pair<bool, std::string> {
            OrthogonalGroup og = orthogonal_group(degeneracy);
            FqForm fq = discriminant_form(degeneracy);
            auto fpf_idx = find_order_e_fpf_indices(og, 3);
            for (int idx : fpf_idx) fpf_list.push_back(og.isometry(idx));
            bool ok = !fpf_list.empty();
            Poly expect = i == 1 ? Poly{1, 1, 1} : poly_mul({1, 1, 1}, {1, 1, 1});
            int trivial = 0, nontrivial = 0;
            for (const auto& f : fpf_list) {
                if (char_poly(f.mat) != expect) ok = false;
                if (is_trivial_action(fq, induced_action(fq, f)))
                    ++trivial;
                else
                    ++nontrivial;
            }
            int classes = static_cast<int>(conjugacy_partition(og, fpf_idx).size());
            ok = ok && classes == 1;
            if (i == 1) ok = ok && nontrivial == 0 && trivial == static_cast<int>(fpf_list.size());
            if (i == 2) ok = ok && trivial == 0 && nontrivial == static_cast<int>(fpf_list.size());
            return {ok, "|O|=" + std::to_string(og.order()) + ", order-3 FPF elements: " +
                            std::to_string(fpf_list.size()) + " (1 conjugacy class), discriminant action trivial/" +
                            "nontrivial = " + std::to_string(trivial) + "/" + std::to_string(nontrivial)};
        });
    } else if (i == 3) {
        rec.run("degeneracy-fpf", [&]() -> std::pair<bool, std::string> {
            Lattice e6m = catalog("E6(-1)");
            IntMat m = e6_fpf_matrix();
            bool ok = verify_isometry(e6m, m);
            Isometry f = make_isometry(e6m, m);
            ok = ok && order_of(f) == 3;
            ok = ok && fixed_sublattice(f).basis.rows() == 0;
            ok = ok && char_poly(m) == poly_mul(poly_mul({1, 1, 1}, {1, 1, 1}), {1, 1, 1});
            FqForm fq = discriminant_form(e6m);
            ok = ok && is_trivial_action(fq, induced_action(fq, f));
            // the quoted discriminant generator: -4/3 e1 - e2 - 5/3 e3 - 2 e4 - 4/3 e5 - 2/3 e6
            Rvec w = {make_rat(-4, 3), Rat(-1), make_rat(-5, 3), Rat(-2), make_rat(-4, 3), make_rat(-2, 3)};
            auto elem = fq.element_of_dual(w);
            bool gen_ok = elem.has_value() && fq.element_order(*elem) == 3;
            if (gen_ok) {
                RatMat mm(m);
                auto img = fq.element_of_dual(mm.mul_vec(w));
                gen_ok = img.has_value() && fq.reduce(*img) == fq.reduce(*elem);
            }
            ok = ok && gen_ok;
            return {ok, "explicit map on E6(-1): order 3, no fixed vectors, char poly (x^2+x+1)^3, trivial on "
                        "D = Z/3 (checked on the quoted generator)"};
        });
    } else {
        rec.run("degeneracy-fpf", [&]() -> std::pair<bool, std::string> {
            bool ok = discriminant_form(catalog("E8(-1)")).is_trivial();
            return {ok, "E8(-1) has trivial discriminant, so the triviality condition is vacuous; "
                        "group enumeration refused at the default cap"};
        });
    }

    if (i == 2) {
        rec.skip("paper-d4-matrix", [&]() {
            bool verifies = false;
            try {
                verifies = verify_isometry(Lattice(paper_d4_gram()), paper_d4_matrix());
            } catch (const std::exception&) {
            }
            return verifies ? std::string("printed matrix unexpectedly verifies; pipeline still uses the enumerated list")
                            : std::string("printed matrix fails verify_isometry against the printed Gram "
                                          "(suspected typo); pipeline quantifies over the enumerated FPF list");
        }());
    }

    rec.run("nikulin-lift", [&]() -> std::pair<bool, std::string> {
        FqForm f_pic = discriminant_form(p.pic);
        FqForm f_pic_k3 = discriminant_form(pic_k3);
        GluingData g2 = pad_glue_to_pic(f_pic, f_pic_k3, p.k3_glue);
        Overlattice over2 = overlattice_from_glue(p.pic, tr, g2);
        bool ok = abs(over2.lattice.det()) == 2 && signature(over2.lattice) == std::make_pair(3, 20) &&
                  over2.lattice.is_even();

        Isometry id_pic = make_isometry(p.pic, IntMat::identity(p.pic.rank()));
        std::ostringstream note;
        if (i == 2) {
            // quantified over the complete order-3 FPF list of D4(-1)
            int failures = 0;
            for (const auto& f : fpf_list) {
                Isometry standin = make_isometry(tr, block_isometry(tr, data.standin_block_offset, f.mat));
                LiftOutcome out = lift_isometry(id_pic, standin, over2);
                if (out.status != LiftStatus::lifted) ++failures;
            }
            ok = ok && !fpf_list.empty() && failures == static_cast<int>(fpf_list.size());
            // positive control: the A2(-1) block map has trivial action and lifts
            Isometry control =
                make_isometry(tr, block_isometry(tr, 12, a2_rotation_matrix()));
            LiftOutcome cout_ = lift_isometry(id_pic, control, over2);
            ok = ok && cout_.status == LiftStatus::lifted;
            note << "no lift for all " << fpf_list.size()
                 << " order-3 FPF maps on the D4(-1) block (complete list); A2(-1)-block control lifts";
        } else {
            IntMat blockmat = data.standin_block == "E8(-1)" ? e8_fpf_matrix() : a2_rotation_matrix();
            Isometry standin = make_isometry(tr, block_isometry(tr, data.standin_block_offset, blockmat));
            LiftOutcome out = lift_isometry(id_pic, standin, over2);
            ok = ok && out.status == LiftStatus::lifted;
            if (out.iso) ok = ok && verify_isometry(over2.lattice, out.iso->mat);
            note << "id on Pic with an order-3 " << data.standin_block
                 << "-block map on TR lifts to O(L): " << lift_status_str(out.status);
        }
        bool observed_lift = i != 2;
        ok = ok && observed_lift == data.expects_lift;
        return {ok, note.str()};
    });

    if (i == 2) {
        IntMat aut(5, 5);
        aut.at(0, 0) = 1;  // C1 fixed
        aut.at(2, 1) = 1;  // E1 -> E2
        aut.at(3, 2) = 1;  // E2 -> E3
        aut.at(1, 3) = 1;  // E3 -> E1
        aut.at(4, 4) = 1;  // eps fixed
        rec.run("kgen-witness", [&]() -> std::pair<bool, std::string> {
            Isometry f = make_isometry(p.pic, aut);
            auto w2 = kgen_obstruction(p, f, 6, {-2});
            auto w10 = kgen_obstruction(p, f, 6, {-10});
            bool ok = w2.has_value() && w10.has_value();
            for (auto* w : {&w2, &w10}) {
                if (!w->has_value()) continue;
                const auto& wit = **w;
                ok = ok && is_wall_divisor(wit.mu, p.ambient);
                ok = ok && f.mat.mul_vec(wit.mu) != wit.mu;
                ok = ok && f.mat.mul_vec(wit.w) == wit.w;
                ok = ok && inner(p.pic, wit.mu, wit.w) == 0;
                ok = ok && inner(p.pic, wit.w, wit.w) > 0;
            }
            // the quoted witnesses: (E1, 2C1+E1+E2+E3) and (2E1+eps, same w)
            Ivec e1 = iv({0, 1, 0, 0, 0});
            Ivec w = iv({2, 1, 1, 1, 0});
            Ivec e1eps = iv({0, 2, 0, 0, 1});
            ok = ok && inner(p.pic, w, e1) == 0 && inner(p.pic, w, w) == 6;
            ok = ok && f.mat.mul_vec(w) == w && f.mat.mul_vec(e1) != e1;
            ok = ok && is_wall_divisor(e1, p.ambient) && inner(p.pic, e1, e1) == -2;
            ok = ok && inner(p.pic, e1eps, e1eps) == -10 && divisibility(e1eps, p.ambient) == 2;
            ok = ok && is_wall_divisor(e1eps, p.ambient) && inner(p.pic, e1eps, w) == 0;
            return {ok, "box bound 6: found -2 witness mu=" + (w2 ? ivec_str(w2->mu) : "-") + ", -10 witness mu=" +
                            (w10 ? ivec_str(w10->mu) : "-") + "; quoted witnesses (E1, 2C1+E1+E2+E3) and "
                            "(2E1+eps) verified, eps-class divisibility 2"};
        });
        rec.run("m-lattice", [&]() -> std::pair<bool, std::string> {
            bool ok = form_isomorphism_search(discriminant_form(p.pic), discriminant_form(table_t)).has_value() &&
                      signature(p.pic) == signature(table_t);
            return {ok, "M = U+A2(-2)+<-2> carries the same invariants as the constructed Pic"};
        });
        rec.run("t-delta1-invariant", [&]() -> std::pair<bool, std::string> {
            // invariant lattice of the automorphism inside Pic is
            // <6>+A2(-1), i.e. U(3)+<-2>, with a U(3)+U+E8(-1)^2-type
            // complement in the ambient lattice
            Isometry f = make_isometry(p.pic, aut);
            Embedding fix = fixed_sublattice(f);
            bool ok = fix.rank() == 3;
            // basis (C1, C1+E1+E2+E3, eps) realizes U(3)+<-2> on the nose
            std::vector<Ivec> tb = {Ivec{1, 0, 0, 0, 0}, Ivec{1, 1, 1, 1, 0}, Ivec{0, 0, 0, 0, 1}};
            Embedding tb_sat = saturate(p.pic, IntMat::from_rows(tb));
            ok = ok && tb_sat.basis == fix.basis;
            IntMat tb_gram = IntMat::from_rows(tb) * p.pic.gram() * IntMat::from_rows(tb).transpose();
            ok = ok && tb_gram == catalog("U(3)+<-2>").gram();
            ok = ok && form_isomorphism_search(discriminant_form(fix.sub_lattice()),
                                               discriminant_form(catalog("<6>+A2(-1)")))
                           .has_value();
            // push the invariant lattice into L and take its complement
            IntMat amb_rows = fix.basis * p.ambient.basis;
            Embedding t_in_l = Embedding::make(p.ambient.ambient, amb_rows);
            Embedding s_delta1 = orth_complement(t_in_l);
            Lattice expect = catalog("U(3)+U+E8(-1)+E8(-1)");
            ok = ok && s_delta1.rank() == 20;
            ok = ok && signature(s_delta1.sub_lattice()) == signature(expect);
            ok = ok && abs(s_delta1.sub_lattice().det()) == abs(expect.det());
            ok = ok && form_isomorphism_search(discriminant_form(s_delta1.sub_lattice()),
                                               discriminant_form(expect))
                           .has_value();
            return {ok, "invariant lattice of the automorphism is U(3)+<-2> (= <6>+A2(-1)) with a rank-20 "
                        "complement in L carrying the U(3)+U+E8(-1)^2 invariants"};
        });
    }

    rec.run("dimensions", [&]() -> std::pair<bool, std::string> {
        DimBreakdown d = scenario_dimensions(i);
        bool ok = d.dim == 10 - i && d.picard_rank == 2 * i;
        return {ok, "parameters 10+21-4-1-1=25, projectivities 16, corank " + std::to_string(d.corank_conditions) +
                        ", recognition " + std::to_string(d.recognition_conditions) + " -> dim " +
                        std::to_string(d.dim) + ", Picard rank " + std::to_string(d.picard_rank)};
    });

    rec.skip("genericity-axiom", "Picard lattice of the generic member has rank " + std::to_string(2 * i) +
                                     "; taken as an axiom of the pipeline, not re-derived");

    ScenarioReport rep;
    rep.index = i;
    rep.checks = std::move(rec.checks);
    bool all = true;
    for (const auto& c : rep.checks)
        if (c.status == "fail") all = false;
    rep.overall = all ? "pass" : "fail";
    return rep;
}

std::string report_to_json(const ScenarioReport& r) {
    nlohmann::ordered_json j;
    j["scenario"] = "a" + std::to_string(r.index);
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["status"] = c.status;
        cj["details"] = c.details;
        j["checks"].push_back(cj);
    }
    j["overall"] = r.overall;
    return j.dump(2);
}

std::string reports_to_json(const std::vector<ScenarioReport>& rs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(nlohmann::ordered_json::parse(report_to_json(r)));
    return arr.dump(2);
}

}  // namespace lat
