#include "lat/springer.hpp"

#include <algorithm>

namespace lat {

long ReflectionGroupData::group_order() const {
    long o = 1;
    for (int d : degrees) o *= d;
    return o;
}

ReflectionGroupData reflection_group_data(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), ::toupper);
    if (n == "F4") return ReflectionGroupData{"F4", 4, {2, 6, 8, 12}, {0, 4, 6, 10}};
    if (n == "E6") return ReflectionGroupData{"E6", 6, {2, 5, 6, 8, 9, 12}, {0, 3, 4, 6, 7, 10}};
    throw std::invalid_argument("reflection_group_data: unknown group '" + name + "'");
}

int lambda(const ReflectionGroupData& g, int e) {
    if (e < 1) throw std::invalid_argument("lambda: e >= 1 required");
    int c = 0;
    for (int d : g.degrees)
        if (d % e == 0) ++c;
    return c;
}

int lambda_star(const ReflectionGroupData& g, int e) {
    if (e < 1) throw std::invalid_argument("lambda_star: e >= 1 required");
    int c = 0;
    for (int d : g.codegrees)
        if (d % e == 0) ++c;  // 0 % e == 0, so the zero codegree always counts
    return c;
}

SpringerReport springer_report(const ReflectionGroupData& g, int e) {
    SpringerReport r;
    r.group = g.name;
    r.e = e;
    r.lambda_e = lambda(g, e);
    r.lambda_star_e = lambda_star(g, e);
    r.regular_uniqueness = r.lambda_e == r.lambda_star_e;
    r.predicted_max_eigendim = r.lambda_e;
    return r;
}

int eigendim(int n, const FlatMat& m, int e) {
    // dim of the zeta_e eigenspace = nullity(Phi_e(M)) / phi(e)
    Poly phi = cyclotomic(e);
    IntMat mm = flat_to_intmat(n, m);
    IntMat acc(n, n);
    IntMat p = IntMat::identity(n);
    for (size_t k = 0; k < phi.size(); ++k) {
        if (phi[k] != 0)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) acc.at(i, j) += phi[k] * p.at(i, j);
        if (k + 1 < phi.size()) p = p * mm;
    }
    int nullity = n - rank_rational(acc);
    int totient = 0;
    for (int k = 1; k <= e; ++k) {
        int a = k, b = e;
        while (b) {
            int t = a % b;
            a = b;
            b = t;
        }
        if (a == 1) ++totient;
    }
    return nullity / totient;
}

SpringerReport springer_report_enumerated(const ReflectionGroupData& g, int e, long element_cap) {
    SpringerReport r = springer_report(g, e);
    Lattice l = catalog(g.name == "F4" ? "D4" : "E6");
    OrthogonalGroup og = orthogonal_group(l, element_cap);
    r.enumerated_group_order = og.order();

    int maxdim = 0;
    std::vector<int> dims(og.elements.size());
    for (size_t i = 0; i < og.elements.size(); ++i) {
        dims[i] = eigendim(og.n, og.elements[i], e);
        maxdim = std::max(maxdim, dims[i]);
    }
    r.enumerated_max_eigendim = maxdim;

    std::vector<int> maximal;
    for (size_t i = 0; i < og.elements.size(); ++i)
        if (dims[i] == maxdim && flat_order(og.n, og.elements[i]) == e) maximal.push_back(static_cast<int>(i));
    r.class_count_full_group = static_cast<int>(conjugacy_partition(og, maximal).size());
    auto refl = reflection_subgroup(og);
    r.class_count_reflection_subgroup = static_cast<int>(conjugacy_partition_in(og, refl, maximal).size());
    return r;
}

}  // namespace lat
