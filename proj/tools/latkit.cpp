#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lat/discform.hpp"
#include "lat/glue.hpp"
#include "lat/hkwalls.hpp"
#include "lat/scenarios.hpp"
#include "lat/springer.hpp"

using nlohmann::ordered_json;

namespace {

long default_cap() {
    if (const char* env = std::getenv("LATKIT_CAP")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 200000;
}

lat::Lattice load_lattice(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("cannot open " + arg.substr(1));
        ordered_json j = ordered_json::parse(in);
        auto rows = j.at("gram");
        std::vector<lat::Ivec> g;
        for (const auto& row : rows) {
            lat::Ivec r;
            for (const auto& v : row) r.emplace_back(v.get<long>());
            g.push_back(std::move(r));
        }
        lat::Lattice l(lat::IntMat::from_rows(g), j.value("label", ""));
        return l;
    }
    return lat::catalog(arg);
}

ordered_json lattice_info_json(const lat::Lattice& l) {
    ordered_json j;
    j["label"] = l.label();
    j["rank"] = l.rank();
    auto sig = lat::signature(l);
    j["signature"] = {sig.first, sig.second};
    j["det"] = l.det().get_str();
    j["even"] = l.is_even();
    lat::FqForm f = lat::discriminant_form(l);
    ordered_json factors = ordered_json::array();
    for (const auto& d : f.orders) factors.push_back(d.get_str());
    j["discriminant_invariant_factors"] = factors;
    j["discriminant_order"] = f.order().get_str();
    return j;
}

void emit(const ordered_json& j, bool json_fmt, const std::string& out_path,
          const std::function<void(std::ostream&)>& human) {
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!out_path.empty()) {
        f.open(out_path);
        os = &f;
    }
    if (json_fmt)
        *os << j.dump(2) << "\n";
    else
        human(*os);
}

std::string rat_str(const lat::Rat& r) { return r.get_num().get_str() + "/" + r.get_den().get_str(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"latkit -- exact lattice computations for K3^[2] singularity scenarios"};
    app.require_subcommand(1);

    std::string format = "human";
    std::string out_path;
    int threads = 0;
    app.add_option("--format", format, "output format: human|json")->capture_default_str();
    app.add_option("--out", out_path, "write output to a file");
    app.add_option("--threads", threads, "worker threads (results are identical for any value)");

    auto* info = app.add_subcommand("info", "lattice invariants for a spec or @file.json");
    std::string info_spec;
    info->add_option("spec", info_spec, "lattice spec, e.g. \"U(3)+<-2>\"")->required();

    auto* disc = app.add_subcommand("disc", "discriminant form of an even lattice");
    std::string disc_spec;
    disc->add_option("spec", disc_spec)->required();

    auto* verify = app.add_subcommand("verify", "run a singularity scenario pipeline");
    std::string selector;
    verify->add_option("scenario", selector, "a1|a2|a3|a4|all")->required();

    auto* isom = app.add_subcommand("isom", "analyze an isometry given as JSON {lattice, matrix}");
    std::string isom_file;
    isom->add_option("file", isom_file, "path to the isometry JSON")->required();

    auto* orth = app.add_subcommand("orthgroup", "enumerate the orthogonal group of a definite lattice");
    std::string orth_spec;
    int order_filter = 0;
    bool fpf_only = false;
    long cap = default_cap();
    orth->add_option("spec", orth_spec)->required();
    orth->add_option("--order-filter", order_filter, "restrict the conjugacy report to elements of this order");
    orth->add_flag("--fpf", fpf_only, "keep only fixed-point-free elements in the filtered subset");
    orth->add_option("--cap", cap, "element cap before aborting");

    auto* springer = app.add_subcommand("springer", "degree/codegree bounds for F4 or E6");
    std::string group_name;
    int springer_e = 0;
    bool cross = false;
    springer->add_option("group", group_name, "f4|e6")->required();
    springer->add_option("e", springer_e, "eigenvalue order e >= 1")->required();
    springer->add_flag("--enumerate", cross, "cross-check against the enumerated orthogonal group");

    auto* walls = app.add_subcommand("walls", "numerical wall classes of a scenario Picard lattice");
    std::string wall_scenario;
    long bound = 2;
    std::string squares_csv = "-2,-10";
    walls->add_option("scenario", wall_scenario, "a1|a2|a3|a4")->required();
    walls->add_option("--bound", bound, "coefficient box bound")->capture_default_str();
    walls->add_option("--squares", squares_csv, "comma list of wall squares")->capture_default_str();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << (e.get_name() == "CallForHelp" ? "" : "usage error: ") << e.what() << "\n";
        return e.get_name() == "CallForHelp" ? 0 : 2;
    }

    bool json_fmt = format == "json";
    if (format != "json" && format != "human") {
        std::cerr << "usage error: --format must be human or json\n";
        return 2;
    }

    try {
        if (*info) {
            lat::Lattice l = load_lattice(info_spec);
            ordered_json j = lattice_info_json(l);
            emit(j, json_fmt, out_path, [&](std::ostream& os) {
                auto sig = lat::signature(l);
                os << "lattice " << (l.label().empty() ? "(unlabeled)" : l.label()) << "\n"
                   << "  rank " << l.rank() << ", signature (" << sig.first << "," << sig.second << ")"
                   << ", det " << l.det().get_str() << ", " << (l.is_even() ? "even" : "odd") << "\n"
                   << "  discriminant group order " << j["discriminant_order"].get<std::string>()
                   << ", invariant factors " << j["discriminant_invariant_factors"].dump() << "\n";
            });
            return 0;
        }

        if (*disc) {
            lat::Lattice l = load_lattice(disc_spec);
            lat::FqForm f = lat::discriminant_form(l);
            ordered_json j;
            j["label"] = l.label();
            j["order"] = f.order().get_str();
            ordered_json gens = ordered_json::array();
            for (int i = 0; i < f.ngens(); ++i) {
                lat::Ivec e(f.ngens(), lat::Int(0));
                e[i] = 1;
                ordered_json gj;
                gj["order"] = f.orders[i].get_str();
                gj["q_mod_2Z"] = rat_str(f.q(e));
                gens.push_back(gj);
            }
            j["generators"] = gens;
            emit(j, json_fmt, out_path, [&](std::ostream& os) {
                os << "discriminant group of " << l.label() << ": order " << f.order().get_str() << "\n";
                for (int i = 0; i < f.ngens(); ++i) {
                    lat::Ivec e(f.ngens(), lat::Int(0));
                    e[i] = 1;
                    os << "  g" << i + 1 << ": order " << f.orders[i].get_str() << ", q = " << rat_str(f.q(e))
                       << " mod 2Z\n";
                }
            });
            return 0;
        }

        if (*verify) {
            std::vector<int> which;
            if (selector == "all")
                which = {1, 2, 3, 4};
            else if (selector.size() == 2 && selector[0] == 'a' && selector[1] >= '1' && selector[1] <= '4')
                which = {selector[1] - '0'};
            else {
                std::cerr << "usage error: unknown scenario '" << selector << "'\n";
                return 2;
            }
            std::vector<lat::ScenarioReport> reports;
            for (int i : which) reports.push_back(lat::run_scenario(i));
            std::string payload =
                which.size() == 1 ? lat::report_to_json(reports[0]) : lat::reports_to_json(reports);
            std::ostream* os = &std::cout;
            std::ofstream f;
            if (!out_path.empty()) {
                f.open(out_path);
                os = &f;
            }
            if (json_fmt) {
                *os << payload << "\n";
            } else {
                for (const auto& r : reports) {
                    *os << "scenario a" << r.index << ": " << r.overall << "\n";
                    for (const auto& c : r.checks)
                        *os << "  [" << c.status << "] " << c.name << " -- " << c.details << "\n";
                }
            }
            for (const auto& r : reports)
                if (!r.passed()) return 1;
            return 0;
        }

        if (*isom) {
            std::ifstream in(isom_file);
            if (!in) throw std::invalid_argument("cannot open " + isom_file);
            ordered_json spec = ordered_json::parse(in);
            lat::Lattice l = spec.at("lattice").is_string()
                                 ? lat::catalog(spec.at("lattice").get<std::string>())
                                 : [&] {
                                       std::vector<lat::Ivec> g;
                                       for (const auto& row : spec.at("lattice").at("gram")) {
                                           lat::Ivec r;
                                           for (const auto& v : row) r.emplace_back(v.get<long>());
                                           g.push_back(std::move(r));
                                       }
                                       return lat::Lattice(lat::IntMat::from_rows(g));
                                   }();
            std::vector<lat::Ivec> rows;
            for (const auto& row : spec.at("matrix")) {
                lat::Ivec r;
                for (const auto& v : row) r.emplace_back(v.get<long>());
                rows.push_back(std::move(r));
            }
            lat::IntMat m = lat::IntMat::from_rows(rows);
            bool verifies = lat::verify_isometry(l, m);
            ordered_json j;
            j["lattice"] = l.label();
            j["verifies"] = verifies;
            if (verifies) {
                lat::Isometry f{l, m};
                auto ord = lat::order_of(f);
                j["order"] = ord ? ordered_json(*ord) : ordered_json("exceeds cap");
                j["fixed_rank"] = lat::fixed_sublattice(f).rank();
                if (ord) {
                    ordered_json mults = ordered_json::object();
                    for (int e = 1; e <= *ord; ++e)
                        if (*ord % e == 0) mults[std::to_string(e)] = lat::eigen_multiplicity(f, e);
                    j["eigen_multiplicities"] = mults;
                }
                if (l.is_even()) {
                    lat::FqForm fq = lat::discriminant_form(l);
                    j["trivial_discriminant_action"] = lat::is_trivial_action(fq, lat::induced_action(fq, f));
                }
            }
            emit(j, json_fmt, out_path, [&](std::ostream& os) {
                os << "isometry check: " << (verifies ? "verifies" : "does NOT verify") << "\n";
                if (verifies) os << j.dump(2) << "\n";
            });
            return verifies ? 0 : 1;
        }

        if (*orth) {
            lat::Lattice l = load_lattice(orth_spec);
            lat::OrthogonalGroup g = lat::orthogonal_group(l, cap);
            std::map<long, long> by_order;
            for (const auto& m : g.elements) ++by_order[lat::flat_order(g.n, m)];
            ordered_json j;
            j["label"] = l.label();
            j["group_order"] = g.order();
            ordered_json counts = ordered_json::object();
            for (auto [o, c] : by_order) counts[std::to_string(o)] = c;
            j["elements_by_order"] = counts;
            auto refl = lat::reflection_subgroup(g);
            j["reflection_subgroup_order"] = static_cast<long>(refl.size());
            if (order_filter > 0) {
                std::vector<int> subset;
                for (size_t idx = 0; idx < g.elements.size(); ++idx) {
                    if (lat::flat_order(g.n, g.elements[idx]) != order_filter) continue;
                    if (fpf_only && !lat::flat_is_fpf(g.n, g.elements[idx])) continue;
                    subset.push_back(static_cast<int>(idx));
                }
                j["filtered_count"] = static_cast<long>(subset.size());
                j["filtered_classes_full_group"] = static_cast<long>(lat::conjugacy_partition(g, subset).size());
                j["filtered_classes_reflection_subgroup"] =
                    static_cast<long>(lat::conjugacy_partition_in(g, refl, subset).size());
                long in_refl = 0;
                std::set<int> rs(refl.begin(), refl.end());
                for (int s : subset)
                    if (rs.count(s)) ++in_refl;
                j["filtered_in_reflection_subgroup"] = in_refl;
            }
            emit(j, json_fmt, out_path, [&](std::ostream& os) {
                os << "O(" << l.label() << "): order " << g.order() << ", reflection subgroup order "
                   << refl.size() << "\n";
                for (auto [o, c] : by_order) os << "  order " << o << ": " << c << " elements\n";
                if (order_filter > 0)
                    os << "  filtered subset (order " << order_filter << (fpf_only ? ", FPF" : "")
                       << "): " << j["filtered_count"].get<long>() << " elements, "
                       << j["filtered_classes_full_group"].get<long>() << " class(es) in O, "
                       << j["filtered_classes_reflection_subgroup"].get<long>()
                       << " class(es) in the reflection subgroup\n";
            });
            return 0;
        }

        if (*springer) {
            lat::ReflectionGroupData g = lat::reflection_group_data(group_name);
            lat::SpringerReport r = cross ? lat::springer_report_enumerated(g, springer_e, cap)
                                          : lat::springer_report(g, springer_e);
            ordered_json j;
            j["group"] = r.group;
            j["e"] = r.e;
            j["lambda"] = r.lambda_e;
            j["lambda_star"] = r.lambda_star_e;
            j["regular_uniqueness"] = r.regular_uniqueness;
            j["predicted_max_eigendim"] = r.predicted_max_eigendim;
            if (r.enumerated_max_eigendim) {
                j["enumerated_group_order"] = *r.enumerated_group_order;
                j["enumerated_max_eigendim"] = *r.enumerated_max_eigendim;
                j["classes_full_group"] = *r.class_count_full_group;
                j["classes_reflection_subgroup"] = *r.class_count_reflection_subgroup;
            }
            emit(j, json_fmt, out_path, [&](std::ostream& os) {
                os << r.group << ", e=" << r.e << ": lambda=" << r.lambda_e << " lambda*=" << r.lambda_star_e
                   << " unique-class=" << (r.regular_uniqueness ? "yes" : "no") << "\n";
                if (r.enumerated_max_eigendim)
                    os << "  enumerated: |O|=" << *r.enumerated_group_order
                       << " max eigendim=" << *r.enumerated_max_eigendim << " classes(O)="
                       << *r.class_count_full_group << " classes(W)=" << *r.class_count_reflection_subgroup
                       << "\n";
            });
            return 0;
        }

        if (*walls) {
            if (wall_scenario.size() != 2 || wall_scenario[0] != 'a' || wall_scenario[1] < '1' ||
                wall_scenario[1] > '4') {
                std::cerr << "usage error: unknown scenario '" << wall_scenario << "'\n";
                return 2;
            }
            int i = wall_scenario[1] - '0';
            std::vector<long> squares;
            {
                std::stringstream ss(squares_csv);
                std::string tok;
                while (std::getline(ss, tok, ',')) squares.push_back(std::stol(tok));
            }
            lat::ScenarioData data = lat::scenario_data(i);
            lat::Lattice pic_k3(data.pic_k3_gram);
            lat::PolarizedPicard p = lat::hilbert_square_picard(pic_k3, data.theta_x, lat::catalog(data.tr));

            ordered_json j;
            j["scenario"] = wall_scenario;
            j["bound"] = bound;
            j["squares"] = squares;
            ordered_json found = ordered_json::array();
            long count = 0;
            lat::Ivec v(p.pic.rank(), lat::Int(-bound));
            do {
                if (lat::is_zero_vec(v)) continue;
                lat::Int sq = lat::inner(p.pic, v, v);
                bool keep = false;
                for (long s : squares)
                    if (sq == s) keep = true;
                if (!keep) continue;
                if (!lat::is_wall_divisor(v, p.ambient)) continue;
                ++count;
                if (found.size() < 100) {
                    ordered_json wj;
                    std::ostringstream os;
                    os << "(";
                    for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k].get_str();
                    os << ")";
                    wj["v"] = os.str();
                    wj["square"] = sq.get_str();
                    wj["divisibility"] = lat::divisibility(v, p.ambient).get_str();
                    found.push_back(wj);
                }
            } while ([&] {
                for (int k = static_cast<int>(v.size()) - 1; k >= 0; --k) {
                    if (v[k] < bound) {
                        v[k] += 1;
                        return true;
                    }
                    v[k] = -bound;
                }
                return false;
            }());
            j["wall_class_count"] = count;
            j["wall_classes"] = found;
            emit(j, json_fmt, out_path, [&](std::ostream& os) {
                os << "scenario " << wall_scenario << ": " << count << " numerical wall classes in box |c|<="
                   << bound << " (squares " << squares_csv << ")\n";
                for (const auto& w : found)
                    os << "  " << w["v"].get<std::string>() << " square " << w["square"].get<std::string>()
                       << " div " << w["divisibility"].get<std::string>() << "\n";
            });
            return 0;
        }
    } catch (const lat::cap_exceeded& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
