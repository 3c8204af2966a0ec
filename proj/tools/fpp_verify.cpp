// fpp-verify: batch verification front-end for the fake-projective-plane
// toolkit. Subcommands mirror the library: verify, vanish, resolve, quotient,
// reider, homology, explain, export.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpp/geometry.hpp"
#include "fpp/simplicial.hpp"
#include "fpp/vanishing.hpp"
#include "fpp/verify.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 1;
    }
    out << text;
    return out.good() ? 0 : 1;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

fpp::DivisorClass parse_class(const fpp::FinAbGroup& tor, const std::string& spec) {
    // "deg:c1,c2,..." or just "c1,c2,..." for degree 1
    std::string s = spec;
    std::int64_t degree = 1;
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        degree = std::stoll(s.substr(0, colon));
        s = s.substr(colon + 1);
    }
    std::vector<std::int64_t> coords;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) coords.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return fpp::DivisorClass{degree, tor.reduce(fpp::GroupElement{coords})};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic verification toolkit for the bicanonical geometry of fake "
                 "projective planes"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    app.add_flag("--json", json, "emit JSON instead of text");

    // verify
    auto* verify = app.add_subcommand("verify", "run the full check suite");
    std::uint64_t seed = 20260808;
    std::string registry_path, out_path;
    verify->add_option("--seed", seed, "seed for the randomized property checks");
    verify->add_option("--registry", registry_path, "JSON registry file (default: builtin)");
    verify->add_option("--out", out_path, "write the report to a file");

    // vanish
    auto* vanish = app.add_subcommand("vanish", "vanishing report for one surface");
    std::string label, explain_class_spec;
    vanish->add_option("label", label, "registry label")->required();
    vanish->add_option("--explain", explain_class_spec,
                       "print the proof chain for one class, e.g. --explain 1:3 or --explain 3");

    // resolve
    auto* resolve = app.add_subcommand("resolve", "Hirzebruch-Jung resolution of 1/n(1,q)");
    std::int64_t res_n = 0, res_q = 0;
    resolve->add_option("n", res_n)->required();
    resolve->add_option("q", res_q)->required();

    // quotient
    auto* quotient = app.add_subcommand("quotient", "quotient-surface invariants");
    std::string quotient_type;
    quotient->add_option("type", quotient_type, "C3, C3xC3, C7 or G21")->required();

    // reider
    auto* reider = app.add_subcommand("reider", "numerical Reider filter on the rank-1 lattice");
    std::int64_t l2 = 9, degree = 3;
    std::string mode = "sep";
    reider->add_option("--l2", l2, "L^2");
    reider->add_option("--degree", degree, "degree of L against the square-1 generator");
    reider->add_option("--mode", mode, "bp (base point) or sep (separation)");

    // homology
    auto* homology = app.add_subcommand("homology", "H1 of a simplicial complex from JSON");
    std::string complex_path, action_path;
    homology->add_option("file", complex_path, "complex JSON file")->required();
    homology->add_option("--action", action_path, "group action JSON file");

    // explain
    auto* explain = app.add_subcommand("explain", "derivation chain of a named check");
    std::string check_name;
    explain->add_option("check", check_name, "check name, e.g. vanishing.row7")->required();

    // export
    auto* export_cmd = app.add_subcommand("export", "export the registry or the full report");
    std::string what, export_path;
    export_cmd->add_option("what", what, "registry or report")->required();
    export_cmd->add_option("--out", export_path, "output path (default: stdout)");
    export_cmd->add_option("--seed", seed, "seed for the report export");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*verify) {
            std::vector<fpp::FppDescriptor> rows = fpp::registry();
            if (!registry_path.empty()) {
                std::ifstream in(registry_path);
                if (!in) {
                    std::cerr << "cannot read " << registry_path << "\n";
                    return 1;
                }
                rows = fpp::registry_from_json(nlohmann::json::parse(in));
            }
            fpp::VerificationRun run = fpp::run_all_checks(seed, rows);
            int rc = write_output(json ? dump(fpp::to_json(run)) : fpp::format_text(run), out_path);
            return rc != 0 ? rc : (run.ok() ? 0 : 1);
        }
        if (*vanish) {
            const fpp::FppDescriptor& surface = fpp::find_descriptor(label);
            fpp::VanishingReport rep = fpp::run_vanishing(surface);
            if (!explain_class_spec.empty()) {
                fpp::DivisorClass cls = parse_class(surface.h1, explain_class_spec);
                std::cout << fpp::explain_class(surface, rep, cls);
                return 0;
            }
            if (json) {
                std::cout << dump(fpp::to_json(rep));
            } else {
                std::cout << "surface " << rep.surface << "\n"
                          << "  candidates: " << rep.candidates.size() << "\n"
                          << "  proved non-effective: " << rep.proved.size() << "\n"
                          << "  undetermined: " << rep.undetermined.size() << "\n";
                for (const auto& c : rep.undetermined)
                    std::cout << "    " << fpp::divisor_to_string(c) << "\n";
                std::cout << "  orbits: " << rep.undetermined_orbits.size()
                          << ", exclusion pairs: " << rep.exclusions.size()
                          << ", at most " << rep.max_simultaneously_effective
                          << " simultaneously effective\n"
                          << "  branches: " << rep.offsets_checked.size()
                          << (rep.branch_independent ? " (independent)" : " (DIFFER)") << "\n";
            }
            return 0;
        }
        if (*resolve) {
            fpp::ResolutionGraph g = fpp::hirzebruch_jung(res_n, res_q);
            if (json) {
                std::cout << dump(fpp::to_json(g));
            } else {
                std::cout << res_n << "/" << res_q << " = [";
                for (std::size_t i = 0; i < g.hj.size(); ++i)
                    std::cout << (i ? "," : "") << g.hj[i];
                std::cout << "], discrepancies (";
                for (std::size_t i = 0; i < g.discrepancies.size(); ++i)
                    std::cout << (i ? ", " : "") << fpp::rational_to_string(g.discrepancies[i]);
                std::cout << ")" << (g.is_du_val() ? ", du Val" : "") << "\n";
            }
            return 0;
        }
        if (*quotient) {
            fpp::QuotientType t;
            if (quotient_type == "C3")
                t = fpp::QuotientType::C3;
            else if (quotient_type == "C3xC3")
                t = fpp::QuotientType::C3xC3;
            else if (quotient_type == "C7")
                t = fpp::QuotientType::C7;
            else if (quotient_type == "G21")
                t = fpp::QuotientType::G21;
            else {
                std::cerr << "unknown quotient type " << quotient_type
                          << " (expected C3, C3xC3, C7, G21)\n";
                return 1;
            }
            fpp::QuotientInvariants q = fpp::quotient_invariants_for(t);
            if (json) {
                std::cout << dump(fpp::to_json(q));
            } else {
                std::cout << "quotient by " << quotient_type
                          << ": K^2 = " << fpp::rational_to_string(q.k2_resolution)
                          << ", e = " << q.euler_resolution << ", chi = " << q.chi << "\n";
            }
            return 0;
        }
        if (*reider) {
            fpp::ReiderMode m;
            if (mode == "bp")
                m = fpp::ReiderMode::BasePoint;
            else if (mode == "sep")
                m = fpp::ReiderMode::Separation;
            else {
                std::cerr << "unknown mode " << mode << " (expected bp or sep)\n";
                return 1;
            }
            auto cases = fpp::reider_filter(l2, 1, degree, m);
            if (json) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& c : cases)
                    arr.push_back({{"case", fpp::reider_case_name(c.case_id)},
                                   {"witness_multiple", c.witness_multiple},
                                   {"D2", c.d_square},
                                   {"DL", c.d_dot_l},
                                   {"KD", c.k_dot_d},
                                   {"p_a", c.p_a}});
                std::cout << dump({{"feasible_cases", arr}});
            } else {
                if (cases.empty()) std::cout << "no feasible case\n";
                for (const auto& c : cases) {
                    std::cout << fpp::reider_case_name(c.case_id) << ": D = " << c.witness_multiple
                              << " * generator, D^2 = " << c.d_square << ", DL = " << c.d_dot_l;
                    if (c.case_id == fpp::ReiderCase::SEP_D)
                        std::cout << ", K.D = " << c.k_dot_d << ", p_a = " << c.p_a;
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (*homology) {
            std::ifstream in(complex_path);
            if (!in) {
                std::cerr << "cannot read " << complex_path << "\n";
                return 1;
            }
            fpp::SimplicialComplex k = fpp::complex_from_json(nlohmann::json::parse(in));
            fpp::Homology1 h = fpp::h1(k);
            nlohmann::ordered_json out = {{"h1", fpp::homology_to_json(h)}};
            if (!action_path.empty()) {
                std::ifstream ain(action_path);
                if (!ain) {
                    std::cerr << "cannot read " << action_path << "\n";
                    return 1;
                }
                fpp::SimplicialAction a = fpp::action_from_json(nlohmann::json::parse(ain));
                auto surj = fpp::coinvariant_surjection_check(k, a);
                auto seq = fpp::exact_sequence_ii_check(k, a);
                out["coinvariant_surjection"] = {
                    {"stabilizers_generate", surj.stabilizers_generate},
                    {"coinvariants", surj.coinvariants.to_string()},
                    {"h1_quotient", surj.h1_quotient.to_string()},
                    {"surjective", surj.surjective},
                    {"kernel", surj.kernel.to_string()},
                    {"subdivisions_applied", surj.subdivisions_applied}};
                out["exact_sequence"] = {{"coinvariants", seq.coinvariants.to_string()},
                                         {"h1_quotient", seq.h1_quotient.to_string()},
                                         {"g_mod_k_ab", seq.g_mod_k_ab.to_string()},
                                         {"right_map_surjective", seq.right_map_surjective},
                                         {"middle_exact", seq.middle_exact}};
            }
            if (json) {
                std::cout << dump(out);
            } else {
                std::cout << "H1 = "
                          << fpp::FgAbInvariants{h.free_rank, h.torsion}.to_string() << "\n";
                if (!action_path.empty()) {
                    std::cout << "with action: see --json for the full report\n"
                              << dump(out);
                }
            }
            return 0;
        }
        if (*explain) {
            std::cout << fpp::explain_check(check_name) << "\n";
            return 0;
        }
        if (*export_cmd) {
            nlohmann::ordered_json j;
            if (what == "registry")
                j = fpp::registry_to_json();
            else if (what == "report")
                j = fpp::to_json(fpp::run_all_checks(seed));
            else {
                std::cerr << "unknown export target " << what << " (expected registry or report)\n";
                return 1;
            }
            return write_output(dump(j), export_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
