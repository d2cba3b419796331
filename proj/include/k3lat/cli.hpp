#pragma once

#include "json_io.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace k3lat {

struct RunResult {
    Report report;
    int exit_code = 0;
    std::string text;  // what the command printed
};

inline IntMat read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file " + path);
    std::size_t rows = 0, cols = 0;
    in >> rows >> cols;
    if (!in || rows == 0 || cols == 0) throw std::runtime_error("bad matrix header in " + path);
    IntMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            long long v;
            in >> v;
            if (!in) throw std::runtime_error("truncated matrix file " + path);
            m(i, j) = v;
        }
    return m;
}

inline LatticePtr parse_lattice_name(const std::string& name, int* hilb_n = nullptr) {
    if (name == "mukai") return mukai_vector_lattice();
    if (name == "k3") return make_standard(StdLattice::K3);
    if (name.rfind("hilb:", 0) == 0) {
        int n = std::stoi(name.substr(5));
        if (hilb_n) *hilb_n = n;
        return make_hilbert(n);
    }
    throw CLI::ValidationError("--lattice", "expected hilb:N, mukai, or k3");
}

namespace detail {

inline std::string render_checks(const Report& rep) {
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.pass) os << " (expected " << c.expected << ", got " << c.actual << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace detail

/// Dispatches one CLI invocation. argv excludes the program name. Exit codes:
/// 0 success, 1 failed check, 2 usage error.
inline RunResult run(const std::vector<std::string>& argv) {
    RunResult result;
    std::ostringstream out;

    CLI::App app{"exact lattice arithmetic for the monodromy of Hilbert schemes of K3 surfaces"};
    app.require_subcommand(1);
    bool json = false;

    // pn
    auto* pn_cmd = app.add_subcommand("pn", "enumerate the classification set P_n");
    std::int64_t pn_n = 0;
    pn_cmd->add_option("--n", pn_n, "number of points")->required();
    pn_cmd->add_flag("--json", json, "JSON output");

    // windex
    auto* windex_cmd = app.add_subcommand("windex", "index of the reflection group W in O+");
    std::int64_t windex_n = 0;
    windex_cmd->add_option("--n", windex_n, "number of points")->required();
    windex_cmd->add_flag("--json", json, "JSON output");

    // residual
    auto* residual_cmd = app.add_subcommand("residual", "units of the residual orthogonal group");
    std::int64_t residual_n = 0;
    residual_cmd->add_option("--n", residual_n, "number of points")->required();
    residual_cmd->add_flag("--json", json, "JSON output");

    // in-w
    auto* inw_cmd = app.add_subcommand("in-w", "membership of an isometry in W");
    std::string inw_lattice, inw_matrix;
    inw_cmd->add_option("--lattice", inw_lattice, "hilb:N")->required();
    inw_cmd->add_option("--matrix", inw_matrix, "matrix file (\"rows cols\" header, row-major)")->required();
    inw_cmd->add_flag("--json", json, "JSON output");

    // example7
    auto* ex7_cmd = app.add_subcommand("example7", "reproduce the genus-2 reflection on Hilb(7)");
    ex7_cmd->add_flag("--json", json, "JSON output");

    // chern
    auto* chern_cmd = app.add_subcommand("chern", "chern class / character conversions");
    int chern_k = 0;
    chern_cmd->add_option("--to-character", chern_k, "express ch_1..ch_K in chern classes")->required();
    chern_cmd->add_flag("--json", json, "JSON output");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verify a chern-class lemma");
    std::string verify_lemma;
    int verify_i = 0;
    verify_cmd->add_option("--lemma", verify_lemma, "sigma-linear or twist")->required();
    verify_cmd->add_option("--i", verify_i, "degree index")->required();
    verify_cmd->add_flag("--json", json, "JSON output");

    // ext-order
    auto* ext_cmd = app.add_subcommand("ext-order", "order bound from the master formula");
    std::int64_t ext_n = 0, ext_i = 0;
    ext_cmd->add_option("--n", ext_n, "number of points")->required();
    ext_cmd->add_option("--i", ext_i, "degree index")->required();
    ext_cmd->add_flag("--json", json, "JSON output");

    // mukai-middle
    auto* mm_cmd = app.add_subcommand("mukai-middle", "extension order by equivariant SNF brute force");
    std::int64_t mm_n = 0;
    std::size_t mm_gens = 16;
    std::uint64_t mm_seed = 1;
    mm_cmd->add_option("--n", mm_n, "number of points")->required();
    mm_cmd->add_option("--gens", mm_gens, "generators per batch");
    mm_cmd->add_option("--seed", mm_seed, "sampling seed");
    mm_cmd->add_flag("--json", json, "JSON output");

    // count-nonbirational
    auto* cnb_cmd = app.add_subcommand("count-nonbirational", "count of non-birational moduli spaces");
    std::int64_t cnb_n = 0;
    cnb_cmd->add_option("--n", cnb_n, "number of points")->required();
    cnb_cmd->add_flag("--json", json, "JSON output");

    // verify-all
    auto* all_cmd = app.add_subcommand("verify-all", "run the full verification battery");
    all_cmd->add_flag("--json", json, "JSON output");

    std::vector<const char*> cargs;
    cargs.push_back("k3lat");
    for (const auto& a : argv) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        result.exit_code = 0;
        result.text = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 2;
        result.text = std::string(e.what()) + "\n" + app.help();
        return result;
    }

    Report& rep = result.report;
    try {
        if (*pn_cmd) {
            rep.command = "pn";
            rep.inputs["n"] = pn_n;
            auto entries = enumerate_pn(pn_n);
            nlohmann::json ej = nlohmann::json::array();
            for (const auto& e : entries) ej.push_back({e.r, e.s});
            rep.outputs = {{"n", pn_n}, {"entries", ej}, {"count", entries.size()}};
            if (json) {
                out << rep.outputs.dump() << "\n";
            } else {
                out << "P_" << pn_n << " (" << entries.size() << " classes):\n";
                for (const auto& e : entries) out << "  (" << e.r << ", " << e.s << ")\n";
            }
        } else if (*windex_cmd) {
            rep.command = "windex";
            rep.inputs["n"] = windex_n;
            std::int64_t idx = w_index(windex_n);
            rep.outputs = {{"n", windex_n}, {"index", idx}};
            if (json)
                out << rep.outputs.dump() << "\n";
            else
                out << idx << "\n";
        } else if (*residual_cmd) {
            rep.command = "residual";
            rep.inputs["n"] = residual_n;
            auto units = residual_orthogonal_group(residual_n);
            rep.outputs = {{"n", residual_n}, {"residual_units", units}};
            if (json) {
                out << rep.outputs.dump() << "\n";
            } else {
                out << "units mod " << 2 * residual_n - 2 << ":";
                for (auto u : units) out << " " << u;
                out << "\n";
            }
        } else if (*inw_cmd) {
            rep.command = "in-w";
            rep.inputs = {{"lattice", inw_lattice}, {"matrix", inw_matrix}};
            int n = 0;
            auto lat = parse_lattice_name(inw_lattice, &n);
            if (n == 0) throw CLI::ValidationError("--lattice", "in-w requires a hilb:N lattice");
            IntMat m = read_matrix_file(inw_matrix);
            if (!is_isometry(*lat, m)) {
                rep.outputs = {{"lattice", lattice_to_json(*lat)}, {"isometry", false}};
                rep.check_true("matrix is an isometry", false);
            } else {
                auto wm = in_w(oriented_hilbert(n), m);
                rep.outputs = {{"lattice", lattice_to_json(*lat)},
                               {"isometry", true},
                               {"in_w", wm.in_w},
                               {"orientation", wm.orientation},
                               {"residual", to_int64(wm.residual.multiplier)},
                               {"modulus", to_int64(wm.residual.modulus)}};
            }
            if (json)
                out << rep.outputs.dump() << "\n";
            else if (rep.outputs.contains("in_w"))
                out << (rep.outputs["in_w"].get<bool>() ? "in W" : "not in W") << " (orientation "
                    << rep.outputs["orientation"].get<int>() << ", residual "
                    << rep.outputs["residual"].get<std::int64_t>() << " mod "
                    << rep.outputs["modulus"].get<std::int64_t>() << ")\n";
            else
                out << "not an isometry\n";
        } else if (*ex7_cmd) {
            rep = example7_report();
            if (json)
                out << rep.to_json().dump() << "\n";
            else
                out << detail::render_checks(rep);
        } else if (*chern_cmd) {
            rep.command = "chern";
            rep.inputs["to-character"] = chern_k;
            auto ch = chern_to_character(chern_k);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& e : ch) arr.push_back(e.to_string());
            rep.outputs = {{"k", chern_k}, {"ch", arr}};
            if (json) {
                out << rep.outputs.dump() << "\n";
            } else {
                for (int i = 1; i <= chern_k; ++i)
                    out << "ch" << i << " = " << ch[static_cast<std::size_t>(i - 1)].to_string() << "\n";
            }
        } else if (*verify_cmd) {
            rep.command = "verify";
            rep.inputs = {{"lemma", verify_lemma}, {"i", verify_i}};
            if (verify_lemma == "sigma-linear") {
                if (verify_i == 2) {
                    bool ok = sigma_quadratic_is_additive();
                    rep.check_true("-2 ch_2 is additive (i = 2 branch)", ok);
                    rep.outputs = {{"lemma", verify_lemma}, {"i", verify_i}, {"holds", ok}};
                } else {
                    auto res = verify_sigma_linear(verify_i);
                    rep.check_true("sigma linear mod A_{2i-4} at i = " + std::to_string(verify_i), res.linear);
                    rep.outputs = {{"lemma", verify_lemma},
                                   {"i", verify_i},
                                   {"holds", res.linear},
                                   {"residual", res.residual.to_string()}};
                }
            } else if (verify_lemma == "twist") {
                bool ok = verify_twist_formula(verify_i);
                rep.check_true("twist formula at i = " + std::to_string(verify_i), ok);
                rep.outputs = {{"lemma", verify_lemma}, {"i", verify_i}, {"holds", ok}};
            } else {
                throw CLI::ValidationError("--lemma", "expected sigma-linear or twist");
            }
            if (json)
                out << rep.outputs.dump() << "\n";
            else
                out << detail::render_checks(rep);
        } else if (*ext_cmd) {
            rep.command = "ext-order";
            rep.inputs = {{"n", ext_n}, {"i", ext_i}};
            Int order = master_order(ext_n, ext_i);
            rep.outputs = {{"n", ext_n}, {"i", ext_i}, {"order", to_int64(order)}, {"method", "formula"}};
            if (json)
                out << rep.outputs.dump() << "\n";
            else
                out << order << "\n";
        } else if (*mm_cmd) {
            rep.command = "mukai-middle";
            rep.inputs = {{"n", mm_n}, {"gens", mm_gens}, {"seed", mm_seed}};
            auto res = mukai_middle_ext_order(static_cast<int>(mm_n), mm_gens, mm_seed);
            rep.outputs = {{"n", mm_n},
                           {"order", to_int64(res.order)},
                           {"method", "snf"},
                           {"stabilized", res.stabilized},
                           {"rank", res.solution_rank}};
            if (json)
                out << rep.outputs.dump() << "\n";
            else
                out << res.order << (res.stabilized ? " (stabilized)" : " (NOT stabilized)") << "\n";
        } else if (*cnb_cmd) {
            rep.command = "count-nonbirational";
            rep.inputs["n"] = cnb_n;
            rep.outputs = {{"n", cnb_n}, {"count", count_nonbirational(cnb_n)}};
            if (json)
                out << rep.outputs.dump() << "\n";
            else
                out << count_nonbirational(cnb_n) << "\n";
        } else if (*all_cmd) {
            rep.command = "verify-all";
            auto reports = verify_all();
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) {
                for (const auto& c : r.checks) rep.checks.push_back(c);
                arr.push_back(r.to_json());
                if (!json) out << "== " << r.command << "\n" << detail::render_checks(r);
            }
            rep.outputs = {{"reports", arr}};
            if (json) out << rep.to_json().dump() << "\n";
        }
    } catch (const CLI::ValidationError& e) {
        result.exit_code = 2;
        result.text = std::string("error: ") + e.what() + "\n";
        return result;
    } catch (const std::exception& e) {
        rep.check_true(std::string("error: ") + e.what(), false);
        result.exit_code = 1;
        result.text = out.str() + "error: " + e.what() + "\n";
        return result;
    }

    result.exit_code = rep.all_passed() ? 0 : 1;
    result.text = out.str();
    return result;
}

}  // namespace k3lat
