#include "rdil/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rdil/generators.hpp"
#include "rdil/io.hpp"

namespace rdil {

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitConditionFails = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceCap = 3;

struct CommonOptions {
    std::string system_path;
    std::string rep_path;
    std::string poly_path;
    std::vector<int> box;
    double tol_psd = 1e-10;
    double tol_res = 1e-10;
    double null_cut = 1e-10;
    int trials = 100;
    std::uint64_t seed = 0;
    long cap = kDefaultDimensionCap;
    std::string format = "text";
    std::string out_path;
};

MultiIndex box_for(const CommonOptions& opt, int k) {
    if (opt.box.empty()) return MultiIndex::ones(k, 2);
    if (static_cast<int>(opt.box.size()) != k)
        throw InputError("--box needs " + std::to_string(k) + " entries");
    MultiIndex b(opt.box);
    if (!b.nonnegative()) throw InputError("--box entries must be nonnegative");
    return b;
}

void emit(const json& report, const std::string& text, const CommonOptions& opt,
          std::ostream& out) {
    if (!opt.out_path.empty()) write_json_file(report, opt.out_path);
    if (opt.format == "json")
        out << report.dump(2) << '\n';
    else
        out << text;
}

Representation load_inputs(const CommonOptions& opt) {
    ProductSystem sys = load_system(opt.system_path);
    sys.require_coherent();
    Representation rep = load_representation(opt.rep_path, std::move(sys));
    rep.set_dimension_cap(opt.cap);
    return rep;
}

int cmd_validate(const CommonOptions& opt, std::ostream& out) {
    const Representation rep = load_inputs(opt);
    const ValidationReport report = validate(rep, opt.tol_res, opt.tol_res);
    std::ostringstream text;
    text << (report.valid ? "VALID" : "INVALID") << " representation (h=" << rep.hdim() << ")\n";
    for (int i = 0; i < rep.k(); ++i)
        text << "  sigma_max(T~(" << i + 1 << ")) = " << report.sigma_max[static_cast<size_t>(i)]
             << "  margin " << report.margins[static_cast<size_t>(i)] << "\n";
    for (const auto& p : report.commutation)
        text << "  commutation (" << p.i << "," << p.j << ") residual " << p.residual << "\n";
    emit(validation_to_json(report), text.str(), opt, out);
    return report.valid ? kExitPass : kExitConditionFails;
}

int cmd_brehmer(const CommonOptions& opt, std::ostream& out) {
    const Representation rep = load_inputs(opt);
    const BrehmerCertificate cert = check_regular_dilation(rep, opt.tol_psd);
    std::ostringstream text;
    text << (cert.condition_d ? "CONDITION (D) HOLDS" : "CONDITION (D) FAILS") << "\n";
    for (const auto& s : cert.subsets) {
        text << "  v={";
        for (size_t x = 0; x < s.v.size(); ++x) text << (x ? "," : "") << s.v[x];
        text << "}  min eigenvalue " << s.min_eigenvalue << "  (dim " << s.dim << ")\n";
    }
    emit(brehmer_to_json(cert), text.str(), opt, out);
    return cert.condition_d ? kExitPass : kExitConditionFails;
}

int cmd_dcheck(const CommonOptions& opt, std::ostream& out) {
    const Representation rep = load_inputs(opt);
    const DoublyCommutingReport report = doubly_commuting_report(rep, opt.tol_res);
    std::ostringstream text;
    text << (report.doubly_commuting ? "DOUBLY COMMUTING" : "NOT DOUBLY COMMUTING")
         << "  max residual " << report.max_residual << "\n";
    for (const auto& p : report.pairs)
        text << "  pair (" << p.i << "," << p.j << ") residual " << p.residual << "\n";
    emit(dc_report_to_json(report), text.str(), opt, out);
    return report.doubly_commuting ? kExitPass : kExitConditionFails;
}

int cmd_comp_identities(const CommonOptions& opt, std::ostream& out) {
    const Representation rep = load_inputs(opt);
    const MultiIndex box = box_for(opt, rep.k());
    const CompIdentityResiduals res = verify_comp_identities(rep, box);
    std::ostringstream text;
    text << "||R - S*DS|| = " << res.r_sds << "\n||SL - I|| = " << res.sl_i
         << "\n||D - L*RL|| = " << res.d_lrl << "\n";
    json j = comp_residuals_to_json(res);
    j["box"] = box.entries();
    emit(j, text.str(), opt, out);
    return res.max() <= opt.tol_res ? kExitPass : kExitConditionFails;
}

int cmd_dilate(const CommonOptions& opt, std::ostream& out) {
    const Representation rep = load_inputs(opt);
    const MultiIndex box = box_for(opt, rep.k());
    DilationOptions dopts;
    dopts.tol_psd = opt.tol_psd;
    dopts.null_cut = opt.null_cut;
    dopts.coordinate_seed = opt.seed;
    BrehmerCertificate cert;
    try {
        const TruncatedDilation dil = construct_dilation(rep, box, dopts);
        cert = check_regular_dilation(rep, opt.tol_psd);
        const DilationVerification ver = verify_dilation(rep, dil);
        const CompIdentityResiduals comp = verify_comp_identities(rep, box);
        const std::vector<Index> ranks = gram_rank_profile(rep, box, opt.null_cut);
        std::ostringstream text;
        text << "dilation over box " << box.to_string() << ": K dimension " << dil.kdim() << "\n"
             << "  ||W*W - I|| = " << ver.embed_isometry << "\n";
        for (int i = 0; i < rep.k(); ++i)
            text << "  V~(" << i + 1
                 << ") interior isometry residual " << ver.shift_isometry[static_cast<size_t>(i)]
                 << ", adjoint intertwining " << ver.adjoint_intertwining[static_cast<size_t>(i)]
                 << "\n";
        text << "  symbol compression residual " << ver.symbol_max << "\n"
             << "  isometry-lemma residual " << ver.isom_max
             << (ver.isom_complete ? "" : " (large grades skipped)") << "\n";
        text << "  factorization residuals " << comp.r_sds << " / " << comp.sl_i << " / "
             << comp.d_lrl << "\n";
        if (dil.ambiguous_count() > 0)
            text << "  WARNING: " << dil.ambiguous_count()
                 << " eigenvalues inside the rank-cut ambiguity band\n";
        emit(dilation_report_to_json(dil, ver, cert, comp, ranks), text.str(), opt, out);
        return ver.max() <= 1e-8 ? kExitPass : kExitConditionFails;
    } catch (const ConditionDError& e) {
        std::ostringstream text;
        text << "REFUSED: " << e.what() << "\n";
        emit(brehmer_to_json(e.certificate), text.str(), opt, out);
        return kExitConditionFails;
    }
}

int cmd_fock(const CommonOptions& opt, std::ostream& out) {
    ProductSystem sys = load_system(opt.system_path);
    sys.require_coherent();
    const MultiIndex box = box_for(opt, sys.k());
    const TruncatedFock fock(sys, box, opt.cap);
    double toeplitz = 0.0, commutation = 0.0;
    for (int i = 1; i <= sys.k(); ++i) toeplitz = std::max(toeplitz, toeplitz_residual(fock, i));
    for (int i = 1; i <= sys.k(); ++i)
        for (int j = i + 1; j <= sys.k(); ++j)
            commutation = std::max(commutation, creation_commutation_residual(fock, i, j));
    json j{{"box", box.entries()},
           {"dim", fock.dim()},
           {"toeplitz_residual", toeplitz},
           {"commutation_residual", commutation}};
    std::ostringstream text;
    text << "truncated Fock space dim " << fock.dim() << " over box " << box.to_string() << "\n"
         << "  Toeplitz residual (interior) " << toeplitz << "\n"
         << "  creation commutation residual " << commutation << "\n";
    if (sys.is_scalar()) {
        const double oracle = fock_oracle_residual(fock);
        j["oracle_residual"] = oracle;
        text << "  closed-form shift oracle residual " << oracle << "\n";
    }
    emit(j, text.str(), opt, out);
    const double worst = std::max(
        {toeplitz, commutation, j.contains("oracle_residual") ? j["oracle_residual"].get<double>() : 0.0});
    return worst <= 1e-8 ? kExitPass : kExitConditionFails;
}

int cmd_vn(const CommonOptions& opt, std::ostream& out) {
    const Representation rep = load_inputs(opt);
    if (!is_doubly_commuting(rep, opt.tol_res))
        throw InputError("the polynomial-norm inequality needs a doubly commuting representation");
    const NcPolynomial poly = load_polynomial(opt.poly_path);
    const int n_max = opt.box.empty() ? 4 : *std::max_element(opt.box.begin(), opt.box.end());
    const VnReport report = vn_margin(rep, poly, n_max, opt.cap);
    std::ostringstream text;
    text << "||p(T)|| = " << report.norm_t << "\n";
    for (size_t x = 0; x < report.norm_s_by_n.size(); ++x)
        text << "||p(S)|| over box " << x + 1 << ": " << report.norm_s_by_n[x] << "\n";
    text << "margin = " << report.margin << (report.monotone ? "" : "  (NOT monotone)") << "\n";
    emit(vn_report_to_json(report, poly), text.str(), opt, out);
    return (report.margin >= -1e-8 && report.monotone) ? kExitPass : kExitConditionFails;
}

int cmd_chars(const CommonOptions& opt, const std::vector<std::string>& point_args,
              std::ostream& out) {
    ProductSystem sys = load_system(opt.system_path);
    sys.require_coherent();
    if (!sys.is_scalar()) throw InputError("characters are defined for scalar systems");
    const auto lambda = sys.lambda_matrix();
    if (static_cast<int>(point_args.size()) != sys.k())
        throw InputError("--point needs k complex entries (re,im each)");
    std::vector<Complex> t;
    for (const std::string& s : point_args) {
        const auto comma = s.find(',');
        if (comma == std::string::npos) throw InputError("point entries look like re,im");
        try {
            t.emplace_back(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
        } catch (const std::exception&) {
            throw InputError("cannot parse point entry " + s);
        }
    }
    const CharacterVerdict verdict = character_check(lambda, t);
    json j{{"accepted", verdict.accepted}, {"violations", verdict.violations}};
    std::ostringstream text;
    text << (verdict.accepted ? "ACCEPTED" : "REJECTED") << "\n";
    for (const auto& v : verdict.violations) text << "  " << v << "\n";
    if (verdict.accepted) {
        const Representation rep = scalar_tuple(t, lambda);
        const bool valid = validate(rep).valid;
        const bool dc = is_doubly_commuting(rep);
        j["validates"] = valid;
        j["doubly_commuting"] = dc;
        text << "  induces a " << (valid ? "valid" : "INVALID") << ", "
             << (dc ? "doubly commuting" : "NOT doubly commuting") << " h=1 representation\n";
    }
    emit(j, text.str(), opt, out);
    return verdict.accepted ? kExitPass : kExitConditionFails;
}

int cmd_search(const CommonOptions& opt, std::ostream& out) {
    if (opt.trials < 1) throw InputError("--trials must be at least 1");
    Rng rng(opt.seed ? opt.seed : 1);
    int n_valid = 0, n_dc = 0, n_cond = 0, n_commuting_not_d = 0;
    json violations = json::array();
    json counterexamples = json::array();
    for (int trial = 0; trial < opt.trials; ++trial) {
        Representation rep = [&]() -> Representation {
            switch (trial % 5) {
                case 0: {
                    std::vector<Complex> t;
                    const int k = rng.uniform_int(2, 3);
                    for (int i = 0; i < k; ++i)
                        t.push_back(rng.uniform(0.0, 0.95) * rng.unit_phase());
                    return scalar_tuple(t);
                }
                case 1:
                    return scaled_twisted_unitaries(rng, rng.uniform_int(2, 3), rng.uniform_int(2, 4));
                case 2: {
                    const int k = rng.uniform_int(2, 3);
                    return tensor_doubly_commuting(rng, k, std::vector<int>(static_cast<size_t>(k), 1),
                                                   std::vector<Index>(static_cast<size_t>(k), 2));
                }
                case 3: {
                    const int k = rng.uniform_int(2, 3);
                    return random_commuting(rng, k, std::vector<int>(static_cast<size_t>(k), 1),
                                            rng.uniform_int(2, 3));
                }
                default: {
                    std::vector<Complex> a;
                    for (int i = 0; i < 3; ++i) a.push_back(rng.uniform(0.0, 1.0) * rng.unit_phase());
                    return nilpotent_family(a);
                }
            }
        }();
        rep.set_dimension_cap(opt.cap);
        const bool valid = validate(rep, opt.tol_res, opt.tol_res).valid;
        if (!valid) continue;
        ++n_valid;
        const bool dc = is_doubly_commuting(rep, opt.tol_res);
        const BrehmerCertificate cert = check_regular_dilation(rep, opt.tol_psd);
        if (dc) ++n_dc;
        if (cert.condition_d) ++n_cond;
        if (dc && !cert.condition_d) {
            json item{{"trial", trial},
                      {"representation", representation_to_json(rep)},
                      {"system", system_to_json(rep.system())},
                      {"certificate", brehmer_to_json(cert)}};
            violations.push_back(std::move(item));
        }
        if (!dc && !cert.condition_d && counterexamples.size() < 5) {
            json item{{"trial", trial},
                      {"representation", representation_to_json(rep)},
                      {"system", system_to_json(rep.system())},
                      {"certificate", brehmer_to_json(cert)}};
            counterexamples.push_back(std::move(item));
            ++n_commuting_not_d;
        } else if (!dc && !cert.condition_d) {
            ++n_commuting_not_d;
        }
    }
    json j{{"trials", opt.trials},
           {"seed", opt.seed},
           {"valid", n_valid},
           {"doubly_commuting", n_dc},
           {"condition_d", n_cond},
           {"commuting_without_condition_d", n_commuting_not_d},
           {"theorem_violations", violations},
           {"expected_counterexamples", counterexamples}};
    std::ostringstream text;
    text << "trials " << opt.trials << ": valid " << n_valid << ", doubly commuting " << n_dc
         << ", condition (D) " << n_cond << ", commuting-but-failing " << n_commuting_not_d << "\n";
    if (!violations.empty())
        text << "THEOREM VIOLATION: doubly commuting instance failing condition (D) -- see report\n";
    emit(j, text.str(), opt, out);
    return violations.empty() ? kExitPass : kExitConditionFails;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"verification tools for twisted multishift dilations"};
    app.require_subcommand(1);
    CommonOptions opt;

    const auto add_common = [&](CLI::App* cmd, bool needs_sys, bool needs_rep) {
        if (needs_sys) cmd->add_option("--system", opt.system_path, "product system JSON")->required();
        if (needs_rep) cmd->add_option("--rep", opt.rep_path, "representation JSON")->required();
        cmd->add_option("--box", opt.box, "truncation box, one entry per generator")->delimiter(',');
        cmd->add_option("--tol-psd", opt.tol_psd, "PSD tolerance");
        cmd->add_option("--tol-res", opt.tol_res, "residual tolerance");
        cmd->add_option("--null-cut", opt.null_cut, "relative rank cut");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--cap", opt.cap, "flattened dimension cap");
        cmd->add_option("--format", opt.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--out", opt.out_path, "write the JSON report here");
    };

    auto* validate_cmd = app.add_subcommand("validate", "contractivity and commutation");
    add_common(validate_cmd, true, true);
    auto* brehmer_cmd = app.add_subcommand("brehmer", "positivity condition for regular dilation");
    add_common(brehmer_cmd, true, true);
    auto* dcheck_cmd = app.add_subcommand("dcheck", "doubly commuting check");
    add_common(dcheck_cmd, true, true);
    auto* comp_cmd = app.add_subcommand("comp-identities", "Gram factorization identities");
    add_common(comp_cmd, true, true);
    auto* dilate_cmd = app.add_subcommand("dilate", "construct and verify the truncated dilation");
    add_common(dilate_cmd, true, true);
    auto* fock_cmd = app.add_subcommand("fock", "truncated creation operators");
    add_common(fock_cmd, true, false);
    auto* vn_cmd = app.add_subcommand("vn", "polynomial norm margins");
    add_common(vn_cmd, true, true);
    vn_cmd->add_option("--poly", opt.poly_path, "polynomial JSON")->required();
    auto* chars_cmd = app.add_subcommand("chars", "character-set membership");
    add_common(chars_cmd, true, false);
    std::vector<std::string> point_args;
    chars_cmd->add_option("--point", point_args, "k complex entries, re,im each")->required();
    auto* search_cmd = app.add_subcommand("search", "randomized counterexample search");
    add_common(search_cmd, false, false);
    search_cmd->add_option("--trials", opt.trials, "number of sampled representations");

    std::vector<std::string> argv_like = args;
    std::reverse(argv_like.begin(), argv_like.end());
    try {
        app.parse(argv_like);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitPass;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(opt, out);
        if (brehmer_cmd->parsed()) return cmd_brehmer(opt, out);
        if (dcheck_cmd->parsed()) return cmd_dcheck(opt, out);
        if (comp_cmd->parsed()) return cmd_comp_identities(opt, out);
        if (dilate_cmd->parsed()) return cmd_dilate(opt, out);
        if (fock_cmd->parsed()) return cmd_fock(opt, out);
        if (vn_cmd->parsed()) return cmd_vn(opt, out);
        if (chars_cmd->parsed()) return cmd_chars(opt, point_args, out);
        if (search_cmd->parsed()) return cmd_search(opt, out);
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DimensionError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    err << "no subcommand\n";
    return kExitInputError;
}

}  // namespace rdil
