#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "dn/dn_ops.hpp"
#include "dn/serialize.hpp"
#include "dn/monodromy.hpp"
#include "dn/spectral.hpp"
#include "dn/verify.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 numerical degeneracy.
enum ExitCode { kOk = 0, kVerifyFail = 1, kInputError = 2, kDegenerate = 3 };

struct CommonOpts {
    std::string input;
    std::string out;
    int expect_n = -1;  // when set, inputs must carry this order
    double tol_spectral = 1e-10;
    double tol_ode = 1e-12;
    double tol_mono = 1e-6;
    int truncation = 0;  // 0 = auto (n + 3)
    std::uint64_t seed = 1;
};

void check_expected_order(const CommonOpts& o, int n) {
    if (o.expect_n >= 0 && n != o.expect_n)
        throw dn::MalformedMatrix("input has order " + std::to_string(n) + ", expected --n " +
                                  std::to_string(o.expect_n));
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dn::ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw dn::ParseError(std::string("bad JSON: ") + e.what());
    }
    return j;
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream os(out);
    if (!os) throw dn::ParseError("cannot write '" + out + "'");
    os << j.dump(2) << "\n";
}

json config_block(const CommonOpts& o, const std::string& command) {
    return {{"tool", "dn"},
            {"version", kVersion},
            {"command", command},
            {"seed", o.seed},
            {"tolerances",
             {{"spectral", o.tol_spectral}, {"ode", o.tol_ode}, {"monodromy", o.tol_mono}}},
            {"truncation", o.truncation}};
}

json gaussian_json(const dn::Gaussian& g) {
    if (g.is_real()) return dn::to_string(g.re);
    return {{"re", dn::to_string(g.re)}, {"im", dn::to_string(g.im)}};
}

json poly_json(const dn::Poly& p) {
    json a = json::array();
    for (int k = 0; k <= p.degree(); ++k) a.push_back(gaussian_json(p.coeff(k)));
    return a;
}

dn::Poly poly_from_json(const json& j) {
    std::vector<dn::Gaussian> coeffs;
    for (const auto& c : j) {
        if (c.is_string())
            coeffs.push_back(dn::Gaussian::from_string(c.get<std::string>()));
        else
            coeffs.push_back(dn::Gaussian(dn::rational_from_string(c.at("re").get<std::string>()),
                                          dn::rational_from_string(c.at("im").get<std::string>())));
    }
    return dn::Poly(std::move(coeffs));
}

json canonical_json(const dn::CanonicalDN& c) {
    json g = json::array();
    for (const auto& p : c.g) g.push_back(poly_json(p));
    return g;
}

json cx_json(dn::cx z) { return json::array({z.real(), z.imag()}); }

json cmat_json(const dn::CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(cx_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

int cmd_construct(const CommonOpts& o) {
    json in = load_json(o.input);
    dn::DNMatrix a = dn::dn_matrix_from_json(in);
    check_expected_order(o, a.n());
    if (!a.exact()) throw dn::InexactInput("construct needs exact matrix entries");
    dn::WeylElement l = dn::build_l_infinity(a);
    dn::CanonicalDN c = dn::to_canonical(l, a.n());
    dn::CanonicalDN w = dn::to_dn0(c);
    json rep = {{"config", config_block(o, "construct")},
                {"n", a.n()},
                {"operator", dn::to_json(l)},
                {"operator_text", l.str("t")},
                {"g", canonical_json(c)},
                {"G", canonical_json(w)},
                {"symmetric", dn::check_symmetry(c)},
                {"selfadjoint_up_to_sign", dn::check_adjoint(l, a.n())}};
    emit(rep, o.out);
    return kOk;
}

int cmd_reconstruct(const CommonOpts& o) {
    json in = load_json(o.input);
    dn::CanonicalDN c;
    if (in.contains("g") && in.contains("n")) {
        c.n = in.at("n").get<int>();
        c.chart = dn::CanonicalDN::Chart::t_infinity;
        for (const auto& gp : in.at("g")) c.g.push_back(poly_from_json(gp));
        if (static_cast<int>(c.g.size()) != c.n + 1)
            throw dn::MalformedOperator("expected n+1 canonical coefficients");
    } else if (in.contains("operator") && in.contains("n")) {
        c = dn::to_canonical(dn::weyl_from_json(in.at("operator")), in.at("n").get<int>());
    } else {
        throw dn::ParseError("reconstruct expects fields 'n' and 'g' (or 'operator')");
    }
    check_expected_order(o, c.n);
    dn::DNMatrix a = dn::reconstruct(c);
    json rep = dn::to_json(a);
    rep["config"] = config_block(o, "reconstruct");
    emit(rep, o.out);
    return kOk;
}

int cmd_analyze(const CommonOpts& o) {
    json in = load_json(o.input);
    dn::DNMatrix a = dn::dn_matrix_from_json(in);
    check_expected_order(o, a.n());
    json rep = {{"config", config_block(o, "analyze")}, {"n", a.n()}};

    if (a.exact()) {
        dn::WeylElement l = dn::build_l_infinity(a);
        dn::CanonicalDN c = dn::to_canonical(l, a.n());
        rep["operator_text"] = l.str("t");
        rep["symmetric"] = dn::check_symmetry(c);
        try {
            dn::ResidueReport rr = dn::residues(l, a.n());
            json fin = json::array();
            for (const auto& e : rr.finite) {
                json je = {{"point", cx_json(e.point)},
                           {"residue", cx_json(e.residue)},
                           {"exact", e.exact}};
                if (e.exact) je["exact_residue"] = gaussian_json(e.exact_residue);
                fin.push_back(je);
            }
            rep["residues"] = {{"finite", fin},
                               {"infinity", gaussian_json(rr.infinity_residue)},
                               {"sum_residual", rr.sum_residual}};
        } catch (const dn::RepeatedSingularity& e) {
            rep["residues"] = {{"error", e.what()}};
        }
        dn::FuchsReport fr = dn::fuchs_test(l, a.n());
        json pts = json::array();
        for (const auto& p : fr.points) {
            json jp = {{"class", p.cls == dn::PointClass::regular ? "regular" : "irregular"}};
            if (p.at_infinity)
                jp["infinity"] = true;
            else
                jp["point"] = cx_json(p.point);
            pts.push_back(jp);
        }
        rep["fuchs"] = pts;
    }

    try {
        dn::ConnectionSpectrum spec = dn::eigendecompose(a, o.tol_spectral);
        dn::normalize_basis(spec, o.tol_spectral);
        dn::residue_matrices(spec);
        json ev = json::array();
        for (auto l : spec.lambdas) ev.push_back(cx_json(l));
        json traces = json::array(), ranks = json::array();
        for (const auto& s : spec.s) {
            dn::cx tr = 0;
            for (int i = 0; i < s.rows(); ++i) tr += s.at(i, i);
            traces.push_back(cx_json(tr));
            auto sv = dn::svd_jacobi(s);
            ranks.push_back(sv.s.size() > 1 ? sv.s[1] / std::max(sv.s[0], 1e-300) : 0.0);
        }
        dn::CMat ctjc = spec.c.transpose() * dn::j_matrix(a.n()) * spec.c;
        int trunc = o.truncation > 0 ? o.truncation : a.n() + 3;
        dn::NilpotencyCertificate cert = dn::infinity_exponents(a, trunc);
        rep["spectral"] = {{"eigenvalues", ev},
                           {"eigenbasis", cmat_json(spec.c)},
                           {"pairing_residual",
                            (ctjc - dn::CMat::identity(a.n() + 1)).norm_fro()},
                           {"residue_traces", traces},
                           {"residue_rank_ratios", ranks}};
        rep["infinity_exponents"] = {{"nilpotency_index", cert.index},
                                     {"pow_n_norm", cert.pow_n_norm},
                                     {"pow_np1_norm", cert.pow_np1_norm},
                                     {"truncation", cert.truncation}};
    } catch (const dn::DegenerateSpectrum& e) {
        rep["spectral"] = {{"degenerate", true}, {"reason", e.what()}};
        emit(rep, o.out);
        return kDegenerate;
    }
    emit(rep, o.out);
    return kOk;
}

int cmd_monodromy(const CommonOpts& o) {
    json in = load_json(o.input);
    dn::DNMatrix a = dn::dn_matrix_from_json(in);
    check_expected_order(o, a.n());
    dn::MonodromyOptions mo;
    mo.ode_tol = o.tol_ode;
    mo.spectral_tol = o.tol_spectral;
    dn::MonodromyReport rep;
    try {
        rep = dn::monodromy(a, mo);
    } catch (const dn::DegenerateSpectrum& e) {
        emit({{"config", config_block(o, "monodromy")}, {"degenerate", true}, {"reason", e.what()}},
             o.out);
        return kDegenerate;
    }
    json loops = json::array();
    dn::LoopPlan plan = dn::plan_loops(rep.lambdas);
    for (std::size_t j = 0; j < rep.lambdas.size(); ++j)
        loops.push_back({{"center", cx_json(rep.lambdas[j])},
                         {"radius", plan.finite[j].radius},
                         {"matrix", cmat_json(rep.local[j])}});
    json eigs = json::array();
    for (const auto& le : rep.local_eigenvalues) {
        json row = json::array();
        for (auto e : le) row.push_back(cx_json(e));
        eigs.push_back(row);
    }
    json reduced = json::array();
    for (const auto& m : rep.reduced) reduced.push_back(cmat_json(m));
    std::string sym = "none";
    if (rep.polarization.symmetry == dn::PolarizationForm::Symmetry::symmetric) sym = "symmetric";
    if (rep.polarization.symmetry == dn::PolarizationForm::Symmetry::skew) sym = "skew";
    json out = {{"config", config_block(o, "monodromy")},
                {"n", rep.n},
                {"base", cx_json(rep.base)},
                {"traversal", rep.traversal},
                {"loops", loops},
                {"infinity", cmat_json(rep.infinity)},
                {"local_eigenvalues", eigs},
                {"product_residual", rep.product_residual},
                {"unipotent", {{"pow_np1", rep.unipotent_pow_np1}, {"pow_n", rep.unipotent_pow_n}}},
                {"reduced", reduced},
                {"reduced_infinity", cmat_json(rep.reduced_infinity)},
                {"reduced_unipotent",
                 {{"pow_n", rep.reduced_pow_n}, {"pow_nm1", rep.reduced_pow_nm1}}},
                {"quotient_conditioning", rep.quotient_conditioning},
                {"polarization",
                 {{"dimension", rep.polarization.dimension},
                  {"symmetry", sym},
                  {"residual", rep.polarization.residual},
                  {"form", rep.polarization.dimension == 1 ? cmat_json(rep.polarization.g) : json()}}},
                {"ode_error_estimate", rep.ode_error_estimate}};
    emit(out, o.out);
    return kOk;
}

int cmd_verify(const CommonOpts& o, int samples, int max_n, bool heavy, bool corrupt) {
    dn::VerifyConfig cfg;
    cfg.seed = o.seed;
    cfg.samples = samples;
    cfg.max_n = max_n;
    cfg.max_det_size = std::min(6, max_n + 2);
    cfg.heavy = heavy;
    cfg.corrupt_symmetry = corrupt;
    cfg.tol_spectral = o.tol_spectral;
    cfg.tol_ode = o.tol_ode;
    cfg.tol_mono = o.tol_mono;
    auto results = dn::run_verification(cfg);
    bool all = true;
    json suites = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases << " cases";
        if (r.worst > 0) std::cout << ", worst " << r.worst;
        std::cout << ")";
        if (!r.detail.empty()) std::cout << " -- " << r.detail;
        std::cout << "\n";
        suites.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"cases", r.cases},
                          {"worst", r.worst},
                          {"detail", r.detail}});
    }
    json rep = {{"config", config_block(o, "verify")},
                {"samples", samples},
                {"max_n", max_n},
                {"heavy", heavy},
                {"pass", all},
                {"suites", suites}};
    if (!o.out.empty()) emit(rep, o.out);
    return all ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DN operator toolkit: construction, reconstruction, spectral analysis and "
                 "numerical monodromy of determinantal differential operators"};
    app.require_subcommand(1);

    CommonOpts o;
    int verify_samples = 10;
    int verify_max_n = 4;
    bool verify_heavy = false;
    bool verify_corrupt = false;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("input", o.input, "input JSON file")->required();
        cmd->add_option("--n", o.expect_n, "expected operator order (checked against the input)");
        cmd->add_option("--out", o.out, "output JSON path (default: stdout)");
        cmd->add_option("--tol-spectral", o.tol_spectral, "spectral gap tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-ode", o.tol_ode, "integrator relative tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-mono", o.tol_mono, "monodromy acceptance tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--truncation", o.truncation, "series truncation order (0 = auto)");
        cmd->add_option("--seed", o.seed, "seed recorded in the report");
    };

    CLI::App* construct = app.add_subcommand("construct", "matrix.json -> operator + canonical form");
    add_common(construct, true);
    CLI::App* reconstructc = app.add_subcommand("reconstruct", "operator.json -> matrix.json");
    add_common(reconstructc, true);
    CLI::App* analyze = app.add_subcommand("analyze", "residues, regularity, residue matrices");
    add_common(analyze, true);
    CLI::App* monodromyc = app.add_subcommand("monodromy", "numerical monodromy study");
    add_common(monodromyc, true);
    CLI::App* verify = app.add_subcommand("verify", "run the property suites");
    add_common(verify, false);
    verify->add_option("--samples", verify_samples, "samples per suite and size");
    verify->add_option("--max-n", verify_max_n, "largest operator order exercised");
    verify->add_flag("--heavy", verify_heavy, "include the integration-heavy suites");
    verify->add_flag("--corrupt-symmetry", verify_corrupt,
                     "corrupt the symmetric sampler (the equivalence suite must fail)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_construct(o);
        if (reconstructc->parsed()) return cmd_reconstruct(o);
        if (analyze->parsed()) return cmd_analyze(o);
        if (monodromyc->parsed()) return cmd_monodromy(o);
        if (verify->parsed()) {
            if (o.expect_n >= 1) verify_max_n = o.expect_n;
            return cmd_verify(o, verify_samples, verify_max_n, verify_heavy, verify_corrupt);
        }
    } catch (const dn::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const dn::MalformedMatrix& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const dn::MalformedOperator& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const dn::InexactInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const dn::DegenerateSpectrum& e) {
        std::cerr << "numerical degeneracy: " << e.what() << "\n";
        return kDegenerate;
    } catch (const dn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFail;
    }
    return kOk;
}
