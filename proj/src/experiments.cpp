#include "ontocell/experiments.hpp"

#include "ontocell/automaton.hpp"
#include "ontocell/cell.hpp"
#include "ontocell/io.hpp"
#include "ontocell/kernels.hpp"
#include "ontocell/kinetic.hpp"
#include "ontocell/linalg.hpp"
#include "ontocell/sieve.hpp"
#include "ontocell/su2_bridge.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace ontocell {

namespace fs = std::filesystem;
using nlohmann::json;

bool ExperimentResult::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

json load_config(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw SchemaError("config is not valid JSON: " + path);
    if (!doc.contains("schema") || doc["schema"] != kSchemaId)
        throw SchemaError("config must declare \"schema\": \"ontocell/1\"");
    return doc;
}

double tol_or(const RunConfig& rc, const std::string& key, double fallback) {
    const auto it = rc.tolerance_overrides.find(key);
    return it == rc.tolerance_overrides.end() ? fallback : it->second;
}

Check make_check(const std::string& name, double value, double threshold) {
    return Check{name, value, threshold, value <= threshold};
}

Check make_flag_check(const std::string& name, bool ok) {
    return Check{name, ok ? 1.0 : 0.0, 0.5, ok};
}

// ---- JSON -> domain structs -------------------------------------------------

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw SchemaError("missing numeric field: " + key);
    return j[key].get<double>();
}

int require_int(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw SchemaError("missing integer field: " + key);
    return j[key].get<int>();
}

HalfInt parse_ell_field(const json& j) {
    if (!j.contains("ell")) throw SchemaError("missing field: ell");
    const auto& e = j["ell"];
    try {
        if (e.is_string()) return parse_half_int(e.get<std::string>());
        if (e.is_number()) return parse_half_int(fmt_g17(e.get<double>()));
    } catch (const std::exception& ex) {
        throw SchemaError(std::string("bad ell: ") + ex.what());
    }
    throw SchemaError("ell must be a number or a fraction string");
}

std::pair<LatticeSpec, std::vector<ExchangeTerm>> parse_lattice_doc(const json& doc) {
    if (!doc.contains("lattice")) throw SchemaError("missing field: lattice");
    const json& lat = doc["lattice"];
    const double dt = lat.contains("delta_t") ? require_number(lat, "delta_t") : 1.0;
    if (!lat.contains("cells") || !lat["cells"].is_array() || lat["cells"].empty())
        throw SchemaError("lattice.cells must be a nonempty array");
    std::vector<int> ns;
    for (const auto& c : lat["cells"]) {
        if (c.is_number_integer()) ns.push_back(c.get<int>());
        else if (c.is_object()) ns.push_back(require_int(c, "N"));
        else throw SchemaError("lattice.cells entries must be integers or {\"N\": ...}");
    }
    LatticeSpec lattice;
    try {
        lattice = LatticeSpec(ns, dt);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad lattice: ") + e.what());
    }

    std::vector<ExchangeTerm> terms;
    if (doc.contains("terms")) {
        if (!doc["terms"].is_array()) throw SchemaError("terms must be an array");
        for (const auto& t : doc["terms"]) {
            ExchangeTerm term;
            term.target_cell = require_int(t, "target");
            term.k1 = require_int(t, "k1");
            term.k2 = require_int(t, "k2");
            if (t.contains("strength")) {
                const auto& s = t["strength"];
                if (s.is_string() && s.get<std::string>() == "pi") term.strength = kPi;
                else if (s.is_number()) term.strength = s.get<double>();
                else throw SchemaError("strength must be a number or \"pi\"");
            }
            if (t.contains("sign")) term.sign = require_int(t, "sign");
            if (t.contains("condition")) {
                SieveCondition cond;
                cond.sieve_cell = require_int(t["condition"], "cell");
                if (!t["condition"].contains("values") || !t["condition"]["values"].is_array())
                    throw SchemaError("condition.values must be an array");
                for (const auto& v : t["condition"]["values"]) cond.values.push_back(v.get<int>());
                term.condition = cond;
            }
            try {
                validate_term(lattice, term);
            } catch (const std::exception& e) {
                throw SchemaError(std::string("bad term: ") + e.what());
            }
            terms.push_back(term);
        }
    }
    return {lattice, terms};
}

SieveModelConfig parse_sieve_doc(const json& doc) {
    if (!doc.contains("sieve")) throw SchemaError("missing field: sieve");
    const json& s = doc["sieve"];
    auto num = [&](const char* key) -> double {
        if (!s.contains(key)) throw SchemaError(std::string("missing sieve field: ") + key);
        const auto& v = s[key];
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            const auto r = parse_rational(v.get<std::string>());
            if (!r) throw SchemaError(std::string("bad fraction in sieve field: ") + key);
            return r->value();
        }
        throw SchemaError(std::string("sieve field must be number or fraction: ") + key);
    };
    try {
        return SieveModelConfig(num("L"), num("A"), num("alpha"),
                                s.contains("n_max") ? require_int(s, "n_max") : 8);
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad sieve config: ") + e.what());
    }
}

KineticSpec parse_kinetic_doc(const json& doc) {
    if (!doc.contains("kinetic")) throw SchemaError("missing field: kinetic");
    const json& k = doc["kinetic"];
    const std::string preset = k.contains("preset") ? k["preset"].get<std::string>() : "custom";
    try {
        if (preset == "linear") {
            return KineticSpec::linear(k.contains("c") ? require_number(k, "c") : 1.0,
                                       require_number(k, "p_min"), require_number(k, "p_max"),
                                       require_int(k, "samples"));
        }
        if (preset == "quadratic-positive") {
            return KineticSpec::quadratic_positive(require_number(k, "p_min"),
                                                   require_number(k, "p_max"),
                                                   require_int(k, "samples"));
        }
        if (preset == "custom") {
            auto vec = [&](const char* key) {
                if (!k.contains(key) || !k[key].is_array())
                    throw SchemaError(std::string("custom kinetic needs array: ") + key);
                return k[key].get<std::vector<double>>();
            };
            return KineticSpec(vec("p_grid"), vec("T_values"), vec("v_values"));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad kinetic config: ") + e.what());
    }
    throw SchemaError("kinetic.preset must be linear, quadratic-positive or custom");
}

// ---- command implementations ------------------------------------------------

ExperimentResult run_cell_spectrum(const json& doc, const RunConfig& rc, const fs::path& out) {
    if (!doc.contains("cell")) throw SchemaError("missing field: cell");
    const int n = require_int(doc["cell"], "N");
    const double dt = require_number(doc["cell"], "delta_t");
    const int scan_max = doc.contains("scan_max_n") ? require_int(doc, "scan_max_n") : 32;
    CellSpec spec;
    try {
        spec = CellSpec(n, dt);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad cell: ") + e.what());
    }

    ExperimentResult res;
    const double tol_unitary = tol_or(rc, "fourier_unitarity", 1e-12);
    const double tol_exp = tol_or(rc, "exp_match", 1e-10);

    std::ostringstream csv;
    csv << "n,energy\n";
    const ComplexMatrix h_e = hamiltonian(spec, Basis::energy);
    for (int i = 0; i < n; ++i) csv << i << "," << fmt_g17(h_e.at(i, i).real()) << "\n";
    write_text_file((out / "spectrum.csv").string(), csv.str());
    res.files.push_back("spectrum.csv");

    double worst_unitary = 0.0, worst_exp = 0.0, worst_spectrum = 0.0;
    for (int nn = 1; nn <= std::max(scan_max, n); ++nn) {
        const CellSpec s(nn, dt);
        const ComplexMatrix f = fourier_matrix(s);
        const ComplexMatrix gram = kern::multiply(kern::adjoint(f), f);
        worst_unitary = std::max(worst_unitary,
                                 kern::max_abs_diff(gram, ComplexMatrix::identity(nn)));
        const ComplexMatrix u = shift_operator(s);
        const ComplexMatrix h = hamiltonian(s, Basis::ontological);
        worst_exp = std::max(worst_exp,
                             kern::max_abs_diff(mat_exp(h, cplx(0.0, -s.delta_t)), u));
        const EigenSystem es = hermitian_eigensystem(h);
        for (int i = 0; i < nn; ++i)
            worst_spectrum = std::max(worst_spectrum,
                                      std::abs(es.values[static_cast<size_t>(i)] - i * s.omega()));
    }
    res.checks.push_back(make_check("fourier_unitarity", worst_unitary, tol_unitary));
    res.checks.push_back(make_check("exp_matches_shift", worst_exp, tol_exp));
    res.checks.push_back(make_check("spectrum_ladder", worst_spectrum, tol_exp));

    json values;
    values["N"] = n;
    values["omega"] = spec.omega();
    values["scan_max_n"] = std::max(scan_max, n);
    res.values_json = values.dump();
    return res;
}

ExperimentResult run_su2_matrix(const json& doc, const RunConfig& rc, const fs::path& out) {
    const HalfInt ell = parse_ell_field(doc);
    if (ell.twice < 1) throw SchemaError("ell must be at least 1/2");

    ExperimentResult res;
    const BridgeMatrix rec = bridge_by_recursion(ell);
    const BridgeMatrix rot = bridge_by_rotation(ell);
    const double diff = max_bridge_diff(rec, rot);
    res.checks.push_back(make_check("cross_oracle_max_diff", diff, tol_or(rc, "cross_oracle", 1e-8)));

    // M M^T = I for the real solution
    double worst_orth = 0.0;
    for (int i = 0; i < rec.dim; ++i)
        for (int j = 0; j < rec.dim; ++j) {
            double dot = 0.0;
            for (int k = 0; k < rec.dim; ++k) dot += rec.at(i, k) * rec.at(j, k);
            worst_orth = std::max(worst_orth, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    res.checks.push_back(make_check("orthogonality", worst_orth, tol_or(rc, "orthogonality", 1e-10)));

    double profile = 0.0;
    if (ell.twice >= 20) {
        profile = support_profile(rec, 1.15);
        res.checks.push_back(
            make_check("support_profile_1.15", profile, tol_or(rc, "support_profile", 1e-2)));
    }

    render_bridge(rec, (out / "bridge.pgm").string());
    res.files.push_back("bridge.pgm");

    std::ostringstream csv;
    csv << "r,s,value\n";
    for (int i = 0; i < rec.dim; ++i)
        for (int j = 0; j < rec.dim; ++j)
            csv << fmt_g17(rec.label(i).value()) << "," << fmt_g17(rec.label(j).value()) << ","
                << fmt_g17(rec.at(i, j)) << "\n";
    write_text_file((out / "bridge.csv").string(), csv.str());
    res.files.push_back("bridge.csv");

    json values;
    values["ell"] = to_string(ell);
    values["dim"] = rec.dim;
    values["cross_oracle_max_diff"] = diff;
    values["support_profile_1.15"] = profile;
    res.values_json = values.dump();
    return res;
}

ExperimentResult run_automaton_verify(const json& doc, const RunConfig& rc, const fs::path& out) {
    auto [lattice, terms] = parse_lattice_doc(doc);
    ExperimentResult res;
    const double tol_perm = tol_or(rc, "permutation", 1e-10);

    const EquivalenceReport rep = verify_equivalence(lattice, terms, tol_perm);
    res.checks.push_back(make_flag_check("equivalence_permutation", rep.permutation_ok));
    res.checks.push_back(make_flag_check("equivalence_matches_classical", rep.matches_classical));

    const ComplexMatrix u = one_step_unitary(lattice, terms, StepMode::equivalence);
    const PermutationCheck pc = is_permutation(u, tol_perm);
    std::ostringstream csv;
    csv << "index,image\n";
    for (size_t i = 0; i < pc.map.size(); ++i) csv << i << "," << pc.map[i] << "\n";
    write_text_file((out / "permutation.csv").string(), csv.str());
    res.files.push_back("permutation.csv");

    const auto locality = locality_report(lattice, terms);
    std::ostringstream lcsv;
    lcsv << "term_a,term_b,commutator_norm,disjoint_support\n";
    double worst_disjoint = 0.0;
    for (const auto& e : locality) {
        lcsv << e.term_a << "," << e.term_b << "," << fmt_g17(e.commutator) << ","
             << (e.disjoint_support ? 1 : 0) << "\n";
        if (e.disjoint_support) worst_disjoint = std::max(worst_disjoint, e.commutator);
    }
    write_text_file((out / "locality.csv").string(), lcsv.str());
    res.files.push_back("locality.csv");
    res.checks.push_back(make_check("disjoint_commutators", worst_disjoint,
                                    tol_or(rc, "disjoint_commutator", 1e-12)));

    int suite_count = 0, suite_passed = 0;
    if (doc.contains("random_suite")) {
        const json& s = doc["random_suite"];
        suite_count = s.contains("count") ? require_int(s, "count") : 100;
        RandomLatticeParams params;
        if (s.contains("max_cells")) params.max_cells = require_int(s, "max_cells");
        if (s.contains("max_states")) params.max_states = require_int(s, "max_states");
        if (s.contains("max_terms")) params.max_terms = require_int(s, "max_terms");
        std::mt19937_64 rng(rc.seed);
        std::vector<RandomLattice> cases;
        cases.reserve(static_cast<size_t>(suite_count));
        for (int i = 0; i < suite_count; ++i) cases.push_back(random_lattice(rng, params));
        std::vector<char> ok(static_cast<size_t>(suite_count), 0);
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < suite_count; ++i)
            ok[static_cast<size_t>(i)] =
                verify_equivalence(cases[static_cast<size_t>(i)].lattice,
                                   cases[static_cast<size_t>(i)].terms, tol_perm).passed() ? 1 : 0;
        for (char c : ok) suite_passed += c;
        res.checks.push_back(make_flag_check("random_suite_all_passed", suite_passed == suite_count));
    }

    json values;
    values["dimension"] = lattice.dimension();
    values["terms"] = terms.size();
    values["permutation_residual"] = rep.max_residual;
    values["random_suite_count"] = suite_count;
    values["random_suite_passed"] = suite_passed;
    res.values_json = values.dump();
    return res;
}

ExperimentResult run_sieve_compare(const json& doc, const RunConfig& rc, const fs::path& out) {
    const SieveModelConfig cfg = parse_sieve_doc(doc);
    const int y_samples = doc.contains("y_samples") ? require_int(doc, "y_samples") : 256;

    ExperimentResult res;
    const ComplexMatrix map = scattering_map(cfg);
    ComplexMatrix oracle;
    try {
        oracle = brute_force_scattering(cfg, y_samples);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("bad y_samples: ") + e.what());
    }

    const int nm = cfg.n_max + 1;
    double safe_diff = 0.0, full_diff = 0.0;
    for (int row = 0; row < map.dim; ++row)
        for (int col = 0; col < map.dim; ++col) {
            const double d = std::abs(map.at(row, col) - oracle.at(row, col));
            full_diff = std::max(full_diff, d);
            if (std::abs(row % nm - col % nm) <= cfg.n_max / 2) safe_diff = std::max(safe_diff, d);
        }
    res.checks.push_back(
        make_check("oracle_agreement_safe_block", safe_diff, tol_or(rc, "sieve_agreement", 1e-6)));

    double n0_err = 0.0;
    n0_err = std::max(n0_err, std::abs(map.at(0, 0) - cplx(1.0 - cfg.alpha, 0.0)));
    n0_err = std::max(n0_err, std::abs(map.at(0, nm) - cplx(cfg.alpha, 0.0)));
    n0_err = std::max(n0_err, std::abs(map.at(nm, 0) - cplx(cfg.alpha, 0.0)));
    n0_err = std::max(n0_err, std::abs(map.at(nm, nm) - cplx(1.0 - cfg.alpha, 0.0)));
    res.checks.push_back(make_check("n0_block_exact", n0_err, 1e-14));

    double worst_col_excess = 0.0;
    for (int col = 0; col < map.dim; ++col) {
        double s = 0.0;
        for (int row = 0; row < map.dim; ++row) s += std::norm(map.at(row, col));
        worst_col_excess = std::max(worst_col_excess, std::sqrt(s) - 1.0);
    }
    res.checks.push_back(make_check("columns_contractive", worst_col_excess, 1e-12));

    auto dump = [&](const ComplexMatrix& m, const std::string& name) {
        std::ostringstream csv;
        csv << "row,col,re,im\n";
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j)
                csv << i << "," << j << "," << fmt_g17(m.at(i, j).real()) << ","
                    << fmt_g17(m.at(i, j).imag()) << "\n";
        write_text_file((out / name).string(), csv.str());
        res.files.push_back(name);
    };
    dump(map, "map.csv");
    dump(oracle, "oracle.csv");

    const std::vector<double> deficits = norm_deficit(cfg);
    std::ostringstream dcsv;
    dcsv << "n,deficit\n";
    for (size_t i = 0; i < deficits.size(); ++i) dcsv << i << "," << fmt_g17(deficits[i]) << "\n";
    write_text_file((out / "deficits.csv").string(), dcsv.str());
    res.files.push_back("deficits.csv");

    // heat map of |entries|
    std::vector<unsigned char> px(static_cast<size_t>(map.dim) * map.dim, 255);
    double hi = kern::max_abs(map);
    if (hi > 0) {
        for (int i = 0; i < map.dim; ++i)
            for (int j = 0; j < map.dim; ++j)
                px[static_cast<size_t>(i) * map.dim + j] = static_cast<unsigned char>(
                    std::lround(255.0 * (1.0 - std::abs(map.at(i, j)) / hi)));
    }
    write_pgm((out / "map.pgm").string(), map.dim, map.dim, px);
    res.files.push_back("map.pgm");

    json values;
    values["alpha"] = cfg.alpha;
    values["n_max"] = cfg.n_max;
    values["y_samples"] = y_samples;
    values["oracle_agreement_safe_block"] = safe_diff;
    values["oracle_agreement_full"] = full_diff;
    values["deficit_n0"] = deficits.front();
    res.values_json = values.dump();
    return res;
}

ExperimentResult run_kinetic_kernel(const json& doc, const RunConfig& rc, const fs::path& out) {
    const KineticSpec spec = parse_kinetic_doc(doc);
    const std::string preset =
        doc["kinetic"].contains("preset") ? doc["kinetic"]["preset"].get<std::string>() : "custom";

    ExperimentResult res;
    const int m = spec.samples();

    // Kernel grids: x on the span-dual lattice; y dual to the T range.
    const double span = spec.p_grid.back() - spec.p_grid.front();
    const int grid_m = doc.contains("grid") && doc["grid"].contains("M")
                           ? require_int(doc["grid"], "M")
                           : std::min(m - 1, 96);
    if (grid_m < 2) throw SchemaError("grid.M must be >= 2");
    const double dx = kTwoPi / span;
    const double t_span = std::abs(spec.T_values.back() - spec.T_values.front());
    const double dy_t = t_span > 0 ? kTwoPi / t_span : dx;
    std::vector<double> xg(static_cast<size_t>(grid_m)), yg(static_cast<size_t>(grid_m));
    for (int i = 0; i < grid_m; ++i) {
        xg[static_cast<size_t>(i)] = (i - grid_m / 2) * dx;
        yg[static_cast<size_t>(i)] = (i - grid_m / 2) * dy_t;
    }
    const ComplexMatrix kmat = beable_kernel(spec, xg, yg);

    const ComplexMatrix gram = kern::multiply(kern::adjoint(kmat), kmat);
    const double gram_dev = kern::max_abs_diff(gram, ComplexMatrix::identity(kmat.dim));

    const ComplexMatrix y_op = beable_operator(spec);
    const double herm = kern::max_abs_diff(y_op, kern::adjoint(y_op));
    res.checks.push_back(make_check("beable_hermitian", herm, 1e-10));

    double drift = 0.0;
    if (spec.invertible_T) {
        drift = drift_check(spec);
        res.checks.push_back(make_check("drift_deviation", drift, tol_or(rc, "drift", 1e-2)));
    }
    if (preset == "linear")
        res.checks.push_back(make_check("gram_identity", gram_dev, tol_or(rc, "gram", 1e-8)));

    std::ostringstream csv;
    csv << "i,j,re,im\n";
    for (int i = 0; i < kmat.dim; ++i)
        for (int j = 0; j < kmat.dim; ++j)
            csv << i << "," << j << "," << fmt_g17(kmat.at(i, j).real()) << ","
                << fmt_g17(kmat.at(i, j).imag()) << "\n";
    write_text_file((out / "kernel.csv").string(), csv.str());
    res.files.push_back("kernel.csv");

    std::vector<unsigned char> px(static_cast<size_t>(kmat.dim) * kmat.dim, 255);
    const double hi = kern::max_abs(kmat);
    if (hi > 0) {
        for (int i = 0; i < kmat.dim; ++i)
            for (int j = 0; j < kmat.dim; ++j)
                px[static_cast<size_t>(i) * kmat.dim + j] = static_cast<unsigned char>(
                    std::lround(255.0 * (1.0 - std::abs(kmat.at(i, j)) / hi)));
    }
    write_pgm((out / "kernel.pgm").string(), kmat.dim, kmat.dim, px);
    res.files.push_back("kernel.pgm");

    const auto participation = kernel_row_participation(kmat);
    double pr_mean = 0.0;
    for (double v : participation) pr_mean += v;
    pr_mean /= static_cast<double>(participation.size());

    json values;
    values["preset"] = preset;
    values["samples"] = m;
    values["grid_M"] = grid_m;
    values["gram_deviation"] = gram_dev;
    values["drift_deviation"] = drift;
    values["invertible_T"] = spec.invertible_T;
    values["row_participation_mean"] = pr_mean;
    res.values_json = values.dump();
    return res;
}

// ---- report and manifest ----------------------------------------------------

void write_report(const fs::path& out, const RunConfig& rc, ExperimentResult& res) {
    json rep;
    rep["schema"] = kSchemaId;
    rep["command"] = rc.command;
    rep["seed"] = rc.seed;
    json checks = json::array();
    for (const auto& c : res.checks) {
        json jc;
        jc["name"] = c.name;
        jc["value"] = c.value;
        jc["threshold"] = c.threshold;
        jc["passed"] = c.passed;
        checks.push_back(jc);
    }
    rep["checks"] = checks;
    rep["values"] = json::parse(res.values_json.empty() ? "{}" : res.values_json);
    write_text_file((out / "report.json").string(), rep.dump(2) + "\n");
    res.files.push_back("report.json");
}

void write_manifest(const fs::path& out, const RunConfig& rc, const ExperimentResult& res,
                    const std::string& config_text) {
    json man;
    man["schema"] = kSchemaId;
    man["command"] = rc.command;
    man["seed"] = rc.seed;
    man["config_sha256"] = sha256_hex(config_text);
    man["all_checks_passed"] = res.all_passed();

    char stamp[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    man["metadata"] = {{"generated_at", stamp}};

    std::vector<std::string> sorted = res.files;
    std::sort(sorted.begin(), sorted.end());
    json files = json::array();
    for (const auto& f : sorted) {
        const std::string bytes = read_text_file((out / f).string());
        json jf;
        jf["path"] = f;
        jf["bytes"] = bytes.size();
        jf["sha256"] = sha256_hex(bytes);
        files.push_back(jf);
    }
    man["files"] = files;
    write_text_file((out / "manifest.json").string(), man.dump(2) + "\n");
}

}  // namespace

int run(const RunConfig& config_in) {
    RunConfig rc = config_in;
    if (const char* env_out = std::getenv("ONTOCELL_OUT"); env_out && *env_out)
        rc.output_dir = env_out;

    try {
        const json doc = load_config(rc.input_path);
        const std::string config_text = read_text_file(rc.input_path);

        fs::path out(rc.output_dir);
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec || !fs::is_directory(out)) throw IoError("cannot create output dir: " + rc.output_dir);

        ExperimentResult res;
        if (rc.command == "cell-spectrum") res = run_cell_spectrum(doc, rc, out);
        else if (rc.command == "su2-matrix") res = run_su2_matrix(doc, rc, out);
        else if (rc.command == "automaton-verify") res = run_automaton_verify(doc, rc, out);
        else if (rc.command == "sieve-compare") res = run_sieve_compare(doc, rc, out);
        else if (rc.command == "kinetic-kernel") res = run_kinetic_kernel(doc, rc, out);
        else throw SchemaError("unknown command: " + rc.command);

        write_report(out, rc, res);
        write_manifest(out, rc, res, config_text);

        if (!rc.quiet) {
            for (const auto& c : res.checks)
                std::cout << (c.passed ? "[pass] " : "[FAIL] ") << c.name << " = " << c.value
                          << " (threshold " << c.threshold << ")\n";
            std::cout << (res.all_passed() ? "OK: " : "FAILED: ") << rc.command << " -> "
                      << rc.output_dir << "\n";
        }
        return res.all_passed() ? kExitOk : kExitAssertion;
    } catch (const SchemaError& e) {
        if (!rc.quiet) std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const IoError& e) {
        if (!rc.quiet) std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        if (!rc.quiet) std::cerr << "error: " << e.what() << "\n";
        return kExitAssertion;
    }
}

}  // namespace ontocell
