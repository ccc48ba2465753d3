#include "report.hpp"

#include <charconv>

namespace wc {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        fail(errc::io, "complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json laurent_json(const LaurentPoly& h) {
    json out = json::object();
    for (const auto& [n, c] : h.coeffs) out[std::to_string(n)] = complex_json(c);
    return out;
}

LaurentPoly laurent_from_json(const json& j) {
    LaurentPoly h;
    if (!j.is_object()) fail(errc::io, "Laurent coefficients must be an object {power: [re, im]}");
    for (const auto& [key, val] : j.items()) {
        int n = 0;
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), n);
        if (ec != std::errc() || p != key.data() + key.size())
            fail(errc::io, "Laurent power '" + key + "' is not an integer");
        if (val.is_number()) {
            h.coeffs[n] = cplx{val.get<double>(), 0.0};
        } else {
            h.coeffs[n] = complex_from_json(val);
        }
    }
    return h;
}

json theorem_config_json(const TheoremConfig& c) {
    json out = json::object();
    out["domain"] = c.domain == Domain::disk ? "disk" : "annulus";
    out["q"] = c.domain == Domain::disk ? 0.0 : c.q;
    out["zeta"] = complex_json(c.zeta);
    out["k"] = c.k;
    out["h"] = laurent_json(c.h);
    out["grid_m"] = c.grid_m;
    out["tail_tol"] = c.tail_tol;
    out["tolerance"] = c.tolerance;
    return out;
}

TheoremConfig theorem_config_from_json(const json& j) {
    TheoremConfig c;
    std::string domain = j.value("domain", "annulus");
    if (domain == "disk") {
        c.domain = Domain::disk;
    } else if (domain == "annulus") {
        c.domain = Domain::annulus;
    } else {
        fail(errc::io, "domain must be 'disk' or 'annulus', got '" + domain + "'");
    }
    if (j.contains("q")) c.q = j["q"].get<double>();
    if (j.contains("zeta")) c.zeta = complex_from_json(j["zeta"]);
    if (j.contains("k")) c.k = j["k"].get<int>();
    if (j.contains("h")) c.h = laurent_from_json(j["h"]);
    if (j.contains("grid_m")) c.grid_m = j["grid_m"].get<int>();
    if (j.contains("tail_tol")) c.tail_tol = j["tail_tol"].get<double>();
    if (j.contains("tolerance")) c.tolerance = j["tolerance"].get<double>();
    return c;
}

json verification_json(const VerificationReport& r) {
    json out = theorem_config_json(r.config);
    out["lhs"] = complex_json(r.lhs);
    out["rhs"] = complex_json(r.rhs);
    out["oracle"] = complex_json(r.oracle);
    out["abs_err"] = r.abs_err;
    out["rel_err"] = r.rel_err;
    out["rel_lhs_oracle"] = r.rel_lhs_oracle;
    out["rel_rhs_oracle"] = r.rel_rhs_oracle;
    out["max_rel_err"] = r.max_rel_err;
    out["pass"] = r.pass;
    out["character_residual"] = r.character_residual;
    out["consistency"] = r.consistency;
    out["lhs_grid"] = complex_json(r.lhs_grid);
    out["folded_history"] = r.folded_history;
    out["residue_history"] = r.residue_history;
    out["residue_radius"] = r.residue_radius_used;
    out["orbit_size"] = r.orbit_size;
    out["tail_bound"] = r.tail_bound;
    return out;
}

VerificationReport verification_from_json(const json& j) {
    VerificationReport r;
    r.config = theorem_config_from_json(j);
    r.lhs = complex_from_json(j.at("lhs"));
    r.rhs = complex_from_json(j.at("rhs"));
    r.oracle = complex_from_json(j.at("oracle"));
    r.abs_err = j.at("abs_err").get<double>();
    r.rel_err = j.at("rel_err").get<double>();
    r.rel_lhs_oracle = j.at("rel_lhs_oracle").get<double>();
    r.rel_rhs_oracle = j.at("rel_rhs_oracle").get<double>();
    r.max_rel_err = j.at("max_rel_err").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.character_residual = j.at("character_residual").get<double>();
    r.consistency = j.at("consistency").get<double>();
    r.lhs_grid = complex_from_json(j.at("lhs_grid"));
    r.folded_history = j.at("folded_history").get<std::vector<int>>();
    r.residue_history = j.at("residue_history").get<std::vector<int>>();
    r.residue_radius_used = j.at("residue_radius").get<double>();
    r.orbit_size = j.at("orbit_size").get<int>();
    r.tail_bound = j.at("tail_bound").get<double>();
    r.grid_m = r.config.grid_m;
    return r;
}

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) fail(errc::internal, "double formatting failed");
    return std::string(buf, p);
}

std::string csv_header() {
    return "q,zeta_re,zeta_im,k,lhs_re,lhs_im,rhs_re,rhs_im,oracle_re,oracle_im,rel_err,pass";
}

std::string csv_row(const VerificationReport& r) {
    std::string row;
    row += format_double(r.config.domain == Domain::disk ? 0.0 : r.config.q);
    row += ',';
    row += format_double(r.config.zeta.real());
    row += ',';
    row += format_double(r.config.zeta.imag());
    row += ',';
    row += std::to_string(r.config.k);
    row += ',';
    row += format_double(r.lhs.real());
    row += ',';
    row += format_double(r.lhs.imag());
    row += ',';
    row += format_double(r.rhs.real());
    row += ',';
    row += format_double(r.rhs.imag());
    row += ',';
    row += format_double(r.oracle.real());
    row += ',';
    row += format_double(r.oracle.imag());
    row += ',';
    row += format_double(r.max_rel_err);
    row += ',';
    row += r.pass ? "true" : "false";
    return row;
}

}  // namespace wc
