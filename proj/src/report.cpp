#include "beattylab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace beattylab {

double round_sig15(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

ordered_json to_json(const TheoremReport& r) {
    ordered_json j;
    j["lhs"] = round_sig15(r.lhs);
    j["main_term"] = round_sig15(r.main_term);
    j["error"] = round_sig15(r.error);
    j["rel_deviation"] = round_sig15(r.rel_deviation);
    j["predicted_bound"] = round_sig15(r.predicted_bound);
    j["N"] = r.N;
    j["eps"] = round_sig15(r.eps);
    j["q"] = r.q.get_str();
    j["Q"] = r.Q.get_str();
    j["t_lower"] = round_sig15(r.t_lower);
    j["matched"] = r.matched;
    j["small_m_cutoff"] = round_sig15(r.small_m_cutoff);
    j["psi_theta_gap"] = round_sig15(r.psi_theta_gap);
    j["prime_powers"] = r.prime_powers;
    return j;
}

ordered_json to_json(const ExpSumReport& r) {
    ordered_json j;
    j["N"] = r.N;
    j["L"] = r.L;
    j["d"] = r.d;
    j["f"] = r.f;
    j["U"] = r.U;
    j["theta"] = r.theta;
    j["q"] = r.q.get_str();
    j["include_l0"] = r.include_l0;
    j["direct"] = round_sig15(r.direct);
    j["pieces"] = {{"S1'", round_sig15(r.s1p)},
                   {"S2'", round_sig15(r.s2p)},
                   {"S31'", round_sig15(r.s31p)},
                   {"S32'", round_sig15(r.s32p)}};
    j["residual"] = round_sig15(r.residual);
    j["bound_formula"] = round_sig15(r.bound_formula);
    j["bound_trivial"] = round_sig15(r.bound_trivial);
    j["bound"] = round_sig15(r.bound);
    j["ratio"] = round_sig15(r.ratio);
    j["eps"] = round_sig15(r.eps);
    return j;
}

ordered_json to_json(const ExplicitConstantsReport& r) {
    ordered_json j;
    j["N"] = r.N;
    j["theta"] = round_sig15(r.theta);
    j["theta_floor"] = round_sig15(r.theta_floor);
    j["theta_ok"] = r.theta_ok;
    j["psi"] = round_sig15(r.psi);
    j["psi_cap"] = round_sig15(r.psi_cap);
    j["psi_ok"] = r.psi_ok;
    j["prime_power_tail"] = round_sig15(r.tail);
    j["tail_cap"] = round_sig15(r.tail_cap);
    j["tail_ok"] = r.tail_ok;
    j["all_ok"] = r.all_ok();
    return j;
}

ordered_json to_json(const ContinuedFraction& cf) {
    ordered_json j;
    j["quotients"] = ordered_json::array();
    for (const auto& a : cf.quotients) j["quotients"].push_back(a.get_str());
    j["convergents"] = ordered_json::array();
    for (const auto& [p, q] : cf.convergents)
        j["convergents"].push_back({p.get_str(), q.get_str()});
    return j;
}

ordered_json to_json(const Thm2Bound& b) {
    ordered_json j;
    j["bound"] = round_sig15(b.bound);
    j["m"] = b.m;
    j["p_m"] = b.p_m.get_str();
    j["p_m_plus_l"] = b.p_m_plus_l.get_str();
    j["N_choice"] = round_sig15(b.N_choice);
    j["q_choice"] = round_sig15(b.q_choice);
    j["eta"] = round_sig15(b.eta);
    j["exponents"] = {{"alpha", round_sig15(b.exp_alpha)},
                      {"B", round_sig15(b.exp_B)},
                      {"p", round_sig15(b.exp_p)}};
    if (b.l_min_measured)
        j["l_min_measured"] = *b.l_min_measured;
    else
        j["l_min_measured"] = nullptr;
    return j;
}

ordered_json to_json(const Remark1Bound& b) {
    ordered_json j;
    j["bound"] = round_sig15(b.bound);
    j["m"] = b.m;
    j["p_m"] = b.p_m.get_str();
    j["p_m_plus_l"] = b.p_m_plus_l.get_str();
    j["exponents"] = {{"alpha", round_sig15(b.exp_alpha)},
                      {"B", round_sig15(b.exp_B)},
                      {"d", round_sig15(b.exp_d)},
                      {"p", round_sig15(b.exp_p)}};
    return j;
}

ordered_json to_json(const TypeEstimate& t) {
    ordered_json j;
    j["t_lower"] = round_sig15(t.t_lower);
    j["samples"] = ordered_json::array();
    for (const auto& s : t.samples)
        j["samples"].push_back({{"q", s.q.get_str()}, {"exponent", round_sig15(s.exponent)}});
    return j;
}

ordered_json to_json(const calibration::GridResult& g) {
    ordered_json j;
    j["max_ratio"] = round_sig15(g.max_ratio);
    j["cases"] = g.cases;
    j["worst"] = g.worst;
    return j;
}

ordered_json to_json(const SandwichPolys& sp) {
    ordered_json j;
    j["delta"] = sp.delta.get_str();
    j["L"] = sp.L;
    j["lower_const"] = round_sig15(sp.lower_const());
    j["upper_const"] = round_sig15(sp.upper_const());
    j["c_minus"] = ordered_json::array();
    j["c_plus"] = ordered_json::array();
    for (double c : sp.c_minus) j["c_minus"].push_back(round_sig15(c));
    for (double c : sp.c_plus) j["c_plus"].push_back(round_sig15(c));
    return j;
}

std::string emit_output(const ordered_json& config, const ordered_json& report,
                        double seconds, bool deterministic) {
    ordered_json out;
    out["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    out["config"] = config;
    out["report"] = report;
    out["seconds"] = deterministic ? 0.0 : round_sig15(seconds);
    return out.dump(2) + "\n";
}

std::string expsum_csv_header() { return "N,L,d,f,q,direct,bound,ratio,seconds\n"; }

std::string expsum_csv_row(const ExpSumReport& r, double seconds) {
    std::string row;
    row += std::to_string(r.N) + "," + std::to_string(r.L) + "," + std::to_string(r.d) + "," +
           std::to_string(r.f) + "," + r.q.get_str() + "," + csv_double(r.direct) + "," +
           csv_double(r.bound) + "," + csv_double(r.ratio) + "," + csv_double(seconds) + "\n";
    return row;
}

}  // namespace beattylab
