#pragma once

// Self-describing report output.  Every report embeds the field model
// {p, n, modulus} and the full run configuration, and the writers are
// deterministic: identical configuration means identical output bytes.

#include <optional>
#include <sstream>

#include <json.hpp>

#include "ffclass/construct.hpp"

namespace ffclass {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    uint32_t p = 0;
    uint32_t n = 1;
    std::optional<uint32_t> e;
    std::optional<std::string> poly_text;
    std::optional<int64_t> cap;
    std::optional<uint32_t> l;
    std::optional<int> k;
    uint64_t seed = kFactorSeedDefault;
    std::string format = "csv";
    std::string out; // empty = stdout
};

inline ordered_json field_spec_json(const Field &F)
{
    ordered_json j;
    j["p"] = F.p();
    j["n"] = F.degree();
    j["modulus"] = F.modulus();
    return j;
}

inline ordered_json config_json(const RunConfig &cfg)
{
    ordered_json j;
    j["command"] = cfg.command;
    j["p"] = cfg.p;
    j["n"] = cfg.n;
    if (cfg.e)
        j["e"] = *cfg.e;
    if (cfg.poly_text)
        j["poly"] = *cfg.poly_text;
    if (cfg.cap)
        j["cap"] = *cfg.cap;
    if (cfg.l)
        j["l"] = *cfg.l;
    if (cfg.k)
        j["k"] = *cfg.k;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    j["out"] = cfg.out;
    return j;
}

// CSV header block: one "# key=value" line per configuration entry.
inline void write_csv_header(std::ostream &os, const RunConfig &cfg,
                             const Field &F)
{
    ordered_json cj = config_json(cfg);
    for (auto &[key, value] : cj.items()) {
        os << "# " << key << "=";
        if (value.is_string())
            os << value.get<std::string>();
        else
            os << value.dump();
        os << "\n";
    }
    os << "# field_p=" << F.p() << "\n";
    os << "# field_n=" << F.degree() << "\n";
    os << "# field_modulus=";
    const auto &mod = F.modulus();
    for (size_t i = 0; i < mod.size(); ++i)
        os << (i ? "," : "") << mod[i];
    os << "\n";
}

inline std::string join_int64(const std::vector<int64_t> &v,
                              const char *sep = ";")
{
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? sep : "") << v[i];
    return os.str();
}

// one class-number report row
struct ClassNumRow {
    uint32_t q = 0;
    uint32_t e = 0;
    Poly p_poly;
    int k = 0;
    int64_t h = 0;
    int two_sylow_s = 0;
    bool cyclic = false;
    int64_t ambiguous_order = 0; // 0 when not applicable (odd k)
    std::vector<int64_t> divisors;
    std::vector<int64_t> l_coeffs;
    bool crosscheck_ok = false;
};

inline ClassNumRow analyze_order(const QuadOrder &ord,
                                 uint32_t size_cap = Field::kDefaultCap)
{
    ClassNumRow row;
    row.q = ord.field.q();
    row.e = ord.e;
    row.p_poly = ord.p_poly;
    row.k = ord.k;
    LPolynomial L = l_polynomial(ord.D, size_cap);
    row.l_coeffs = L.a;
    row.h = checked_mul(ord.d_inf, L.at_one());
    AbelianStructure G = class_group(ord, row.h);
    row.divisors = G.divisors;
    auto [s, cyc] = two_sylow(G);
    row.two_sylow_s = s;
    row.cyclic = cyc;
    row.crosscheck_ok = G.h == row.h;
    if (ord.k % 2 == 0 && ord.field.is_square(ord.p_poly.lc())) {
        auto [B, C] = ambiguous_pair(ord, least_alpha(ord.field, ord.e));
        row.ambiguous_order = ambiguous_class_order(ord, B, C, G).order;
    }
    return row;
}

inline const char *classnum_csv_columns()
{
    return "q,e,p_poly,k,h,h_mod_8,two_sylow_s,cyclic,ambiguous_order,"
           "divisors,L_coeffs,crosscheck";
}

inline void write_classnum_csv_row(std::ostream &os, const ClassNumRow &r)
{
    os << r.q << "," << r.e << "," << poly_to_string(r.p_poly) << "," << r.k
       << "," << r.h << "," << r.h % 8 << "," << r.two_sylow_s << ","
       << (r.cyclic ? 1 : 0) << "," << r.ambiguous_order << ","
       << join_int64(r.divisors) << "," << join_int64(r.l_coeffs) << ","
       << (r.crosscheck_ok ? "ok" : "FAIL") << "\n";
}

inline ordered_json classnum_json_row(const ClassNumRow &r)
{
    ordered_json j;
    j["q"] = r.q;
    j["e"] = r.e;
    j["p_poly"] = poly_to_string(r.p_poly);
    j["k"] = r.k;
    j["h"] = r.h;
    j["h_mod_8"] = r.h % 8;
    j["two_sylow_s"] = r.two_sylow_s;
    j["cyclic"] = r.cyclic;
    j["ambiguous_order"] = r.ambiguous_order;
    j["divisors"] = r.divisors;
    j["L_coeffs"] = r.l_coeffs;
    j["crosscheck"] = r.crosscheck_ok ? "ok" : "FAIL";
    return j;
}

// zeta report row: (q, D, g, N[1..g], L, L(1), h)
inline ordered_json zeta_json_row(const QuadOrder &ord,
                                  uint32_t size_cap = Field::kDefaultCap)
{
    ordered_json j;
    PointCounts pc = count_points_up_to_genus(ord.D, size_cap);
    LPolynomial L = l_polynomial(ord.D, size_cap);
    j["q"] = ord.field.q();
    j["D"] = poly_to_string(ord.D);
    j["g"] = ord.genus;
    j["N"] = pc.N;
    j["L_coeffs"] = L.a;
    j["L_at_1"] = L.at_one();
    j["h"] = checked_mul(ord.d_inf, L.at_one());
    return j;
}

inline ordered_json witness_json(const Witness &w)
{
    ordered_json j;
    j["q"] = w.sd.field.q();
    j["l"] = w.sd.l;
    j["k"] = w.sd.k;
    j["Q"] = poly_to_string(w.sd.Q);
    j["lambda"] = w.sd.lambda;
    j["B"] = poly_to_string(w.sd.B);
    j["delta"] = w.sd.delta;
    j["e"] = w.sd.e;
    j["alpha"] = w.sd.alpha;
    j["C"] = poly_to_string(w.sd.C);
    j["p_poly"] = poly_to_string(w.sd.p_poly);
    j["predicted_8_divisible"] = w.predicted_8;
    j["h"] = w.h;
    j["h_mod_8"] = w.h % 8;
    j["divisors"] = w.divisors;
    j["L_coeffs"] = w.L.a;
    j["criterion_ok"] = w.criterion_ok;
    return j;
}

} // namespace ffclass
