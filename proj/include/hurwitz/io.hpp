#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurwitz/bezout.hpp"
#include "hurwitz/eig_oracle.hpp"
#include "hurwitz/perturb.hpp"
#include "hurwitz/stability.hpp"

namespace hurwitz {

using Json = nlohmann::json;

struct ParsedInput {
    MatrixPolynomial poly;
    std::optional<std::vector<int>> column_degrees;
};

/**
 * Input document: {"size": p, "degree": n, "coefficients": [n+1 matrices,
 * descending powers], "column_degrees": [p ints, optional]}.  Every matrix is
 * p rows of p entries, an entry is [re, im].  Values round-trip binary64
 * exactly.
 */
inline ParsedInput parse_input(std::istream& in, const std::string& origin = "<stream>") {
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::exception& e) {  // parse errors and number overflow alike
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError(origin + ": top-level value must be an object");
    for (const char* field : {"size", "degree", "coefficients"}) {
        if (!doc.contains(field)) throw ParseError(origin + ": missing field '" + field + "'");
    }
    if (!doc["size"].is_number_integer() || doc["size"].get<int>() <= 0) {
        throw ParseError(origin + ": 'size' must be a positive integer");
    }
    if (!doc["degree"].is_number_integer() || doc["degree"].get<int>() < 0) {
        throw ParseError(origin + ": 'degree' must be a nonnegative integer");
    }
    const int p = doc["size"].get<int>();
    const int n = doc["degree"].get<int>();
    const Json& cs = doc["coefficients"];
    if (!cs.is_array()) throw ParseError(origin + ": 'coefficients' must be an array");
    if (static_cast<int>(cs.size()) != n + 1) {
        const int missing = static_cast<int>(cs.size());
        throw ParseError(origin + ": expected " + std::to_string(n + 1) + " coefficient matrices but found " +
                         std::to_string(cs.size()) + "; coefficient " + std::to_string(missing) +
                         " (of z^" + std::to_string(n - missing) + ") is missing");
    }
    std::vector<ComplexMatrix> coeffs;
    coeffs.reserve(cs.size());
    for (int k = 0; k <= n; ++k) {
        const Json& mat = cs[static_cast<std::size_t>(k)];
        if (!mat.is_array() || static_cast<int>(mat.size()) != p) {
            throw ShapeError(origin + ": coefficient " + std::to_string(k) + " must have " + std::to_string(p) +
                             " rows");
        }
        ComplexMatrix m(p, p);
        for (int r = 0; r < p; ++r) {
            const Json& row = mat[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<int>(row.size()) != p) {
                throw ShapeError(origin + ": coefficient " + std::to_string(k) + ", row " + std::to_string(r + 1) +
                                 " must have " + std::to_string(p) + " entries");
            }
            for (int c = 0; c < p; ++c) {
                const Json& e = row[static_cast<std::size_t>(c)];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                    throw ParseError(origin + ": coefficient " + std::to_string(k) + ", entry (" +
                                     std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                     ") must be a [re, im] pair of numbers");
                }
                const double re = e[0].get<double>();
                const double im = e[1].get<double>();
                if (!std::isfinite(re) || !std::isfinite(im)) {
                    throw ParseError(origin + ": non-finite entry at coefficient " + std::to_string(k) + ", (" +
                                     std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
                }
                m(r, c) = Complex(re, im);
            }
        }
        coeffs.push_back(std::move(m));
    }
    ParsedInput out{MatrixPolynomial(std::move(coeffs)), std::nullopt};
    if (doc.contains("column_degrees")) {
        const Json& cd = doc["column_degrees"];
        if (!cd.is_array() || static_cast<int>(cd.size()) != p) {
            throw ShapeError(origin + ": 'column_degrees' must list " + std::to_string(p) + " integers");
        }
        std::vector<int> degs;
        for (const Json& v : cd) {
            if (!v.is_number_integer()) throw ParseError(origin + ": column degrees must be integers");
            degs.push_back(v.get<int>());
        }
        out.column_degrees = std::move(degs);
    }
    return out;
}

inline ParsedInput parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_input(in, path);
}

// ---- serialization ---------------------------------------------------------

inline Json to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const Inertia& in) { return Json{{"pi", in.pi}, {"nu", in.nu}, {"delta", in.delta}}; }

inline Json to_json(const IndexSets& idx) {
    auto sets = [](const std::vector<std::vector<int>>& ss, int first_subscript) {
        Json out = Json::array();
        int subscript = first_subscript;
        for (const auto& s : ss) {
            out.push_back(Json{{"i", subscript++}, {"columns", IndexSets::one_based(s)}});
        }
        return out;
    };
    return Json{{"one_based", true},
                {"i_sets", sets(idx.i_sets, -1)},
                {"e_sets", sets(idx.e_sets, -1)},
                {"o_sets", sets(idx.o_sets, -1)},
                {"tilde_sets", sets(idx.tilde_sets, 0)}};
}

inline Json to_json(const StabilityReport& rep) {
    Json j{{"verdict", to_string(rep.verdict)},
           {"cdeg", rep.cdeg},
           {"m", rep.m},
           {"l", rep.l},
           {"t", rep.t},
           {"hermitian_deviation", rep.hermitian_deviation},
           {"sequence_hermitian", rep.sequence_hermitian},
           {"sa_residual", rep.sa_res},
           {"h0", Json{{"size", rep.h0_eigs.size()}, {"inertia", to_json(rep.h0_inertia)}, {"eigenvalues", rep.h0_eigs}}},
           {"h1", Json{{"size", rep.h1_eigs.size()}, {"inertia", to_json(rep.h1_inertia)}, {"eigenvalues", rep.h1_eigs}}},
           {"inertia_f", Json{{"gamma_plus", rep.inertia_f[0]},
                              {"gamma_minus", rep.inertia_f[1]},
                              {"gamma_zero", rep.inertia_f[2]},
                              {"determinate", rep.inertia_determinate}}}};
    if (!rep.diagnostics.empty()) j["diagnostics"] = rep.diagnostics;
    return j;
}

inline Json to_json(const SpectrumReport& rep) {
    Json eigs = Json::array();
    std::vector<Complex> sorted = rep.finite_eigs;
    std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const Complex& z : sorted) eigs.push_back(Json::array({z.real(), z.imag()}));
    return Json{{"finite_eigenvalues", eigs},
                {"gamma_infinity", rep.gamma_infinity},
                {"inertia", Json{{"gamma_plus", rep.inertia_imag_axis[0]},
                                 {"gamma_minus", rep.inertia_imag_axis[1]},
                                 {"gamma_zero", rep.inertia_imag_axis[2]}}},
                {"hurwitz_stable", rep.hurwitz_stable()}};
}

inline Json to_json(const BezoutCheck& chk) {
    return Json{{"match", chk.match},
                {"bezout_inertia", to_json(chk.inertia_bezout)},
                {"hankel_direct_sum_inertia", to_json(chk.inertia_hankel_direct_sum)},
                {"bezout_hermitian_deviation", chk.bezout_hermitian_deviation},
                {"offgrid_max", chk.offgrid_max}};
}

inline Json to_json(const MarkovSequence& seq) {
    Json params = Json::array();
    for (const auto& s : seq.params) params.push_back(to_json(s));
    return Json{{"l", seq.l},
                {"is_hermitian", seq.is_hermitian},
                {"hermitian_deviation", seq.hermitian_deviation},
                {"params", params}};
}

inline Json to_json(const PerturbResult& res) {
    Json eps_records = Json::array();
    for (const auto& er : res.per_eps) {
        eps_records.push_back(Json{{"eps", er.eps},
                                   {"samples", er.samples},
                                   {"failures", er.failures},
                                   {"count_f_unstable", er.count_f_unstable},
                                   {"count_h_escaped", er.count_h_escaped},
                                   {"cat_i", er.cat_i},
                                   {"cat_ii", er.cat_ii},
                                   {"cat_iii", er.cat_iii},
                                   {"mean_r_f", er.mean_r_f},
                                   {"mean_r_h0", er.mean_r_h0},
                                   {"mean_r_h1", er.mean_r_h1},
                                   {"mean_r_f_all", er.mean_r_f_all},
                                   {"mean_r_h0_all", er.mean_r_h0_all},
                                   {"mean_r_h1_all", er.mean_r_h1_all}});
    }
    Json f_ref = Json::array();
    for (const Complex& z : res.f_eigs_ref) f_ref.push_back(Json::array({z.real(), z.imag()}));
    return Json{{"seed", res.config.seed},
                {"samples_per_eps", res.config.samples_per_eps},
                {"entry_kind", res.config.entry_kind == PerturbConfig::EntryKind::Real ? "real" : "complex"},
                {"notes", res.notes},
                {"f_eigenvalues_ref", f_ref},
                {"h0_eigenvalues_ref", res.h0_eigs_ref},
                {"h1_eigenvalues_ref", res.h1_eigs_ref},
                {"per_eps", eps_records}};
}

// CSV rows: eps, sample_index, f_unstable, h_escaped, cat_i, cat_ii, cat_iii,
// r_f_mean, r_h0_mean, r_h1_mean.  Failed samples carry a trailing failure note.
inline void write_csv(std::ostream& os, const PerturbResult& res) {
    os << "eps,sample_index,f_unstable,h_escaped,cat_i,cat_ii,cat_iii,r_f_mean,r_h0_mean,r_h1_mean\n";
    os.precision(17);
    for (const auto& er : res.per_eps) {
        for (std::size_t sidx = 0; sidx < er.per_sample.size(); ++sidx) {
            const SampleRecord& rec = er.per_sample[sidx];
            if (!rec.ok) {
                os << er.eps << ',' << sidx << ",failed,failed,0,0,0,nan,nan,nan\n";
                continue;
            }
            const int ci = (rec.f_unstable && !rec.h_escaped) ? 1 : 0;
            const int cii = (!rec.f_unstable && rec.h_escaped) ? 1 : 0;
            const int ciii = (rec.f_unstable && rec.h_escaped) ? 1 : 0;
            os << er.eps << ',' << sidx << ',' << (rec.f_unstable ? 1 : 0) << ',' << (rec.h_escaped ? 1 : 0) << ','
               << ci << ',' << cii << ',' << ciii << ',' << rec.r_f_mean << ',' << rec.r_h0_mean << ','
               << rec.r_h1_mean << '\n';
        }
    }
}

/**
 * Parse one epsilon value, allowing fractional powers of ten such as
 * "1e-3.5" (meaning 10^-3.5), which strtod rejects.
 */
inline double parse_eps_value(const std::string& text) {
    const auto epos = text.find_first_of("eE");
    try {
        if (epos != std::string::npos) {
            const std::string mant = text.substr(0, epos);
            const std::string expo = text.substr(epos + 1);
            std::size_t used = 0;
            const double m = mant.empty() ? 1.0 : std::stod(mant, &used);
            if (!mant.empty() && used != mant.size()) throw ParseError("bad epsilon mantissa: " + text);
            const double x = std::stod(expo, &used);
            if (used != expo.size()) throw ParseError("bad epsilon exponent: " + text);
            return m * std::pow(10.0, x);
        }
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw ParseError("bad epsilon value: " + text);
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad epsilon value: " + text);
    } catch (const std::out_of_range&) {
        throw ParseError("epsilon value out of range: " + text);
    }
}

inline std::vector<double> parse_eps_list(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const std::string& item : items) {
        std::stringstream ss(item);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const double v = parse_eps_value(tok);
            if (!(v > 0.0) || !std::isfinite(v)) throw ParseError("epsilon values must be positive: " + tok);
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hurwitz
