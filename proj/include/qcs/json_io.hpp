#ifndef QCS_JSON_IO_HPP
#define QCS_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "qcs/direct.hpp"
#include "qcs/exppoly.hpp"
#include "qcs/inverse.hpp"
#include "qcs/polycore.hpp"

namespace qcs {

using json = nlohmann::json;

// Complex numbers travel as [re, im] everywhere.
inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Poly& f) {
    json arr = json::array();
    for (const auto& c : f.coeffs()) arr.push_back(to_json(c));
    return json{{"coeffs", arr}};
}

inline Poly poly_from_json(const json& j) {
    std::vector<cplx> c;
    for (const auto& e : j.at("coeffs")) c.push_back(cplx_from_json(e));
    return Poly(std::move(c));
}

inline json to_json(const ExpPoly& p) {
    json m = json::object();
    for (const auto& [k, c] : p.coeffs()) m[std::to_string(k)] = to_json(c);
    return json{{"half_step_coeffs", m}};
}

inline ExpPoly exppoly_from_json(const json& j) {
    ExpPoly p;
    for (const auto& [k, v] : j.at("half_step_coeffs").items())
        p.add_term(std::stoi(k), cplx_from_json(v));
    return p;
}

inline json to_json(const HamiltonianSeq& h) {
    json blocks = json::array();
    for (const auto& b : h.H)
        blocks.push_back({{"alpha", b.alpha}, {"beta", b.beta}, {"gamma", b.gamma}});
    return json{{"d", h.d}, {"r", h.r}, {"blocks", blocks}};
}

inline HamiltonianSeq hamiltonians_from_json(const json& j) {
    HamiltonianSeq h;
    h.d = j.at("d").get<int>();
    std::tie(h.L, h.r) = CoeffSeq::lattice(h.d);
    if (j.contains("r") && j.at("r").get<int>() != h.r)
        throw std::invalid_argument("hamiltonians: r inconsistent with d's parity");
    for (const auto& b : j.at("blocks"))
        h.H.push_back(Sym2{b.at("alpha").get<double>(), b.at("beta").get<double>(),
                           b.at("gamma").get<double>()});
    if (static_cast<int>(h.H.size()) != h.d)
        throw std::invalid_argument("hamiltonians: expected d blocks");
    return h;
}

inline json to_json(const CoeffSeq& s) {
    json arr = json::array();
    for (const auto& c : s.c) arr.push_back(to_json(c));
    return json{{"d", s.d}, {"L", s.L}, {"r", s.r}, {"c", arr}};
}

inline CoeffSeq seq_from_json(const json& j) {
    const int d = j.at("d").get<int>();
    CoeffSeq s;
    s.d = d;
    std::tie(s.L, s.r) = CoeffSeq::lattice(d);
    for (const auto& e : j.at("c")) s.c.push_back(cplx_from_json(e));
    if (static_cast<int>(s.c.size()) != d + 1)
        throw std::invalid_argument("seq: expected d+1 coefficients");
    return s;
}

}  // namespace qcs

#endif  // QCS_JSON_IO_HPP
