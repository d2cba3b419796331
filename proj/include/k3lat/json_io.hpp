#pragma once

#include "intlat.hpp"
#include "mukai.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

namespace k3lat {

inline nlohmann::json lattice_to_json(const Lattice& lat) {
    nlohmann::json gram = nlohmann::json::array();
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < lat.rank(); ++j) row.push_back(to_int64(lat.gram(i, j)));
        gram.push_back(row);
    }
    return {{"label", lat.label}, {"rank", lat.rank()}, {"gram", gram}};
}

inline LatticePtr lattice_from_json(const nlohmann::json& j) {
    std::size_t rank = j.at("rank").get<std::size_t>();
    IntMat gram(rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t k = 0; k < rank; ++k) gram(i, k) = j.at("gram").at(i).at(k).get<std::int64_t>();
    return make_lattice(j.at("label").get<std::string>(), std::move(gram));
}

inline nlohmann::json disc_group_to_json(const DiscGroup& d) {
    nlohmann::json orders = nlohmann::json::array();
    for (const auto& o : d.orders) orders.push_back(to_int64(o));
    nlohmann::json q = nlohmann::json::array();
    for (const auto& v : d.q_values) q.push_back(rat_to_string(v));
    return {{"orders", orders}, {"q", q}};
}

inline nlohmann::json mukai_vector_to_json(const MukaiVector& v) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : v.c.coords) c.push_back(to_int64(x));
    return {{"r", to_int64(v.r)}, {"c", c}, {"s", to_int64(v.s)}};
}

inline MukaiVector mukai_vector_from_json(const nlohmann::json& j) {
    IntVec c;
    for (const auto& x : j.at("c")) c.push_back(x.get<std::int64_t>());
    return make_mukai_vector(Int(j.at("r").get<std::int64_t>()),
                             make_vec(make_standard(StdLattice::K3), std::move(c)),
                             Int(j.at("s").get<std::int64_t>()));
}

/// Parses the shorthand "(r,0,s)" for Mukai vectors with trivial first
/// Chern class.
inline MukaiVector parse_mukai_shorthand(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.size() < 7 || s.front() != '(' || s.back() != ')')
        throw std::invalid_argument("parse_mukai_shorthand: expected \"(r,0,s)\"");
    std::istringstream in(s.substr(1, s.size() - 2));
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ',')) parts.push_back(part);
    if (parts.size() != 3 || parts[1] != "0")
        throw std::invalid_argument("parse_mukai_shorthand: expected \"(r,0,s)\"");
    return make_mukai_vector(Int(std::stoll(parts[0])), Int(std::stoll(parts[2])));
}

}  // namespace k3lat
