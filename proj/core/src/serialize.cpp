#include "dn/serialize.hpp"

#include <cstdio>

#include "dn/errors.hpp"

namespace dn {

nlohmann::json to_json(const WeylElement& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : e.terms()) {
        terms.push_back(
            {{"y", k.y}, {"x", k.x}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
    }
    return {{"terms", terms}};
}

WeylElement weyl_from_json(const nlohmann::json& j) {
    WeylElement e;
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ParseError("operator JSON lacks a 'terms' array");
    for (const auto& t : j["terms"]) {
        Gaussian c(rational_from_string(t.at("re").get<std::string>()),
                   t.contains("im") ? rational_from_string(t.at("im").get<std::string>())
                                    : Rational(0));
        e += WeylElement::monomial(t.at("y").get<int>(), t.at("x").get<int>(), c);
    }
    return e;
}

nlohmann::json to_json(const OperatorMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return {{"size", m.size()}, {"entries", rows}};
}

OperatorMatrix operator_matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("size") || !j.contains("entries"))
        throw ParseError("operator matrix JSON needs 'size' and 'entries'");
    int size = j.at("size").get<int>();
    if (size < 1 || size > 64) throw ParseError("unreasonable operator matrix size");
    OperatorMatrix m(size);
    const auto& rows = j.at("entries");
    if (static_cast<int>(rows.size()) != size) throw ParseError("row count mismatch");
    for (int i = 0; i < size; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != size)
            throw ParseError("column count mismatch");
        for (int col = 0; col < size; ++col)
            m.at(i, col) = weyl_from_json(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)]);
    }
    return m;
}

nlohmann::json to_json(const DNMatrix& a) {
    const int n = a.n();
    nlohmann::json entries = nlohmann::json::object();
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            std::string key = std::to_string(i) + "," + std::to_string(j);
            if (a.exact()) {
                const Gaussian v = a.entry(i, j);
                if (v.is_real())
                    entries[key] = to_string(v.re);
                else
                    entries[key] = {{"re", to_string(v.re)}, {"im", to_string(v.im)}};
            } else {
                std::complex<double> v = a.entry_c(i, j);
                if (v.imag() == 0.0)
                    entries[key] = v.real();
                else
                    entries[key] = {{"re", v.real()}, {"im", v.imag()}};
            }
        }
    }
    return {{"n", n}, {"entries", entries}};
}

DNMatrix dn_matrix_from_json(const nlohmann::json& j) {
    if (!j.contains("n")) throw MalformedMatrix("matrix JSON lacks 'n'");
    int n = j.at("n").get<int>();
    if (n < 0 || n > 64) throw MalformedMatrix("unreasonable matrix order");
    DNMatrix m(n);
    if (!j.contains("entries") || !j.at("entries").is_object())
        throw MalformedMatrix("matrix JSON lacks an 'entries' object");
    for (const auto& [key, val] : j.at("entries").items()) {
        int i = 0, c = 0;
        if (std::sscanf(key.c_str(), "%d,%d", &i, &c) != 2)
            throw MalformedMatrix("bad entry key '" + key + "'");
        if (i < 0 || c < i || c > n)
            throw MalformedMatrix("entry key '" + key + "' outside the upper triangle");
        if (val.is_string()) {
            m.set(i, c, Gaussian::from_string(val.get<std::string>()));
        } else if (val.is_number()) {
            m.set(i, c, std::complex<double>(val.get<double>(), 0.0));
        } else if (val.is_object()) {
            const auto& re = val.at("re");
            const auto& im = val.at("im");
            if (re.is_string() && im.is_string()) {
                m.set(i, c,
                      Gaussian(rational_from_string(re.get<std::string>()),
                               rational_from_string(im.get<std::string>())));
            } else {
                m.set(i, c, std::complex<double>(re.get<double>(), im.get<double>()));
            }
        } else {
            throw MalformedMatrix("entry '" + key + "' has an unsupported value type");
        }
    }
    return m;
}

}  // namespace dn
