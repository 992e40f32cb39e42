#include "dn/rational.hpp"

#include <cctype>

namespace dn {

Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational: '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Gaussian& Gaussian::operator/=(const Gaussian& o) {
    if (o.is_zero()) throw Error("Gaussian division by zero");
    Rational n = o.norm2();
    Rational r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = r;
    return *this;
}

std::string Gaussian::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re != 0) out += to_string(re);
    if (im != 0) {
        if (re != 0 && im > 0) out += "+";
        if (im == -1)
            out += "-";
        else if (im != 1)
            out += to_string(im) + "*";
        out += "i";
    }
    return out;
}

Gaussian Gaussian::from_string(const std::string& s) {
    // Grammar: [rational][(+|-)rational*i] with either part optional, also "i", "-i".
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty Gaussian rational");

    auto parse_part = [](std::string p, bool imag) -> Rational {
        if (imag) {
            if (!p.empty() && p.back() == 'i') p.pop_back();
            if (!p.empty() && p.back() == '*') p.pop_back();
            if (p.empty() || p == "+") p = "1";
            if (p == "-") p = "-1";
        }
        return rational_from_string(p);
    };

    // Split at the last top-level +/- that is not the leading sign and not inside "/...".
    // A second sign can only start the imaginary part.
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != '/' && t[k - 1] != '+' && t[k - 1] != '-')
            split = k;
    }
    bool has_i = t.find('i') != std::string::npos;
    if (!has_i) return Gaussian(parse_part(t, false));
    if (split == std::string::npos) return Gaussian(Rational(0), parse_part(t, true));
    return Gaussian(parse_part(t.substr(0, split), false), parse_part(t.substr(split), true));
}

}  // namespace dn
