#include "hatlab/rational.hpp"

#include <stdexcept>

namespace hatlab {

Rational dyadic(std::uint64_t count, unsigned exponent)
{
    mpz_class num;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(count), 0, 0, &count);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational ratio(std::uint64_t count, std::uint64_t total)
{
    mpz_class num, den;
    mpz_import(num.get_mpz_t(), 1, 1, sizeof(count), 0, 0, &count);
    mpz_import(den.get_mpz_t(), 1, 1, sizeof(total), 0, 0, &total);
    if (den == 0)
        throw std::invalid_argument("ratio: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string fraction_string(const Rational & value)
{
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_fraction(std::string_view text)
{
    auto is_integer = [](std::string_view s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };

    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (! is_integer(num) || ! is_integer(den) || den[0] == '-')
        throw std::invalid_argument("not a fraction: '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r{mpz_class{std::string(num)}, d};
    r.canonicalize();
    return r;
}

double to_double(const Rational & value)
{
    return value.get_d();
}

bool is_dyadic(const Rational & value)
{
    const mpz_class & d = value.get_den();
    return mpz_popcount(d.get_mpz_t()) == 1;
}

} // namespace hatlab
