#include "optsig/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace optsig {

Rat rat(long n, long d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

namespace {

bool valid_fraction_chars(const std::string& s) {
    if (s.empty()) return false;
    bool digit_seen = false;
    int slashes = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digit_seen = true;
        } else if (c == '-' || c == '+') {
            if (i != 0 && s[i - 1] != '/') return false;
        } else if (c == '/') {
            if (++slashes > 1 || !digit_seen) return false;
        } else {
            return false;
        }
    }
    return digit_seen && s.back() != '/';
}

Rat parse_decimal(const std::string& s) {
    auto dot = s.find('.');
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos || tail.empty())
        throw std::invalid_argument("malformed decimal: " + s);
    bool neg = !head.empty() && head[0] == '-';
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) head.erase(0, 1);
    if (head.empty()) head = "0";
    if (head.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed decimal: " + s);
    mpz_class digits(head + tail);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
    Rat r(digits, scale);
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

}  // namespace

Rat rat_parse(const std::string& text) {
    if (text.find('.') != std::string::npos) return parse_decimal(text);
    if (!valid_fraction_chars(text))
        throw std::invalid_argument("malformed rational: \"" + text + "\"");
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("malformed rational: \"" + text + "\"");
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: \"" + text + "\"");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& x) { return x.get_str(); }

std::string rat_decimal(const Rat& x, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (x == 0) return "0";
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    bool neg = num < 0;
    if (neg) num = -num;

    // Scale so the integer quotient carries `significant_digits` digits.
    mpz_class q = num / den;
    std::string int_part = q.get_str();
    int int_digits = (q == 0) ? 0 : static_cast<int>(int_part.size());
    int shift = significant_digits - int_digits;
    int leading_zeros = 0;
    if (q == 0) {
        // Count zeros between the decimal point and the first significant digit.
        mpz_class n = num;
        while (n * 10 / den == 0) {
            n *= 10;
            ++leading_zeros;
        }
        shift = significant_digits + leading_zeros;
    }

    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, shift > 0 ? shift : 0);
    mpz_class scaled = num * pow10;
    mpz_class digits_q, rem;
    mpz_fdiv_qr(digits_q.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    // Round half away from zero on the magnitude.
    if (2 * rem >= den) digits_q += 1;

    std::string digits = digits_q.get_str();
    std::string out;
    if (shift <= 0) {
        // Integer with trailing zeros restored.
        out = digits + std::string(-shift, '0');
    } else if (static_cast<int>(digits.size()) > shift) {
        out = digits.substr(0, digits.size() - shift) + "." + digits.substr(digits.size() - shift);
    } else {
        out = "0." + std::string(shift - static_cast<int>(digits.size()), '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

Rat round_down_to_multiple(const Rat& x, const Rat& quantum) {
    Rat ratio = x / quantum;
    mpz_class steps;
    mpz_fdiv_q(steps.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
    return Rat(steps) * quantum;
}

std::int64_t rat_floor_i64(const Rat& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    if (!f.fits_slong_p()) throw std::overflow_error("floor does not fit in 64 bits");
    return static_cast<std::int64_t>(f.get_si());
}

}  // namespace optsig
