#include "mwis/rational.hpp"

#include <cmath>
#include <sstream>

namespace mwis {

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    mpz_class num, den(1);
    if (num_part.empty() || mpz_set_str(num.get_mpz_t(), num_part.c_str(), 10) != 0) {
        throw ParseError("invalid rational '" + text + "'");
    }
    if (slash != std::string::npos) {
        const std::string den_part = text.substr(slash + 1);
        if (den_part.empty() || mpz_set_str(den.get_mpz_t(), den_part.c_str(), 10) != 0) {
            throw ParseError("invalid rational '" + text + "'");
        }
        if (den <= 0) {
            throw ParseError("invalid rational '" + text + "': denominator must be positive");
        }
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string rational_str(const Rational& r) {
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rational_decimal_str(const Rational& r) {
    std::ostringstream os;
    os.precision(12);
    os << r.get_d();
    return os.str();
}

std::size_t rational_bits(const Rational& r) {
    std::size_t bits = mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
    if (sgn(r) < 0) {
        bits += 1;
    }
    return bits;
}

std::size_t int_bits(long long v) {
    unsigned long long a = v < 0 ? static_cast<unsigned long long>(-(v + 1)) + 1 : static_cast<unsigned long long>(v);
    std::size_t bits = 1;
    while (a > 1) {
        a >>= 1;
        ++bits;
    }
    return v < 0 ? bits + 1 : bits;
}

mpz_class rational_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

mpz_class rational_ceil(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

long long rational_floor_ll(const Rational& r) {
    const mpz_class q = rational_floor(r);
    if (!q.fits_slong_p()) {
        throw InputError("rational floor out of machine range: " + rational_str(r));
    }
    return q.get_si();
}

long long rational_ceil_ll(const Rational& r) {
    const mpz_class q = rational_ceil(r);
    if (!q.fits_slong_p()) {
        throw InputError("rational ceil out of machine range: " + rational_str(r));
    }
    return q.get_si();
}

bool is_integer(const Rational& r) {
    return r.get_den() == 1;
}

Rational rational_pow(const Rational& base, unsigned long exp) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

long long ceil_kth_root(const Rational& x, int k) {
    if (k < 1) {
        throw InputError("ceil_kth_root: k must be >= 1");
    }
    if (sgn(x) < 0) {
        throw InputError("ceil_kth_root: negative argument");
    }
    if (sgn(x) == 0) {
        return 0;
    }
    // Exponential + binary search on integers with exact comparisons A^k >= x.
    long long lo = 1, hi = 1;
    while (rational_pow(to_rational(hi), static_cast<unsigned long>(k)) < x) {
        lo = hi + 1;
        hi *= 2;
    }
    while (lo < hi) {
        const long long mid = lo + (hi - lo) / 2;
        if (rational_pow(to_rational(mid), static_cast<unsigned long>(k)) >= x) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

int log_star(long long n) {
    int iters = 0;
    double x = static_cast<double>(n);
    while (x > 1.0) {
        x = std::log2(x);
        ++iters;
        if (iters > 16) {
            break;
        }
    }
    return iters;
}

} // namespace mwis
