#include "lrvdw/angular.h"

#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace lrvdw::angular {

namespace {

// Factorials enter the Racah and Wigner formulas as ratios under a square
// root.  Keeping them as prime-exponent vectors avoids both overflow and
// rounding until the final power evaluation, so coefficients stay exact to
// machine precision for the momenta used here (j up to ~20).
constexpr int kMaxFactorial = 170;

const std::vector<int>& prime_list() {
    static const std::vector<int> primes = [] {
        std::vector<int> p;
        for (int n = 2; n <= kMaxFactorial; ++n) {
            bool prime = true;
            for (int d : p) {
                if (d * d > n) break;
                if (n % d == 0) { prime = false; break; }
            }
            if (prime) p.push_back(n);
        }
        return p;
    }();
    return primes;
}

using ExpVec = std::vector<int>;

// exponent of each prime in n! (Legendre's formula)
const ExpVec& factorial_exponents(int n) {
    static const std::vector<ExpVec> table = [] {
        const auto& primes = prime_list();
        std::vector<ExpVec> t(kMaxFactorial + 1, ExpVec(primes.size(), 0));
        for (int n = 1; n <= kMaxFactorial; ++n) {
            for (std::size_t i = 0; i < primes.size(); ++i) {
                int e = 0, q = n;
                while (q >= primes[i]) { q /= primes[i]; e += q; }
                t[n][i] = e;
            }
        }
        return t;
    }();
    if (n < 0 || n > kMaxFactorial)
        throw std::domain_error("factorial argument out of supported range");
    return table[n];
}

void add_factorial(ExpVec& acc, int n, int scale) {
    const ExpVec& e = factorial_exponents(n);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += scale * e[i];
}

void add_integer(ExpVec& acc, int n, int scale) {
    const auto& primes = prime_list();
    for (std::size_t i = 0; i < primes.size() && n > 1; ++i) {
        while (n % primes[i] == 0) { acc[i] += scale; n /= primes[i]; }
    }
}

// evaluate prod_p p^(exps2[p]/2) where exps2 holds doubled exponents
double half_power_product(const ExpVec& exps2) {
    const auto& primes = prime_list();
    double value = 1.0;
    double odd = 1.0;
    for (std::size_t i = 0; i < exps2.size(); ++i) {
        int n = exps2[i];
        if (n == 0) continue;
        int r = ((n % 2) + 2) % 2;
        int q = (n - r) / 2;
        if (q != 0) value *= std::pow(static_cast<double>(primes[i]), q);
        if (r != 0) odd *= primes[i];
    }
    return value * std::sqrt(odd);
}

double factorial_ld(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return static_cast<double>(f);
}

} // namespace

double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
    if (j1 < 0 || j2 < 0 || J < 0)
        throw std::domain_error("clebsch_gordan: negative angular momentum");
    if (std::abs(m1) > j1 || std::abs(m2) > j2)
        throw std::domain_error("clebsch_gordan: projection exceeds momentum");
    if (M != m1 + m2) return 0.0;
    if (J < std::abs(j1 - j2) || J > j1 + j2 || std::abs(M) > J) return 0.0;

    const auto& primes = prime_list();
    ExpVec pre2(primes.size(), 0);
    add_integer(pre2, 2 * J + 1, 1);
    add_factorial(pre2, j1 + j2 - J, 1);
    add_factorial(pre2, j1 - j2 + J, 1);
    add_factorial(pre2, -j1 + j2 + J, 1);
    add_factorial(pre2, j1 + j2 + J + 1, -1);
    add_factorial(pre2, j1 + m1, 1);
    add_factorial(pre2, j1 - m1, 1);
    add_factorial(pre2, j2 + m2, 1);
    add_factorial(pre2, j2 - m2, 1);
    add_factorial(pre2, J + M, 1);
    add_factorial(pre2, J - M, 1);

    int kmin = std::max({0, j2 - J - m1, j1 - J + m2});
    int kmax = std::min({j1 + j2 - J, j1 - m1, j2 + m2});

    long double sum = 0.0L;
    ExpVec exps2(primes.size(), 0);
    for (int k = kmin; k <= kmax; ++k) {
        exps2 = pre2;
        add_factorial(exps2, k, -2);
        add_factorial(exps2, j1 + j2 - J - k, -2);
        add_factorial(exps2, j1 - m1 - k, -2);
        add_factorial(exps2, j2 + m2 - k, -2);
        add_factorial(exps2, J - j2 + m1 + k, -2);
        add_factorial(exps2, J - j1 - m2 + k, -2);
        double term = half_power_product(exps2);
        sum += (k % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

double wigner_d(int j, int m, int mp, double beta) {
    if (j < 0) throw std::domain_error("wigner_d: negative angular momentum");
    if (std::abs(m) > j || std::abs(mp) > j)
        throw std::domain_error("wigner_d: projection exceeds momentum");

    const auto& primes = prime_list();
    ExpVec pre2(primes.size(), 0);
    add_factorial(pre2, j + m, 1);
    add_factorial(pre2, j - m, 1);
    add_factorial(pre2, j + mp, 1);
    add_factorial(pre2, j - mp, 1);

    const double c = std::cos(beta / 2.0);
    const double s = std::sin(beta / 2.0);

    int smin = std::max(0, mp - m);
    int smax = std::min(j + mp, j - m);
    long double sum = 0.0L;
    ExpVec exps2(primes.size(), 0);
    for (int k = smin; k <= smax; ++k) {
        exps2 = pre2;
        add_factorial(exps2, j + mp - k, -2);
        add_factorial(exps2, k, -2);
        add_factorial(exps2, m - mp + k, -2);
        add_factorial(exps2, j - m - k, -2);
        double term = half_power_product(exps2)
                      * std::pow(c, 2 * j + mp - m - 2 * k)
                      * std::pow(s, m - mp + 2 * k);
        sum += ((m - mp + k) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

double rotational_dipole_element(int j, int mj, int jp, int mjp, int M, int mu) {
    if (std::abs(M) > 1 || std::abs(mu) > 1)
        throw std::domain_error("rotational_dipole_element: rank-1 projection out of range");
    if (j < 0 || jp < 0)
        throw std::domain_error("rotational_dipole_element: negative angular momentum");
    if (std::abs(mjp) > jp || std::abs(mu) > jp) return 0.0;
    return std::sqrt(double(2 * jp + 1) / double(2 * j + 1))
           * clebsch_gordan(1, M, jp, mjp, j, mj)
           * clebsch_gordan(1, mu, jp, -mu, j, 0);
}

double multipole_prefactor(int la, int lb, int m) {
    if (la < 0 || lb < 0 || std::abs(m) > std::min(la, lb))
        throw std::domain_error("multipole_prefactor: invalid rank or projection");
    double num = factorial_ld(la + lb);
    double den = std::sqrt(factorial_ld(la + m) * factorial_ld(la - m)
                           * factorial_ld(lb + m) * factorial_ld(lb - m));
    double sign = (lb % 2 == 0) ? 1.0 : -1.0;
    return sign * num / den;
}

} // namespace lrvdw::angular
