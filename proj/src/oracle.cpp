#include "unimap/oracle.hpp"

#include <vector>

#include "unimap/errors.hpp"

namespace unimap {

namespace {

std::vector<IntPoly> b_coefficients(const IntPoly& f) {
    std::vector<IntPoly> c(f.deg_b() + 1);
    for (const auto& [m, coef] : f.terms())
        c[m.b] = c[m.b] + IntPoly::monomial({m.s, m.t, 0}, coef);
    return c;
}

IntPoly bareiss_det(std::vector<std::vector<IntPoly>> M) {
    const size_t N = M.size();
    int sign = 1;
    IntPoly prev = IntPoly::constant(1);
    for (size_t k = 0; k + 1 < N; ++k) {
        if (M[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < N && M[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == N) return IntPoly();  // singular
            std::swap(M[k], M[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < N; ++i)
            for (size_t j = k + 1; j < N; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).div_exact(prev);
        prev = M[k][k];
    }
    IntPoly det = M[N - 1][N - 1];
    return sign < 0 ? -det : det;
}

}  // namespace

IntPoly resultant_b(const IntPoly& f, const IntPoly& g) {
    const unsigned df = f.deg_b(), dg = g.deg_b();
    if (df == 0 || dg == 0)
        throw std::logic_error("resultant_b expects positive B degrees");
    auto fc = b_coefficients(f);
    auto gc = b_coefficients(g);
    const size_t N = df + dg;
    std::vector<std::vector<IntPoly>> M(N, std::vector<IntPoly>(N));
    for (unsigned i = 0; i < dg; ++i)
        for (unsigned k = 0; k <= df; ++k) M[i][i + k] = fc[df - k];
    for (unsigned i = 0; i < df; ++i)
        for (unsigned k = 0; k <= dg; ++k) M[dg + i][i + k] = gc[dg - k];
    return bareiss_det(std::move(M));
}

UniPoly resultant_oracle(const RationalExponent& r, unsigned n,
                         const std::vector<int>& signs, bool primitivePart) {
    if (n < 2) throw ConfigError("resultant_oracle requires n >= 2");
    if (signs.size() + 1 != n)
        throw ConfigError("sign sequence must have length n-1");
    const unsigned p = static_cast<unsigned>(r.p);
    const unsigned q = static_cast<unsigned>(r.q);

    if (n == 2)  // b_2 = s + 1 = 0, no radicals
        return UniPoly::variable() + UniPoly::constant(1);

    // Variable convention per round: B holds u_k, T holds u_{k-1}, S holds s.
    // F starts as b_n = u_{n-1}^p s + 1.
    IntPoly F = IntPoly::monomial({1, 0, p}, 1) + IntPoly::constant(1);
    for (unsigned k = n - 1; k >= 2; --k) {
        const int sk = signs[k - 1];
        IntPoly bk = (k >= 3)
                         ? IntPoly::monomial({1, static_cast<unsigned>(p), 0}, 1) +
                               IntPoly::constant(1)  // u_{k-1}^p s + 1
                         : IntPoly::variable_s() + IntPoly::constant(1);
        IntPoly G = IntPoly::monomial({0, 0, q}, 1) + bk.mul_z(sk);
        IntPoly R = resultant_b(F, G);
        if (R.is_zero())
            throw std::logic_error("vanishing resultant in the oracle chain");
        if (primitivePart) R = R.primitive_part();
        F = R.t_to_b_signed(1);  // u_{k-1} moves into the B slot for the next round
    }
    if (F.deg_t() != 0 || F.deg_b() != 0)
        throw std::logic_error("oracle did not reach a univariate polynomial");
    std::vector<mpz_class> coeffs(F.deg_s() + 1, 0);
    for (const auto& [m, c] : F.terms()) coeffs[m.s] = c;
    return UniPoly(std::move(coeffs));
}

}  // namespace unimap
