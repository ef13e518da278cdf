#include "nphoton/combinatorics.hpp"

#include "nphoton/errors.hpp"

#include <memory>
#include <mutex>
#include <string>

namespace nphoton {

CoeffTable::CoeffTable(int n_max) : n_max_(n_max) {
    require(n_max >= 1, ErrorKind::domain, "n_max must be positive");
    const int top = n_max + 1;
    s1_.assign(top + 1, {});
    s2_.assign(top + 1, {});
    for (int n = 0; n <= top; ++n) {
        s1_[n].assign(n + 1, 0);
        s2_[n].assign(n + 1, 0);
    }
    s1_[0][0] = 1;
    s2_[0][0] = 1;
    for (int n = 0; n < top; ++n) {
        for (int k = 1; k <= n + 1; ++k) {
            const BigInt prev1 = k - 1 <= n ? s1_[n][k - 1] : BigInt(0);
            const BigInt same1 = k <= n ? s1_[n][k] : BigInt(0);
            s1_[n + 1][k] = prev1 - BigInt(n) * same1;
            const BigInt prev2 = k - 1 <= n ? s2_[n][k - 1] : BigInt(0);
            const BigInt same2 = k <= n ? s2_[n][k] : BigInt(0);
            s2_[n + 1][k] = BigInt(k) * same2 + prev2;
        }
    }
    cp_.assign(n_max + 1, {});
    cm_.assign(n_max + 1, {});
    for (int n = 1; n <= n_max; ++n) {
        cp_[n].resize(n + 1);
        cm_[n].resize(n + 1);
        for (int k = 0; k <= n; ++k) {
            BigInt a = s1_[n + 1][k + 1];
            if ((n + k) % 2 != 0) a = -a;
            cp_[n][k] = a + s1_[n][k];
            cm_[n][k] = a - s1_[n][k];
        }
    }
}

namespace {
void check_nk(int n, int k, int nmax, const char* what) {
    if (n < 0 || k < 0 || k > n || n > nmax)
        throw Error(ErrorKind::domain, std::string(what) + "(" + std::to_string(n) + "," +
                                           std::to_string(k) + ") out of range");
}
}  // namespace

const BigInt& CoeffTable::s1(int n, int k) const {
    check_nk(n, k, n_max_ + 1, "s1");
    return s1_[n][k];
}

const BigInt& CoeffTable::s2(int n, int k) const {
    check_nk(n, k, n_max_ + 1, "s2");
    return s2_[n][k];
}

const BigInt& CoeffTable::cplus(int n, int k) const {
    check_nk(n, k, n_max_, "cplus");
    require(n >= 1, ErrorKind::domain, "C coefficients need n >= 1");
    return cp_[n][k];
}

const BigInt& CoeffTable::cminus(int n, int k) const {
    check_nk(n, k, n_max_, "cminus");
    require(n >= 1, ErrorKind::domain, "C coefficients need n >= 1");
    return cm_[n][k];
}

const CoeffTable& coeff_table(int n_needed) {
    static std::mutex mu;
    static std::vector<std::unique_ptr<CoeffTable>> tables;
    std::lock_guard<std::mutex> lock(mu);
    if (tables.empty() || tables.back()->n_max() < n_needed) {
        int nm = tables.empty() ? 12 : tables.back()->n_max();
        while (nm < n_needed) nm *= 2;
        tables.push_back(std::make_unique<CoeffTable>(nm));
    }
    return *tables.back();
}

BigInt stirling1_signed(int n, int k) {
    check_nk(n, k, n < 0 ? 0 : n, "s1");
    return coeff_table(n).s1(n, k);
}

BigInt stirling2(int n, int k) {
    check_nk(n, k, n < 0 ? 0 : n, "s2");
    return coeff_table(n).s2(n, k);
}

BigInt c_coeff(int n, int k, CoeffSign sign) {
    require(n >= 1, ErrorKind::domain, "C coefficients need n >= 1");
    check_nk(n, k, n, "c_coeff");
    const auto& t = coeff_table(n);
    return sign == CoeffSign::plus ? t.cplus(n, k) : t.cminus(n, k);
}

std::vector<BigInt> normal_order_aadag(int n) {
    require(n >= 1, ErrorKind::domain, "normal_order_aadag needs n >= 1");
    const auto& t = coeff_table(n);
    std::vector<BigInt> c(n + 1);
    for (int k = 0; k <= n; ++k) {
        c[k] = t.s1(n + 1, k + 1);
        if ((n + k) % 2 != 0) c[k] = -c[k];
    }
    return c;
}

CommutatorPoly commutator_poly(int n) {
    require(n >= 1, ErrorKind::domain, "commutator_poly needs n >= 1");
    const auto& t = coeff_table(n);
    CommutatorPoly p;
    for (int k = 0; k <= n; ++k) p.cplus.push_back(t.cplus(n, k));
    for (int k = 0; k < n; ++k) p.cminus.push_back(t.cminus(n, k));
    return p;
}

std::vector<double> to_double(const std::vector<BigInt>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.convert_to<double>());
    return out;
}

}  // namespace nphoton
