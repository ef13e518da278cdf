#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace nphoton {

using BigInt = boost::multiprecision::cpp_int;

enum class CoeffSign { plus, minus };

// Exact Stirling numbers and commutator coefficients C±_{n,k}.
class CoeffTable {
  public:
    explicit CoeffTable(int n_max = 12);

    int n_max() const noexcept { return n_max_; }

    // Signed Stirling numbers of the first kind, 0 <= k <= n <= n_max+1.
    const BigInt& s1(int n, int k) const;
    // Stirling numbers of the second kind, 0 <= k <= n <= n_max+1.
    const BigInt& s2(int n, int k) const;
    // C±_{n,k} = (-1)^{n+k} s1(n+1,k+1) ± s1(n,k), 1 <= n <= n_max, 0 <= k <= n.
    const BigInt& cplus(int n, int k) const;
    const BigInt& cminus(int n, int k) const;

  private:
    int n_max_;
    std::vector<std::vector<BigInt>> s1_, s2_, cp_, cm_;
};

// Shared table, grown on demand when n exceeds the current bound.
const CoeffTable& coeff_table(int n_needed = 12);

BigInt stirling1_signed(int n, int k);
BigInt stirling2(int n, int k);
BigInt c_coeff(int n, int k, CoeffSign sign);

// Coefficients c_k with a^n a†^n = Σ c_k N^k, k = 0..n.
std::vector<BigInt> normal_order_aadag(int n);

struct CommutatorPoly {
    std::vector<BigInt> cplus;   // k = 0..n, multiplies σz N^k
    std::vector<BigInt> cminus;  // k = 0..n-1
};

// [X+_n, X-_n] = σz Σ C+_{n,k} N^k + Σ C-_{n,k} N^k
CommutatorPoly commutator_poly(int n);

std::vector<double> to_double(const std::vector<BigInt>& v);

}  // namespace nphoton
