#include "gfd/util.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace gfd {

std::string u128_to_string(uint128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return std::string(out.rbegin(), out.rend());
}

uint128 binomial_u128(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 128) throw ParameterError("binomial_u128: n capped at 128");
  // Pascal row; additions stay below the final entry so cannot overflow
  // before the result itself would.
  std::vector<uint128> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) {
      uint128 s = row[j] + row[j - 1];
      if (s < row[j]) throw InternalError("binomial_u128 overflow");
      row[j] = s;
    }
  return row[static_cast<std::size_t>(k)];
}

double log_factorial(int n) {
  if (n < 0) throw ParameterError("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  // Exact integer path while the result fits in 64 bits.
  if (n <= 62) {
    std::uint64_t r = 1;
    bool exact = true;
    for (int i = 1; i <= k; ++i) {
      std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
      if (r > UINT64_MAX / num) {
        exact = false;
        break;
      }
      r = r * num / static_cast<std::uint64_t>(i);
    }
    if (exact) return static_cast<double>(r);
  }
  return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

void run_chunked(std::size_t total, int threads,
                 const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 1 || total < 2048) {
    fn(0, total);
    return;
  }
  const std::size_t chunk = (total + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    std::size_t lo = static_cast<std::size_t>(t) * chunk;
    std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

} // namespace gfd
