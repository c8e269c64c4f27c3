// Generates fixtures/golden.json. Values come from a plain sieve of
// Eratosthenes plus a decimal digit filter, deliberately independent of the
// library's enumeration + Miller-Rabin route that the fixtures later pin down.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

using u64 = std::uint64_t;

std::vector<bool> sieve(u64 limit) {
  std::vector<bool> is_prime(limit, true);
  if (limit > 0) is_prime[0] = false;
  if (limit > 1) is_prime[1] = false;
  for (u64 i = 2; i * i < limit; ++i)
    if (is_prime[i])
      for (u64 j = i * i; j < limit; j += i) is_prime[j] = false;
  return is_prime;
}

bool avoids_digit(u64 n, int bad) {
  do {
    if (static_cast<int>(n % 10) == bad) return false;
    n /= 10;
  } while (n > 0);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_path = argc > 1 ? argv[1] : "fixtures/golden.json";
  const u64 limit = 10000000;

  std::vector<bool> is_prime = sieve(limit);
  u64 pi = 0, in_x7 = 0, in_x0 = 0;
  for (u64 n = 2; n < limit; ++n) {
    if (!is_prime[n]) continue;
    ++pi;
    if (avoids_digit(n, 7)) ++in_x7;
    if (avoids_digit(n, 0)) ++in_x0;
  }

  if (pi != 664579) {
    std::cerr << "self-check failed: sieve reports pi(1e7) = " << pi << ", expected 664579\n";
    return 1;
  }

  nlohmann::json golden;
  golden["command"] = std::string("rdl-make-golden ") + out_path;
  golden["prime_count"]["10000000"] = pi;
  golden["prime_count_in_set"]["q10-x7@10000000"] = in_x7;
  golden["prime_count_in_set"]["q10-x0@10000000"] = in_x0;

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << golden.dump(2) << "\n";
  std::cout << "wrote " << out_path << ": pi=" << pi << " x7=" << in_x7 << " x0=" << in_x0
            << "\n";
  return 0;
}
