#include "rdl/digitset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdl/errors.hpp"

namespace rdl {

DigitSystem::DigitSystem(int base, std::vector<int> excluded) : base_(base), excluded_(std::move(excluded)) {
  if (base_ < 3) throw ConfigError("digit system base must be at least 3");
  std::sort(excluded_.begin(), excluded_.end());
  excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
  for (int d : excluded_)
    if (d < 0 || d >= base_) throw ConfigError("excluded digit out of range for base " + std::to_string(base_));
  int s = static_cast<int>(excluded_.size());
  if (s < 1 || s > base_ - 2)
    throw ConfigError("excluded-digit count must satisfy 1 <= s <= q-2");
  mask_.assign(static_cast<std::size_t>(base_), 1);
  for (int d : excluded_) mask_[static_cast<std::size_t>(d)] = 0;
  allowed_.reserve(static_cast<std::size_t>(base_ - s));
  for (int d = 0; d < base_; ++d)
    if (mask_[static_cast<std::size_t>(d)]) allowed_.push_back(d);
}

DigitSystem DigitSystem::parse(const std::string& text) {
  if (text.size() < 4 || text[0] != 'q')
    throw ConfigError("digit system must look like q<base>-x<digits>, got '" + text + "'");
  std::size_t dash = text.find("-x");
  if (dash == std::string::npos || dash == 1 || dash + 2 >= text.size())
    throw ConfigError("digit system must look like q<base>-x<digits>, got '" + text + "'");
  auto parse_int = [&](const std::string& part) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("bad integer '" + part + "' in digit system '" + text + "'");
    if (part.size() > 7) throw ConfigError("integer too large in digit system '" + text + "'");
    return std::stoi(part);
  };
  int base = parse_int(text.substr(1, dash - 1));
  std::vector<int> excluded;
  std::string rest = text.substr(dash + 2);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    excluded.push_back(parse_int(rest.substr(pos, comma - pos)));
    pos = comma + 1;
    if (comma == rest.size()) break;
  }
  return DigitSystem(base, std::move(excluded));
}

std::string DigitSystem::str() const {
  std::string out = "q" + std::to_string(base_) + "-x";
  for (std::size_t i = 0; i < excluded_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(excluded_[i]);
  }
  return out;
}

bool DigitSystem::contains(std::uint64_t n) const {
  std::uint64_t q = static_cast<std::uint64_t>(base_);
  do {
    if (!mask_[static_cast<std::size_t>(n % q)]) return false;
    n /= q;
  } while (n != 0);
  return true;
}

double DigitSystem::density_exponent() const {
  return std::log(static_cast<double>(base_ - s())) / std::log(static_cast<double>(base_));
}

int DigitSystem::excluded_single() const {
  if (s() != 1) throw ConfigError("excluded_single requires exactly one excluded digit");
  return excluded_[0];
}

namespace {

std::vector<int> digits_msd_first(std::uint64_t n, int base) {
  std::vector<int> ds;
  std::uint64_t q = static_cast<std::uint64_t>(base);
  do {
    ds.push_back(static_cast<int>(n % q));
    n /= q;
  } while (n != 0);
  std::reverse(ds.begin(), ds.end());
  return ds;
}

}  // namespace

std::uint64_t count_members(const DigitSystem& ds, std::uint64_t limit) {
  if (limit == 0) return 0;
  std::uint64_t total = ds.digit_allowed(0) ? 1 : 0;  // the member 0
  int q = ds.base();
  int a_all = q - ds.s();
  int a_nonzero = a_all - (ds.digit_allowed(0) ? 1 : 0);

  std::vector<int> lim = digits_msd_first(limit, q);
  int len = static_cast<int>(lim.size());

  // Powers a_all^j for j < len never overflow: a_all^j <= q^j <= limit.
  std::vector<std::uint64_t> pow_all(static_cast<std::size_t>(len), 1);
  for (int j = 1; j < len; ++j)
    pow_all[static_cast<std::size_t>(j)] = pow_all[static_cast<std::size_t>(j - 1)] * static_cast<std::uint64_t>(a_all);

  // Lengths strictly shorter than limit's.
  for (int l = 1; l < len; ++l)
    total += static_cast<std::uint64_t>(a_nonzero) * pow_all[static_cast<std::size_t>(l - 1)];

  // Same length as limit: walk the digits with a tight prefix.
  for (int i = 0; i < len; ++i) {
    int lo = (i == 0) ? 1 : 0;
    int below = 0;
    for (int d = lo; d < lim[static_cast<std::size_t>(i)]; ++d)
      if (ds.digit_allowed(d)) ++below;
    total += static_cast<std::uint64_t>(below) * pow_all[static_cast<std::size_t>(len - 1 - i)];
    if (!ds.digit_allowed(lim[static_cast<std::size_t>(i)])) break;
  }
  return total;
}

void for_each_member(const DigitSystem& ds, std::uint64_t limit,
                     const std::function<void(std::uint64_t)>& fn, std::uint64_t cap) {
  if (limit == 0) return;
  if (count_members(ds, limit) > cap)
    throw ResourceError("member enumeration below " + std::to_string(limit) + " exceeds cap " + std::to_string(cap));
  if (ds.digit_allowed(0)) fn(0);

  std::uint64_t q = static_cast<std::uint64_t>(ds.base());
  const std::vector<int>& all = ds.allowed();
  std::vector<int> nonzero;
  for (int d : all)
    if (d != 0) nonzero.push_back(d);

  for (int len = 1;; ++len) {
    // Smallest value of this length; stop once even that reaches the limit.
    std::uint64_t place = 1;
    bool overflow = false;
    for (int i = 1; i < len; ++i) {
      if (place > limit / q) { overflow = true; break; }
      place *= q;
    }
    if (overflow) break;
    std::uint64_t smallest = static_cast<std::uint64_t>(nonzero.front()) * place;
    if (all.front() != 0) {
      // No digit 0: lower positions start at the smallest allowed digit.
      std::uint64_t tail = 0, p = 1;
      for (int i = 1; i < len; ++i) { tail += static_cast<std::uint64_t>(all.front()) * p; p *= q; }
      smallest += tail;
    }
    if (smallest >= limit) break;

    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    auto digit_at = [&](int pos) {  // pos 0 = most significant
      return pos == 0 ? nonzero[idx[0]] : all[idx[static_cast<std::size_t>(pos)]];
    };
    while (true) {
      std::uint64_t n = 0;
      for (int pos = 0; pos < len; ++pos) n = n * q + static_cast<std::uint64_t>(digit_at(pos));
      if (n >= limit) break;  // lexicographic order is numeric order within a length
      fn(n);
      int pos = len - 1;
      while (pos >= 0) {
        std::size_t sz = pos == 0 ? nonzero.size() : all.size();
        if (idx[static_cast<std::size_t>(pos)] + 1 < sz) { ++idx[static_cast<std::size_t>(pos)]; break; }
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
}

std::vector<std::uint64_t> enumerate_members(const DigitSystem& ds, std::uint64_t limit, std::uint64_t cap) {
  std::vector<std::uint64_t> out;
  for_each_member(ds, limit, [&](std::uint64_t n) { out.push_back(n); }, cap);
  return out;
}

void for_each_fixed_length(const DigitSystem& ds, int k, const std::function<void(std::uint64_t)>& fn) {
  if (k < 0) throw ConfigError("string length must be nonnegative");
  if (k == 0) { fn(0); return; }
  std::uint64_t q = static_cast<std::uint64_t>(ds.base());
  const std::vector<int>& all = ds.allowed();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    std::uint64_t n = 0;
    for (int pos = 0; pos < k; ++pos) n = n * q + static_cast<std::uint64_t>(all[idx[static_cast<std::size_t>(pos)]]);
    fn(n);
    int pos = k - 1;
    while (pos >= 0) {
      if (idx[static_cast<std::size_t>(pos)] + 1 < all.size()) { ++idx[static_cast<std::size_t>(pos)]; break; }
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

Rational coprime_allowed_fraction(const DigitSystem& ds) {
  int c = 0;
  for (int d : ds.allowed())
    if (d > 0 && std::gcd(d, ds.base()) == 1) ++c;
  return Rational(c, ds.base() - ds.s());
}

KappaConstants kappa_constants(const DigitSystem& ds) {
  int q = ds.base();
  int phi = euler_phi(q);
  int t = 0;
  for (int d : ds.excluded())
    if (d > 0 && std::gcd(d, q) == 1) ++t;

  KappaConstants out;
  out.coprime_excluded = t;
  if (q == 10 && ds.s() == 1) {
    int a0 = ds.excluded_single();
    out.kappa = (std::gcd(a0, 10) == 1) ? Rational(phi - 1, 9) : Rational(phi, 9);
  } else if (q != 10) {
    out.kappa = Rational(phi - t, q - ds.s());
  } else {
    throw ConfigError("kappa constants for base 10 are defined for a single excluded digit only");
  }
  out.kappa2 = Rational(q, 1) * out.kappa / Rational(phi, 1);
  return out;
}

}  // namespace rdl
