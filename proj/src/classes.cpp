#include "wdp/classes.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <functional>
#include <tuple>

namespace wdp {

namespace {

std::int64_t isqrt(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Fills b[pos..n) so that sum b = t and sum b^2 = q.
void fill_exceptional(std::vector<std::int64_t>& b, std::size_t pos, std::int64_t t, std::int64_t q,
                      const std::function<void()>& emit) {
  const auto m = static_cast<std::int64_t>(b.size() - pos);
  if (m == 0) {
    if (t == 0 && q == 0) emit();
    return;
  }
  if (q < 0 || t * t > m * q) return;
  const std::int64_t lim = isqrt(q);
  for (std::int64_t v = lim; v >= -lim; --v) {
    b[pos] = v;
    fill_exceptional(b, pos + 1, t - v, q - v * v, emit);
  }
}

std::vector<DivisorClass> enumerate_blowup(const PicardLattice& lat, std::int64_t s, std::int64_t k) {
  const std::int64_t n = lat.exceptional_count();
  const std::int64_t c = 9 - n;
  // (k + 3a)^2 <= n (a^2 - s)  <=>  c a^2 + 6 k a + (k^2 + n s) <= 0
  const std::int64_t disc = 36 * k * k - 4 * c * (k * k + n * s);
  std::vector<DivisorClass> out;
  if (disc < 0) return out;
  const std::int64_t r = isqrt(disc);
  const std::int64_t lo = floor_div(-6 * k - r, 2 * c) - 1;
  const std::int64_t hi = floor_div(-6 * k + r, 2 * c) + 1;
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(n + 1));
  for (std::int64_t a = lo; a <= hi; ++a) {
    if (c * a * a + 6 * k * a + k * k + n * s > 0) continue;
    coeffs[0] = a;
    std::vector<std::int64_t> b(static_cast<std::size_t>(n));
    fill_exceptional(b, 0, -k - 3 * a, a * a - s, [&] {
      std::copy(b.begin(), b.end(), coeffs.begin() + 1);
      out.emplace_back(lat, coeffs);
    });
  }
  return out;
}

std::vector<DivisorClass> enumerate_hirzebruch_plain(const PicardLattice& lat, std::int64_t r,
                                                     std::int64_t k) {
  // D = fF + sS: D.K = -2f - (d+2)s, D^2 = -ks - 2s^2.
  const std::int64_t d = lat.hirzebruch_degree();
  std::vector<DivisorClass> out;
  const std::int64_t disc = k * k - 8 * r;
  if (disc < 0) return out;
  const std::int64_t root = isqrt(disc);
  if (root * root != disc) return out;
  for (std::int64_t num : {-k + root, -k - root}) {
    if (num % 4 != 0) continue;
    const std::int64_t s = num / 4;
    const std::int64_t twice_f = -k - (d + 2) * s;
    if (twice_f % 2 != 0) continue;
    DivisorClass dc(lat, {twice_f / 2, s});
    if (std::find(out.begin(), out.end(), dc) == out.end()) out.push_back(dc);
  }
  return out;
}

}  // namespace

std::vector<DivisorClass> enumerate_classes(const PicardLattice& lattice, std::int64_t square,
                                            std::int64_t k_degree) {
  if (lattice.degree() <= 0) throw LatticeError("enumerate_classes requires K^2 > 0");
  std::vector<DivisorClass> out;
  if (lattice.kind() == LatticeKind::Blowup) {
    out = enumerate_blowup(lattice, square, k_degree);
  } else if (lattice.exceptional_count() == 0) {
    out = enumerate_hirzebruch_plain(lattice, square, k_degree);
  } else {
    const LatticeMap phi = hirzebruch_isometry(lattice.hirzebruch_degree(), lattice.exceptional_count());
    for (const auto& d : enumerate_blowup(phi.source(), square, k_degree)) out.push_back(phi.apply(d));
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

const std::vector<DivisorClass>& class_set(const PicardLattice& lattice, std::int64_t square,
                                           std::int64_t k_degree) {
  using Key = std::tuple<PicardLattice, std::int64_t, std::int64_t>;
  static std::mutex mu;
  static std::map<Key, std::vector<DivisorClass>> cache;
  const Key key{lattice, square, k_degree};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto computed = enumerate_classes(lattice, square, k_degree);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(computed)).first->second;
}

DivisorClass reflect(const DivisorClass& d, const DivisorClass& root) {
  if (!is_r_class(root, -2)) throw LatticeError("reflect: " + root.to_string() + " is not a (-2)-class");
  return d + intersect(d, root) * root;
}

}  // namespace wdp
