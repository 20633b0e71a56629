// Exact Picard-lattice arithmetic for rational surfaces of positive degree.
//
// Two families of lattices are supported:
//   * Blowup(n): the blow-up of P^2 in n points, basis L, E1..En, 0 <= n <= 8.
//   * Hirzebruch(d, n): F_d blown up in n points, basis F, S, E1..En, with
//     F^2 = 0, F.S = 1, S^2 = d. Plain Hirzebruch surfaces have n = 0.
//
// All arithmetic is over int64 with overflow checks.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wdp {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxRank = 10;

enum class LatticeKind { Blowup, Hirzebruch };

class PicardLattice {
 public:
  static PicardLattice blowup(int n);
  static PicardLattice hirzebruch(int d, int n = 0);
  /// Parses "B6", "P2" (= B0), "F2", "F3+1".
  static PicardLattice parse(std::string_view name);

  LatticeKind kind() const { return kind_; }
  int exceptional_count() const { return n_; }
  int hirzebruch_degree() const { return d_; }
  int rank() const { return kind_ == LatticeKind::Blowup ? n_ + 1 : n_ + 2; }
  /// Index of the first exceptional class in the basis.
  int first_exceptional() const { return kind_ == LatticeKind::Blowup ? 1 : 2; }
  /// K^2.
  int degree() const;

  std::int64_t form(int i, int j) const;
  /// Coefficients of K in the basis.
  std::array<std::int64_t, kMaxRank> canonical() const;
  /// Applies the inverse of the Gram matrix (integral: the form is unimodular).
  std::array<std::int64_t, kMaxRank> apply_form_inverse(
      std::span<const std::int64_t> v) const;

  std::string name() const;
  std::string basis_name(int i) const;

  friend bool operator==(const PicardLattice&, const PicardLattice&) = default;
  friend auto operator<=>(const PicardLattice&, const PicardLattice&) = default;

 private:
  PicardLattice(LatticeKind kind, int d, int n) : kind_(kind), d_(d), n_(n) {}
  LatticeKind kind_;
  int d_;
  int n_;
};

class DivisorClass {
 public:
  explicit DivisorClass(const PicardLattice& lattice);
  DivisorClass(const PicardLattice& lattice, std::span<const std::int64_t> coeffs);
  DivisorClass(const PicardLattice& lattice, std::initializer_list<std::int64_t> coeffs);

  static DivisorClass zero(const PicardLattice& lattice) { return DivisorClass(lattice); }
  static DivisorClass basis(const PicardLattice& lattice, int i);
  static DivisorClass canonical(const PicardLattice& lattice);
  /// L in Blowup lattices.
  static DivisorClass line(const PicardLattice& lattice);
  /// E_i (1-based) in either family.
  static DivisorClass exceptional(const PicardLattice& lattice, int i);
  /// L - E_{i...} with the 1-based indices given.
  static DivisorClass line_minus(const PicardLattice& lattice, std::initializer_list<int> idx);

  const PicardLattice& lattice() const { return lattice_; }
  int rank() const { return lattice_.rank(); }
  std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const std::int64_t> coeffs() const {
    return {c_.data(), static_cast<std::size_t>(rank())};
  }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass operator-() const;
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(std::int64_t s, const DivisorClass& a);

  friend bool operator==(const DivisorClass& a, const DivisorClass& b);
  /// Canonical order: lexicographically descending coefficient vectors.
  friend bool canonical_less(const DivisorClass& a, const DivisorClass& b);

  /// "2L - E1 - E4", "0", "F + 2S - E1".
  std::string to_string() const;
  /// "[2, -1, 0, 0, -1]".
  std::string to_vector_string() const;
  /// Shorthand: "L_{145}", "2L-E_{11457}", "E_1-E_4", "-L_{467}".
  std::string pretty() const;

 private:
  PicardLattice lattice_;
  std::array<std::int64_t, kMaxRank> c_{};
};

struct CanonicalLess {
  bool operator()(const DivisorClass& a, const DivisorClass& b) const {
    return canonical_less(a, b);
  }
};

struct DivisorClassHash {
  std::size_t operator()(const DivisorClass& d) const;
};

/// Parses any of the text forms produced by to_string, to_vector_string and
/// pretty, plus "K" for the canonical class.
DivisorClass parse_class(const PicardLattice& lattice, std::string_view text);

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b);
inline std::int64_t square(const DivisorClass& a) { return intersect(a, a); }
/// D.K
std::int64_t k_degree(const DivisorClass& d);
/// chi(D) = 1 + D.(D-K)/2
std::int64_t euler_char(const DivisorClass& d);
/// D^2 + 2 = -D.K
bool is_numerically_left_orthogonal(const DivisorClass& d);
bool is_r_class(const DivisorClass& d, std::int64_t r);
/// -K - D for an r-class D; the result is an r'-class with r + r' = K^2 - 4.
DivisorClass dual_class(const DivisorClass& d);

/// Integer linear map between lattices; column j is the image of source basis j.
class LatticeMap {
 public:
  LatticeMap(PicardLattice source, PicardLattice target,
             std::vector<DivisorClass> images);

  const PicardLattice& source() const { return source_; }
  const PicardLattice& target() const { return target_; }
  const DivisorClass& image_of_basis(int j) const { return images_[static_cast<std::size_t>(j)]; }

  DivisorClass apply(const DivisorClass& x) const;
  /// Preimage of a class in the image of an isometric embedding; throws
  /// LatticeError if x is not in the image.
  DivisorClass preimage(const DivisorClass& x) const;

  bool preserves_form() const;
  bool maps_canonical_to_canonical() const;

 private:
  PicardLattice source_;
  PicardLattice target_;
  std::vector<DivisorClass> images_;
};

/// The isometry Blowup(n+1) -> Hirzebruch(d, n) for odd d = 2m+1:
/// L -> S - mF, E_1 -> S - (m+1)F, E_{i+1} -> E_i.
LatticeMap hirzebruch_isometry(int d, int n);

namespace detail {
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
}  // namespace detail

}  // namespace wdp
