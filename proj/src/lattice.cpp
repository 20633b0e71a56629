#include "wdp/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace wdp {

namespace detail {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in product");
  return r;
}

}  // namespace detail

using detail::checked_add;
using detail::checked_mul;

// ---------------------------------------------------------------------------
// PicardLattice

PicardLattice PicardLattice::blowup(int n) {
  if (n < 0 || n > 8) throw LatticeError("Blowup(n) requires 0 <= n <= 8, got " + std::to_string(n));
  return PicardLattice(LatticeKind::Blowup, 0, n);
}

PicardLattice PicardLattice::hirzebruch(int d, int n) {
  if (d < 0) throw LatticeError("Hirzebruch(d) requires d >= 0");
  if (n < 0 || n > 7) throw LatticeError("Hirzebruch(d, n) requires 0 <= n <= 7");
  return PicardLattice(LatticeKind::Hirzebruch, d, n);
}

PicardLattice PicardLattice::parse(std::string_view name) {
  auto bad = [&] { return ParseError("unknown lattice name '" + std::string(name) + "'"); };
  if (name == "P2") return blowup(0);
  if (name.size() < 2) throw bad();
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw bad();
    return v;
  };
  if (name[0] == 'B') return blowup(parse_int(name.substr(1)));
  if (name[0] == 'F') {
    auto rest = name.substr(1);
    auto plus = rest.find('+');
    if (plus == std::string_view::npos) return hirzebruch(parse_int(rest));
    return hirzebruch(parse_int(rest.substr(0, plus)), parse_int(rest.substr(plus + 1)));
  }
  throw bad();
}

int PicardLattice::degree() const {
  return kind_ == LatticeKind::Blowup ? 9 - n_ : 8 - n_;
}

std::int64_t PicardLattice::form(int i, int j) const {
  if (kind_ == LatticeKind::Blowup) {
    if (i != j) return 0;
    return i == 0 ? 1 : -1;
  }
  if (i >= 2 || j >= 2) return (i == j) ? -1 : 0;
  if (i == 0 && j == 0) return 0;
  if (i == 1 && j == 1) return d_;
  return 1;
}

std::array<std::int64_t, kMaxRank> PicardLattice::canonical() const {
  std::array<std::int64_t, kMaxRank> k{};
  if (kind_ == LatticeKind::Blowup) {
    k[0] = -3;
  } else {
    k[0] = d_ - 2;
    k[1] = -2;
  }
  for (int i = first_exceptional(); i < rank(); ++i) k[static_cast<std::size_t>(i)] = 1;
  return k;
}

std::array<std::int64_t, kMaxRank> PicardLattice::apply_form_inverse(
    std::span<const std::int64_t> v) const {
  std::array<std::int64_t, kMaxRank> out{};
  if (kind_ == LatticeKind::Blowup) {
    out[0] = v[0];
  } else {
    // [[0,1],[1,d]]^{-1} = [[-d,1],[1,0]]
    out[0] = checked_add(checked_mul(-d_, v[0]), v[1]);
    out[1] = v[0];
  }
  for (int i = first_exceptional(); i < rank(); ++i)
    out[static_cast<std::size_t>(i)] = -v[static_cast<std::size_t>(i)];
  return out;
}

std::string PicardLattice::name() const {
  if (kind_ == LatticeKind::Blowup) return "B" + std::to_string(n_);
  std::string s = "F" + std::to_string(d_);
  if (n_ > 0) s += "+" + std::to_string(n_);
  return s;
}

std::string PicardLattice::basis_name(int i) const {
  if (kind_ == LatticeKind::Blowup) return i == 0 ? "L" : "E" + std::to_string(i);
  if (i == 0) return "F";
  if (i == 1) return "S";
  return "E" + std::to_string(i - 1);
}

// ---------------------------------------------------------------------------
// DivisorClass

DivisorClass::DivisorClass(const PicardLattice& lattice) : lattice_(lattice) {}

DivisorClass::DivisorClass(const PicardLattice& lattice, std::span<const std::int64_t> coeffs)
    : lattice_(lattice) {
  if (static_cast<int>(coeffs.size()) != lattice.rank())
    throw LatticeError("coefficient vector of length " + std::to_string(coeffs.size()) +
                       " does not match rank " + std::to_string(lattice.rank()) + " of " +
                       lattice.name());
  std::copy(coeffs.begin(), coeffs.end(), c_.begin());
}

DivisorClass::DivisorClass(const PicardLattice& lattice,
                           std::initializer_list<std::int64_t> coeffs)
    : DivisorClass(lattice, std::span<const std::int64_t>(coeffs.begin(), coeffs.size())) {}

DivisorClass DivisorClass::basis(const PicardLattice& lattice, int i) {
  if (i < 0 || i >= lattice.rank()) throw LatticeError("basis index out of range");
  DivisorClass d(lattice);
  d.c_[static_cast<std::size_t>(i)] = 1;
  return d;
}

DivisorClass DivisorClass::canonical(const PicardLattice& lattice) {
  auto k = lattice.canonical();
  return DivisorClass(lattice, std::span<const std::int64_t>(k.data(), static_cast<std::size_t>(lattice.rank())));
}

DivisorClass DivisorClass::line(const PicardLattice& lattice) {
  if (lattice.kind() != LatticeKind::Blowup) throw LatticeError("L exists only in Blowup lattices");
  return basis(lattice, 0);
}

DivisorClass DivisorClass::exceptional(const PicardLattice& lattice, int i) {
  if (i < 1 || i > lattice.exceptional_count())
    throw LatticeError("E" + std::to_string(i) + " does not exist in " + lattice.name());
  return basis(lattice, lattice.first_exceptional() + i - 1);
}

DivisorClass DivisorClass::line_minus(const PicardLattice& lattice, std::initializer_list<int> idx) {
  DivisorClass d = line(lattice);
  for (int i : idx) d -= exceptional(lattice, i);
  return d;
}

bool DivisorClass::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + rank(), [](std::int64_t v) { return v == 0; });
}

static void require_same(const DivisorClass& a, const DivisorClass& b) {
  if (!(a.lattice() == b.lattice()))
    throw LatticeError("lattice mismatch: " + a.lattice().name() + " vs " + b.lattice().name());
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  require_same(*this, o);
  for (int i = 0; i < rank(); ++i) (*this)[i] = checked_add((*this)[i], o[i]);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  require_same(*this, o);
  for (int i = 0; i < rank(); ++i) (*this)[i] = checked_add((*this)[i], checked_mul(-1, o[i]));
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass r(lattice_);
  for (int i = 0; i < rank(); ++i) r[i] = checked_mul(-1, (*this)[i]);
  return r;
}

DivisorClass operator*(std::int64_t s, const DivisorClass& a) {
  DivisorClass r(a.lattice());
  for (int i = 0; i < a.rank(); ++i) r[i] = checked_mul(s, a[i]);
  return r;
}

bool operator==(const DivisorClass& a, const DivisorClass& b) {
  if (!(a.lattice_ == b.lattice_)) return false;
  return std::equal(a.c_.begin(), a.c_.begin() + a.rank(), b.c_.begin());
}

bool canonical_less(const DivisorClass& a, const DivisorClass& b) {
  if (!(a.lattice_ == b.lattice_)) return a.lattice_ < b.lattice_;
  for (int i = 0; i < a.rank(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::size_t DivisorClassHash::operator()(const DivisorClass& d) const {
  std::size_t h = static_cast<std::size_t>(d.rank()) * 0x9e3779b97f4a7c15ULL;
  for (int i = 0; i < d.rank(); ++i) {
    h ^= std::hash<std::int64_t>()(d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < rank(); ++i) {
    std::int64_t c = (*this)[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::int64_t m = c < 0 ? -c : c;
    if (m != 1) os << m;
    os << lattice_.basis_name(i);
    first = false;
  }
  if (first) return "0";
  return os.str();
}

std::string DivisorClass::to_vector_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ", ";
    os << (*this)[i];
  }
  os << "]";
  return os.str();
}

namespace {

std::string index_group(const std::string& letter, const std::string& idx) {
  if (idx.size() == 1) return letter + "_" + idx;
  return letter + "_{" + idx + "}";
}

}  // namespace

std::string DivisorClass::pretty() const {
  if (lattice_.kind() != LatticeKind::Blowup || lattice_.exceptional_count() > 9) return to_string();
  if (is_zero()) return "0";
  std::int64_t a = (*this)[0];
  std::string neg;
  std::string pos;
  for (int i = 1; i < rank(); ++i) {
    std::int64_t b = (*this)[i];
    for (std::int64_t t = 0; t < (b < 0 ? -b : b); ++t) (b < 0 ? neg : pos) += std::to_string(i);
  }
  if (a == 1 && pos.empty()) return neg.empty() ? "L" : index_group("L", neg);
  if (a == -1 && neg.empty()) return pos.empty() ? "-L" : "-" + index_group("L", pos);
  std::string out;
  if (a == 1) out = "L";
  else if (a == -1) out = "-L";
  else if (a != 0) out = std::to_string(a) + "L";
  if (a == 0) {
    if (!pos.empty()) out += index_group("E", pos);
    if (!neg.empty()) out += "-" + index_group("E", neg);
    return out;
  }
  if (!neg.empty()) out += "-" + index_group("E", neg);
  if (!pos.empty()) out += "+" + index_group("E", pos);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ClassParser {
 public:
  ClassParser(const PicardLattice& lattice, std::string_view text)
      : lattice_(lattice), text_(text) {}

  DivisorClass parse() {
    skip_ws();
    if (peek() == '[') return parse_vector();
    DivisorClass acc(lattice_);
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      std::int64_t sign = 1;
      bool had_sign = false;
      while (peek() == '+' || peek() == '-') {
        if (get() == '-') sign = -sign;
        had_sign = true;
        skip_ws();
      }
      if (!first && !had_sign) fail("expected '+' or '-'");
      acc += checked_mul(sign, 1) * parse_term();
      first = false;
    }
    if (first) fail("empty class expression");
    return acc;
  }

 private:
  DivisorClass parse_vector() {
    get();
    std::vector<std::int64_t> v;
    skip_ws();
    if (peek() != ']') {
      while (true) {
        skip_ws();
        v.push_back(parse_int_required());
        skip_ws();
        char c = get();
        if (c == ']') break;
        if (c != ',') fail("expected ',' or ']'");
      }
    } else {
      get();
    }
    skip_ws();
    if (!at_end()) fail("trailing characters after vector");
    if (static_cast<int>(v.size()) != lattice_.rank())
      fail("vector has " + std::to_string(v.size()) + " entries, lattice " + lattice_.name() +
           " has rank " + std::to_string(lattice_.rank()));
    return DivisorClass(lattice_, v);
  }

  DivisorClass parse_term() {
    std::int64_t coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_int_required();
      skip_ws();
      if (peek() == '*') {
        get();
        skip_ws();
      }
      if (at_end() || peek() == '+' || peek() == '-') {
        if (coeff != 0) fail("bare integer term");
        return DivisorClass(lattice_);
      }
    }
    return coeff * parse_atom();
  }

  DivisorClass parse_atom() {
    char c = get();
    switch (c) {
      case 'K':
        return DivisorClass::canonical(lattice_);
      case 'L': {
        if (lattice_.kind() != LatticeKind::Blowup) fail("L is not a basis class of " + lattice_.name());
        DivisorClass d = DivisorClass::line(lattice_);
        std::string idx = parse_indices(/*optional=*/true);
        for (char ch : idx) d -= exceptional(ch);
        return d;
      }
      case 'E': {
        std::string idx = parse_indices(/*optional=*/false);
        DivisorClass d(lattice_);
        for (char ch : idx) d += exceptional(ch);
        return d;
      }
      case 'F':
      case 'S':
        if (lattice_.kind() != LatticeKind::Hirzebruch) fail(std::string(1, c) + " is not a basis class of " + lattice_.name());
        return DivisorClass::basis(lattice_, c == 'F' ? 0 : 1);
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  DivisorClass exceptional(char ch) {
    int i = ch - '0';
    if (i < 1 || i > lattice_.exceptional_count())
      fail("E" + std::string(1, ch) + " does not exist in " + lattice_.name());
    return DivisorClass::exceptional(lattice_, i);
  }

  std::string parse_indices(bool optional) {
    std::string idx;
    if (peek() == '_') {
      get();
      if (peek() == '{') {
        get();
        while (std::isdigit(static_cast<unsigned char>(peek()))) idx += get();
        if (get() != '}') fail("expected '}'");
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        idx += get();
      }
      if (idx.empty()) fail("empty index group");
      return idx;
    }
    while (std::isdigit(static_cast<unsigned char>(peek()))) idx += get();
    if (idx.empty() && !optional) fail("E needs an index");
    return idx;
  }

  std::int64_t parse_int_required() {
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = get() == '-';
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) fail("integer out of range");
    return neg ? -v : v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return at_end() ? '\0' : text_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("cannot parse class '" + std::string(text_) + "' at position " +
                     std::to_string(pos_) + ": " + msg);
  }

  const PicardLattice& lattice_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

DivisorClass parse_class(const PicardLattice& lattice, std::string_view text) {
  return ClassParser(lattice, text).parse();
}

// ---------------------------------------------------------------------------
// Intersection theory

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) {
  require_same(a, b);
  const PicardLattice& lat = a.lattice();
  std::int64_t s = 0;
  if (lat.kind() == LatticeKind::Blowup) {
    s = checked_mul(a[0], b[0]);
  } else {
    s = checked_add(checked_mul(a[0], b[1]), checked_mul(a[1], b[0]));
    s = checked_add(s, checked_mul(checked_mul(a[1], b[1]), lat.hirzebruch_degree()));
  }
  for (int i = lat.first_exceptional(); i < lat.rank(); ++i) s = checked_add(s, -checked_mul(a[i], b[i]));
  return s;
}

std::int64_t k_degree(const DivisorClass& d) {
  return intersect(d, DivisorClass::canonical(d.lattice()));
}

std::int64_t euler_char(const DivisorClass& d) {
  std::int64_t t = checked_add(square(d), -k_degree(d));
  // D.(D-K) is always even (Wu formula).
  return 1 + t / 2;
}

bool is_numerically_left_orthogonal(const DivisorClass& d) {
  return square(d) + 2 == -k_degree(d);
}

bool is_r_class(const DivisorClass& d, std::int64_t r) {
  return square(d) == r && k_degree(d) == -r - 2;
}

DivisorClass dual_class(const DivisorClass& d) {
  if (!is_numerically_left_orthogonal(d))
    throw LatticeError("dual_class: " + d.to_string() + " is not an r-class");
  return -DivisorClass::canonical(d.lattice()) - d;
}

// ---------------------------------------------------------------------------
// LatticeMap

LatticeMap::LatticeMap(PicardLattice source, PicardLattice target, std::vector<DivisorClass> images)
    : source_(source), target_(target), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.rank())
    throw LatticeError("LatticeMap needs one image per source basis vector");
  for (const auto& im : images_)
    if (!(im.lattice() == target_)) throw LatticeError("LatticeMap image lives in the wrong lattice");
}

DivisorClass LatticeMap::apply(const DivisorClass& x) const {
  if (!(x.lattice() == source_)) throw LatticeError("LatticeMap::apply: lattice mismatch");
  DivisorClass out(target_);
  for (int j = 0; j < source_.rank(); ++j) {
    if (x[j] != 0) out += x[j] * images_[static_cast<std::size_t>(j)];
  }
  return out;
}

DivisorClass LatticeMap::preimage(const DivisorClass& x) const {
  if (!(x.lattice() == target_)) throw LatticeError("LatticeMap::preimage: lattice mismatch");
  std::array<std::int64_t, kMaxRank> pairing{};
  for (int j = 0; j < source_.rank(); ++j) pairing[static_cast<std::size_t>(j)] = intersect(images_[static_cast<std::size_t>(j)], x);
  auto c = source_.apply_form_inverse(std::span<const std::int64_t>(pairing.data(), static_cast<std::size_t>(source_.rank())));
  DivisorClass pre(source_, std::span<const std::int64_t>(c.data(), static_cast<std::size_t>(source_.rank())));
  if (!(apply(pre) == x))
    throw LatticeError("class " + x.to_string() + " is not in the image of the embedding");
  return pre;
}

bool LatticeMap::preserves_form() const {
  for (int i = 0; i < source_.rank(); ++i)
    for (int j = 0; j < source_.rank(); ++j)
      if (intersect(images_[static_cast<std::size_t>(i)], images_[static_cast<std::size_t>(j)]) != source_.form(i, j)) return false;
  return true;
}

bool LatticeMap::maps_canonical_to_canonical() const {
  return apply(DivisorClass::canonical(source_)) == DivisorClass::canonical(target_);
}

LatticeMap hirzebruch_isometry(int d, int n) {
  if (d < 1 || d % 2 == 0)
    throw LatticeError("hirzebruch_isometry: only odd d is supported (even d stays a terminal base case)");
  const int m = (d - 1) / 2;
  PicardLattice src = PicardLattice::blowup(n + 1);
  PicardLattice tgt = PicardLattice::hirzebruch(d, n);
  DivisorClass f = DivisorClass::basis(tgt, 0);
  DivisorClass s = DivisorClass::basis(tgt, 1);
  std::vector<DivisorClass> images;
  images.push_back(s - m * f);
  images.push_back(s - (m + 1) * f);
  for (int i = 1; i <= n; ++i) images.push_back(DivisorClass::exceptional(tgt, i));
  return LatticeMap(src, tgt, std::move(images));
}

}  // namespace wdp
