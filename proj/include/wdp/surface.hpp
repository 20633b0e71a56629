// Weak del Pezzo surface types: a lattice plus the simple roots R^irr.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wdp/lattice.hpp"

namespace wdp {

class SurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DynkinComponent {
  char letter;  // 'A', 'D' or 'E'
  int rank;
  friend auto operator<=>(const DynkinComponent&, const DynkinComponent&) = default;
};

/// Components of the incidence graph of a simple-root set; throws SurfaceError
/// if the graph is not a disjoint union of ADE diagrams.
std::vector<DynkinComponent> dynkin_components(const std::vector<DivisorClass>& roots);
/// "A1+2A3"; "empty" for no components.
std::string dynkin_label(std::vector<DynkinComponent> comps);
/// Accepts "A1+2A3", "empty" and "∅".
std::vector<DynkinComponent> parse_dynkin_label(std::string_view label);
/// Number of positive roots of the root system.
int positive_root_count(const std::vector<DynkinComponent>& comps);

class Surface;
using SurfacePtr = std::shared_ptr<const Surface>;

class Surface {
 public:
  /// Validates r_irr and computes all derived sets. Prefer make_surface.
  Surface(std::string name, PicardLattice lattice, std::vector<DivisorClass> r_irr,
          std::optional<int> expected_lines = std::nullopt);

  const std::string& name() const { return name_; }
  const PicardLattice& lattice() const { return lattice_; }
  int degree() const { return lattice_.degree(); }
  int rank() const { return lattice_.rank(); }
  std::optional<int> expected_lines() const { return expected_lines_; }

  const std::vector<DivisorClass>& r_irr() const { return r_irr_; }
  /// Positive roots: nonnegative combinations of r_irr that are (-2)-classes.
  const std::vector<DivisorClass>& r_eff() const { return r_eff_; }
  const std::vector<DivisorClass>& r_slo() const { return r_slo_; }
  /// (-1)-classes meeting every (-2)-curve nonnegatively.
  const std::vector<DivisorClass>& i_irr() const { return i_irr_; }
  /// i_irr then r_irr, each in canonical order: the order in which bites are tried.
  const std::vector<DivisorClass>& negative_curves() const { return negative_curves_; }
  /// Sum of r_eff.
  const DivisorClass& two_rho() const { return two_rho_; }
  const std::vector<DynkinComponent>& dynkin() const { return dynkin_; }
  std::string dynkin_label() const { return wdp::dynkin_label(dynkin_); }

  /// Coefficients of D in the basis r_irr if D is a nonnegative integer
  /// combination of r_irr.
  std::optional<std::vector<std::int64_t>> root_coefficients(const DivisorClass& d) const;
  bool is_irreducible_minus_one(const DivisorClass& d) const;

 private:
  std::string name_;
  PicardLattice lattice_;
  std::optional<int> expected_lines_;
  std::vector<DivisorClass> r_irr_;
  std::vector<DivisorClass> r_eff_;
  std::vector<DivisorClass> r_slo_;
  std::vector<DivisorClass> i_irr_;
  std::vector<DivisorClass> negative_curves_;
  DivisorClass two_rho_;
  std::vector<DynkinComponent> dynkin_;
  // Inverse of the Gram matrix of r_irr, scaled by gram_det_.
  std::vector<std::vector<std::int64_t>> gram_adj_;
  std::int64_t gram_det_ = 1;
};

/// Shared, memoized construction keyed by lattice and r_irr.
SurfacePtr make_surface(const PicardLattice& lattice, std::vector<DivisorClass> r_irr,
                        std::string name = {}, std::optional<int> expected_lines = std::nullopt);

struct TypeInfo {
  int degree;
  std::string dynkin;
  int lines;
  std::optional<std::string> registry_name;
  /// "4,2A1,8"-style label built from the invariants.
  std::string raw() const;
};

class Registry {
 public:
  /// Parses the registry JSON document.
  static Registry from_json_text(std::string_view text);
  static Registry load_file(const std::string& path);
  /// The data file compiled into the library.
  static const Registry& builtin();

  /// Looks up a label; accepts "5,empty", "5,∅", "5" and "P2"-style names.
  SurfacePtr find(std::string_view name) const;
  SurfacePtr get(std::string_view name) const;
  const std::vector<SurfacePtr>& all() const { return surfaces_; }

  /// Registry entry with matching (degree, Dynkin label, line count), if any.
  std::optional<std::string> match(int degree, const std::string& dynkin, int lines) const;

 private:
  std::vector<SurfacePtr> surfaces_;
  std::map<std::string, SurfacePtr, std::less<>> by_name_;
};

std::string normalize_surface_name(std::string_view name);

TypeInfo classify_type(const Surface& s, const Registry& registry = Registry::builtin());

/// The result of contracting a (-1)-class E on a surface X.
struct BlowDown {
  SurfacePtr source;  // X
  SurfacePtr target;  // X'
  DivisorClass exceptional;
  /// p^*: Pic(X') -> Pic(X); its image is the orthogonal complement of E.
  LatticeMap pullback;
  /// True when E was not required to be an irreducible (-1)-curve.
  bool lattice_mode = false;
};
using BlowDownPtr = std::shared_ptr<const BlowDown>;

/// Contracts E. In standard mode E must be in i_irr. The target lattice is
/// again Blowup(n-1), or a rank-2 Hirzebruch lattice when n = 2 and E = L - E1 - E2.
BlowDownPtr blow_down(const SurfacePtr& s, const DivisorClass& e, bool lattice_mode = false);

}  // namespace wdp
