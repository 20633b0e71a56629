#include "wdp/surface.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "wdp/classes.hpp"
#include "wdp_registry_data.hpp"

namespace wdp {

// ---------------------------------------------------------------------------
// Dynkin diagrams

std::vector<DynkinComponent> dynkin_components(const std::vector<DivisorClass>& roots) {
  const std::size_t m = roots.size();
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const std::int64_t p = intersect(roots[i], roots[j]);
      if (p == 1) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      } else if (p != 0) {
        throw SurfaceError("simple roots " + roots[i].to_string() + " and " + roots[j].to_string() +
                           " meet with multiplicity " + std::to_string(p));
      }
    }
  }
  std::vector<int> comp(m, -1);
  std::vector<DynkinComponent> out;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> nodes{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t q = 0; q < nodes.size(); ++q)
      for (std::size_t v : adj[nodes[q]])
        if (comp[v] < 0) {
          comp[v] = comp[s];
          nodes.push_back(v);
        }
    std::size_t edges = 0;
    std::vector<std::size_t> branch;
    for (std::size_t v : nodes) {
      edges += adj[v].size();
      if (adj[v].size() > 3) throw SurfaceError("root graph has a vertex of degree > 3");
      if (adj[v].size() == 3) branch.push_back(v);
    }
    edges /= 2;
    const int k = static_cast<int>(nodes.size());
    if (edges != nodes.size() - 1) throw SurfaceError("root graph contains a cycle");
    if (branch.empty()) {
      out.push_back({'A', k});
      continue;
    }
    if (branch.size() > 1) throw SurfaceError("root graph has two branch points");
    std::vector<int> arms;
    for (std::size_t start : adj[branch[0]]) {
      int len = 1;
      std::size_t prev = branch[0];
      std::size_t cur = start;
      while (adj[cur].size() == 2) {
        std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      out.push_back({'D', k});
    } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
      out.push_back({'E', k});
    } else {
      throw SurfaceError("root graph is not of ADE type");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string dynkin_label(std::vector<DynkinComponent> comps) {
  if (comps.empty()) return "empty";
  std::sort(comps.begin(), comps.end());
  std::string out;
  for (std::size_t i = 0; i < comps.size();) {
    std::size_t j = i;
    while (j < comps.size() && comps[j] == comps[i]) ++j;
    if (!out.empty()) out += "+";
    if (j - i > 1) out += std::to_string(j - i);
    out += comps[i].letter;
    out += std::to_string(comps[i].rank);
    i = j;
  }
  return out;
}

std::vector<DynkinComponent> parse_dynkin_label(std::string_view label) {
  std::vector<DynkinComponent> out;
  if (label.empty() || label == "empty" || label == "\xE2\x88\x85" || label == "0") return out;
  std::size_t pos = 0;
  auto fail = [&] { return SurfaceError("malformed Dynkin label '" + std::string(label) + "'"); };
  while (pos < label.size()) {
    int mult = 0;
    while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos])))
      mult = mult * 10 + (label[pos++] - '0');
    if (mult == 0) mult = 1;
    if (pos >= label.size()) throw fail();
    char letter = label[pos++];
    if (letter != 'A' && letter != 'D' && letter != 'E') throw fail();
    int rank = 0;
    while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos])))
      rank = rank * 10 + (label[pos++] - '0');
    if (rank == 0) throw fail();
    for (int i = 0; i < mult; ++i) out.push_back({letter, rank});
    if (pos < label.size()) {
      if (label[pos] != '+') throw fail();
      ++pos;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int positive_root_count(const std::vector<DynkinComponent>& comps) {
  int total = 0;
  for (const auto& c : comps) {
    const int k = c.rank;
    switch (c.letter) {
      case 'A': total += k * (k + 1) / 2; break;
      case 'D': total += k * (k - 1); break;
      default: total += k == 6 ? 36 : k == 7 ? 63 : 120; break;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Surface

namespace {

std::int64_t bareiss_det(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a[i][j]) * a[k][k] - static_cast<__int128>(a[i][k]) * a[k][j];
        a[i][j] = static_cast<std::int64_t>(v / prev);
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

Surface::Surface(std::string name, PicardLattice lattice, std::vector<DivisorClass> r_irr,
                 std::optional<int> expected_lines)
    : name_(std::move(name)),
      lattice_(lattice),
      expected_lines_(expected_lines),
      r_irr_(std::move(r_irr)),
      two_rho_(lattice) {
  if (lattice_.kind() == LatticeKind::Hirzebruch &&
      (lattice_.exceptional_count() != 0 || lattice_.hirzebruch_degree() > 2))
    throw SurfaceError("only F0, F1 and F2 are supported as Hirzebruch surface types");
  for (const auto& c : r_irr_) {
    if (!(c.lattice() == lattice_)) throw SurfaceError("r_irr class over the wrong lattice");
    if (!is_r_class(c, -2)) throw SurfaceError(c.to_string() + " is not a (-2)-class");
  }
  std::sort(r_irr_.begin(), r_irr_.end(), CanonicalLess{});
  if (std::adjacent_find(r_irr_.begin(), r_irr_.end()) != r_irr_.end())
    throw SurfaceError("duplicate class in r_irr");
  dynkin_ = dynkin_components(r_irr_);

  const std::size_t m = r_irr_.size();
  std::vector<std::vector<std::int64_t>> gram(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gram[i][j] = intersect(r_irr_[i], r_irr_[j]);
  gram_det_ = bareiss_det(gram);
  if (gram_det_ == 0) throw SurfaceError("r_irr is linearly dependent");
  gram_adj_.assign(m, std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::vector<std::int64_t>> minor;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == j) continue;
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < m; ++c)
          if (c != i) row.push_back(gram[r][c]);
        minor.push_back(std::move(row));
      }
      gram_adj_[i][j] = ((i + j) % 2 ? -1 : 1) * bareiss_det(std::move(minor));
    }

  // Positive roots: close r_irr under adding simple roots alpha with beta.alpha = 1.
  std::set<DivisorClass, CanonicalLess> eff(r_irr_.begin(), r_irr_.end());
  std::deque<DivisorClass> queue(r_irr_.begin(), r_irr_.end());
  while (!queue.empty()) {
    DivisorClass beta = queue.front();
    queue.pop_front();
    for (const auto& alpha : r_irr_) {
      if (intersect(beta, alpha) != 1) continue;
      DivisorClass next = beta + alpha;
      if (eff.insert(next).second) queue.push_back(next);
    }
  }
  r_eff_.assign(eff.begin(), eff.end());
  for (const auto& b : r_eff_) two_rho_ += b;

  for (const auto& d : minus_two_classes(lattice_)) {
    if (eff.count(d) || eff.count(-d)) continue;
    r_slo_.push_back(d);
  }
  for (const auto& d : minus_one_classes(lattice_)) {
    bool ok = std::all_of(r_irr_.begin(), r_irr_.end(),
                          [&](const DivisorClass& c) { return intersect(d, c) >= 0; });
    if (ok) i_irr_.push_back(d);
  }
  negative_curves_ = i_irr_;
  negative_curves_.insert(negative_curves_.end(), r_irr_.begin(), r_irr_.end());

  if (expected_lines_ && *expected_lines_ != static_cast<int>(i_irr_.size()))
    throw SurfaceError("surface " + name_ + ": expected " + std::to_string(*expected_lines_) +
                       " irreducible (-1)-classes, found " + std::to_string(i_irr_.size()));
}

std::optional<std::vector<std::int64_t>> Surface::root_coefficients(const DivisorClass& d) const {
  const std::size_t m = r_irr_.size();
  std::vector<std::int64_t> v(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = intersect(d, r_irr_[j]);
  std::vector<std::int64_t> c(m);
  DivisorClass sum(lattice_);
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t num = 0;
    for (std::size_t j = 0; j < m; ++j) num = detail::checked_add(num, detail::checked_mul(gram_adj_[i][j], v[j]));
    if (num % gram_det_ != 0) return std::nullopt;
    c[i] = num / gram_det_;
    if (c[i] < 0) return std::nullopt;
    sum += c[i] * r_irr_[i];
  }
  if (!(sum == d)) return std::nullopt;
  return c;
}

bool Surface::is_irreducible_minus_one(const DivisorClass& d) const {
  return std::binary_search(i_irr_.begin(), i_irr_.end(), d, CanonicalLess{});
}

SurfacePtr make_surface(const PicardLattice& lattice, std::vector<DivisorClass> r_irr, std::string name,
                        std::optional<int> expected_lines) {
  std::sort(r_irr.begin(), r_irr.end(), CanonicalLess{});
  std::ostringstream key;
  key << lattice.name() << "|" << name;
  for (const auto& c : r_irr) key << "|" << c.to_vector_string();
  static std::mutex mu;
  static std::unordered_map<std::string, SurfacePtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }
  auto s = std::make_shared<const Surface>(std::move(name), lattice, std::move(r_irr), expected_lines);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key.str(), std::move(s)).first->second;
}

// ---------------------------------------------------------------------------
// Registry

std::string TypeInfo::raw() const {
  return std::to_string(degree) + "," + dynkin + "," + std::to_string(lines);
}

std::string normalize_surface_name(std::string_view name) {
  std::string s(name);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  const std::string empty_set = "\xE2\x88\x85";
  for (std::size_t p; (p = s.find(empty_set)) != std::string::npos;) s.replace(p, empty_set.size(), "empty");
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    s += ",empty";
  if (s == "P^2" || s == "B0") s = "P2";
  return s;
}

Registry Registry::from_json_text(std::string_view text) {
  Registry reg;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SurfaceError(std::string("registry: invalid JSON: ") + e.what());
  }
  if (!doc.contains("surfaces") || !doc["surfaces"].is_array())
    throw SurfaceError("registry: missing 'surfaces' array");
  for (const auto& entry : doc["surfaces"]) {
    const std::string name = entry.at("name").get<std::string>();
    const PicardLattice lat = PicardLattice::parse(entry.at("lattice").get<std::string>());
    std::vector<DivisorClass> roots;
    for (const auto& r : entry.at("r_irr")) {
      if (r.is_string()) {
        roots.push_back(parse_class(lat, r.get<std::string>()));
      } else {
        roots.emplace_back(lat, r.get<std::vector<std::int64_t>>());
      }
    }
    std::optional<int> lines;
    if (entry.contains("lines")) lines = entry["lines"].get<int>();
    if (entry.contains("degree") && entry["degree"].get<int>() != lat.degree())
      throw SurfaceError("registry: degree of " + name + " does not match its lattice");
    auto s = make_surface(lat, std::move(roots), name, lines);
    const std::string key = normalize_surface_name(name);
    if (!reg.by_name_.emplace(key, s).second) throw SurfaceError("registry: duplicate name " + name);
    reg.surfaces_.push_back(std::move(s));
  }
  return reg;
}

Registry Registry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SurfaceError("cannot open registry file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

const Registry& Registry::builtin() {
  static const Registry reg = from_json_text(kBuiltinRegistryJson);
  return reg;
}

SurfacePtr Registry::find(std::string_view name) const {
  auto it = by_name_.find(normalize_surface_name(name));
  return it == by_name_.end() ? nullptr : it->second;
}

SurfacePtr Registry::get(std::string_view name) const {
  auto s = find(name);
  if (!s) throw SurfaceError("unknown surface label '" + std::string(name) + "'");
  return s;
}

std::optional<std::string> Registry::match(int degree, const std::string& dynkin, int lines) const {
  for (const auto& s : surfaces_) {
    if (s->degree() == degree && s->dynkin_label() == dynkin && static_cast<int>(s->i_irr().size()) == lines)
      return s->name();
  }
  return std::nullopt;
}

TypeInfo classify_type(const Surface& s, const Registry& registry) {
  TypeInfo t{s.degree(), s.dynkin_label(), static_cast<int>(s.i_irr().size()), std::nullopt};
  t.registry_name = registry.match(t.degree, t.dynkin, t.lines);
  return t;
}

// ---------------------------------------------------------------------------
// Blow-down

namespace {

std::vector<DivisorClass> simple_reflection_roots(const PicardLattice& lat) {
  std::vector<DivisorClass> roots;
  const int n = lat.exceptional_count();
  for (int i = 1; i < n; ++i)
    roots.push_back(DivisorClass::exceptional(lat, i) - DivisorClass::exceptional(lat, i + 1));
  if (n >= 3) roots.push_back(DivisorClass::line_minus(lat, {1, 2, 3}));
  return roots;
}

// Reflections s_1..s_t (applied in that order) carrying e to E_n.
std::vector<DivisorClass> conjugator_to_last(const DivisorClass& e) {
  const PicardLattice& lat = e.lattice();
  const DivisorClass goal = DivisorClass::exceptional(lat, lat.exceptional_count());
  const auto roots = simple_reflection_roots(lat);
  std::unordered_map<DivisorClass, std::pair<DivisorClass, int>, DivisorClassHash> parent;
  std::deque<DivisorClass> queue{e};
  parent.emplace(e, std::make_pair(e, -1));
  while (!queue.empty()) {
    DivisorClass cur = queue.front();
    queue.pop_front();
    if (cur == goal) {
      std::vector<DivisorClass> path;
      while (true) {
        const auto& [prev, idx] = parent.at(cur);
        if (idx < 0) break;
        path.push_back(roots[static_cast<std::size_t>(idx)]);
        cur = prev;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      DivisorClass nxt = reflect(cur, roots[i]);
      if (parent.count(nxt)) continue;
      parent.emplace(nxt, std::make_pair(cur, static_cast<int>(i)));
      queue.push_back(nxt);
    }
  }
  throw SurfaceError("no Weyl conjugator carries " + e.to_string() + " to the last exceptional class");
}

}  // namespace

BlowDownPtr blow_down(const SurfacePtr& s, const DivisorClass& e, bool lattice_mode) {
  const PicardLattice& lat = s->lattice();
  if (!(e.lattice() == lat)) throw SurfaceError("blow_down: class over the wrong lattice");
  if (!is_r_class(e, -1)) throw SurfaceError("blow_down: " + e.to_string() + " is not a (-1)-class");
  if (!lattice_mode && !s->is_irreducible_minus_one(e))
    throw SurfaceError("blow_down: " + e.to_string() + " is not an irreducible (-1)-curve on " + s->name());
  if (lat.kind() != LatticeKind::Blowup || lat.exceptional_count() == 0)
    throw SurfaceError("blow_down: no (-1)-classes on " + lat.name());

  std::vector<DivisorClass> kept;
  for (const auto& c : s->r_irr())
    if (intersect(c, e) == 0) kept.push_back(c);

  const int n = lat.exceptional_count();
  std::optional<PicardLattice> target;
  std::vector<DivisorClass> images;
  if (n == 2 && e == DivisorClass::line_minus(lat, {1, 2})) {
    const DivisorClass f1 = DivisorClass::line_minus(lat, {1});
    const DivisorClass f2 = DivisorClass::line_minus(lat, {2});
    if (kept.empty()) {
      target = PicardLattice::hirzebruch(0);
      images = {f1, f2};
    } else {
      const DivisorClass& b = kept.front();
      const DivisorClass f = intersect(f1, b) == 1 ? f1 : f2;
      target = PicardLattice::hirzebruch(2);
      images = {f, b + 2 * f};
    }
  } else {
    target = PicardLattice::blowup(n - 1);
    const auto path = conjugator_to_last(e);
    auto w_inv = [&](DivisorClass x) {
      for (auto it = path.rbegin(); it != path.rend(); ++it) x = reflect(x, *it);
      return x;
    };
    images.push_back(w_inv(DivisorClass::line(lat)));
    for (int i = 1; i < n; ++i) images.push_back(w_inv(DivisorClass::exceptional(lat, i)));
  }
  LatticeMap pullback(*target, lat, std::move(images));
  if (!pullback.preserves_form()) throw SurfaceError("blow_down: internal error, embedding is not isometric");
  if (!(pullback.apply(DivisorClass::canonical(*target)) == DivisorClass::canonical(lat) - e))
    throw SurfaceError("blow_down: internal error, p^*K' != K - E");

  std::vector<DivisorClass> roots;
  for (const auto& c : kept) roots.push_back(pullback.preimage(c));
  auto tgt = make_surface(*target, roots);
  // Name the target after its registry type when there is one.
  const TypeInfo info = classify_type(*tgt);
  tgt = make_surface(*target, std::move(roots), info.registry_name.value_or(info.raw()));
  return std::make_shared<const BlowDown>(BlowDown{s, tgt, e, std::move(pullback), lattice_mode});
}

}  // namespace wdp
