#include "wdp/admissible.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "wdp/toric.hpp"

namespace wdp {

Sequence augment_sequence(const Sequence& a, int m) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || m < 1 || m > n + 1) throw std::invalid_argument("augment_sequence: slot out of range");
  Sequence out = a;
  out.insert(out.begin() + (m - 1), -1);
  const int nn = n + 1;
  --out[static_cast<std::size_t>(wrap(m - 1, nn) - 1)];
  --out[static_cast<std::size_t>(wrap(m + 1, nn) - 1)];
  return out;
}

std::vector<Sequence> dihedral_orbit(const Sequence& a) {
  std::set<Sequence> orbit;
  Sequence r(a.rbegin(), a.rend());
  for (int t = 0; t < static_cast<int>(a.size()); ++t) {
    orbit.insert(shift_sequence(a, t));
    orbit.insert(shift_sequence(r, t));
  }
  return {orbit.begin(), orbit.end()};
}

Sequence dihedral_canonical(const Sequence& a) {
  if (a.empty()) return a;
  return dihedral_orbit(a).front();
}

bool is_base_sequence(const Sequence& a) {
  if (a.size() != 4) return false;
  return (a[0] == 0 && a[2] == 0 && a[1] == -a[3]) || (a[1] == 0 && a[3] == 0 && a[0] == -a[2]);
}

namespace {

struct Search {
  // canonical form -> (admissible, predecessor canonical form, slot)
  std::map<Sequence, bool> memo;

  bool run(const Sequence& a) {
    if (a.size() < 4) return false;
    if (a.size() == 4) return is_base_sequence(a);
    const Sequence key = dihedral_canonical(a);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    memo[key] = false;
    bool ok = false;
    const int n = static_cast<int>(a.size());
    for (int m = 1; m <= n && !ok; ++m) {
      if (a[static_cast<std::size_t>(m - 1)] != -1) continue;
      ok = run(unaugment(a, m));
    }
    memo[key] = ok;
    return ok;
  }

  static Sequence unaugment(const Sequence& a, int m) {
    const int n = static_cast<int>(a.size());
    Sequence b = a;
    ++b[static_cast<std::size_t>(wrap(m - 1, n) - 1)];
    ++b[static_cast<std::size_t>(wrap(m + 1, n) - 1)];
    b.erase(b.begin() + (m - 1));
    return b;
  }
};

}  // namespace

AdmissibleVerdict check_admissible(const Sequence& a) {
  AdmissibleVerdict v;
  Search s;
  if (!s.run(a)) return v;
  // Walk down along admissible predecessors to rebuild the derivation.
  Sequence cur = a;
  std::vector<int> rev;
  while (cur.size() > 4) {
    const int n = static_cast<int>(cur.size());
    bool moved = false;
    for (int m = 1; m <= n; ++m) {
      if (cur[static_cast<std::size_t>(m - 1)] != -1) continue;
      Sequence b = Search::unaugment(cur, m);
      if (s.run(b)) {
        // cur = augm_m(b) exactly when m <= n-1 or the neighbours wrap; the
        // m-th slot of cur is where -1 was inserted.
        rev.push_back(m);
        cur = std::move(b);
        moved = true;
        break;
      }
    }
    if (!moved) throw std::logic_error("check_admissible: inconsistent memo");
  }
  v.admissible = true;
  v.base = cur;
  v.slots.assign(rev.rbegin(), rev.rend());
  return v;
}

bool is_first_kind(const Sequence& a) {
  if (a.empty() || *std::min_element(a.begin(), a.end()) < -2) return false;
  return is_admissible(a);
}

std::vector<Sequence> enumerate_first_kind() {
  std::set<Sequence> seen;
  std::vector<Sequence> frontier;
  for (int k = -2; k <= 2; ++k)
    for (Sequence s : {Sequence{0, k, 0, -k}, Sequence{k, 0, -k, 0}}) {
      s = dihedral_canonical(s);
      if (seen.insert(s).second) frontier.push_back(s);
    }
  constexpr std::size_t kMaxLength = 12;
  while (!frontier.empty()) {
    std::vector<Sequence> next;
    for (const auto& a : frontier) {
      if (a.size() >= kMaxLength) throw std::logic_error("first-kind closure did not terminate");
      for (int m = 1; m <= static_cast<int>(a.size()) + 1; ++m) {
        Sequence b = augment_sequence(a, m);
        if (*std::min_element(b.begin(), b.end()) < -2) continue;
        b = dihedral_canonical(b);
        if (seen.insert(b).second) next.push_back(std::move(b));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Sequence> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Sequence& x, const Sequence& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

Sequence parse_sequence(std::string_view text) {
  Sequence out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad sequence entry '" + tok + "'");
    out.push_back(v);
    tok.clear();
  };
  for (char c : text) {
    if (c == '-' || c == '+' || (c >= '0' && c <= '9')) {
      if ((c == '-' || c == '+') && !tok.empty()) flush();
      tok += c;
    } else if (c == ',' || c == ' ' || c == '(' || c == ')' || c == '[' || c == ']' || c == '\t') {
      flush();
    } else {
      throw std::invalid_argument(std::string("bad character in sequence: ") + c);
    }
  }
  flush();
  return out;
}

std::string format_sequence(const Sequence& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

}  // namespace wdp
