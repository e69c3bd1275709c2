#include "skein/tl.hpp"

#include <functional>

namespace skein {

bool TLDiagram::involution() const {
  int n = slots();
  if (static_cast<int>(match.size()) != n) return false;
  if (n % 2 != 0) return false;
  for (int i = 0; i < n; ++i) {
    if (match[i] < 0 || match[i] >= n || match[i] == i) return false;
    if (match[match[i]] != i) return false;
  }
  return true;
}

bool TLDiagram::planar() const {
  std::vector<int> stack;
  for (int i = 0; i < slots(); ++i) {
    if (match[i] > i) {
      stack.push_back(i);
    } else {
      if (stack.empty() || stack.back() != match[i]) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

void TLDiagram::require_valid() const {
  if (b < 0 || t < 0) throw MalformedDiagram("negative boundary size");
  if ((b + t) % 2 != 0) throw OddBoundary("odd number of boundary points");
  if (!involution()) throw MalformedDiagram("pairing is not an involution");
  if (!planar()) throw MalformedDiagram("pairing has crossing strands");
}

TLDiagram tl_identity_diagram(int m) {
  TLDiagram d;
  d.b = d.t = m;
  d.match.resize(2 * m);
  for (int j = 0; j < m; ++j) {
    d.match[j] = 2 * m - 1 - j;
    d.match[2 * m - 1 - j] = j;
  }
  return d;
}

TLDiagram tl_e_diagram(int m, int i) {
  if (i < 0 || i + 1 >= m) throw MalformedDiagram("generator index out of range");
  TLDiagram d = tl_identity_diagram(m);
  d.match[i] = i + 1;
  d.match[i + 1] = i;
  int a = d.top_slot(i), b = d.top_slot(i + 1);
  d.match[a] = b;
  d.match[b] = a;
  return d;
}

namespace {

// Noncrossing matchings of the linear slot range [lo, hi).
void gen_matchings(int lo, int hi, std::vector<int>& match,
                   const std::function<void()>& emit) {
  if (lo >= hi) {
    emit();
    return;
  }
  for (int j = lo + 1; j < hi; j += 2) {
    match[lo] = j;
    match[j] = lo;
    gen_matchings(lo + 1, j, match, [&] { gen_matchings(j + 1, hi, match, emit); });
  }
}

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns true when x and y were already connected.
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    parent[x] = y;
    return false;
  }
};

}  // namespace

std::vector<TLDiagram> enumerate_diagrams(int b, int t) {
  if ((b + t) % 2 != 0) throw OddBoundary("odd number of boundary points");
  std::vector<TLDiagram> out;
  std::vector<int> match(b + t);
  gen_matchings(0, b + t, match, [&] {
    TLDiagram d;
    d.b = b;
    d.t = t;
    d.match = match;
    out.push_back(std::move(d));
  });
  return out;
}

DiagramCompose diagram_compose(const TLDiagram& upper, const TLDiagram& lower) {
  if (upper.b != lower.t)
    throw BoundaryMismatch("composition boundary sizes differ");
  int bl = lower.b, tl = lower.t, bu = upper.b, tu = upper.t;
  DiagramCompose out;
  out.diagram.b = bl;
  out.diagram.t = tu;
  out.diagram.match.assign(bl + tu, -1);

  // Junction j joins lower slot bl+tl-1-j with upper slot j, j in [0, tl).
  auto walk = [&](int dia, int i) {
    while (true) {
      int q = dia == 0 ? lower.match[i] : upper.match[i];
      if (dia == 0 && q >= bl) {
        dia = 1;
        i = bl + tl - 1 - q;
      } else if (dia == 1 && q < bu) {
        dia = 0;
        i = bl + tl - 1 - q;
      } else {
        return std::pair<int, int>(dia, q);
      }
    }
  };
  auto result_slot = [&](std::pair<int, int> p) {
    return p.first == 0 ? p.second : p.second + bl - bu;
  };
  for (int s = 0; s < bl; ++s) {
    if (out.diagram.match[s] != -1) continue;
    int other = result_slot(walk(0, s));
    out.diagram.match[s] = other;
    out.diagram.match[other] = s;
  }
  for (int s = bu; s < bu + tu; ++s) {
    int rs = s + bl - bu;
    if (out.diagram.match[rs] != -1) continue;
    int other = result_slot(walk(1, s));
    out.diagram.match[rs] = other;
    out.diagram.match[other] = rs;
  }

  // Closed components never touch an external slot; trace them via junctions.
  std::vector<char> used(tl, 0);
  auto mark_from_externals = [&](int dia, int i) {
    while (true) {
      int q = dia == 0 ? lower.match[i] : upper.match[i];
      if (dia == 0 && q >= bl) {
        used[bl + tl - 1 - q] = 1;
        dia = 1;
        i = bl + tl - 1 - q;
      } else if (dia == 1 && q < bu) {
        used[q] = 1;
        dia = 0;
        i = bl + tl - 1 - q;
      } else {
        return;
      }
    }
  };
  for (int s = 0; s < bl; ++s) mark_from_externals(0, s);
  for (int s = bu; s < bu + tu; ++s) mark_from_externals(1, s);
  for (int j0 = 0; j0 < tl; ++j0) {
    if (used[j0]) continue;
    ++out.loops;
    int j = j0;
    while (true) {
      used[j] = 1;
      int s2 = lower.match[bl + tl - 1 - j];
      int j1 = bl + tl - 1 - s2;
      used[j1] = 1;
      int j2 = upper.match[j1];
      if (j2 == j0) break;
      j = j2;
    }
  }
  return out;
}

TLDiagram diagram_tensor(const TLDiagram& left, const TLDiagram& right) {
  int b1 = left.b, t1 = left.t, b2 = right.b, t2 = right.t;
  int B = b1 + b2, T = t1 + t2;
  auto from_left = [&](int c) {
    return c < b1 ? c : B + T - 1 - (b1 + t1 - 1 - c);
  };
  auto from_right = [&](int c) {
    return c < b2 ? b1 + c : B + T - 1 - t1 - (b2 + t2 - 1 - c);
  };
  TLDiagram d;
  d.b = B;
  d.t = T;
  d.match.assign(B + T, -1);
  for (int c = 0; c < b1 + t1; ++c) d.match[from_left(c)] = from_left(left.match[c]);
  for (int c = 0; c < b2 + t2; ++c) d.match[from_right(c)] = from_right(right.match[c]);
  return d;
}

TLDiagram diagram_adjoint(const TLDiagram& d) {
  int n = d.slots();
  TLDiagram r;
  r.b = d.t;
  r.t = d.b;
  r.match.resize(n);
  for (int c = 0; c < n; ++c) r.match[n - 1 - c] = n - 1 - d.match[c];
  return r;
}

TLElement::TLElement(FieldPtr field, int b, int t)
    : field_(std::move(field)), b_(b), t_(t) {}

TLElement TLElement::from_diagram(FieldPtr field, const TLDiagram& d) {
  d.require_valid();
  TLElement x(field, d.b, d.t);
  x.terms_.emplace(d, Cyclo::one(field));
  return x;
}

TLElement TLElement::identity(const FieldPtr& field, int m) {
  return from_diagram(field, tl_identity_diagram(m));
}

TLElement TLElement::e(const FieldPtr& field, int m, int i) {
  return from_diagram(field, tl_e_diagram(m, i));
}

void TLElement::add_term(const TLDiagram& d, const Cyclo& c) {
  if (d.b != b_ || d.t != t_) throw BoundaryMismatch("term boundary differs");
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(d, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

TLElement TLElement::operator+(const TLElement& o) const {
  if (b_ != o.b_ || t_ != o.t_) throw BoundaryMismatch("sum boundary differs");
  TLElement r(*this);
  for (const auto& [d, c] : o.terms_) r.add_term(d, c);
  return r;
}

TLElement TLElement::operator-(const TLElement& o) const {
  return *this + (-o);
}

TLElement TLElement::operator-() const {
  TLElement r(field_, b_, t_);
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
  return r;
}

TLElement TLElement::operator*(const Cyclo& c) const {
  TLElement r(field_, b_, t_);
  if (c.is_zero()) return r;
  for (const auto& [d, x] : terms_) {
    Cyclo y = x * c;
    if (!y.is_zero()) r.terms_.emplace(d, y);
  }
  return r;
}

bool TLElement::operator==(const TLElement& o) const {
  if (b_ != o.b_ || t_ != o.t_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [d, c] : terms_) {
    if (d != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

TLElement tl_compose(const TLElement& x, const TLElement& y, const Cyclo& delta) {
  if (x.b() != y.t()) throw BoundaryMismatch("composition boundary sizes differ");
  TLElement r(x.field(), y.b(), x.t());
  std::vector<Cyclo> delta_pow = {Cyclo::one(x.field())};
  for (const auto& [dx, cx] : x.terms()) {
    for (const auto& [dy, cy] : y.terms()) {
      DiagramCompose dc = diagram_compose(dx, dy);
      while (static_cast<int>(delta_pow.size()) <= dc.loops)
        delta_pow.push_back(delta_pow.back() * delta);
      r.add_term(dc.diagram, cx * cy * delta_pow[dc.loops]);
    }
  }
  return r;
}

TLElement tl_tensor(const TLElement& x, const TLElement& y) {
  TLElement r(x.field(), x.b() + y.b(), x.t() + y.t());
  for (const auto& [dx, cx] : x.terms())
    for (const auto& [dy, cy] : y.terms())
      r.add_term(diagram_tensor(dx, dy), cx * cy);
  return r;
}

TLElement tl_adjoint(const TLElement& x) {
  TLElement r(x.field(), x.t(), x.b());
  for (const auto& [d, c] : x.terms()) r.add_term(diagram_adjoint(d), c.conj());
  return r;
}

Cyclo tl_trace(const TLElement& x, const Cyclo& delta) {
  if (x.b() != x.t()) throw BoundaryMismatch("trace needs equal boundaries");
  int m = x.b();
  Cyclo total = Cyclo::zero(x.field());
  for (const auto& [d, c] : x.terms()) {
    DSU dsu(2 * m);
    for (int i = 0; i < 2 * m; ++i)
      if (i < d.match[i]) dsu.unite(i, d.match[i]);
    for (int j = 0; j < m; ++j) dsu.unite(j, 2 * m - 1 - j);
    // Every slot has degree two, so components are exactly the loops.
    int loops = 0;
    std::vector<char> seen(2 * m, 0);
    for (int i = 0; i < 2 * m; ++i) {
      int root = dsu.find(i);
      if (!seen[root]) {
        seen[root] = 1;
        ++loops;
      }
    }
    std::vector<Cyclo> delta_pow = {Cyclo::one(x.field())};
    while (static_cast<int>(delta_pow.size()) <= loops)
      delta_pow.push_back(delta_pow.back() * delta);
    total = total + c * delta_pow[loops];
  }
  return total;
}

TLElement tl_partial_trace(const TLElement& x, const Cyclo& delta) {
  if (x.b() < 1 || x.t() < 1)
    throw BoundaryMismatch("partial trace needs a strand on both sides");
  int b = x.b(), t = x.t();
  TLElement r(x.field(), b - 1, t - 1);
  // Close bottom slot b-1 with top slot b (the rightmost points).
  auto renumber = [&](int c) { return c < b - 1 ? c : c - 2; };
  for (const auto& [d, c] : x.terms()) {
    if (d.match[b - 1] == b) {
      TLDiagram nd;
      nd.b = b - 1;
      nd.t = t - 1;
      nd.match.resize(b + t - 2);
      for (int i = 0; i < b + t; ++i) {
        if (i == b - 1 || i == b) continue;
        nd.match[renumber(i)] = renumber(d.match[i]);
      }
      r.add_term(nd, c * delta);
    } else {
      int a1 = d.match[b - 1], a2 = d.match[b];
      TLDiagram nd;
      nd.b = b - 1;
      nd.t = t - 1;
      nd.match.resize(b + t - 2);
      for (int i = 0; i < b + t; ++i) {
        if (i == b - 1 || i == b) continue;
        int mi = d.match[i];
        if (i == a1) mi = a2;
        if (i == a2) mi = a1;
        nd.match[renumber(i)] = renumber(mi);
      }
      r.add_term(nd, c);
    }
  }
  return r;
}

}  // namespace skein
