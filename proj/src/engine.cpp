#include "skein/engine.hpp"

#include <algorithm>
#include <cassert>
#include <random>

#include "skein/jw.hpp"
#include "skein/tl.hpp"

namespace skein {

namespace {

int imod(int a, int b) {
  int r = a % b;
  return r < 0 ? r + b : r;
}

Cyclo cyclo_pow(const Cyclo& x, int e) {
  Cyclo r = Cyclo::one(x.field());
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

int width_delta(const Tile& t, int g) {
  switch (t.kind) {
    case TileKind::Cup: return 2;
    case TileKind::Cap: return -2;
    case TileKind::SUp: return g;
    case TileKind::SDown: return -g;
    default: return 0;
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
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

// A strand's downward connection: a boundary token (bottom point j >= 0 or
// generator leg j encoded as -1-j) or a peer strand of the same slice.
struct WireEnd {
  bool peer = false;
  int v = 0;
};

struct State {
  std::vector<WireEnd> wires;
  std::vector<std::pair<int, int>> chords;  // finished pairs of tokens, sorted

  void add_chord(int a, int b) {
    std::pair<int, int> p = std::minmax(a, b);
    chords.insert(std::upper_bound(chords.begin(), chords.end(), p), p);
  }

  std::vector<int> key() const {
    std::vector<int> k;
    k.reserve(2 * wires.size() + 2 * chords.size() + 1);
    k.push_back(static_cast<int>(wires.size()));
    for (const auto& w : wires) {
      k.push_back(w.peer ? 1 : 0);
      k.push_back(w.v);
    }
    for (const auto& c : chords) {
      k.push_back(c.first);
      k.push_back(c.second);
    }
    return k;
  }
};

using StateMap = std::map<std::vector<int>, std::pair<State, Cyclo>>;

class Sweep {
 public:
  explicit Sweep(const EngineParams& P) : P_(P), a_inv_(P.a.inverse()) {}

  // Primitives return false when the branch dies (generator capped onto
  // itself); loop closures multiply the running factor by delta.
  bool cap(State& s, int p, Cyclo& f) const {
    WireEnd a = s.wires[p], b = s.wires[p + 1];
    if (a.peer && a.v == p + 1) {
      f = f * P_.delta;
    } else if (a.peer && b.peer) {
      s.wires[a.v].v = b.v;
      s.wires[b.v].v = a.v;
    } else if (a.peer) {
      s.wires[a.v] = b;
    } else if (b.peer) {
      s.wires[b.v] = a;
    } else {
      if (a.v < 0 && b.v < 0) return false;
      s.add_chord(a.v, b.v);
    }
    s.wires.erase(s.wires.begin() + p, s.wires.begin() + p + 2);
    for (auto& w : s.wires)
      if (w.peer && w.v > p + 1) w.v -= 2;
    return true;
  }

  void cup(State& s, int p) const {
    for (auto& w : s.wires)
      if (w.peer && w.v >= p) w.v += 2;
    WireEnd pair[2] = {{true, p + 1}, {true, p}};
    s.wires.insert(s.wires.begin() + p, pair, pair + 2);
  }

  void sup(State& s, int p, int r) const {
    int g = P_.g;
    for (auto& w : s.wires)
      if (w.peer && w.v >= p) w.v += g;
    std::vector<WireEnd> legs(g);
    for (int i = 0; i < g; ++i) legs[i] = {false, -1 - imod(i - r, g)};
    s.wires.insert(s.wires.begin() + p, legs.begin(), legs.end());
  }

  bool sdown(State& s, int p, int r) const {
    int g = P_.g;
    for (int i = 0; i < g; ++i) {
      WireEnd a = s.wires[p];
      int token = -1 - imod(i - r, g);
      if (a.peer) {
        s.wires[a.v] = {false, token};
      } else {
        if (a.v < 0) return false;
        s.add_chord(a.v, token);
      }
      s.wires.erase(s.wires.begin() + p);
      for (auto& w : s.wires)
        if (w.peer && w.v > p) w.v -= 1;
    }
    return true;
  }

  // Apply one rectangular pairing diagram across strands p..p+d.b-1.
  bool apply_diagram(State& s, const TLDiagram& d, int p, Cyclo& f) const {
    int m = d.b;
    std::vector<char> dead(m, 0);
    for (int j = 0; j < m; ++j) {
      int i = d.match[j];
      if (i < 0 || i >= m || i >= j) continue;
      int rank = 0;
      for (int k = 0; k < i; ++k)
        if (!dead[k]) ++rank;
      if (!cap(s, p + rank, f)) return false;
      dead[i] = dead[j] = 1;
    }
    std::vector<int> present;
    for (int c = m; c < 2 * m; ++c)
      if (d.match[c] < m) present.push_back(2 * m - 1 - c);
    std::sort(present.begin(), present.end());
    std::vector<std::pair<int, int>> tpairs;
    for (int c = m; c < 2 * m; ++c) {
      int e = d.match[c];
      if (e >= m && e < c) tpairs.push_back({2 * m - 1 - c, 2 * m - 1 - e});
    }
    std::sort(tpairs.begin(), tpairs.end());
    for (const auto& [j1, j2] : tpairs) {
      int pos = static_cast<int>(
          std::lower_bound(present.begin(), present.end(), j1) - present.begin());
      cup(s, p + pos);
      present.insert(std::lower_bound(present.begin(), present.end(), j1), j1);
      present.insert(std::lower_bound(present.begin(), present.end(), j2), j2);
    }
    return true;
  }

  void emit(StateMap& out, State&& s, Cyclo c) const {
    if (c.is_zero()) return;
    std::vector<int> k = s.key();
    auto it = out.find(k);
    if (it == out.end()) {
      out.emplace(std::move(k), std::make_pair(std::move(s), std::move(c)));
    } else {
      it->second.second = it->second.second + c;
      if (it->second.second.is_zero()) out.erase(it);
    }
  }

  void apply_tile(const State& in, const Cyclo& coeff, const Tile& t,
                  StateMap& out) const {
    switch (t.kind) {
      case TileKind::Cup: {
        State s = in;
        cup(s, t.pos);
        emit(out, std::move(s), coeff);
        break;
      }
      case TileKind::Cap: {
        State s = in;
        Cyclo f = coeff;
        if (cap(s, t.pos, f)) emit(out, std::move(s), f);
        break;
      }
      case TileKind::Over:
      case TileKind::Under: {
        bool over = t.kind == TileKind::Over;
        {
          State s = in;
          emit(out, std::move(s), coeff * (over ? P_.a : a_inv_));
        }
        {
          State s = in;
          Cyclo f = coeff * (over ? a_inv_ : P_.a);
          if (cap(s, t.pos, f)) {
            cup(s, t.pos);
            emit(out, std::move(s), f);
          }
        }
        break;
      }
      case TileKind::JW: {
        const TLElement& jw = jones_wenzl(P_.field, t.param);
        for (const auto& [d, cd] : jw.terms()) {
          State s = in;
          Cyclo f = coeff * cd;
          if (apply_diagram(s, d, t.pos, f)) emit(out, std::move(s), f);
        }
        break;
      }
      case TileKind::SUp: {
        State s = in;
        sup(s, t.pos, t.param);
        emit(out, std::move(s), coeff);
        break;
      }
      case TileKind::SDown: {
        State s = in;
        if (sdown(s, t.pos, t.param)) emit(out, std::move(s), coeff);
        break;
      }
    }
  }

  StateMap run(const Word& w) const {
    State init;
    init.wires.resize(w.bottom);
    for (int i = 0; i < w.bottom; ++i) init.wires[i] = {false, i};
    StateMap cur;
    cur.emplace(init.key(), std::make_pair(init, Cyclo::one(P_.field)));
    for (const auto& t : w.tiles) {
      StateMap next;
      for (const auto& [k, sc] : cur) apply_tile(sc.first, sc.second, t, next);
      cur = std::move(next);
    }
    return cur;
  }

  SkeinElement finalize(StateMap&& states, int b, int t) const {
    int m = b + t;
    SkeinElement result(P_.field, m);
    for (auto& [k, sc] : states) {
      State& s = sc.first;
      Cyclo f = sc.second;
      std::vector<char> done(s.wires.size(), 0);
      for (int i = 0; i < static_cast<int>(s.wires.size()); ++i) {
        if (done[i]) continue;
        int token_i = b + t - 1 - i;
        const WireEnd& a = s.wires[i];
        if (a.peer) {
          s.add_chord(token_i, b + t - 1 - a.v);
          done[a.v] = 1;
        } else {
          s.add_chord(a.v, token_i);
        }
      }
      SpanningDiagram d;
      d.m = m;
      d.match.assign(m, -1);
      std::vector<int> legs(P_.g, -1);
      bool has_legs = false;
      for (const auto& [x, y] : s.chords) {
        if (x >= 0) {
          d.match[x] = y;
          d.match[y] = x;
        } else {
          legs[-1 - x] = y;
          has_legs = true;
        }
      }
      if (has_legs) {
        int g = P_.g;
        int jstar = 0;
        for (int j = 0; j < g; ++j) {
          if (legs[j] < 0) throw SkeinError("internal: generator leg unresolved");
          if (legs[j] < legs[jstar]) jstar = j;
        }
        d.legs.resize(g);
        for (int j = 0; j < g; ++j) d.legs[j] = legs[(j + jstar) % g];
        f = f * cyclo_pow(P_.omega, jstar);
      }
      result.add_term(d, f);
    }
    return result;
  }

 private:
  const EngineParams& P_;
  Cyclo a_inv_;
};

// Replace the chosen pair of generator boxes by a filtered cable joining
// them, following the two-box relation. The cable parks at one edge while
// the slices between the boxes apply unchanged.
struct SurgeryOutcome {
  Word word;
  Cyclo factor;
};

SurgeryOutcome surgery_step(const Word& w, const EngineParams& P,
                            const EvalPolicy& pol, std::mt19937& rng) {
  int g = P.g;
  std::vector<int> widths(w.tiles.size());
  {
    int cur = w.bottom;
    for (size_t i = 0; i < w.tiles.size(); ++i) {
      widths[i] = cur;
      cur += width_delta(w.tiles[i], g);
    }
  }
  std::vector<int> sidx;
  for (size_t i = 0; i < w.tiles.size(); ++i) {
    TileKind k = w.tiles[i].kind;
    if (k == TileKind::SUp || k == TileKind::SDown)
      sidx.push_back(static_cast<int>(i));
  }
  assert(sidx.size() >= 2);
  int i1, i2;
  if (pol.pair_rule == EvalPolicy::PairRule::nearest) {
    size_t best = 0;
    for (size_t j = 1; j + 1 < sidx.size(); ++j)
      if (sidx[j + 1] - sidx[j] < sidx[best + 1] - sidx[best]) best = j;
    i1 = sidx[best];
    i2 = sidx[best + 1];
  } else {
    std::uniform_int_distribution<int> da(0, static_cast<int>(sidx.size()) - 1);
    std::uniform_int_distribution<int> db(0, static_cast<int>(sidx.size()) - 2);
    int a = da(rng), b = db(rng);
    if (b >= a) ++b;
    i1 = sidx[std::min(a, b)];
    i2 = sidx[std::max(a, b)];
  }

  Tile T1 = w.tiles[i1], T2 = w.tiles[i2];
  int p1 = T1.pos, r1 = imod(T1.param, g);
  int p2 = T2.pos, r2 = imod(T2.param, g);
  int c1 = T1.kind == TileKind::SUp ? imod(g - r1, g) : r1;
  int c2 = T2.kind == TileKind::SUp ? imod(g - r2, g) : r2;
  Cyclo factor = P.surgery_factor * cyclo_pow(P.mu, c1 + c2);

  // The cable crosses above every strand in its way. Moving right, the cable
  // strand is the left member of each transposition; moving left, the right.
  // Applying the two-box relation at a distance is only valid after the first
  // box has been carried next to the second; carrying it across a strand
  // costs one pull-under sign, so each single-strand move pays that sign.
  std::vector<Tile> out(w.tiles.begin(), w.tiles.begin() + i1);
  auto move_right_once = [&](int cab) {
    factor = factor * P.pull_through_minus;
    for (int q = cab + g - 1; q >= cab; --q)
      out.push_back({TileKind::Over, q, 0});
  };
  auto move_left_once = [&](int cab) {
    factor = factor * P.pull_through_minus;
    for (int q = cab - 1; q <= cab + g - 2; ++q)
      out.push_back({TileKind::Under, q, 0});
  };

  bool park_right = pol.park_side == EvalPolicy::ParkSide::right;
  int W, cab;
  if (T1.kind == TileKind::SUp) {
    for (int j = 0; j < g; ++j) out.push_back({TileKind::Cup, p1 + j, 0});
    // One half of the turn-back travels and is clasped; the other half stays
    // as the box's former outputs. The traveling half is born on the parking
    // side so the cable never crosses its own turn-back, which would put a
    // curl on the cable.
    cab = park_right ? p1 + g : p1;
    out.push_back({TileKind::JW, cab, g});
    W = widths[i1] + 2 * g;
  } else {
    out.push_back({TileKind::JW, p1, g});
    W = widths[i1];
    cab = p1;
  }
  int park = park_right ? W - g : 0;
  while (cab < park) move_right_once(cab++);
  while (cab > park) move_left_once(cab--);
  for (int k = 0; k < pol.wiggle; ++k) {
    if (park_right) {
      if (cab > 0) {
        move_left_once(cab--);
        move_right_once(cab++);
      }
    } else if (cab + g < W) {
      move_right_once(cab++);
      move_left_once(cab--);
    }
  }

  for (int s = i1 + 1; s < i2; ++s) {
    Tile t = w.tiles[s];
    if (!park_right) t.pos += g;
    out.push_back(t);
    W += width_delta(t, g);
    if (park_right) cab = W - g;
  }
  assert(W == widths[i2] + g);

  // The cable ends adjacent to the upper box's slots: at them for SUp, and
  // beside the consumed group (on the parked side) for SDown.
  int tgt = p2;
  if (T2.kind == TileKind::SDown && park_right) tgt = p2 + g;
  while (cab > tgt) move_left_once(cab--);
  while (cab < tgt) move_right_once(cab++);
  // The replacement cable carries a filter at each end.
  out.push_back({TileKind::JW, tgt, g});
  if (T2.kind == TileKind::SDown) {
    for (int q = p2 + g - 1; q >= p2; --q) out.push_back({TileKind::Cap, q, 0});
  }

  out.insert(out.end(), w.tiles.begin() + i2 + 1, w.tiles.end());
  return {Word{w.bottom, std::move(out)}, factor};
}

std::pair<Word, Cyclo> eliminate_pairs(const Word& w, const EngineParams& P,
                                       const EvalPolicy& pol) {
  std::mt19937 rng(pol.seed);
  Word cur = w;
  Cyclo factor = Cyclo::one(P.field);
  while (cur.count_s() >= 2) {
    SurgeryOutcome step = surgery_step(cur, P, pol, rng);
    cur = std::move(step.word);
    factor = factor * step.factor;
  }
  return {std::move(cur), std::move(factor)};
}

}  // namespace

void SpanningDiagram::require_valid() const {
  if (m < 0) throw MalformedDiagram("negative boundary size");
  if (static_cast<int>(match.size()) != m)
    throw MalformedDiagram("pairing has the wrong length");
  int g = static_cast<int>(legs.size());
  std::vector<char> is_leg(m, 0);
  for (int j = 0; j < g; ++j) {
    int s = legs[j];
    if (s < 0 || s >= m || is_leg[s])
      throw MalformedDiagram("generator legs must occupy distinct slots");
    is_leg[s] = 1;
  }
  for (int s = 0; s < m; ++s) {
    if (is_leg[s]) {
      if (match[s] != -1)
        throw MalformedDiagram("a slot cannot hold both a leg and a chord");
      continue;
    }
    int p = match[s];
    if (p < 0 || p >= m || p == s || is_leg[p] || match[p] != s)
      throw MalformedDiagram("chords must form an involution");
  }
  // Chords may not cross, and no chord may separate the generator's legs.
  for (int s = 0; s < m; ++s) {
    int p = match[s];
    if (p <= s) continue;
    int inside = 0;
    for (int u = s + 1; u < p; ++u)
      if (is_leg[u]) ++inside;
    if (inside != 0 && inside != g)
      throw MalformedDiagram("a chord separates the generator's legs");
    for (int u = s + 1; u < p; ++u) {
      int q = match[u];
      if (q >= 0 && (q < s || q > p))
        throw MalformedDiagram("chords cross");
    }
  }
  if (g > 0) {
    for (int j = 1; j < g; ++j)
      if (legs[j] < legs[0])
        throw MalformedDiagram("canonical form puts leg 0 at the smallest slot");
    for (int j = 2; j < g; ++j)
      if (legs[j] > legs[j - 1])
        throw MalformedDiagram("legs must run clockwise around the box");
  }
}

SkeinElement::SkeinElement(FieldPtr field, int m)
    : field_(std::move(field)), m_(m) {}

void SkeinElement::add_term(const SpanningDiagram& d, const Cyclo& c) {
  if (d.m != m_) throw BoundaryMismatch("term boundary differs");
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(d, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

SkeinElement SkeinElement::operator+(const SkeinElement& o) const {
  if (m_ != o.m_) throw BoundaryMismatch("sum boundary differs");
  SkeinElement r(*this);
  for (const auto& [d, c] : o.terms_) r.add_term(d, c);
  return r;
}

SkeinElement SkeinElement::operator-(const SkeinElement& o) const {
  return *this + (-o);
}

SkeinElement SkeinElement::operator-() const {
  SkeinElement r(field_, m_);
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
  return r;
}

SkeinElement SkeinElement::operator*(const Cyclo& c) const {
  SkeinElement r(field_, m_);
  if (c.is_zero()) return r;
  for (const auto& [d, x] : terms_) {
    Cyclo y = x * c;
    if (!y.is_zero()) r.terms_.emplace(d, y);
  }
  return r;
}

bool SkeinElement::operator==(const SkeinElement& o) const {
  if (m_ != o.m_ || terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [d, c] : terms_) {
    if (d != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

Cyclo evaluate_closed(const Word& w, const EngineParams& P,
                      const EvalPolicy& pol) {
  Word closed = w;
  if (w.bottom != 0 || w.top(P.g) != 0) closed = trace_closure(w, P.g);
  closed.require_valid(P.g);
  auto [reduced, factor] = eliminate_pairs(closed, P, pol);
  if (reduced.count_s() == 1) return Cyclo::zero(P.field);
  Sweep sweep(P);
  StateMap states = sweep.run(reduced);
  Cyclo value = Cyclo::zero(P.field);
  for (const auto& [k, sc] : states) value = value + sc.second;
  return value * factor;
}

SkeinElement reduce_to_spanning(const Word& w, const EngineParams& P,
                                const EvalPolicy& pol) {
  w.require_valid(P.g);
  int b = w.bottom, t = w.top(P.g);
  auto [reduced, factor] = eliminate_pairs(w, P, pol);
  Sweep sweep(P);
  SkeinElement r = sweep.finalize(sweep.run(reduced), b, t);
  return r * factor;
}

std::vector<SpanningDiagram> spanning_set(int m, const EngineParams& P) {
  if (m < 0) throw MalformedDiagram("negative boundary size");
  std::vector<SpanningDiagram> out;
  if (m % 2 == 0) {
    for (const auto& d : enumerate_diagrams(m, 0))
      out.push_back({m, {}, d.match});
  }
  int g = P.g;
  if (m >= g && (m - g) % 2 == 0) {
    // Choose the leg slots: every cyclic gap between consecutive legs even.
    std::vector<int> pick(g);
    for (int j = 0; j < g; ++j) pick[j] = j;
    while (true) {
      bool ok = true;
      for (int j = 0; j < g && ok; ++j) {
        int gap = (j + 1 < g ? pick[j + 1] : pick[0] + m) - pick[j] - 1;
        if (gap % 2 != 0) ok = false;
      }
      if (ok) {
        // Gaps in slot order; fill each independently with noncrossing chords.
        std::vector<std::vector<int>> gap_slots;
        for (int j = 0; j < g; ++j) {
          std::vector<int> slots;
          int from = pick[j] + 1;
          int to = j + 1 < g ? pick[j + 1] : pick[0] + m;
          for (int s = from; s < to; ++s) slots.push_back(s % m);
          gap_slots.push_back(std::move(slots));
        }
        SpanningDiagram base;
        base.m = m;
        base.match.assign(m, -1);
        base.legs.resize(g);
        base.legs[0] = pick[0];
        for (int j = 1; j < g; ++j) base.legs[j] = pick[g - j];
        std::vector<std::vector<TLDiagram>> fills;
        for (const auto& slots : gap_slots)
          fills.push_back(enumerate_diagrams(static_cast<int>(slots.size()), 0));
        std::vector<size_t> at(gap_slots.size(), 0);
        while (true) {
          SpanningDiagram d = base;
          for (size_t gi = 0; gi < gap_slots.size(); ++gi) {
            const auto& slots = gap_slots[gi];
            const auto& fill = fills[gi][at[gi]];
            for (size_t a = 0; a < slots.size(); ++a) {
              d.match[slots[a]] = slots[fill.match[a]];
            }
          }
          out.push_back(std::move(d));
          size_t gi = 0;
          while (gi < at.size() && ++at[gi] == fills[gi].size()) at[gi++] = 0;
          if (gi == at.size()) break;
        }
      }
      // next g-combination of [0, m)
      int j = g - 1;
      while (j >= 0 && pick[j] == m - g + j) --j;
      if (j < 0) break;
      ++pick[j];
      for (int k = j + 1; k < g; ++k) pick[k] = pick[k - 1] + 1;
    }
  }
  return out;
}

Cyclo pair_value(const SpanningDiagram& a, const SpanningDiagram& b,
                 const EngineParams& P) {
  if (a.m != b.m) throw BoundaryMismatch("pairing boundary sizes differ");
  int m = a.m;
  if (a.with_generator() != b.with_generator()) return Cyclo::zero(P.field);
  auto delta_pow = [&](int e) { return cyclo_pow(P.delta, e); };
  if (!a.with_generator()) {
    DSU dsu(2 * m);
    for (int s = 0; s < m; ++s) {
      if (a.match[s] > s) dsu.unite(s, a.match[s]);
      if (b.match[s] > s) dsu.unite(m + s, m + b.match[s]);
      dsu.unite(s, m + s);
    }
    int loops = 0;
    std::vector<char> seen(2 * m, 0);
    for (int i = 0; i < 2 * m; ++i) {
      int root = dsu.find(i);
      if (!seen[root]) {
        seen[root] = 1;
        ++loops;
      }
    }
    return delta_pow(loops);
  }
  // One box on each side. Any strand path joining a box to itself caps it,
  // so the value is zero. Otherwise the g paths form a fan joining the two
  // boxes through the glued annulus; the fan is a rigid rotation by some
  // whole number of leg clicks, and each click contributes one mark phase.
  // Chord-only components are free loops.
  int g = P.g;
  DSU dsu(2 * m);
  for (int s = 0; s < m; ++s) {
    dsu.unite(s, m + s);
    if (a.match[s] > s) dsu.unite(s, a.match[s]);
    if (b.match[s] > s) dsu.unite(m + s, m + b.match[s]);
  }
  std::vector<int> a_leg(2 * m, -1), b_leg(2 * m, -1);
  for (int j = 0; j < g; ++j) {
    int ra = dsu.find(a.legs[j]);
    int rb = dsu.find(m + b.legs[j]);
    if (a_leg[ra] >= 0 || b_leg[rb] >= 0) return Cyclo::zero(P.field);
    a_leg[ra] = j;
    b_leg[rb] = j;
  }
  for (int j = 0; j < g; ++j)
    if (b_leg[dsu.find(a.legs[j])] < 0) return Cyclo::zero(P.field);
  int loops = 0;
  std::vector<char> seen(2 * m, 0);
  for (int i = 0; i < 2 * m; ++i) {
    int root = dsu.find(i);
    if (seen[root]) continue;
    seen[root] = 1;
    if (a_leg[root] < 0 && b_leg[root] < 0) ++loops;
  }

  // The rotation amount comes from walking each strand through the chords,
  // lifted to the universal cover. A chord is traversed on its leg-free
  // side; validity guarantees exactly one side is free.
  std::vector<int> leg_at_a(m, -1), leg_at_b(m, -1);
  for (int j = 0; j < g; ++j) {
    leg_at_a[a.legs[j]] = j;
    leg_at_b[b.legs[j]] = j;
  }
  auto chord_lift = [&](const SpanningDiagram& d, const std::vector<int>& leg_at,
                        int from) {
    int fwd = imod(d.match[from] - from, m);
    bool fwd_leg = false, bwd_leg = false;
    for (int x = 1; x < fwd; ++x)
      if (leg_at[(from + x) % m] >= 0) fwd_leg = true;
    for (int x = 1; x < m - fwd; ++x)
      if (leg_at[imod(from - x, m)] >= 0) bwd_leg = true;
    if (fwd_leg && bwd_leg)
      throw SkeinError("internal: chord separates box legs");
    return fwd_leg ? fwd - m : fwd;
  };
  // rank of a leg slot in circular order, common to both diagrams
  auto rank_of = [&](const std::vector<int>& legs, int slot) {
    int r = 0;
    for (int s : legs)
      if (s < slot) ++r;
    return r;
  };
  int shift = 0;
  for (int j = 0; j < g; ++j) {
    int s = a.legs[j];
    int lift = s;
    while (leg_at_b[s] < 0) {
      lift += chord_lift(b, leg_at_b, s);
      s = b.match[s];
      if (leg_at_a[s] >= 0)
        throw SkeinError("internal: strand walk rejoined the lower box");
      lift += chord_lift(a, leg_at_a, s);
      s = a.match[s];
    }
    int i = leg_at_b[s];
    int copies = (lift - b.legs[i]) / m;
    int tj = rank_of(a.legs, a.legs[j]) - rank_of(b.legs, b.legs[i]) -
             g * copies;
    if (j == 0)
      shift = tj;
    else if (tj != shift)
      throw SkeinError("internal: fan shift is not constant");
  }
  Cyclo phase = shift >= 0 ? cyclo_pow(P.mu, shift)
                           : cyclo_pow(P.mu.inverse(), -shift);
  return P.surgery_factor * phase * delta_pow(loops);
}

Cyclo inner_product(const SkeinElement& x, const SkeinElement& y,
                    const EngineParams& P) {
  Cyclo total = Cyclo::zero(P.field);
  for (const auto& [dx, cx] : x.terms())
    for (const auto& [dy, cy] : y.terms())
      total = total + cx * cy.conj() * pair_value(dx, dy, P);
  return total;
}

std::vector<std::vector<Cyclo>> gram_matrix(
    const std::vector<SpanningDiagram>& basis, const EngineParams& P) {
  size_t n = basis.size();
  std::vector<std::vector<Cyclo>> M(n, std::vector<Cyclo>());
  for (auto& row : M) row.assign(n, Cyclo::zero(P.field));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Cyclo v = pair_value(basis[i], basis[j], P);
      M[i][j] = v;
      if (i != j) M[j][i] = v.conj();
    }
  return M;
}

Word word_for_spanning(const SpanningDiagram& d, const EngineParams& P) {
  d.require_valid();
  int m = d.m;
  std::vector<int> slot_of(m);
  for (int i = 0; i < m; ++i) slot_of[i] = m - 1 - i;
  std::vector<Tile> vt;
  int chords = 0;
  for (int s = 0; s < m; ++s)
    if (d.match[s] > s) ++chords;
  int g = P.g;
  bool box_pending = d.with_generator();
  auto leg_index = [&](int s) {
    for (int j = 0; j < g; ++j)
      if (d.legs[j] == s) return j;
    return -1;
  };
  while (chords > 0 || box_pending) {
    bool found = false;
    for (size_t i = 0; i + 1 < slot_of.size(); ++i) {
      if (d.match[slot_of[i]] == slot_of[i + 1]) {
        vt.push_back({TileKind::Cap, static_cast<int>(i), 0});
        slot_of.erase(slot_of.begin() + i, slot_of.begin() + i + 2);
        --chords;
        found = true;
        break;
      }
    }
    if (found) continue;
    // No adjacent chord pair left; the box legs now sit in one contiguous
    // block (chords never separate legs), so absorb them into the box.
    if (!box_pending) throw SkeinError("internal: stuck while flattening a diagram");
    size_t i0 = 0;
    while (i0 < slot_of.size() && leg_index(slot_of[i0]) < 0) ++i0;
    if (i0 + g > slot_of.size())
      throw SkeinError("internal: stuck while flattening a diagram");
    for (size_t j = 0; j < static_cast<size_t>(g); ++j)
      if (leg_index(slot_of[i0 + j]) < 0)
        throw SkeinError("internal: stuck while flattening a diagram");
    int lstar = leg_index(slot_of[i0]);
    vt.push_back({TileKind::SDown, static_cast<int>(i0), imod(-lstar, g)});
    slot_of.erase(slot_of.begin() + i0, slot_of.begin() + i0 + g);
    box_pending = false;
  }
  return reverse_transpose(Word{m, std::move(vt)}, P.g);
}

Word word_for_operator(const SpanningDiagram& d, int h, const EngineParams& P) {
  if (h < 0 || h > d.m)
    throw BoundaryMismatch("input count must lie between 0 and the boundary size");
  Word w = word_for_spanning(d, P);
  w.bottom = h;
  for (int j = 0; j < h; ++j) w.tiles.push_back({TileKind::Cap, d.m - 1 - j, 0});
  return w;
}

SkeinElement generator_element(const EngineParams& P) {
  Word w;
  w.bottom = 0;
  w.tiles.push_back({TileKind::SUp, 0, 0});
  return reduce_to_spanning(w, P);
}

SkeinElement element_from_tl(const TLElement& x, const EngineParams& P) {
  SkeinElement r(P.field, x.b() + x.t());
  for (const auto& [d, c] : x.terms()) r.add_term({x.b() + x.t(), {}, d.match}, c);
  return r;
}

SkeinElement compose_elements(const SkeinElement& upper, int upper_in,
                              const SkeinElement& lower, int lower_in,
                              const EngineParams& P, const EvalPolicy& pol) {
  int lower_out = lower.m() - lower_in;
  if (lower_out != upper_in)
    throw BoundaryMismatch("composition boundary sizes differ");
  int upper_out = upper.m() - upper_in;
  SkeinElement r(P.field, lower_in + upper_out);
  for (const auto& [dl, cl] : lower.terms()) {
    Word wl = word_for_operator(dl, lower_in, P);
    for (const auto& [du, cu] : upper.terms()) {
      Word w = wl;
      Word wu = word_for_operator(du, upper_in, P);
      w.tiles.insert(w.tiles.end(), wu.tiles.begin(), wu.tiles.end());
      r = r + reduce_to_spanning(w, P, pol) * (cl * cu);
    }
  }
  return r;
}

SkeinElement multiply(const SkeinElement& x, const SkeinElement& y,
                      const EngineParams& P, const EvalPolicy& pol) {
  if (x.m() != y.m() || x.m() % 2 != 0)
    throw BoundaryMismatch("algebra product needs matching even boundaries");
  return compose_elements(x, x.m() / 2, y, y.m() / 2, P, pol);
}

SkeinElement tensor_elements(const SkeinElement& x, int hx,
                             const SkeinElement& y, int hy,
                             const EngineParams& P, const EvalPolicy& pol) {
  int tx = x.m() - hx;
  SkeinElement r(P.field, x.m() + y.m());
  for (const auto& [dx, cx] : x.terms()) {
    Word wx = word_for_operator(dx, hx, P);
    for (const auto& [dy, cy] : y.terms()) {
      Word w;
      w.bottom = hx + hy;
      w.tiles = wx.tiles;
      Word wy = word_for_operator(dy, hy, P);
      for (Tile t : wy.tiles) {
        t.pos += tx;
        w.tiles.push_back(t);
      }
      r = r + reduce_to_spanning(w, P, pol) * (cx * cy);
    }
  }
  return r;
}

Cyclo element_trace(const SkeinElement& x, const EngineParams& P) {
  Cyclo total = Cyclo::zero(P.field);
  int m = x.m();
  for (const auto& [d, c] : x.terms()) {
    if (d.with_generator()) continue;  // a lone box closes to zero
    DSU dsu(m);
    for (int s = 0; s < m; ++s)
      if (d.match[s] > s) dsu.unite(s, d.match[s]);
    for (int j = 0; j < m / 2; ++j) dsu.unite(j, m - 1 - j);
    int loops = 0;
    std::vector<char> seen(m, 0);
    for (int i = 0; i < m; ++i) {
      int root = dsu.find(i);
      if (!seen[root]) {
        seen[root] = 1;
        ++loops;
      }
    }
    total = total + c * cyclo_pow(P.delta, loops);
  }
  return total;
}

SkeinElement rotate_element(const SkeinElement& x, const EngineParams& P) {
  int m = x.m();
  SkeinElement r(x.field(), m);
  for (const auto& [d, c] : x.terms()) {
    SpanningDiagram nd;
    nd.m = m;
    nd.match.assign(m, -1);
    for (int s = 0; s < m; ++s)
      if (d.match[s] >= 0) nd.match[(s + 1) % m] = (d.match[s] + 1) % m;
    Cyclo nc = c;
    if (d.with_generator()) {
      int g = P.g;
      std::vector<int> legs(g);
      for (int j = 0; j < g; ++j) legs[j] = (d.legs[j] + 1) % m;
      int jstar = 0;
      for (int j = 1; j < g; ++j)
        if (legs[j] < legs[jstar]) jstar = j;
      nd.legs.resize(g);
      for (int j = 0; j < g; ++j) nd.legs[j] = legs[(j + jstar) % g];
      nc = nc * cyclo_pow(P.omega, jstar);
    }
    r.add_term(nd, nc);
  }
  return r;
}

SkeinElement adjoint_element(const SkeinElement& x, const EngineParams& P) {
  int m = x.m();
  SkeinElement r(x.field(), m);
  for (const auto& [d, c] : x.terms()) {
    SpanningDiagram nd;
    nd.m = m;
    nd.match.assign(m, -1);
    for (int s = 0; s < m; ++s)
      if (d.match[s] >= 0) nd.match[m - 1 - s] = m - 1 - d.match[s];
    Cyclo nc = c.conj();
    if (d.with_generator()) {
      int g = P.g;
      std::vector<int> raw(g);
      for (int j = 0; j < g; ++j) raw[j] = m - 1 - d.legs[g - 1 - j];
      int jstar = 0;
      for (int j = 1; j < g; ++j)
        if (raw[j] < raw[jstar]) jstar = j;
      nd.legs.resize(g);
      for (int j = 0; j < g; ++j) nd.legs[j] = raw[(j + jstar) % g];
      nc = nc * cyclo_pow(P.omega, jstar);
    }
    r.add_term(nd, nc);
  }
  return r;
}

}  // namespace skein
