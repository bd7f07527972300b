#include "narrow/solver.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>

namespace narrow {
namespace {

using u128 = unsigned __int128;

constexpr int kBits = 3;
constexpr int kMaxPartLen = 128 / kBits;
constexpr int kMaxParts = 48;

// One component; the legs of coin i live in bits [3i, 3i+3).
struct Part {
  u128 code = 0;
  int len = 0;

  int leg(int i) const { return static_cast<int>((code >> (kBits * i)) & 7u); }
};

bool part_less(const Part& a, const Part& b) {
  if (a.len != b.len) return a.len < b.len;
  return a.code < b.code;
}

u128 reversed_code(const Part& p) {
  u128 r = 0;
  for (int i = 0; i < p.len; ++i) r |= static_cast<u128>(p.leg(i)) << (kBits * (p.len - 1 - i));
  return r;
}

Part oriented(Part p) {
  p.code = std::min(p.code, reversed_code(p));
  return p;
}

Part slice(const Part& p, int from, int len) {
  Part out;
  out.len = len;
  const u128 mask = len >= kMaxPartLen ? ~u128{0} : ((u128{1} << (kBits * len)) - 1);
  out.code = (p.code >> (kBits * from)) & mask;
  return oriented(out);
}

struct State {
  std::array<Part, kMaxParts> parts;
  int count = 0;
  int coins = 0;

  void insert(const Part& p) {
    if (count == kMaxParts) throw std::length_error("too many components for the solver");
    int i = count++;
    while (i > 0 && part_less(p, parts[i - 1])) {
      parts[i] = parts[i - 1];
      --i;
    }
    parts[i] = p;
    coins += p.len;
  }

  State without(int idx) const {
    State s;
    s.count = count - 1;
    s.coins = coins - parts[idx].len;
    std::copy(parts.begin(), parts.begin() + idx, s.parts.begin());
    std::copy(parts.begin() + idx + 1, parts.begin() + count, s.parts.begin() + idx);
    return s;
  }
};

struct BitWriter {
  CanonicalKey key;
  int pos = 0;

  void write(u128 value, int nbits) {
    if (pos + nbits > 192) throw std::length_error("position too large for the solver key");
    while (nbits > 0) {
      const int word = pos / 64;
      const int off = pos % 64;
      const int take = std::min(nbits, 64 - off);
      const std::uint64_t chunk =
          static_cast<std::uint64_t>(value) & (take == 64 ? ~0ULL : ((1ULL << take) - 1));
      key.words[word] |= chunk << off;
      value >>= take;
      pos += take;
      nbits -= take;
    }
  }
};

u128 ones(int len) {
  u128 r = 0;
  for (int i = 0; i < len; ++i) r |= u128{1} << (kBits * i);
  return r;
}

CanonicalKey pack(const State& s) {
  BitWriter w;
  for (int i = 0; i < s.count; ++i) {
    const Part& p = s.parts[i];
    // legs + 1 per coin keeps every coin symbol nonzero; a zero symbol separates.
    w.write(p.code + ones(p.len), kBits * p.len);
    w.write(0, kBits);
  }
  return w.key;
}

State state_of(const Position& p) {
  State s;
  for (const auto& comp : p.components()) {
    if (comp.size() > kMaxPartLen) throw std::length_error("component too long for the solver");
    Part part;
    part.len = comp.size();
    for (int i = 0; i < comp.size(); ++i) part.code |= static_cast<u128>(comp.legs[i]) << (kBits * i);
    s.insert(oriented(part));
  }
  return s;
}

}  // namespace

struct Solver::Impl {
  absl::flat_hash_map<CanonicalKey, std::int8_t, CanonicalKeyHash> memo;
  std::size_t budget;

  explicit Impl(std::size_t b) : budget(b) {}

  int value(const State& s) {
    if (s.count == 0) return 0;
    const CanonicalKey key = pack(s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    int best = -1000;
    for (int j = 0; j < s.count && best < s.coins; ++j) {
      const Part& part = s.parts[j];
      if (j > 0 && part.len == s.parts[j - 1].len && part.code == s.parts[j - 1].code) continue;
      const bool palindrome = part.code == reversed_code(part);
      const State rest = s.without(j);

      for (int i = 0; i < part.len && best < s.coins; ++i) {
        if (palindrome && i > part.len - 1 - i) break;
        const int l = part.leg(i);
        if (l == 0) continue;
        int v;
        if (part.len == 1 && l == 1) {
          v = 1 + value(rest);
        } else {
          Part cut = part;
          cut.code -= u128{1} << (kBits * i);
          State next = rest;
          next.insert(oriented(cut));
          v = -value(next);
        }
        best = std::max(best, v);
      }

      for (int i = 0; i + 1 < part.len && best < s.coins; ++i) {
        if (palindrome && i > part.len - 2 - i) break;
        State next = rest;
        int captured = 0;
        if (i == 0 && part.leg(0) == 0) {
          ++captured;
        } else {
          next.insert(slice(part, 0, i + 1));
        }
        if (i + 1 == part.len - 1 && part.leg(part.len - 1) == 0) {
          ++captured;
        } else {
          next.insert(slice(part, i + 1, part.len - 1 - i));
        }
        const int v = captured > 0 ? captured + value(next) : -value(next);
        best = std::max(best, v);
      }
    }

    if (memo.size() >= budget)
      throw MemoOverflow("solver memo budget of " + std::to_string(budget) + " entries exhausted");
    memo.emplace(key, static_cast<std::int8_t>(best));
    return best;
  }
};

Solver::Solver(std::size_t max_entries)
    : impl_(std::make_unique<Impl>(max_entries)), budget_(max_entries) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::size_t Solver::memo_size() const { return impl_->memo.size(); }

int Solver::value(const Position& p) { return impl_->value(state_of(p)); }

int Solver::move_value(const Position& p, EdgeRef e) {
  const MoveOutcome out = apply_move(p, e);
  const int captured = static_cast<int>(out.captured.size());
  const int rest = value(out.resulting);
  return captured > 0 ? captured + rest : -rest;
}

SolveResult Solver::solve(const Position& p) {
  const std::size_t before = memo_size();
  SolveResult r;
  if (!p.terminal()) {
    r.value = -1000;
    for (EdgeRef e : legal_moves(p)) {
      const int v = move_value(p, e);
      if (v > r.value) {
        r.value = v;
        r.best = e;
      }
    }
  }
  r.nodes = memo_size() - before;
  return r;
}

std::vector<EdgeRef> Solver::principal_variation(const Position& p) {
  std::vector<EdgeRef> line;
  Position cur = p;
  while (!cur.terminal()) {
    const EdgeRef e = *solve(cur).best;
    line.push_back(e);
    cur = apply_move(cur, e).resulting;
  }
  return line;
}

std::vector<ScoreRow> score_table(Game game, Boundary boundary, int n_max, std::size_t max_entries) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  std::vector<ScoreRow> rows;
  Solver solver(max_entries);
  for (int n = 1; n <= n_max; ++n) {
    ScoreRow row{n, std::nullopt, 0};
    try {
      const SolveResult r = solver.solve(initial_position({game, boundary, n}));
      row.value = r.value;
      row.nodes = r.nodes;
    } catch (const MemoOverflow&) {
      solver = Solver(max_entries);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace narrow
