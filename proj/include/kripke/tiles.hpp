#pragma once

// Tile sets and finite grid/torus tilings: adjacency checking and
// deterministic brute-force search for periodic (torus) tilings.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kripke {

struct Tile {
  std::string name;
  std::string left, right, up, down;
};

struct TileSet {
  std::vector<Tile> tiles;

  const Tile& by_name(const std::string& n) const {
    for (const auto& t : tiles)
      if (t.name == n) return t;
    throw std::invalid_argument("tile set: unknown tile '" + n + "'");
  }

  void check() const {
    std::map<std::string, int> seen;
    for (const auto& t : tiles)
      if (++seen[t.name] > 1)
        throw std::invalid_argument("tile set: duplicate tile name '" + t.name + "'");
  }
};

// cells[j][i] names the tile at column i, row j; row j+1 sits above row j.
struct Tiling {
  int width = 0, height = 0;
  bool torus = false;
  std::vector<std::vector<std::string>> cells;

  const std::string& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
};

// True iff right(t(i,j)) = left(t(i+1,j)) and up(t(i,j)) = down(t(i,j+1))
// for all in-range pairs, wrapping around exactly when the tiling is a torus.
inline bool check_tiling(const TileSet& ts, const Tiling& tau) {
  if (tau.width <= 0 || tau.height <= 0) throw std::invalid_argument("tiling: empty grid");
  if (tau.cells.size() != static_cast<std::size_t>(tau.height))
    throw std::invalid_argument("tiling: wrong number of rows");
  for (const auto& row : tau.cells)
    if (row.size() != static_cast<std::size_t>(tau.width))
      throw std::invalid_argument("tiling: ragged row");
  for (int j = 0; j < tau.height; ++j)
    for (int i = 0; i < tau.width; ++i) {
      const Tile& t = ts.by_name(tau.at(i, j));
      if (i + 1 < tau.width || tau.torus) {
        const Tile& r = ts.by_name(tau.at((i + 1) % tau.width, j));
        if (t.right != r.left) return false;
      }
      if (j + 1 < tau.height || tau.torus) {
        const Tile& u = ts.by_name(tau.at(i, (j + 1) % tau.height));
        if (t.up != u.down) return false;
      }
    }
  return true;
}

struct TilingSearchResult {
  enum class Status { Found, None, Budget } status = Status::None;
  std::optional<Tiling> tiling;
  long long candidates = 0;
};

// Backtracking over cells in row-major order, tiles in input order; the
// first valid assignment in that order is returned, so results are
// reproducible. Budget counts attempted cell placements.
inline TilingSearchResult find_periodic_tiling(const TileSet& ts, int width, int height,
                                               long long budget = 10'000'000) {
  ts.check();
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("find_periodic_tiling: bad dimensions");
  TilingSearchResult res;
  const int cells = width * height;
  std::vector<int> pick(static_cast<std::size_t>(cells), -1);
  auto tile_at = [&](int i, int j) -> const Tile& {
    return ts.tiles[static_cast<std::size_t>(pick[static_cast<std::size_t>(j * width + i)])];
  };
  auto placed = [&](int i, int j) {
    return pick[static_cast<std::size_t>(((j + height) % height) * width + (i + width) % width)] >= 0;
  };
  // Local consistency of cell (i,j) against already-placed torus neighbours.
  auto ok = [&](int i, int j) {
    const Tile& t = tile_at(i, j);
    int il = (i + width - 1) % width, ir = (i + 1) % width;
    int jd = (j + height - 1) % height, ju = (j + 1) % height;
    if (placed(il, j) && ts.tiles[static_cast<std::size_t>(pick[static_cast<std::size_t>(j * width + il)])].right != t.left) return false;
    if (placed(ir, j) && t.right != ts.tiles[static_cast<std::size_t>(pick[static_cast<std::size_t>(j * width + ir)])].left) return false;
    if (placed(i, jd) && ts.tiles[static_cast<std::size_t>(pick[static_cast<std::size_t>(jd * width + i)])].up != t.down) return false;
    if (placed(i, ju) && t.up != ts.tiles[static_cast<std::size_t>(pick[static_cast<std::size_t>(ju * width + i)])].down) return false;
    return true;
  };
  auto rec = [&](auto&& self, int cell) -> int {  // 0 none, 1 found, 2 budget
    if (cell == cells) return 1;
    int i = cell % width, j = cell / width;
    for (std::size_t t = 0; t < ts.tiles.size(); ++t) {
      if (++res.candidates > budget) return 2;
      pick[static_cast<std::size_t>(cell)] = static_cast<int>(t);
      if (ok(i, j)) {
        int r = self(self, cell + 1);
        if (r != 0) return r;
      }
      pick[static_cast<std::size_t>(cell)] = -1;
    }
    return 0;
  };
  int r = rec(rec, 0);
  if (r == 2) {
    res.status = TilingSearchResult::Status::Budget;
    return res;
  }
  if (r == 0) {
    res.status = TilingSearchResult::Status::None;
    return res;
  }
  Tiling tau;
  tau.width = width;
  tau.height = height;
  tau.torus = true;
  tau.cells.assign(static_cast<std::size_t>(height), std::vector<std::string>(static_cast<std::size_t>(width)));
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i)
      tau.cells[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          ts.tiles[static_cast<std::size_t>(pick[static_cast<std::size_t>(j * width + i)])].name;
  res.status = TilingSearchResult::Status::Found;
  res.tiling = std::move(tau);
  return res;
}

// Unfolds a torus tiling periodically onto an fx-by-fy times larger plain
// grid (used to confirm that periodic solutions extend to the plane).
inline Tiling unfold(const Tiling& tau, int fx, int fy) {
  Tiling out;
  out.width = tau.width * fx;
  out.height = tau.height * fy;
  out.torus = false;
  out.cells.assign(static_cast<std::size_t>(out.height),
                   std::vector<std::string>(static_cast<std::size_t>(out.width)));
  for (int j = 0; j < out.height; ++j)
    for (int i = 0; i < out.width; ++i)
      out.cells[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          tau.at(i % tau.width, j % tau.height);
  return out;
}

}  // namespace kripke
