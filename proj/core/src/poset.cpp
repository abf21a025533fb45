#include "medlat/poset.hpp"

namespace medlat {

namespace {

void validate(int n, const std::vector<Bitset>& up) {
  for (int x = 0; x < n; ++x)
    if (!up[x].test(x)) throw NotReflexive(x);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (up[x].test(y) && up[y].test(x)) throw NotAntisymmetric(x, y);
  // x <= y forces up[y] subset of up[x]; the first stray bit is a witness.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (y == x || !up[x].test(y)) continue;
      if (!up[y].is_subset_of(up[x])) {
        int z = -1;
        up[y].for_each([&](int b) {
          if (z < 0 && !up[x].test(b)) z = b;
        });
        throw NotTransitive(x, y, z);
      }
    }
  }
}

}  // namespace

Poset build_poset(int n, const std::vector<Bitset>& leq_rows,
                  std::vector<std::string> labels, BuildOptions opts) {
  if (n <= 0) throw BadInput("poset needs at least one element");
  if (static_cast<int>(leq_rows.size()) != n) throw BadInput("leq matrix is not n x n");
  for (const auto& r : leq_rows)
    if (r.size() != n) throw BadInput("leq matrix is not n x n");
  int limit = opts.allow_large ? kHardLimit : kDenseLimit;
  if (n > limit)
    throw SizeLimit(std::to_string(n) + " elements (limit " + std::to_string(limit) + ")");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw BadInput("label count does not match element count");

  validate(n, leq_rows);

  Poset p;
  p.n = n;
  p.up = leq_rows;
  p.down.assign(n, Bitset(n));
  for (int x = 0; x < n; ++x)
    leq_rows[x].for_each([&](int y) { p.down[y].set(x); });
  p.labels = std::move(labels);
  return p;
}

Poset build_poset(const std::vector<std::vector<std::uint8_t>>& leq,
                  std::vector<std::string> labels, BuildOptions opts) {
  int n = static_cast<int>(leq.size());
  std::vector<Bitset> rows(n, Bitset(n));
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(leq[x].size()) != n) throw BadInput("leq matrix is not n x n");
    for (int y = 0; y < n; ++y)
      if (leq[x][y]) rows[x].set(y);
  }
  return build_poset(n, rows, std::move(labels), opts);
}

}  // namespace medlat
