#include "gecrank/edits.hpp"

#include <algorithm>
#include <cassert>

namespace gecrank {

namespace {

enum class Op { kMatch, kSubstitute, kDelete, kInsert };

}  // namespace

EditSet extract_edits(std::span<const std::string> source, std::span<const std::string> target) {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  // dist[i][j]: cost of aligning source[i..] with target[j..].
  std::vector<std::size_t> dist((n + 1) * (m + 1));
  auto d = [&](std::size_t i, std::size_t j) -> std::size_t& { return dist[i * (m + 1) + j]; };
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n) {
        d(i, j) = m - j;
      } else if (j == m) {
        d(i, j) = n - i;
      } else {
        const std::size_t diag = d(i + 1, j + 1) + (source[i] == target[j] ? 0 : 1);
        d(i, j) = std::min({diag, d(i + 1, j) + 1, d(i, j + 1) + 1});
      }
    }
  }

  std::vector<Op> ops;
  ops.reserve(n + m);
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    const std::size_t here = d(i, j);
    if (i < n && j < m && source[i] == target[j] && d(i + 1, j + 1) == here) {
      ops.push_back(Op::kMatch);
      ++i, ++j;
    } else if (i < n && j < m && source[i] != target[j] && d(i + 1, j + 1) + 1 == here) {
      ops.push_back(Op::kSubstitute);
      ++i, ++j;
    } else if (i < n && d(i + 1, j) + 1 == here) {
      ops.push_back(Op::kDelete);
      ++i;
    } else {
      assert(j < m && d(i, j + 1) + 1 == here);
      ops.push_back(Op::kInsert);
      ++j;
    }
  }

  EditSet edits;
  i = j = 0;
  for (std::size_t k = 0; k < ops.size();) {
    const Op op = ops[k];
    if (op == Op::kMatch) {
      ++i, ++j, ++k;
      continue;
    }
    Edit edit{i, i, {}};
    for (; k < ops.size() && ops[k] == op; ++k) {
      if (op != Op::kInsert) ++i;
      if (op != Op::kDelete) edit.replacement.push_back(target[j++]);
    }
    edit.end = i;
    edits.push_back(std::move(edit));
  }
  return edits;
}

Tokens apply_edits(std::span<const std::string> source, const EditSet& edits) {
  Tokens out;
  std::size_t pos = 0;
  for (const auto& edit : edits) {
    out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(pos),
               source.begin() + static_cast<std::ptrdiff_t>(edit.start));
    out.insert(out.end(), edit.replacement.begin(), edit.replacement.end());
    pos = edit.end;
  }
  out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(pos), source.end());
  return out;
}

}  // namespace gecrank
