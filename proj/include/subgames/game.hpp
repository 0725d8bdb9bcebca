#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subgames {

using ValueVector = std::vector<std::uint32_t>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("parse error at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A k-player Subtraction game on a heap of n stones. Row j (1 <= j <= n)
// holds bits for columns i = 0..j-1; bit (j,i) set means "move from j
// stones to i stones is legal". Rows are packed contiguously into 64-bit
// words, row j starting at bit offset j(j-1)/2.
class Game {
 public:
  Game(std::uint32_t n, std::uint32_t k) : n_(n), k_(k) {
    if (n < 1) throw std::invalid_argument("Game: n must be >= 1");
    if (k < 2) throw std::invalid_argument("Game: k must be >= 2");
    bits_.resize((bit_count(n) + 63) / 64, 0);
  }

  static Game from_packed_words(std::uint32_t n, std::uint32_t k,
                                std::vector<std::uint64_t> words) {
    Game g(n, k);
    if (words.size() != g.bits_.size())
      throw std::invalid_argument("from_packed_words: wrong word count");
    // unused tail bits must stay zero so equality and hashing stay honest
    const std::uint64_t total = bit_count(n);
    if (total % 64 != 0) words.back() &= (~0ull >> (64 - total % 64));
    g.bits_ = std::move(words);
    return g;
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t k() const { return k_; }
  const std::vector<std::uint64_t>& packed_words() const { return bits_; }

  static std::uint64_t bit_count(std::uint32_t n) {
    return std::uint64_t(n) * (n + 1) / 2;
  }

  bool bit(std::uint32_t j, std::uint32_t i) const {
    check_triangle(j, i);
    const std::uint64_t pos = row_offset(j) + i;
    return (bits_[pos >> 6] >> (pos & 63)) & 1u;
  }

  void set_bit(std::uint32_t j, std::uint32_t i, bool value) {
    check_triangle(j, i);
    const std::uint64_t pos = row_offset(j) + i;
    const std::uint64_t mask = 1ull << (pos & 63);
    if (value)
      bits_[pos >> 6] |= mask;
    else
      bits_[pos >> 6] &= ~mask;
  }

  // Visits the set columns of row j in ascending order.
  template <class Fn>
  void for_each_edge(std::uint32_t j, Fn&& fn) const {
    const std::uint64_t begin = row_offset(j);
    const std::uint64_t end = begin + j;
    for (std::uint64_t w = begin >> 6; w <= (end - 1) >> 6; ++w) {
      std::uint64_t word = bits_[w];
      if (w == begin >> 6 && (begin & 63)) word &= ~0ull << (begin & 63);
      if (w == (end - 1) >> 6 && (end & 63)) word &= ~0ull >> (64 - (end & 63));
      while (word) {
        const int b = std::countr_zero(word);
        word &= word - 1;
        fn(static_cast<std::uint32_t>(((w << 6) | unsigned(b)) - begin));
      }
    }
  }

  std::uint32_t row_weight(std::uint32_t j) const {
    std::uint32_t weight = 0;
    for_each_edge(j, [&](std::uint32_t) { ++weight; });
    return weight;
  }

  // ORs a whole row in from a word buffer (bit i of words = column i).
  // Bits at i >= j are ignored. Bulk path for generators.
  void or_row_bits(std::uint32_t j, const std::uint64_t* words) {
    if (j < 1 || j > n_) throw std::out_of_range("or_row_bits: bad row");
    const std::uint64_t begin = row_offset(j);
    const unsigned shift = begin & 63;
    std::uint64_t w = begin >> 6;
    const std::uint32_t src_words = (j + 63) / 64;
    for (std::uint32_t s = 0; s < src_words; ++s) {
      std::uint64_t word = words[s];
      if (s == src_words - 1 && (j & 63)) word &= ~0ull >> (64 - (j & 63));
      bits_[w + s] |= word << shift;
      if (shift && (word >> (64 - shift)) != 0) bits_[w + s + 1] |= word >> (64 - shift);
    }
  }

  bool operator==(const Game&) const = default;

  std::string serialize() const {
    std::string out = std::to_string(k_) + ' ' + std::to_string(n_) + '\n';
    for (std::uint32_t j = 1; j <= n_; ++j) {
      std::string row(j, '0');
      for_each_edge(j, [&](std::uint32_t i) { row[i] = '1'; });
      out += row;
      out += '\n';
    }
    return out;
  }

  // Inverse of serialize. The header carries k; the row block is the
  // authoritative source for n (row j must have exactly j characters).
  static Game parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& line) -> bool {
      if (pos >= text.size()) return false;
      ++line_no;
      const std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) {
        line = text.substr(pos);
        pos = text.size();
      } else {
        line = text.substr(pos, nl - pos);
        pos = nl + 1;
      }
      return true;
    };

    std::string_view header;
    if (!next_line(header)) throw ParseError(1, "empty input, expected \"<k> <n>\" header");
    std::uint64_t k = 0, n_declared = 0;
    {
      std::istringstream in{std::string(header)};
      std::string tail;
      if (!(in >> k >> n_declared) || (in >> tail))
        throw ParseError(1, "header mismatch: expected \"<k> <n>\"");
      if (k < 2) throw ParseError(1, "header mismatch: k must be >= 2");
      if (n_declared < 1) throw ParseError(1, "header mismatch: n must be >= 1");
    }

    std::vector<std::string_view> rows;
    std::string_view line;
    while (next_line(line)) {
      if (line.empty() && pos >= text.size()) break;  // trailing newline
      rows.push_back(line);
    }
    if (rows.empty()) throw ParseError(2, "no rows");

    Game g(static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(k));
    for (std::uint32_t j = 1; j <= rows.size(); ++j) {
      const std::string_view row = rows[j - 1];
      if (row.size() != j)
        throw ParseError(j + 1, "row " + std::to_string(j) + " has length " +
                                    std::to_string(row.size()) + ", expected " +
                                    std::to_string(j));
      for (std::uint32_t i = 0; i < j; ++i) {
        if (row[i] == '1')
          g.set_bit(j, i, true);
        else if (row[i] != '0')
          throw ParseError(j + 1, std::string("non-binary character '") + row[i] +
                                      "' in row " + std::to_string(j));
      }
    }
    return g;
  }

 private:
  static std::uint64_t row_offset(std::uint32_t j) {
    return std::uint64_t(j) * (j - 1) / 2;
  }

  void check_triangle(std::uint32_t j, std::uint32_t i) const {
    if (j < 1 || j > n_ || i >= j)
      throw std::out_of_range("bit (" + std::to_string(j) + "," + std::to_string(i) +
                              ") is outside the lower triangle");
  }

  std::uint32_t n_;
  std::uint32_t k_;
  std::vector<std::uint64_t> bits_;
};

// Bottom-up evaluation of the winning function: values[0] = 0, and for
// j >= 1 with a nonempty row, values[j] = max over edges (j -> i) of
// (values[i] - 1) mod k, the payoff the mover locks in by taking stones.
// Empty rows are worth 0. This is the classical reference all other
// solvers are checked against.
inline ValueVector win_values(const Game& g) {
  const std::uint32_t k = g.k();
  ValueVector values(g.n() + 1, 0);
  for (std::uint32_t j = 1; j <= g.n(); ++j) {
    std::uint32_t best = 0;
    g.for_each_edge(j, [&](std::uint32_t i) {
      const std::uint32_t payoff = (values[i] + k - 1) % k;
      if (payoff > best) best = payoff;
    });
    values[j] = best;
  }
  return values;
}

inline std::uint32_t win(const Game& g) { return win_values(g)[g.n()]; }

inline bool is_restricted(const Game& g) {
  for (std::uint32_t j = 1; j <= g.n(); ++j)
    if (g.row_weight(j) > 1) return false;
  return true;
}

struct GameClassReport {
  bool is_restricted = false;
  bool is_losing = false;
  // max over payoff classes w of |#{j in 1..n : values[j] = w} - n/k|
  double balance_deviation = 0.0;
};

inline GameClassReport classify(const Game& g, const ValueVector& values) {
  if (values.size() != g.n() + 1)
    throw std::invalid_argument("classify: values must cover positions 0..n");
  GameClassReport report;
  report.is_restricted = is_restricted(g);
  report.is_losing = values[g.n()] == 0;
  std::vector<std::uint64_t> counts(g.k(), 0);
  for (std::uint32_t j = 1; j <= g.n(); ++j) ++counts[values[j]];
  const double ideal = double(g.n()) / double(g.k());
  for (std::uint32_t w = 0; w < g.k(); ++w) {
    const double dev = std::abs(double(counts[w]) - ideal);
    if (dev > report.balance_deviation) report.balance_deviation = dev;
  }
  return report;
}

}  // namespace subgames
