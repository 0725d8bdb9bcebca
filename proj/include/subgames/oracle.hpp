#pragma once

#include <cstdint>
#include <stdexcept>

#include "subgames/game.hpp"

namespace subgames {

// Query-counting access layer over a game's move matrix. Every solver reads
// the matrix through one of these, so classical and simulated-quantum query
// counts are measured with the same meter.
//
// Two kinds of access exist:
//   query(j, i)  - a classical read of one bit, charged 1.
//   superposed() - the raw game, as the quantum oracle would expose it in
//                  superposition. Only legal while a Superposition scope is
//                  open; the closed-form simulation that opens the scope is
//                  responsible for charging the run's cost via charge().
// The scope guard is what keeps back-door matrix access out of solvers: an
// uncharged read outside a simulation throws immediately.
class CountingOracle {
 public:
  explicit CountingOracle(const Game& game) : game_(&game) {}

  std::uint32_t n() const { return game_->n(); }
  std::uint32_t k() const { return game_->k(); }

  bool query(std::uint32_t j, std::uint32_t i) {
    ++counter_;
    return game_->bit(j, i);  // bit() rejects out-of-triangle access
  }

  void charge(std::uint64_t amount) { counter_ += amount; }

  void reset() { counter_ = 0; }

  std::uint64_t count() const { return counter_; }

  class Superposition {
   public:
    explicit Superposition(CountingOracle& oracle) : oracle_(oracle) {
      ++oracle_.superposition_depth_;
    }
    ~Superposition() { --oracle_.superposition_depth_; }
    Superposition(const Superposition&) = delete;
    Superposition& operator=(const Superposition&) = delete;

   private:
    CountingOracle& oracle_;
  };

  const Game& superposed() const {
    if (superposition_depth_ == 0)
      throw std::logic_error(
          "uncharged game access outside a Superposition scope");
    return *game_;
  }

 private:
  const Game* game_;
  std::uint64_t counter_ = 0;
  int superposition_depth_ = 0;
};

}  // namespace subgames
