#pragma once

namespace qwsearch {

// Compensated (Kahan) accumulator.  Drop-in replacement for a plain
// double sum built with operator+=; tracks the rounding error of every
// addition and feeds it back into the next one.  Used for all large
// oscillatory sums (lattice S-sums, binomial series, norm checks), where
// terms can span many orders of magnitude.
template <typename Value = double>
struct KahanAccumulator {
  Value sum = Value{0};
  Value compensation = Value{0};

  void operator+=(Value value) {
    const Value y = value - compensation;
    const Value t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  Value value() const { return sum; }
  operator Value() const { return sum; }
};

}  // namespace qwsearch
