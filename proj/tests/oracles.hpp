#pragma once

// Reference values frozen from an independent prototype (separate language
// and linear-algebra stack) before this implementation was written.  Tests
// compare against these constants; they are inputs, not regression snapshots.

namespace oracle {

// Hypercube n=6, marked {0, 7}: smallest positive root of det(Λ^λ).
// The dense 384×384 diagonalization agreed with this to 1.2e-14.
inline constexpr double kHyper6Pair07Lambda = 0.22955489205574814;

// Hypercube n=6, marked {0, 1, 2}: root (dense agreement 4.4e-15).
inline constexpr double kHyper6Triple012Lambda = 0.24634827;

// Hypercube n=8, marked {3, 77, 145}: root.
inline constexpr double kHyper8Triple377145Lambda = 0.14184298;

// Lattice 4×4, marked {(0,0),(2,2)} (antipodal): the root is exactly π/6.
inline constexpr double kLattice4AntipodalLambda = 0.5235987755982925;

// Lattice 8×8, marked {(0,0),(1,0)}: root and the biquadratic series root
// √(−C/E); they differ by 2.8e-2 relative at this size.
inline constexpr double kLattice8AdjacentLambda = 0.16981128;
inline constexpr double kLattice8AdjacentSeriesLambda = 0.17460832;

// Lattice 8×8, marked {(0,0),(1,0)}: surviving series coefficients; the
// closed forms are C = −8·S2/N² and E = 4·S2(S1−S2)/N².
inline constexpr double kLattice8AdjacentC = -0.0615234375;
inline constexpr double kLattice8AdjacentE = 2.0179515165441178;

// Hypercube n=14, λ·√N for marked pairs {0, v} by Hamming weight of v.
inline constexpr double kHyper14LambdaSqrtNWeight14 = 1.912715;
inline constexpr double kHyper14LambdaSqrtNWeight7 = 1.911983;
inline constexpr double kHyper14LambdaSqrtNWeight1 = 1.833837;

// Hypercube n=20, marked {0, 2^20−1}: λ·√N.
inline constexpr double kHyper20LambdaSqrtN = 1.942677;

// Lattice momentum sums S1 = Σ 1/(1 − cos θ).
inline constexpr double kS1Side2 = 2.5;  // exact three-term hand sum
inline constexpr double kS1Side64 = 11643.540306;
inline constexpr double kS1Side256 = 244136.696250;
inline constexpr double kS1Side1024 = 4831601.674616;

// c_estimate = S1/(N ln N) along the doubling sequence.
inline constexpr double kC64 = 0.341758;
inline constexpr double kC128 = 0.338410;
inline constexpr double kC256 = 0.335898;
inline constexpr double kC512 = 0.333944;
inline constexpr double kC1024 = 0.332381;

// Fubini (ordered Bell) numbers a_0..a_9, exact integers.
inline constexpr double kFubini[10] = {1,    1,     3,     13,     75,
                                       541,  4683,  47293, 545835, 7087261};

// Lattice 16×16, marked {(0,0),(8,8)}: solver λ and p_succ.
inline constexpr double kLattice16AntipodalLambda = 0.09382;
inline constexpr double kLattice16AntipodalPsucc = 0.26990;

// Lattice √N=256 solver roots for the two marked-pair placements
// {(0,0),(1,0)} and {(0,0),(128,128)}.
inline constexpr double kLattice256AdjacentLambda = 3.066780e-3;
inline constexpr double kLattice256AntipodalLambda = 4.162563e-3;

}  // namespace oracle
