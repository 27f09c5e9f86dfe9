#pragma once

#include "qwsearch/types.hpp"

namespace qwsearch::solver {

// b^λ(φ) = sin(λ−φ)/(1−cos(λ−φ)), computed as cot((λ−φ)/2) for stability.
// Throws PoleAtEigenphase when λ coincides with φ (mod 2π).
double b_coefficient(double lambda, double phi);

// Λ^λ = Σ_φ b^λ(φ)·G_φ over the model's phase groups (Hermitian).
Eigen::MatrixXcd build_lambda_matrix(const SpectralModel& model, double lambda);

// Smallest λ in (0, φ_min) with det(Λ^λ) = 0, located by sign-change
// bracketing of the regularized g(λ) = λ^|M|·det(Λ^λ) on a logarithmic
// probe grid (512 probes from 1e-6·φ_min, densified ×8 and extended
// downward on failure), then bisected to relative tolerance 1e-12.
// With several sign changes the smallest root is returned and the count
// reported in the result.  Throws NoRootInInterval when bracketing fails.
FindLambdaResult find_lambda(const SpectralModel& model);

// Laurent coefficients A..E of the small-λ expansion
// A/λ³ + B/λ² + C/λ + D + E·λ of det(Λ^λ) for |M| = 2/3, contracted over
// ordered phase pairs/triples of the G blocks.  Throws WrongCardinality.
SeriesCoefficients series_coefficients_m2(const SpectralModel& model);
SeriesCoefficients series_coefficients_m3(const SpectralModel& model);

// Smallest positive root of A + Bλ + Cλ² + Dλ³ + Eλ⁴ = 0 (the truncated
// expansion multiplied by λ³).  Throws NoPositiveSeriesRoot when the
// truncated polynomial has none — this happens structurally for the
// |M| = 3 coefficients on both vertex-transitive families, where every
// odd-order coefficient vanishes (see series tests).
double series_root(const SeriesCoefficients& coefficients);

// Null vector, normalization, overlap and derived quantities at the root.
LambdaSolution solve(const SpectralModel& model, const FindLambdaResult& root);

// find_lambda + solve.
LambdaSolution analyze(const SpectralModel& model);

// p(t) = p_succ·sin²(λt).
double model_probability(const LambdaSolution& solution, long long t);

}  // namespace qwsearch::solver
