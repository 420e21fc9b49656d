#pragma once

namespace conicstab {

// Every numerical threshold used by the library. One instance is threaded
// through all modules so a caller can tighten or relax the whole pipeline
// from a single place.
struct ToleranceProfile {
  // linalg, relative to the Frobenius norm of the input
  double hermitian_tol = 1e-10;
  double eig_tol = 1e-10;
  double pivot_tol = 1e-12;
  double psd_tol = 1e-10;

  // polynomial canonicalization (absolute)
  double coeff_zero_tol = 1e-12;

  // univariate engines
  double root_tol = 1e-9;          // residual bound for computed roots
  double root_cluster_tol = 1e-2;  // widest (relative) cluster of overlapping inclusion discs merged into one multiple root
  double root_merge_tol = 1e-7;    // alternation tests
  double stability_tol = 1e-9;     // Im(r) <= tol * max(1, |r|)
  double real_root_tol = 1e-7;     // |Im(r)| <= tol * max(1, |r|)
  double sign_tol = 1e-9;          // Wronskian sign checks, relative

  // cones and sampling
  double interior_tol = 0.0;
  double interior_delta = 1e-3;    // shift that keeps samples off the boundary

  // witnesses
  double residual_tol = 1e-6;
  // Im(witness) must clear the cone boundary by this much, relative to
  // max(1, |Re z|_inf, |Im z|_inf)
  double witness_margin = 1e-6;
};

}  // namespace conicstab
