#pragma once

#include <string>

#include "symfix/epw.hpp"
#include "symfix/serialize.hpp"

namespace symfix::cli {

/// A structured-family instance as consumed by the command-line tool: the
/// self-adjoint operator u (spectral or matrix form), the symmetric matrix
/// of phi, and the node-search settings bundled with the instance.
struct Instance {
  epw::SelfAdjointOp u;
  epw::SymmetricPhi phi;
  epw::NodeSearchConfig search;
};

/// Document shape (all rationals are strings like "3/2" or "-1"):
/// {
///   "format": "symfix-instance",
///   "version": 1,
///   "u": {"kind": "spectral",
///         "eigenvalues": ["1", ...6...],
///         "eigenvector_columns": [[...], ...]}   // 6x6, columns = eigenvectors
///      | {"kind": "matrix", "matrix": [[...], ...]},
///   "phi": [[...], ...],                          // symmetric invertible 4x4
///   "node_search": {"seed": 42, "starts": 600, "max_iterations": 120,
///                   "residual_tol": 1e-10, "dedupe_tol": 1e-6,
///                   "max_charts": 4, "branch_samples": 12, "threads": 4}
/// }
/// "node_search" and each of its keys are optional.
Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

/// Read and parse an instance file; error messages carry the path.
Instance load_instance(const std::string& path);

/// The bundled reference instance (identical to the library's built-in one)
/// with the default search settings.
Instance bundled_instance();

epw::InvariantLagrangian lagrangian_of(const Instance& inst);

}  // namespace symfix::cli
