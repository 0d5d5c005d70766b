#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "krein/extension_solver.hpp"

namespace krein {

enum class ModelKind { ScalarZero, DiagPair, RandomHermitian, LatticeLaplacianDelta, FromFile };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
  ModelKind kind = ModelKind::ScalarZero;
  Index n = 0;             // randomHermitian, latticeLaplacianDelta
  Index k = 1;             // randomHermitian, diagPair (1 or 2)
  std::uint64_t seed = 42; // randomHermitian
  double half_width = 20.0; // lattice box [-L, L]
  double spacing = 0.0;     // lattice h; when positive it fixes n = 2L/h - 1
  double site = 0.0;        // lattice interaction point x0
  std::string path;         // fromFile
};

struct Model {
  ModelSpec spec;
  BaseOperator op;
  TraceMap trace;
  std::optional<Matrix> theta; // only from files that carry a Theta block
  double spacing = 0.0;        // lattice only
  Index site_index = -1;       // lattice only
};

Model build_model(const ModelSpec &spec);

// Complex Gaussian entries, (X + X^*)/2.
Matrix random_hermitian(Index n, std::mt19937_64 &rng);
Matrix random_complex(Index rows, Index cols, std::mt19937_64 &rng);

// Bound-state energy -alpha^2/4 of -d^2/dx^2 - alpha delta_0 on the line.
double continuum_delta_reference(double alpha);

// Theta (1 x 1) whose extension equals A + coupling tau^* tau, found by matching the
// Krein resolvent to the target resolvent at a probe point and confirmed at a second one.
ExtensionSpec calibrate_theta_for_rank_one(const KreinField &field, double coupling);

// Lattice delta of strength alpha: target A - (alpha/h) e_x0 e_x0^*.
ExtensionSpec calibrate_theta_for_coupling(const Model &lattice, const KreinField &field, double alpha);

// Text model file: versioned header, dimensions, row-major complex entries as
// "re im" pairs, a trace block and an optional theta block.
void write_model(std::ostream &os, const BaseOperator &op, const TraceMap &trace,
                 const std::optional<Matrix> &theta = std::nullopt);
Model read_model(std::istream &is);

void save_model(const std::string &path, const Model &model);
Model load_model(const std::string &path);

} // namespace krein
