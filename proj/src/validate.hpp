#pragma once

#include <string>
#include <vector>

#include "pipeline.hpp"

namespace qc {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Hidden-Markov presentation of a process: emission(j,r) with successor
// states; used to generate exact word tables for analytically known cases.
struct HmmProcess {
    MatR emission;
    std::vector<std::vector<long>> successor;
    VecR stationary;
};

HmmProcess golden_mean_process(double p = 0.5);
HmmProcess period2_process();
HmmProcess fair_coin_process();

VecR hmm_stationary(const MatR& emission, const std::vector<std::vector<long>>& successor);
WordDistribution hmm_words(const HmmProcess& proc, long w);

// P(future word of length `horizon` | state): n_states x d^horizon.
MatR future_table(const EpsilonMachine& m, long horizon);

// Quantum memory from the explicitly constructed finite-horizon memory
// states; approaches the Gram fixed-point value as the horizon grows and is
// exact once the horizon covers the machine's correlation structure.
double explicit_quantum_memory(const EpsilonMachine& m, long horizon);

// Exact-diagonalization reference for a small point, computed without the
// MPS/MPO machinery.
struct DenseReference {
    double energy = 0;
    VecR words;
    double s_half = 0;
    MeasureSet measures;
};

DenseReference dense_reference(const PointSpec& spec);

// The analysis half of run_point on an already-solved ground state.
WordDistribution point_words(const PointSpec& spec, const MpsState& canonical_state);

std::vector<Check> run_validation(bool quick);

}  // namespace qc
