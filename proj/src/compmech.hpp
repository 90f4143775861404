#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace qc {

// Probabilities of all d^w outcome words of length w; index is built with the
// leftmost (earliest) symbol most significant.
struct WordDistribution {
    long d = 0;
    long w = 0;
    VecR p;
    std::vector<std::pair<std::string, std::string>> metadata;  // ordered
};

long word_count(long d, long w);

void serialize_words(const WordDistribution& wd, std::ostream& os);
WordDistribution parse_words(std::istream& is);

// Length-L past conditionals extracted from a length-2L word table.  Pasts
// with marginal probability below p_floor (or exactly zero) are dropped and
// the rest renormalized; dropped_mass records what was removed.
struct ConditionalFamily {
    long d = 0;
    long L = 0;
    std::vector<long> pasts;   // retained past word indices, ascending
    VecR past_p;               // renormalized marginals, aligned with pasts
    MatR cond;                 // row: retained past, col: future word of length L
    double dropped_mass = 0.0;
};

ConditionalFamily conditionals(const WordDistribution& wd, double p_floor);

// Unifilar machine over causal states: emission(j,r) = P(r | state j) and
// successor(j,r) the follow-state (-1 where the emission vanishes).
struct EpsilonMachine {
    long d = 0;
    long L = 0;
    long n_states = 0;
    std::vector<std::vector<long>> state_pasts;  // retained-past positions per state
    MatR emission;
    std::vector<std::vector<long>> successor;
    VecR stationary;             // state weights, sums to 1
    double lost_transition_mass = 0.0;  // emission weight dropped at missing suffixes
    double max_intra_state_tv = 0.0;    // chaining diagnostic from the merge step
};

// Cluster pasts whose future conditionals agree within merge_tol in total
// variation (single linkage), then refine until the partition is unifilar.
EpsilonMachine build_machine(const ConditionalFamily& cf, double merge_tol);

double statistical_complexity(const EpsilonMachine& m);

// Block mutual information I(past;future) of the raw length-2L table, bits.
double excess_entropy(const WordDistribution& wd);

// sum_u P(u) H(next symbol | u), bits per step.
double entropy_rate(const ConditionalFamily& cf);

}  // namespace qc
