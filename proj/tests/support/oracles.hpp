#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tel/datalog.hpp"
#include "tel/formula.hpp"
#include "tel/semantics/program.hpp"
#include "tel/semantics/stable.hpp"
#include "tel/semantics/trace.hpp"

namespace tel::oracles {

using Rng = std::mt19937_64;

/// Safe program with variables: <= max_predicates predicates of arity 0..2,
/// <= max_constants constants, <= max_rules statements.
std::string random_safe_program(Rng& rng, std::size_t max_predicates = 3, std::size_t max_constants = 3,
                                std::size_t max_rules = 6);

/// Variable-free program over the first `atoms` of p, q, r, s, t, u.
std::string random_ground_program(Rng& rng, std::size_t atoms, std::size_t max_rules = 5);

/// Safe positive datalog rules over <= predicates predicates and constants c0..
std::vector<datalog::Rule> random_datalog(Rng& rng, std::size_t predicates, std::size_t constants,
                                          std::size_t rules);

std::vector<syntax::Atom> propositions(std::size_t n);

syntax::FormulaPtr random_formula(Rng& rng, const std::vector<syntax::Atom>& atoms, int depth);
semantics::LassoTrace random_trace(Rng& rng, const std::vector<syntax::Atom>& atoms, std::size_t k, std::size_t l);
/// here <= there, same shape.
semantics::HTPair random_ht_pair(Rng& rng, const std::vector<syntax::Atom>& atoms, std::size_t k, std::size_t l);

/// LTL truth by fixpoint labelling of the lasso graph.
bool ltl_oracle(const syntax::Formula& phi, const semantics::LassoTrace& trace, std::size_t i = 0);

/// Reduct minimality by enumerating every subset of x. Throws beyond 20 atoms.
bool brute_stable(const semantics::SliceProgram& program, const semantics::State& x);

/// Equilibrium by definition: T models the program and no H < T of the same
/// lasso shape (prefix unrolled past the program horizon) satisfies it in
/// here-and-there. Throws when T carries more than max_atoms facts.
bool direct_equilibrium(const semantics::GroundProgram& program, const semantics::LassoTrace& trace,
                        std::size_t max_atoms = 18);

/// Every canonical trace with prefix k and loop l over `atoms` passing
/// direct_equilibrium.
std::vector<semantics::LassoTrace> brute_force_tsm(const semantics::GroundProgram& program,
                                                   const std::vector<syntax::Atom>& atoms, std::size_t k,
                                                   std::size_t l);

/// Contents of a file under data/.
std::string read_data(const std::string& name);

/// Text of a trace set as `tel solve` prints it, without the header line.
std::string render_models(const std::vector<semantics::LassoTrace>& traces);

} // namespace tel::oracles
