#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "tel/syntax.hpp"

namespace tel::datalog {

/// Positive normal rule: one head atom, positive body atoms, inequalities.
struct Rule {
    syntax::Atom head;
    std::vector<syntax::Atom> body;
    std::vector<syntax::Inequality> ineqs;

    bool operator==(const Rule&) const = default;
};

using FactSet = std::set<syntax::Atom>;

/// Throws DomainError if a head or inequality variable is not bound by a
/// positive body atom.
void require_safe(const Rule& rule);

/// Least Herbrand model by semi-naive evaluation. Joins follow textual body
/// order; an inequality is tested as soon as both of its sides are bound.
FactSet least_model(std::span<const Rule> rules);

/// Reference evaluation: apply every rule to the whole model until nothing
/// changes. Same contract as least_model.
FactSet naive_fixpoint(std::span<const Rule> rules);

std::string to_string(const Rule& rule);

/// One atom per line, sorted.
std::string to_string(const FactSet& facts);

} // namespace tel::datalog
