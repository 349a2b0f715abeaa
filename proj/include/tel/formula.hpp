#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tel/syntax.hpp"

namespace tel::syntax {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order temporal formula. Negation and top are derived:
/// not F = F -> bottom, top = not bottom.
struct Formula {
    enum class Op : std::uint8_t {
        atom, bottom, conj, disj, impl, next, always, eventually, forall, exists, equal, not_equal
    };

    Op op = Op::bottom;
    Atom atom;           // atom
    Term lhs, rhs;       // equal, not_equal
    std::string var;     // forall, exists
    FormulaPtr left;     // binary ops; sole operand of unary ops and quantifiers
    FormulaPtr right;

    bool is_ground() const;
};

namespace f {

FormulaPtr atom(Atom a);
FormulaPtr bottom();
FormulaPtr top();
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr impl(FormulaPtr a, FormulaPtr b);
FormulaPtr neg(FormulaPtr a);
FormulaPtr next(FormulaPtr a, std::size_t times = 1);
FormulaPtr always(FormulaPtr a);
FormulaPtr eventually(FormulaPtr a);
FormulaPtr forall(std::string var, FormulaPtr a);
FormulaPtr exists(std::string var, FormulaPtr a);
FormulaPtr equal(Term a, Term b);
FormulaPtr not_equal(Term a, Term b);

/// Folds with conj / disj; empty input gives top / bottom.
FormulaPtr conj_all(const std::vector<FormulaPtr>& parts);
FormulaPtr disj_all(const std::vector<FormulaPtr>& parts);

} // namespace f

bool equal(const Formula& a, const Formula& b);

std::set<std::string> free_variables(const Formula& phi);

/// Replaces free occurrences of the variables bound by mu.
FormulaPtr apply_substitution(const FormulaPtr& phi, const Substitution& mu);

/// The universally closed sentence of a rule, e.g.
/// forall x forall a [](At(x,a) & not o NoAt(x,a) -> o At(x,a)).
FormulaPtr to_formula(const Rule& rule);

std::string to_string(const Formula& phi);

} // namespace tel::syntax
