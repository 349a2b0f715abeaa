#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tel/semantics/program.hpp"
#include "tel/semantics/trace.hpp"

namespace tel::semantics::detail {

using AtomId = std::uint32_t;
/// Sorted, duplicate free.
using IdState = std::vector<AtomId>;

class AtomTable {
public:
    AtomId intern(const syntax::Atom& atom);
    /// Returns false if some atom is unknown.
    bool encode(const State& state, IdState& out) const;
    State decode(const IdState& state) const;
    const syntax::Atom& atom(AtomId id) const { return atoms_[id]; }
    std::size_t size() const noexcept { return atoms_.size(); }
    const AtomId* find(const syntax::Atom& atom) const;

private:
    std::map<syntax::Atom, AtomId> ids_;
    std::vector<syntax::Atom> atoms_;
};

struct IdRule {
    std::vector<AtomId> pos, neg, head;
};

struct IdTimedRule {
    IdRule now;
    IdRule next;
    bool present_only = true;
    std::size_t start = 0;
    bool always = false;

    bool applies_at(std::size_t t) const noexcept { return t == start || (always && t >= start); }
};

/// Shared node counter; throws ResourceLimit once exhausted.
class Budget {
public:
    explicit Budget(std::size_t limit) : left_(static_cast<std::int64_t>(limit)) {}
    void spend(std::size_t n = 1);

private:
    std::atomic<std::int64_t> left_;
};

/// Dense membership flags over the atom table.
using Mask = std::vector<char>;

Mask to_mask(const IdState& state, std::size_t atoms);

struct CompiledProgram {
    AtomTable atoms;
    std::vector<IdTimedRule> rules;
    std::size_t horizon = 0;

    explicit CompiledProgram(const GroundProgram& program);

    /// Layer classes: from saturation() on, every layer sees the same rules.
    std::size_t saturation() const noexcept { return horizon + 2; }

    /// prev may be null at layer 0.
    std::vector<IdRule> slice(std::size_t layer, const Mask* prev) const;
};

bool is_model_ids(const std::vector<IdRule>& rules, const Mask& x);
bool is_stable_ids(const std::vector<IdRule>& rules, const IdState& x, std::size_t atoms);

/// Every stable model, sorted. Atoms with allowed[a] == 0 are kept false.
std::vector<IdState> stable_models_ids(const std::vector<IdRule>& rules, std::size_t atoms, const Mask* allowed,
                                       Budget* budget);

/// Least model of single-head positive rules.
IdState least_model_ids(const std::vector<IdRule>& rules, std::size_t atoms);

} // namespace tel::semantics::detail
