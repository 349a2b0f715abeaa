#include "tel/semantics/qht.hpp"

#include <algorithm>

#include "tel/error.hpp"

namespace tel::semantics {

namespace {

using syntax::Formula;
using Op = Formula::Op;

class Evaluator {
public:
    explicit Evaluator(const HTPair& pair) : pair_(pair), k_(pair.there.prefix_length()), l_(pair.there.loop_length()) {
        if (pair.here.prefix_length() != k_ || pair.here.loop_length() != l_)
            throw DomainError("here and there traces differ in shape");
    }

    bool eval(const Formula& phi, World w, std::size_t i) const {
        i = pair_.there.fold(i);
        switch (phi.op) {
        case Op::atom: {
            if (!phi.atom.is_ground()) throw DomainError("non-ground atom " + syntax::to_string(phi.atom));
            const auto& trace = w == World::here ? pair_.here : pair_.there;
            return trace.state(i).contains(phi.atom);
        }
        case Op::bottom: return false;
        case Op::conj: return eval(*phi.left, w, i) && eval(*phi.right, w, i);
        case Op::disj: return eval(*phi.left, w, i) || eval(*phi.right, w, i);
        case Op::impl: {
            auto holds = [&](World v) { return !eval(*phi.left, v, i) || eval(*phi.right, v, i); };
            return holds(World::there) && (w == World::there || holds(World::here));
        }
        case Op::next: return eval(*phi.left, w, i + 1);
        case Op::always:
            for (std::size_t j = i; j < std::max(i, k_) + l_; ++j)
                if (!eval(*phi.left, w, j)) return false;
            return true;
        case Op::eventually:
            for (std::size_t j = i; j < std::max(i, k_) + l_; ++j)
                if (eval(*phi.left, w, j)) return true;
            return false;
        case Op::equal:
        case Op::not_equal:
            if (phi.lhs.is_variable() || phi.rhs.is_variable()) throw DomainError("non-ground equality");
            return (phi.lhs.name == phi.rhs.name) == (phi.op == Op::equal);
        case Op::forall:
        case Op::exists: throw DomainError("quantifier in a formula that should be ground");
        }
        return false;
    }

private:
    const HTPair& pair_;
    std::size_t k_;
    std::size_t l_;
};

} // namespace

bool qht_eval(const syntax::Formula& phi, const HTPair& pair, World world, std::size_t i) {
    return Evaluator(pair).eval(phi, world, i);
}

bool ltl_holds(const syntax::Formula& phi, const LassoTrace& trace, std::size_t i) {
    return qht_eval(phi, HTPair{trace, trace}, World::there, i);
}

} // namespace tel::semantics
