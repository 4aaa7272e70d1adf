#include <phl/chain.hh>

#include <algorithm>

using std::size_t;
using std::string;
using std::vector;

namespace phl
{
    auto constant_chain(const string & name, TheoryPtr theory, StructurePtr x) -> ChainRecipe
    {
        ChainRecipe c;
        c.name = name;
        c.theory = std::move(theory);
        c.stage = [x](size_t) { return x; };
        c.connect = [x](size_t) { return identity_hom(x); };
        c.fact_stabilization = 0;
        return c;
    }

    namespace
    {
        auto bijective(const Homomorphism & h) -> bool
        {
            for (SortId s = 0; s < h.maps.size(); ++s)
                if (h.source->carrier_size(s) != h.target->carrier_size(s))
                    return false;
            return is_injective(h);
        }
    }

    auto chain_colimit(const ChainRecipe & c, size_t horizon) -> ColimitResult
    {
        if (horizon < 1)
            throw PhlError{"horizon must be positive"};

        vector<Homomorphism> maps;
        for (size_t n = 0; n + 1 < horizon; ++n) {
            auto h = c.connect(n);
            auto check = is_homomorphism(h);
            if (! check.ok)
                throw PhlError{"connecting map " + std::to_string(n) + " of '" + c.name + "' is not a homomorphism: " + check.message};
            maps.push_back(std::move(h));
        }

        // least N from which every observed map is bijective on carriers
        size_t n_stable = maps.size();
        while (n_stable > 0 && bijective(maps[n_stable - 1]))
            --n_stable;

        ColimitResult result;
        if (maps.empty() || n_stable == maps.size()) {
            result.reason = "carriers still change at the horizon " + std::to_string(horizon);
            return result;
        }
        result.carrier_stable_from = n_stable;

        if (! c.fact_stabilization) {
            result.reason = "carriers stabilize at " + std::to_string(n_stable) + " but the chain has no fact-stabilization declaration";
            return result;
        }

        // pull the stage max(N, D) back along the composite bijection
        auto last = std::max(n_stable, *c.fact_stabilization);
        auto base = c.stage(n_stable);
        Homomorphism along = identity_hom(base);
        for (size_t n = n_stable; n < last; ++n) {
            auto h = n < maps.size() ? maps[n] : c.connect(n);
            if (n >= maps.size()) {
                auto check = is_homomorphism(h);
                if (! check.ok)
                    throw PhlError{"connecting map " + std::to_string(n) + " of '" + c.name + "' is not a homomorphism: " + check.message};
                if (! bijective(h)) {
                    result.reason = "carriers change again at stage " + std::to_string(n) + " before the declared fact stabilization";
                    return result;
                }
            }
            along = compose(h, along);
        }
        const auto & top = *along.target;
        const auto & sig = base->signature();

        // inverse of the bijection, per sort
        SortMap inverse(sig.sorts().size());
        for (SortId s = 0; s < sig.sorts().size(); ++s) {
            inverse[s].assign(top.carrier_size(s), 0);
            for (size_t e = 0; e < along.maps[s].size(); ++e)
                inverse[s][along.maps[s][e]] = static_cast<Element>(e);
        }

        auto colimit = std::make_shared<PartialStructure>(permute(top, inverse));
        for (SortId s = 0; s < sig.sorts().size(); ++s)
            if (colimit->labels(s) != base->labels(s)) {
                // keep X_N's labels
                PartialStructure relabelled{base->signature_ptr(), [&] {
                                                vector<vector<string>> carriers;
                                                for (SortId t = 0; t < sig.sorts().size(); ++t)
                                                    carriers.push_back(base->labels(t));
                                                return carriers;
                                            }()};
                for (FunctionId f = 0; f < sig.functions().size(); ++f)
                    relabelled.function_table(f) = colimit->function_table(f);
                for (RelationId r = 0; r < sig.relations().size(); ++r)
                    relabelled.relation_table(r) = colimit->relation_table(r);
                colimit = std::make_shared<PartialStructure>(std::move(relabelled));
                break;
            }
        colimit->name = "colim " + c.name;

        result.stable = true;
        result.colimit = colimit;
        result.reason = "carriers stable from " + std::to_string(n_stable) + ", facts declared stable from " + std::to_string(*c.fact_stabilization);
        return result;
    }
}
