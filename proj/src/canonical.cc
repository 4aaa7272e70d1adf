#include <phl/canonical.hh>

#include <algorithm>
#include <numeric>

using std::size_t;
using std::vector;

namespace phl
{
    namespace
    {
        // Writes the tables of m relabelled by perm, aborting as soon as the
        // output exceeds `best` (when given). Returns true when the result is
        // strictly smaller than best, or best is empty.
        auto encode(const PartialStructure & m, const SortMap & perm, const CanonicalKey * best, CanonicalKey & out) -> bool
        {
            const auto & sig = m.signature();
            out.clear();
            for (SortId s = 0; s < sig.sorts().size(); ++s)
                out.push_back(static_cast<std::int32_t>(m.carrier_size(s)));

            vector<Element> cells;
            bool less = best == nullptr;
            auto emit = [&](std::int32_t v) -> bool {
                if (! less) {
                    auto pos = out.size();
                    if (v < (*best)[pos])
                        less = true;
                    else if (v > (*best)[pos])
                        return false;
                }
                out.push_back(v);
                return true;
            };

            auto relabel_index = [&](const vector<SortId> & sorts, size_t index) {
                // old mixed-radix index to new mixed-radix index
                vector<size_t> digits(sorts.size());
                for (size_t i = sorts.size(); i-- > 0;) {
                    auto n = m.carrier_size(sorts[i]);
                    digits[i] = index % n;
                    index /= n;
                }
                size_t out_index = 0;
                for (size_t i = 0; i < sorts.size(); ++i)
                    out_index = out_index * m.carrier_size(sorts[i]) + static_cast<size_t>(perm[sorts[i]][digits[i]]);
                return out_index;
            };

            for (FunctionId f = 0; f < sig.functions().size(); ++f) {
                const auto & fs = sig.functions()[f];
                const auto & table = m.function_table(f);
                cells.assign(table.size(), undefined);
                for (size_t i = 0; i < table.size(); ++i)
                    cells[relabel_index(fs.args, i)] = table[i] == undefined ? undefined : perm[fs.result][table[i]];
                for (auto v : cells)
                    if (! emit(v))
                        return false;
            }
            for (RelationId r = 0; r < sig.relations().size(); ++r) {
                const auto & rs = sig.relations()[r];
                const auto & table = m.relation_table(r);
                cells.assign(table.size(), 0);
                for (size_t i = 0; i < table.size(); ++i)
                    cells[relabel_index(rs.args, i)] = table[i];
                for (auto v : cells)
                    if (! emit(v))
                        return false;
            }
            return less;
        }
    }

    auto canonical_form(const PartialStructure & m) -> CanonicalForm
    {
        const auto n_sorts = m.signature().sorts().size();
        SortMap perm(n_sorts);
        for (SortId s = 0; s < n_sorts; ++s) {
            perm[s].resize(m.carrier_size(s));
            std::iota(perm[s].begin(), perm[s].end(), 0);
        }

        CanonicalForm best;
        CanonicalKey scratch;
        encode(m, perm, nullptr, best.key);
        best.perm = perm;

        // odometer over the per-sort permutations, in next_permutation order
        while (true) {
            SortId s = 0;
            while (s < n_sorts && ! std::next_permutation(perm[s].begin(), perm[s].end()))
                ++s; // next_permutation wrapped this sort back to identity
            if (s == n_sorts)
                break;
            if (encode(m, perm, &best.key, scratch)) {
                best.key = scratch;
                best.perm = perm;
            }
        }
        return best;
    }

    auto canonical_structure(const PartialStructure & m) -> PartialStructure
    {
        auto form = canonical_form(m);
        auto permuted = permute(m, form.perm);
        PartialStructure out = PartialStructure::with_sizes(m.signature_ptr(), m.carrier_sizes());
        const auto & sig = m.signature();
        for (FunctionId f = 0; f < sig.functions().size(); ++f)
            out.function_table(f) = permuted.function_table(f);
        for (RelationId r = 0; r < sig.relations().size(); ++r)
            out.relation_table(r) = permuted.relation_table(r);
        out.name = m.name;
        return out;
    }

    auto isomorphic(const PartialStructure & a, const PartialStructure & b) -> bool
    {
        if (a.carrier_sizes() != b.carrier_sizes())
            return false;
        return canonical_form(a).key == canonical_form(b).key;
    }
}
