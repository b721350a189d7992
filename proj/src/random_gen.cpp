#include "veerflow/random_gen.hpp"

#include <algorithm>

namespace vf {

// Valid pieces decompose into strips of quads chained along their positive
// edges, with the leftover negative edges matched arbitrarily subject to
// joint-role compatibility. Sampling that shape directly keeps the
// acceptance rate usable at every size.
IndividualFlowGraph random_individual(Rng& rng, int quads, int max_tries) {
    require(quads >= 1, "generator-error", "need at least one quad");
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        IndividualFlowGraph g;
        g.surf = QuadSurface::from_polygons(std::vector<int>(quads, 4));
        int ns = g.surf.slot_count();
        g.sign_slot.assign(ns, Sign::Pos);
        g.dir_along.assign(ns, 0);

        // per-quad data: role phase (corner 0 inward or outward) and which
        // positive slot the strip enters through
        std::vector<int> phase(quads), entry(quads);
        for (int q = 0; q < quads; ++q) {
            phase[q] = rng.coin();
            entry[q] = rng.coin() ? 0 : 2;
        }
        // signs: slots 0,2 positive; 1,3 negative
        for (int q = 0; q < quads; ++q)
            for (int i : {1, 3}) g.sign_slot[g.surf.slot(q, i)] = Sign::Neg;
        // directions from roles: corner k of quad q is inward iff (k+phase)%2==0
        auto corner_in = [&](int q, int k) { return (k + phase[q]) % 2 == 0; };
        for (int q = 0; q < quads; ++q)
            for (int i = 0; i < 4; ++i)
                g.dir_along[g.surf.slot(q, i)] = corner_in(q, i) ? 1 : 0;
        auto pair_compat = [&](int sa, int sb) {
            // identify tails to tails when the tail corners share a role
            bool ina = g.dir_along[sa] != 0, inb = g.dir_along[sb] != 0;
            g.surf.pair_slots(sa, sb, ina != inb);
        };

        // random strip partition: cyclic chains through positive slots
        std::vector<int> order(quads);
        for (int q = 0; q < quads; ++q) order[q] = q;
        rng.shuffle(order);
        for (int at = 0; at < quads;) {
            int len = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(quads - at)));
            for (int k = 0; k < len; ++k) {
                int a = order[at + k];
                int b = order[at + (k + 1) % len];
                int exit_slot = entry[a] == 0 ? 2 : 0;
                if (len == 1) {
                    pair_compat(g.surf.slot(a, 0), g.surf.slot(a, 2));
                    break;
                }
                pair_compat(g.surf.slot(a, exit_slot), g.surf.slot(b, entry[b]));
            }
            at += len;
        }
        // negative slots: random matching
        std::vector<int> negs;
        for (int q = 0; q < quads; ++q)
            for (int i : {1, 3}) negs.push_back(g.surf.slot(q, i));
        rng.shuffle(negs);
        for (size_t i = 0; i < negs.size(); i += 2) pair_compat(negs[i], negs[i + 1]);

        int nc;
        g.surf.component_of(&nc);
        if (nc != 1) continue;
        if (!validate_individual(g).ok()) continue;
        return g;
    }
    fail("generator-error", "could not sample a valid flow graph of this size");
}

TotalFlowGraph random_total(Rng& rng, int max_quads, int max_pieces, int max_tries) {
    require(max_quads >= 1 && max_quads <= 20 && max_pieces >= 1, "generator-error",
            "size bounds: at most 20 quads");
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        int npieces = rng.range(1, max_pieces);
        TotalFlowGraph t;
        int budget = max_quads;
        bool bad = false;
        for (int p = 0; p < npieces; ++p) {
            int remaining_pieces = npieces - p - 1;
            int hi = budget - remaining_pieces;
            if (hi < 1) { bad = true; break; }
            int q = rng.range(1, std::min(hi, 6));
            budget -= q;
            try {
                t.pieces.push_back(random_individual(rng, q, 500));
            } catch (const Error&) {
                bad = true;
                break;
            }
        }
        if (bad) continue;
        std::vector<JointRef> ins, outs;
        for (size_t p = 0; p < t.pieces.size(); ++p) {
            int nv;
            auto vc = t.pieces[p].surf.vertex_class(&nv);
            auto role = joint_roles(t.pieces[p], vc, nv);
            for (int v = 0; v < nv; ++v)
                (role[v] == -1 ? ins : outs).push_back({static_cast<int>(p), v});
        }
        if (ins.size() != outs.size()) continue;
        rng.shuffle(outs);
        for (size_t i = 0; i < ins.size(); ++i) t.matching.push_back({ins[i], outs[i]});
        if (!validate_total(t).ok()) continue;
        if (!is_strongly_connected(t)) continue;
        return t;
    }
    fail("generator-error", "could not sample a strongly connected total flow graph");
}

}  // namespace vf
