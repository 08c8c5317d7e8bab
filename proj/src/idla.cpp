#include "lqg/idla.hpp"

#include <stdexcept>

#include "lqg/rng.hpp"

namespace lqg {

IdlaState run_idla(const LiouvilleMeasure& mu, double t, long n_walkers, const DomainMask& domain,
                   std::uint64_t seed) {
    if (mu.grid.n != domain.n) throw std::invalid_argument("measure/domain grid mismatch");
    if (n_walkers < 1) throw std::invalid_argument("need at least one walker");
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (!domain.contains(mu.grid.origin_ix, mu.grid.origin_iy))
        throw std::invalid_argument("origin not inside domain");

    const GridSpec& g = mu.grid;
    IdlaState st;
    st.grid = g;
    st.filled.assign(g.size(), 0.0);
    st.quantum = t / static_cast<double>(n_walkers);
    st.seed = seed;

    const int dx[4] = {-1, 1, 0, 0};
    const int dy[4] = {0, 0, -1, 1};

    for (long wk = 0; wk < n_walkers; ++wk) {
        KeyedRng rng(seed, rng_stream::idla_walker_base + static_cast<std::uint64_t>(wk));
        int ix = g.origin_ix;
        int iy = g.origin_iy;
        double remaining = st.quantum;
        while (true) {
            const std::size_t c = g.index(ix, iy);
            const double room = mu.masses[c] - st.filled[c];
            if (room > 0.0) {
                const double dep = remaining < room ? remaining : room;
                st.filled[c] += dep;
                remaining -= dep;
                if (remaining <= 0.0) break;
            }
            const int dir = static_cast<int>(rng.next_below(4));
            ix += dx[dir];
            iy += dy[dir];
            if (!domain.contains(ix, iy)) {
                st.leaked += remaining;
                break;
            }
        }
        ++st.walkers_done;
    }
    return st;
}

std::vector<std::uint8_t> idla_mask(const IdlaState& state, const LiouvilleMeasure& mu,
                                    double threshold_fraction) {
    if (state.grid.n != mu.grid.n) throw std::invalid_argument("grid mismatch");
    std::vector<std::uint8_t> mask(state.filled.size(), 0);
    for (std::size_t c = 0; c < mask.size(); ++c)
        mask[c] = state.filled[c] >= threshold_fraction * mu.masses[c] ? 1 : 0;
    return mask;
}

IdlaComparison compare_idla_harmonic(const IdlaState& state, const Cluster& cluster,
                                     const LiouvilleMeasure& mu) {
    if (state.grid.n != cluster.grid.n || state.grid.n != mu.grid.n)
        throw std::invalid_argument("grid mismatch");
    const auto occupied = idla_mask(state, mu);
    std::size_t inter = 0, uni = 0;
    double symdiff = 0.0;
    for (std::size_t c = 0; c < occupied.size(); ++c) {
        const bool a = occupied[c] != 0;
        const bool b = cluster.mask[c] != 0;
        if (a && b) ++inter;
        if (a || b) ++uni;
        if (a != b) symdiff += mu.masses[c];
    }
    IdlaComparison cmp;
    cmp.jaccard = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    cmp.symdiff_mass = symdiff;
    return cmp;
}

}  // namespace lqg
