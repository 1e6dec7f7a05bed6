#include "isotoda/tiling.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace isotoda::tiling {

namespace {

std::string face_key(const FaceClass& f) {
    std::string key;
    key.push_back(static_cast<char>(f.k));
    for (const auto& block : f.blocks) {
        for (int e : block) key.push_back(static_cast<char>(e));
        key.push_back(0);
    }
    return key;
}

// All unordered partitions of [n] via restricted-growth strings; blocks come
// out ordered by minimal element, each partition exactly once.
template <typename Visit>
void enumerate_partitions_rec(int n, int pos, std::vector<int>& rgs, int maxv,
                              const Visit& visit) {
    if (pos == n) {
        std::vector<std::vector<int>> blocks(maxv + 1);
        for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
        visit(blocks);
        return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
        rgs[pos] = v;
        enumerate_partitions_rec(n, pos + 1, rgs, std::max(maxv, v), visit);
    }
}

template <typename Visit>
void enumerate_partitions(int n, const Visit& visit) {
    std::vector<int> rgs(n, 0);
    enumerate_partitions_rec(n, 1, rgs, 0, visit);
}

} // namespace

int128 stirling2(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw validation_error("stirling2: arguments out of range");
    if (n == 0) return k == 0 ? 1 : 0;
    std::vector<int128> row(n + 1, 0);
    row[0] = 1;  // S(0,0)
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j)
            row[j] = int128(j) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[k];
}

FaceClass canonical_face(int n, int k, std::vector<std::vector<int>> blocks) {
    for (auto& block : blocks) std::sort(block.begin(), block.end());
    k = ((k % n) + n) % n;

    int best_k = k;
    std::vector<std::vector<int>> best = blocks;
    int cur_k = k;
    std::vector<std::vector<int>> cur = blocks;
    const int j1 = static_cast<int>(blocks.size());
    for (int r = 1; r < j1; ++r) {
        cur_k = (cur_k + static_cast<int>(cur.front().size())) % n;
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur_k < best_k || (cur_k == best_k && cur < best)) {
            best_k = cur_k;
            best = cur;
        }
    }

    FaceClass f;
    f.k = best_k;
    f.blocks = std::move(best);
    f.dim = n - static_cast<int>(blocks.size());
    return f;
}

WonderfulComplex build_complex(int n, int cap) {
    if (n < 3) throw validation_error("build_complex: n must be at least 3");
    if (n > cap) throw cap_error("build_complex: n exceeds the enumeration cap");

    WonderfulComplex c;
    c.n = n;

    std::unordered_map<std::string, int> index;
    std::vector<FaceClass> faces;

    enumerate_partitions(n, [&](const std::vector<std::vector<int>>& blocks) {
        const int m = static_cast<int>(blocks.size());
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        do {
            std::vector<std::vector<int>> arranged(m);
            for (int i = 0; i < m; ++i) arranged[i] = blocks[order[i]];
            for (int k = 0; k < n; ++k) {
                FaceClass f = canonical_face(n, k, arranged);
                const std::string key = face_key(f);
                if (!index.contains(key)) {
                    index.emplace(key, static_cast<int>(faces.size()));
                    faces.push_back(std::move(f));
                }
            }
        } while (std::next_permutation(order.begin(), order.end()));
    });

    // Deterministic face order: top cells first, then by (k, blocks).
    std::vector<int> perm(faces.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
        if (faces[x].dim != faces[y].dim) return faces[x].dim > faces[y].dim;
        if (faces[x].k != faces[y].k) return faces[x].k < faces[y].k;
        return faces[x].blocks < faces[y].blocks;
    });
    c.faces.resize(faces.size());
    std::vector<int> where(faces.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        c.faces[i] = std::move(faces[perm[i]]);
        where[perm[i]] = static_cast<int>(i);
    }
    index.clear();
    for (size_t i = 0; i < c.faces.size(); ++i)
        index.emplace(face_key(c.faces[i]), static_cast<int>(i));

    // Covering relation: a facet of a face splits one block into an ordered
    // pair of nonempty parts.
    c.covers.assign(c.faces.size(), {});
    for (size_t fi = 0; fi < c.faces.size(); ++fi) {
        const FaceClass& f = c.faces[fi];
        std::vector<int> children;
        for (size_t bi = 0; bi < f.blocks.size(); ++bi) {
            const auto& block = f.blocks[bi];
            const int sz = static_cast<int>(block.size());
            if (sz < 2) continue;
            for (unsigned mask = 1; mask + 1 < (1u << sz); ++mask) {
                std::vector<int> first, second;
                for (int e = 0; e < sz; ++e)
                    ((mask >> e) & 1u ? first : second).push_back(block[e]);
                std::vector<std::vector<int>> split;
                split.reserve(f.blocks.size() + 1);
                for (size_t t = 0; t < f.blocks.size(); ++t) {
                    if (t == bi) {
                        split.push_back(first);
                        split.push_back(second);
                    } else {
                        split.push_back(f.blocks[t]);
                    }
                }
                const FaceClass child = canonical_face(n, f.k, std::move(split));
                children.push_back(index.at(face_key(child)));
            }
        }
        std::sort(children.begin(), children.end());
        children.erase(std::unique(children.begin(), children.end()),
                       children.end());
        c.covers[fi] = std::move(children);
    }

    // Containing maximal cells by upward closure (faces are sorted with
    // parents before children, so one forward pass suffices).
    c.max_cells_of.assign(c.faces.size(), {});
    for (size_t fi = 0; fi < c.faces.size(); ++fi) {
        if (c.faces[fi].dim == n - 1) c.max_cells_of[fi] = {c.faces[fi].k};
    }
    for (size_t fi = 0; fi < c.faces.size(); ++fi) {
        for (int child : c.covers[fi]) {
            auto& dst = c.max_cells_of[child];
            std::vector<int> merged;
            std::set_union(dst.begin(), dst.end(), c.max_cells_of[fi].begin(),
                           c.max_cells_of[fi].end(), std::back_inserter(merged));
            dst = std::move(merged);
        }
    }

    return c;
}

std::vector<std::int64_t> WonderfulComplex::f_by_dim() const {
    std::vector<std::int64_t> counts(n, 0);
    for (const FaceClass& f : faces) ++counts[f.dim];
    return counts;
}

int WonderfulComplex::face_index(const FaceClass& canonical) const {
    for (size_t i = 0; i < faces.size(); ++i) {
        if (faces[i].k == canonical.k && faces[i].blocks == canonical.blocks)
            return static_cast<int>(i);
    }
    return -1;
}

SimplicialStats dual_poset_stats(int n) {
    if (n < 3 || n > 20)
        throw validation_error("dual_poset_stats: n must be in [3, 20]");

    SimplicialStats st;
    st.n = n;

    st.f.assign(n + 1, 0);
    st.f[0] = 1;  // f_{-1}
    for (int k = 1; k <= n; ++k)
        st.f[k] = int128(n) * factorial(k - 1) * stirling2(n, k);

    // h from the generating identity
    //   sum_j h_j t^{n-j} = sum_j f_{j-1} (t-1)^{n-j}.
    st.h.assign(n + 1, 0);
    for (int l = 0; l <= n; ++l) {
        int128 acc = 0;
        for (int j = 0; j <= l; ++j) {
            const int128 term = binomial(n - j, l - j) * st.f[j];
            acc += ((l - j) % 2 == 0) ? term : -term;
        }
        st.h[l] = acc;
    }

    // Reduced Betti numbers of the (n-1)-torus.
    st.betti_tilde.assign(n, 0);
    for (int j = 1; j <= n - 1; ++j) st.betti_tilde[j] = binomial(n - 1, j);

    auto betti = [&](int j) -> int128 {
        return (j >= 0 && j < n) ? st.betti_tilde[j] : 0;
    };

    st.h_prime.assign(n + 1, 0);
    for (int j = 0; j <= n; ++j) {
        int128 acc = 0;
        for (int s = 1; s <= j - 1; ++s) {
            const int128 term = betti(s - 1);
            acc += ((j - s - 1) % 2 == 0) ? term : -term;
        }
        st.h_prime[j] = st.h[j] + binomial(n, j) * acc;
    }

    st.h_pp.assign(n + 1, 0);
    for (int j = 0; j <= n - 1; ++j)
        st.h_pp[j] = st.h_prime[j] - binomial(n, j) * betti(j - 1);
    st.h_pp[n] = st.h_prime[n];

    return st;
}

CrystallizationReport verify_crystallization(const WonderfulComplex& c) {
    CrystallizationReport rep;
    const int n = c.n;

    for (const FaceClass& f : c.faces)
        if (f.dim == n - 1) ++rep.dual_vertex_count;
    rep.minimal_vertices = rep.dual_vertex_count == n;
    if (!rep.minimal_vertices)
        rep.violations.push_back("dual vertex count " +
                                 std::to_string(rep.dual_vertex_count) +
                                 " differs from n");

    // Purity: every face below the top dimension is covered by something.
    std::vector<char> has_parent(c.faces.size(), 0);
    for (size_t fi = 0; fi < c.faces.size(); ++fi)
        for (int child : c.covers[fi]) has_parent[child] = 1;
    rep.pure = true;
    for (size_t fi = 0; fi < c.faces.size(); ++fi) {
        if (c.faces[fi].dim < n - 1 && !has_parent[fi]) {
            rep.pure = false;
            rep.violations.push_back("face " + std::to_string(fi) +
                                     " of dim " + std::to_string(c.faces[fi].dim) +
                                     " is maximal below the top dimension");
        }
    }

    // Boolean lower intervals of the dual poset: the faces containing F
    // must biject with the nonempty subsets of the maximal cells around F.
    std::vector<std::vector<int>> parents(c.faces.size());
    for (size_t fi = 0; fi < c.faces.size(); ++fi)
        for (int child : c.covers[fi]) parents[child].push_back(static_cast<int>(fi));

    rep.boolean_intervals = true;
    std::vector<int> visited(c.faces.size(), -1);
    std::vector<int> upset, stack;
    for (size_t fi = 0; fi < c.faces.size(); ++fi) {
        const int codim = n - 1 - c.faces[fi].dim;
        upset.clear();
        stack.assign(1, static_cast<int>(fi));
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            if (visited[cur] == static_cast<int>(fi)) continue;
            visited[cur] = static_cast<int>(fi);
            upset.push_back(cur);
            for (int p : parents[cur]) stack.push_back(p);
        }
        const size_t expected = (size_t{1} << (codim + 1)) - 1;
        bool ok = upset.size() == expected &&
                  c.max_cells_of[fi].size() == static_cast<size_t>(codim + 1);
        if (ok) {
            std::vector<std::vector<int>> cell_sets;
            cell_sets.reserve(upset.size());
            for (int g : upset) {
                const auto& cells = c.max_cells_of[g];
                if (!std::includes(c.max_cells_of[fi].begin(),
                                   c.max_cells_of[fi].end(), cells.begin(),
                                   cells.end())) {
                    ok = false;
                    break;
                }
                cell_sets.push_back(cells);
            }
            if (ok) {
                std::sort(cell_sets.begin(), cell_sets.end());
                ok = std::adjacent_find(cell_sets.begin(), cell_sets.end()) ==
                     cell_sets.end();
            }
        }
        if (!ok) {
            rep.boolean_intervals = false;
            rep.violations.push_back("lower interval at face " +
                                     std::to_string(fi) + " is not Boolean");
            if (rep.violations.size() > 20) break;
        }
    }

    return rep;
}

} // namespace isotoda::tiling
