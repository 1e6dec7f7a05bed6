#ifndef ISOTODA_TILING_HPP
#define ISOTODA_TILING_HPP

#include <string>
#include <vector>

#include "isotoda/exact.hpp"

namespace isotoda::tiling {

// Stirling number of the second kind, exact.
int128 stirling2(int n, int k);

// A face class of the permutohedral subdivision of the torus: a cell index
// k in Z/n together with an ordered set partition (B_1,...,B_{j+1}) of [n],
// taken modulo the cyclic rotation (k, (B_1,...,B_{j+1})) ~
// (k + |B_1|, (B_2,...,B_{j+1},B_1)). The stored representative is the
// lexicographically least rotation (k first, then blocks as sorted lists).
// Dimension is n - 1 - j.
struct FaceClass {
    int k = 0;
    std::vector<std::vector<int>> blocks;  // elements 1..n, each block sorted
    int dim = 0;
};

struct WonderfulComplex {
    int n = 0;
    std::vector<FaceClass> faces;
    // covers[i] lists the indices of the codimension-one faces of face i.
    std::vector<std::vector<int>> covers;
    // Maximal cells (by their k index, 0..n-1) containing each face, computed
    // by upward closure through the covering relation.
    std::vector<std::vector<int>> max_cells_of;

    std::vector<std::int64_t> f_by_dim() const;  // counts for dim 0..n-1
    int face_index(const FaceClass& canonical) const;
};

inline constexpr int kDefaultComplexCap = 8;

WonderfulComplex build_complex(int n, int cap = kDefaultComplexCap);

// Canonical representative of (k, blocks) under the cyclic rotation rule.
FaceClass canonical_face(int n, int k, std::vector<std::vector<int>> blocks);

// Enumerative data of the dual simplicial poset: f-vector from the closed
// formula f_{k-1} = n (k-1)! S(n,k), h from the generating identity, h' and
// h'' from the reduced Betti numbers of the torus.
struct SimplicialStats {
    int n = 0;
    std::vector<int128> f;            // f_{-1} .. f_{n-1}, size n+1
    std::vector<int128> h;            // h_0 .. h_n
    std::vector<int128> h_prime;
    std::vector<int128> h_pp;
    std::vector<int128> betti_tilde;  // reduced Betti numbers of T^{n-1}, indices 0..n-1
};

SimplicialStats dual_poset_stats(int n);

struct CrystallizationReport {
    int dual_vertex_count = 0;
    bool minimal_vertices = false;   // exactly n vertices in the dual
    bool pure = false;               // all maximal faces top-dimensional
    bool boolean_intervals = false;  // every lower interval of the dual is Boolean
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

CrystallizationReport verify_crystallization(const WonderfulComplex& c);

} // namespace isotoda::tiling

#endif
