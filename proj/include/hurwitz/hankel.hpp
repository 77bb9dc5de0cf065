#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "hurwitz/markov.hpp"

namespace hurwitz {

/**
 * Column index sets of the dominant part (Step 4).
 *
 * I_i = { k : i < cdeg_fd[k] } for i = -1..m, refined by the parity of
 * cdeg F[k] into even/odd subsets, and the shifted sets
 * I~_i = I_i^e  union  I_{i-1}^o for i = 0..m.  Stored 0-based; the
 * one_based() helper converts for display, matching the labels used in reports.
 */
struct IndexSets {
    int p = 0;
    int m = 0;
    // index [i+1] holds the set for subscript i, i = -1..m
    std::vector<std::vector<int>> i_sets;
    std::vector<std::vector<int>> e_sets;
    std::vector<std::vector<int>> o_sets;
    // index [i] holds the set for subscript i, i = 0..m
    std::vector<std::vector<int>> tilde_sets;

    const std::vector<int>& i_set(int i) const { return i_sets.at(static_cast<std::size_t>(i + 1)); }
    const std::vector<int>& e_set(int i) const { return e_sets.at(static_cast<std::size_t>(i + 1)); }
    const std::vector<int>& o_set(int i) const { return o_sets.at(static_cast<std::size_t>(i + 1)); }
    const std::vector<int>& tilde_set(int i) const { return tilde_sets.at(static_cast<std::size_t>(i)); }

    static std::vector<int> one_based(const std::vector<int>& s) {
        std::vector<int> out(s);
        for (int& v : out) ++v;
        return out;
    }
};

inline IndexSets index_sets(const SplitResult& sr) {
    const int p = sr.size();
    IndexSets idx;
    idx.p = p;
    idx.m = sr.m;
    idx.i_sets.resize(static_cast<std::size_t>(sr.m) + 2);
    idx.e_sets.resize(static_cast<std::size_t>(sr.m) + 2);
    idx.o_sets.resize(static_cast<std::size_t>(sr.m) + 2);
    for (int i = -1; i <= sr.m; ++i) {
        for (int k = 0; k < p; ++k) {
            if (i < sr.cdeg_fd[static_cast<std::size_t>(k)]) {
                idx.i_sets[static_cast<std::size_t>(i + 1)].push_back(k);
                if (sr.odd[static_cast<std::size_t>(k)]) {
                    idx.o_sets[static_cast<std::size_t>(i + 1)].push_back(k);
                } else {
                    idx.e_sets[static_cast<std::size_t>(i + 1)].push_back(k);
                }
            }
        }
    }
    idx.tilde_sets.resize(static_cast<std::size_t>(sr.m) + 1);
    for (int i = 0; i <= sr.m; ++i) {
        std::set<int> merged(idx.e_set(i).begin(), idx.e_set(i).end());
        merged.insert(idx.o_set(i - 1).begin(), idx.o_set(i - 1).end());
        idx.tilde_sets[static_cast<std::size_t>(i)].assign(merged.begin(), merged.end());
    }
    return idx;
}

/**
 * The rectangular block Hankel matrix H0 and its shifted companion H1.
 * Block (i,j) of h0 is s_{i+j} restricted to rows I~_i and columns I~_j;
 * block (i,j) of h1 is s_{i+j+1} restricted to rows I_i and columns I_j.
 * Offsets are prefix sums of the block extents (length #blocks+1).
 */
struct HankelPair {
    ComplexMatrix h0;
    ComplexMatrix h1;
    std::vector<int> block_offsets_h0;
    std::vector<int> block_offsets_h1;
    bool all_even = false;
};

namespace detail {

inline ComplexMatrix extract(const ComplexMatrix& s, const std::vector<int>& rows, const std::vector<int>& cols) {
    ComplexMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) {
            out(static_cast<int>(a), static_cast<int>(b)) = s(rows[a], cols[b]);
        }
    }
    return out;
}

}  // namespace detail

inline HankelPair assemble_hankel(const MarkovSequence& seq, const IndexSets& idx, const SplitResult& sr) {
    HankelPair hp;
    hp.all_even = sr.all_even;
    const int top0 = sr.all_even ? sr.m - 1 : sr.m;  // block range of H0
    const int top1 = sr.m - 1;                       // block range of H1 (empty when m = 0)

    if (static_cast<int>(seq.params.size()) < sr.l + 1) {
        throw SequenceTooShortError("Markov sequence shorter than l+1 = " + std::to_string(sr.l + 1));
    }

    hp.block_offsets_h0.push_back(0);
    for (int i = 0; i <= top0; ++i) {
        hp.block_offsets_h0.push_back(hp.block_offsets_h0.back() + static_cast<int>(idx.tilde_set(i).size()));
    }
    hp.block_offsets_h1.push_back(0);
    for (int i = 0; i <= top1; ++i) {
        hp.block_offsets_h1.push_back(hp.block_offsets_h1.back() + static_cast<int>(idx.i_set(i).size()));
    }

    const int n0 = hp.block_offsets_h0.back();
    const int n1 = hp.block_offsets_h1.back();
    hp.h0.resize(n0, n0);
    hp.h1.resize(n1, n1);
    for (int i = 0; i <= top0; ++i) {
        for (int j = 0; j <= top0; ++j) {
            hp.h0.block(hp.block_offsets_h0[static_cast<std::size_t>(i)], hp.block_offsets_h0[static_cast<std::size_t>(j)],
                        static_cast<int>(idx.tilde_set(i).size()), static_cast<int>(idx.tilde_set(j).size())) =
                detail::extract(seq.params[static_cast<std::size_t>(i + j)], idx.tilde_set(i), idx.tilde_set(j));
        }
    }
    for (int i = 0; i <= top1; ++i) {
        for (int j = 0; j <= top1; ++j) {
            hp.h1.block(hp.block_offsets_h1[static_cast<std::size_t>(i)], hp.block_offsets_h1[static_cast<std::size_t>(j)],
                        static_cast<int>(idx.i_set(i).size()), static_cast<int>(idx.i_set(j).size())) =
                detail::extract(seq.params[static_cast<std::size_t>(i + j + 1)], idx.i_set(i), idx.i_set(j));
        }
    }
    return hp;
}

}  // namespace hurwitz
