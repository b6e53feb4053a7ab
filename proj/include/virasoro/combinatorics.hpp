#pragma once

// Permutations, fixed-point-free permutations, and partial injections on
// {0,...,n-1}, with the two statistics the correlation weights depend on:
// K = number of cycles, M = number of path components (equivalently
// n - |domain|). Enumeration order is lexicographic on the image arrays
// with "undefined" sorting first, so every run of every build walks the
// same sequence.

#include <algorithm>
#include <vector>

#include "virasoro/errors.hpp"

namespace virasoro {

inline constexpr int kDerangementLimit = 9;
inline constexpr int kPartialInjectionLimit = 7;

struct Permutation {
    std::vector<int> img;

    int size() const { return static_cast<int>(img.size()); }

    int cycle_count() const {
        int n = size();
        std::vector<bool> seen(static_cast<size_t>(n));
        int k = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[static_cast<size_t>(i)])
                continue;
            ++k;
            for (int j = i; !seen[static_cast<size_t>(j)]; j = img[static_cast<size_t>(j)])
                seen[static_cast<size_t>(j)] = true;
        }
        return k;
    }

    bool is_derangement() const {
        for (int i = 0; i < size(); ++i)
            if (img[static_cast<size_t>(i)] == i)
                return false;
        return true;
    }
};

// img[i] == -1 means i is outside the domain. Functional graph components
// are directed paths (counted by M, isolated vertices included) and cycles
// (counted by K).
struct PartialInjection {
    std::vector<int> img;

    int size() const { return static_cast<int>(img.size()); }

    int domain_size() const {
        int d = 0;
        for (int v : img)
            d += (v >= 0);
        return d;
    }

    int path_count() const { return size() - domain_size(); }

    int cycle_count() const {
        int n = size();
        std::vector<bool> has_preimage(static_cast<size_t>(n));
        for (int v : img)
            if (v >= 0)
                has_preimage[static_cast<size_t>(v)] = true;
        std::vector<bool> seen(static_cast<size_t>(n));
        // Walk off every path first; whatever remains with a defined image
        // sits on a cycle.
        for (int i = 0; i < n; ++i)
            if (!has_preimage[static_cast<size_t>(i)])
                for (int j = i; j >= 0 && !seen[static_cast<size_t>(j)];
                     j = img[static_cast<size_t>(j)])
                    seen[static_cast<size_t>(j)] = true;
        int k = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[static_cast<size_t>(i)] || img[static_cast<size_t>(i)] < 0)
                continue;
            ++k;
            for (int j = i; !seen[static_cast<size_t>(j)]; j = img[static_cast<size_t>(j)])
                seen[static_cast<size_t>(j)] = true;
        }
        return k;
    }
};

namespace detail {

template <class F>
void derangement_rec(int n, int i, std::vector<int>& img, std::vector<bool>& used, F& f) {
    if (i == n) {
        f(Permutation{img});
        return;
    }
    for (int j = 0; j < n; ++j) {
        if (j == i || used[static_cast<size_t>(j)])
            continue;
        used[static_cast<size_t>(j)] = true;
        img[static_cast<size_t>(i)] = j;
        derangement_rec(n, i + 1, img, used, f);
        used[static_cast<size_t>(j)] = false;
    }
}

template <class F>
void partial_injection_rec(int n, int i, std::vector<int>& img, std::vector<bool>& used, F& f) {
    if (i == n) {
        f(PartialInjection{img});
        return;
    }
    img[static_cast<size_t>(i)] = -1;
    partial_injection_rec(n, i + 1, img, used, f);
    for (int j = 0; j < n; ++j) {
        if (used[static_cast<size_t>(j)])
            continue;
        used[static_cast<size_t>(j)] = true;
        img[static_cast<size_t>(i)] = j;
        partial_injection_rec(n, i + 1, img, used, f);
        used[static_cast<size_t>(j)] = false;
    }
    img[static_cast<size_t>(i)] = -1;
}

} // namespace detail

template <class F>
void for_each_derangement(int n, F&& f, int limit = kDerangementLimit) {
    if (n < 0)
        throw DomainError("negative n");
    if (n > limit)
        throw LimitError("derangement enumeration beyond configured bound");
    std::vector<int> img(static_cast<size_t>(n));
    std::vector<bool> used(static_cast<size_t>(n));
    detail::derangement_rec(n, 0, img, used, f);
}

template <class F>
void for_each_partial_injection(int n, F&& f, int limit = kPartialInjectionLimit) {
    if (n < 0)
        throw DomainError("negative n");
    if (n > limit)
        throw LimitError("partial injection enumeration beyond configured bound");
    std::vector<int> img(static_cast<size_t>(n));
    std::vector<bool> used(static_cast<size_t>(n));
    detail::partial_injection_rec(n, 0, img, used, f);
}

// All n! permutations in lexicographic order. Unguarded: callers stay at
// tiny n by construction.
template <class F>
void for_each_permutation(int n, F&& f) {
    if (n < 0)
        throw DomainError("negative n");
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        img[static_cast<size_t>(i)] = i;
    do {
        f(Permutation{img});
    } while (std::next_permutation(img.begin(), img.end()));
}

inline std::vector<Permutation> derangements(int n, int limit = kDerangementLimit) {
    std::vector<Permutation> out;
    for_each_derangement(n, [&](const Permutation& p) { out.push_back(p); }, limit);
    return out;
}

inline std::vector<PartialInjection> partial_injections(int n,
                                                        int limit = kPartialInjectionLimit) {
    std::vector<PartialInjection> out;
    for_each_partial_injection(n, [&](const PartialInjection& p) { out.push_back(p); }, limit);
    return out;
}

} // namespace virasoro
