#pragma once

#include <set>
#include <string>
#include <vector>

#include "pretop/finset.hpp"

namespace pretop {

/// Finite topological space: carrier plus the family of open sets. Only the
/// finite-limit structure is exercised (continuous maps, products, subspaces);
/// that is all the completion machinery needs from a topological ambient.
struct FinTopSpace {
    FinSetObj carrier;
    std::set<std::set<std::string>> opens;

    bool is_open(const std::set<std::string>& s) const { return opens.count(s) != 0; }

    bool operator==(const FinTopSpace&) const = default;
};

struct FinTopMap {
    FinTopSpace dom;
    FinTopSpace cod;
    std::map<std::string, std::string> table;

    const std::string& operator()(const std::string& e) const;

    bool operator==(const FinTopMap&) const = default;
};

void require_valid(const FinTopSpace& x);  // ∅, carrier, unions, intersections
void require_valid(const FinTopMap& f);    // totality + continuity

bool ft_continuous(const FinTopSpace& x, const FinTopSpace& y,
                   const std::map<std::string, std::string>& table);

FinTopSpace ft_discrete(const FinSetObj& x);
FinTopSpace ft_indiscrete(const FinSetObj& x);
FinTopSpace ft_sierpinski();               // points o (open), c

FinTopMap ft_identity(const FinTopSpace& x);
FinTopMap ft_compose(const FinTopMap& g, const FinTopMap& f);

FinTopSpace ft_terminal();
FinTopMap ft_to_terminal(const FinTopSpace& x);

struct FtProduct {
    FinTopSpace obj;
    FinTopMap proj1;
    FinTopMap proj2;
};
FtProduct ft_product(const FinTopSpace& x, const FinTopSpace& y);

// Subspace on a subset of the carrier.
FinTopSpace ft_subspace(const FinTopSpace& x, const std::set<std::string>& pts);

struct FtEqualizer {
    FinTopSpace obj;
    FinTopMap mono;
};
FtEqualizer ft_equalizer(const FinTopMap& f, const FinTopMap& g);

struct FtPullback {
    FinTopSpace obj;
    FinTopMap proj1;
    FinTopMap proj2;
};
FtPullback ft_pullback(const FinTopMap& f, const FinTopMap& g);

// Extremal epi: surjective and the codomain carries the quotient topology.
bool ft_is_cover(const FinTopMap& f);
bool ft_is_mono(const FinTopMap& f);

struct FtFactorization {
    FinTopSpace image;   // quotient topology from the domain
    FinTopMap cover;
    FinTopMap mono;
};
FtFactorization ft_image_factorization(const FinTopMap& f);

std::vector<FinTopMap> ft_all_maps(const FinTopSpace& x, const FinTopSpace& y);

} // namespace pretop
