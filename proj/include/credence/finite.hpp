#pragma once

#include "credence/dyadic.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace credence {

inline constexpr int kMaxAtoms = 30;

// Subset of the atoms of a finite algebra, as a bitmask. Carries the atom
// count so complement needs no algebra in scope.
class FiniteEvent {
public:
    constexpr FiniteEvent() = default;
    FiniteEvent(std::uint32_t bits, int atoms);

    static FiniteEvent empty(int atoms) { return FiniteEvent(0, atoms); }
    static FiniteEvent omega(int atoms);
    static FiniteEvent atom(int index, int atoms);

    std::uint32_t bits() const { return bits_; }
    int atoms() const { return atoms_; }
    bool is_empty() const { return bits_ == 0; }
    bool is_omega() const;
    bool has_atom(int i) const { return (bits_ >> i) & 1u; }
    int size() const;

    FiniteEvent complement() const;
    bool contains(const FiniteEvent& other) const { return (other.bits_ & ~bits_) == 0; }
    bool disjoint(const FiniteEvent& other) const { return (bits_ & other.bits_) == 0; }

    // Operands must come from the same algebra; throws Error(BadParams) otherwise.
    friend FiniteEvent operator|(const FiniteEvent& a, const FiniteEvent& b);
    friend FiniteEvent operator&(const FiniteEvent& a, const FiniteEvent& b);
    friend FiniteEvent operator-(const FiniteEvent& a, const FiniteEvent& b);

    friend bool operator==(const FiniteEvent&, const FiniteEvent&) = default;
    friend auto operator<=>(const FiniteEvent&, const FiniteEvent&) = default;

private:
    std::uint32_t bits_ = 0;
    int atoms_ = 0;
};

// Power set of m named atoms.
class FiniteAlgebra {
public:
    explicit FiniteAlgebra(int atoms);
    explicit FiniteAlgebra(std::vector<std::string> names);

    int atoms() const { return static_cast<int>(names_.size()); }
    std::size_t event_count() const { return std::size_t{1} << names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    FiniteEvent omega() const { return FiniteEvent::omega(atoms()); }
    FiniteEvent empty() const { return FiniteEvent::empty(atoms()); }
    FiniteEvent atom(int i) const { return FiniteEvent::atom(i, atoms()); }
    FiniteEvent event(std::uint32_t bits) const { return FiniteEvent(bits, atoms()); }
    // Throws Error(Parse) for an unknown atom name.
    FiniteEvent event(const std::vector<std::string>& atom_names) const;
    int atom_index(const std::string& name) const;

    // All 2^m events in bitmask order.
    std::vector<FiniteEvent> events() const;

    std::string describe(const FiniteEvent& e) const;

    // Dyadic realization: with d = ceil(log2 m), atom i < m-1 is
    // [i/2^d, (i+1)/2^d) and the last atom takes the rest of [0, 1).
    DyadicEvent embed_atom(int i) const;
    DyadicEvent embed(const FiniteEvent& e) const;

    friend bool operator==(const FiniteAlgebra&, const FiniteAlgebra&) = default;

private:
    std::vector<std::string> names_;
};

}  // namespace credence
