#include "credence/finite.hpp"

#include "credence/errors.hpp"

#include <bit>

namespace credence {

namespace {

std::uint32_t full_mask(int atoms) {
    return atoms == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << atoms) - 1);
}

void same_algebra(const FiniteEvent& a, const FiniteEvent& b) {
    if (a.atoms() != b.atoms()) throw Error(ErrorCode::BadParams, "events from different finite algebras");
}

}  // namespace

FiniteEvent::FiniteEvent(std::uint32_t bits, int atoms) : bits_(bits), atoms_(atoms) {
    if (atoms < 0 || atoms > kMaxAtoms) throw Error(ErrorCode::BadParams, "atom count out of range");
    if ((bits & ~full_mask(atoms)) != 0) throw Error(ErrorCode::BadParams, "event mentions atoms outside the algebra");
}

FiniteEvent FiniteEvent::omega(int atoms) { return FiniteEvent(full_mask(atoms), atoms); }

FiniteEvent FiniteEvent::atom(int index, int atoms) {
    if (index < 0 || index >= atoms) throw Error(ErrorCode::BadParams, "atom index out of range");
    return FiniteEvent(std::uint32_t{1} << index, atoms);
}

bool FiniteEvent::is_omega() const { return bits_ == full_mask(atoms_); }

int FiniteEvent::size() const { return std::popcount(bits_); }

FiniteEvent FiniteEvent::complement() const { return FiniteEvent(~bits_ & full_mask(atoms_), atoms_); }

FiniteEvent operator|(const FiniteEvent& a, const FiniteEvent& b) {
    same_algebra(a, b);
    return FiniteEvent(a.bits_ | b.bits_, a.atoms_);
}

FiniteEvent operator&(const FiniteEvent& a, const FiniteEvent& b) {
    same_algebra(a, b);
    return FiniteEvent(a.bits_ & b.bits_, a.atoms_);
}

FiniteEvent operator-(const FiniteEvent& a, const FiniteEvent& b) {
    same_algebra(a, b);
    return FiniteEvent(a.bits_ & ~b.bits_, a.atoms_);
}

FiniteAlgebra::FiniteAlgebra(int atoms) {
    if (atoms < 1 || atoms > kMaxAtoms) throw Error(ErrorCode::BadParams, "atom count out of range");
    for (int i = 0; i < atoms; ++i) names_.push_back("a" + std::to_string(i));
}

FiniteAlgebra::FiniteAlgebra(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty() || static_cast<int>(names_.size()) > kMaxAtoms) {
        throw Error(ErrorCode::BadParams, "atom count out of range");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        for (std::size_t j = i + 1; j < names_.size(); ++j) {
            if (names_[i] == names_[j]) throw Error(ErrorCode::BadParams, "duplicate atom name " + names_[i]);
        }
    }
}

int FiniteAlgebra::atom_index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    throw Error(ErrorCode::Parse, "unknown atom '" + name + "'");
}

FiniteEvent FiniteAlgebra::event(const std::vector<std::string>& atom_names) const {
    std::uint32_t bits = 0;
    for (const auto& n : atom_names) bits |= std::uint32_t{1} << atom_index(n);
    return event(bits);
}

std::vector<FiniteEvent> FiniteAlgebra::events() const {
    std::vector<FiniteEvent> out;
    out.reserve(event_count());
    for (std::uint32_t b = 0; b < event_count(); ++b) out.push_back(event(b));
    return out;
}

std::string FiniteAlgebra::describe(const FiniteEvent& e) const {
    if (e.is_empty()) return "{}";
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < atoms(); ++i) {
        if (!e.has_atom(i)) continue;
        if (!first) s += ",";
        first = false;
        s += names_[i];
    }
    return s + "}";
}

DyadicEvent FiniteAlgebra::embed_atom(int i) const {
    int m = atoms();
    if (i < 0 || i >= m) throw Error(ErrorCode::BadParams, "atom index out of range");
    if (m == 1) return DyadicEvent::omega();
    int d = std::bit_width(static_cast<unsigned>(m - 1));
    Dyadic lo(static_cast<std::uint64_t>(i), d);
    Dyadic hi = (i == m - 1) ? Dyadic::one() : Dyadic(static_cast<std::uint64_t>(i + 1), d);
    return DyadicEvent::interval(lo, hi);
}

DyadicEvent FiniteAlgebra::embed(const FiniteEvent& e) const {
    if (e.atoms() != atoms()) throw Error(ErrorCode::BadParams, "event from a different algebra");
    DyadicEvent out;
    for (int i = 0; i < atoms(); ++i) {
        if (e.has_atom(i)) out = out | embed_atom(i);
    }
    return out;
}

}  // namespace credence
