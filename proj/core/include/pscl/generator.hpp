#pragma once

#include <compare>
#include <string>

namespace pscl {

/// Kinds of symbolic generators. Ordering of the enum fixes the global
/// generator order used by the monomial order: jets (by field, then
/// x-derivative order), then the spectral parameter eta, then trig
/// generators per potential.
enum class GenKind : int { Jet = 0, Eta = 1, Sin = 2, Cos = 3 };

/// A single symbolic generator: a jet variable q, q_x, q_xx, ..., the
/// spectral parameter eta, or sin/cos of a potential (e.g. sin(u)).
/// Jets are x-jets only; t-derivatives are never generators.
struct Generator {
    GenKind kind = GenKind::Jet;
    std::string name;  // field or potential name; empty for eta
    int order = 0;     // jet x-derivative order; 0 otherwise

    static Generator jet(std::string field, int k) {
        return Generator{GenKind::Jet, std::move(field), k};
    }
    static Generator eta() { return Generator{GenKind::Eta, "", 0}; }
    static Generator sin(std::string potential) {
        return Generator{GenKind::Sin, std::move(potential), 0};
    }
    static Generator cos(std::string potential) {
        return Generator{GenKind::Cos, std::move(potential), 0};
    }

    friend auto operator<=>(const Generator& a, const Generator& b) {
        if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.order <=> b.order;
    }
    friend bool operator==(const Generator&, const Generator&) = default;

    std::string str() const;
};

}  // namespace pscl
