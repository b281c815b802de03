#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace qptfs {

// Dimer eigenstates: ground, the two single excitons and the biexciton.
enum class Level : int { g = 0, e = 1, ep = 2, f = 3 };

// Single-exciton labels; also used to label the two carrier frequencies'
// resonance targets.
enum class Exciton : int { e = 0, ep = 1 };

enum class Carrier : int { plus = 0, minus = 1 };

inline constexpr std::array<Exciton, 2> kExcitons{Exciton::e, Exciton::ep};
inline constexpr std::array<Carrier, 2> kCarriers{Carrier::plus, Carrier::minus};

constexpr Level to_level(Exciton x) { return x == Exciton::e ? Level::e : Level::ep; }
constexpr Exciton other(Exciton x) { return x == Exciton::e ? Exciton::ep : Exciton::e; }
constexpr int index(Exciton x) { return static_cast<int>(x); }
constexpr int index(Carrier c) { return static_cast<int>(c); }
constexpr int index(Level l) { return static_cast<int>(l); }

inline std::string_view name(Level l) {
    switch (l) {
        case Level::g: return "g";
        case Level::e: return "e";
        case Level::ep: return "e'";
        case Level::f: return "f";
    }
    return "?";
}
inline std::string_view name(Exciton x) { return name(to_level(x)); }
inline char symbol(Carrier c) { return c == Carrier::plus ? '+' : '-'; }

// Four labels (p,q,r,s) or (w1,w2,w3,w4) packed into 0..15 with the first
// label most significant.
template <class Label>
constexpr std::size_t pack4(Label a, Label b, Label c, Label d) {
    return static_cast<std::size_t>(((index(a) * 2 + index(b)) * 2 + index(c)) * 2 + index(d));
}

template <class Label>
constexpr std::array<Label, 4> unpack4(std::size_t k) {
    return {static_cast<Label>((k >> 3) & 1U), static_cast<Label>((k >> 2) & 1U),
            static_cast<Label>((k >> 1) & 1U), static_cast<Label>(k & 1U)};
}

// "e,e',e,e" style label for a pathway index.
inline std::string pathway_label(std::size_t k) {
    auto l = unpack4<Exciton>(k);
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) out += ',';
        out += name(l[i]);
    }
    return out;
}

// "+-+-" style label for an experiment (carrier tuple) index.
inline std::string carrier_label(std::size_t k) {
    auto l = unpack4<Carrier>(k);
    std::string out;
    for (auto c : l) out += symbol(c);
    return out;
}

}  // namespace qptfs
