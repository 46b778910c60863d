#pragma once

#include "qlab/ground.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qlab {

// A permutation of a finite label set.  The encoding is canonical: ground
// labels are sorted and image()[i] is the image of the i-th label, so two
// permutations are equal iff their ground sets and image arrays are equal.
// Immutable after construction.
class Permutation {
public:
    Permutation() = default;                 // identity of the empty set
    explicit Permutation(GroundSet ground);  // identity
    Permutation(GroundSet ground, std::vector<Label> image);
    // Cycles must be disjoint; labels not mentioned are fixed.
    static Permutation from_cycles(const GroundSet& ground,
                                   const std::vector<std::vector<Label>>& cycles);

    Label operator()(Label x) const;
    Label image_at(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const GroundSet& ground() const { return ground_; }
    const std::vector<Label>& image() const { return image_; }
    bool is_identity() const;
    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    GroundSet ground_;
    std::vector<Label> image_;
};

// Lexicographic on the image array; permutations on one ground set get a
// deterministic total order this way.
bool image_less(const Permutation& f, const Permutation& g);

// x -> f(g(x)).  Throws std::invalid_argument("ground-set mismatch").
Permutation compose(const Permutation& f, const Permutation& g);

// Disjoint cycles with fixed points omitted.  Each cycle begins with its
// minimum label; cycles are sorted by minimum label.
struct CycleDecomposition {
    std::vector<std::vector<Label>> cycles;
};

CycleDecomposition cycle_decomposition(const Permutation& f);

// Least m >= 1 with f^m = id, i.e. the lcm of the cycle lengths.
std::int64_t order(const Permutation& f);

// True iff f != id, every cycle of f has length exactly p, and f has at most
// max_cycles cycles.  p must be prime, max_cycles >= 1.
bool is_bounded_p_element(const Permutation& f, int p, int max_cycles);

bool commutes(const Permutation& f, const Permutation& g);

// The set of labels moved by f.
GroundSet support(const Permutation& f);

// Pushforward along j: acts as j∘f∘j⁻¹ on j(domain), fixes everything else.
// Throws std::invalid_argument("domain mismatch") if f.ground() != j.domain().
Permutation relabel(const Permutation& f, const Injection& j);

// Cycle notation, e.g. "(1 2)(3 4)"; the identity prints "()".
std::string cycle_string(const Permutation& f);

bool is_prime(int p);

}  // namespace qlab
