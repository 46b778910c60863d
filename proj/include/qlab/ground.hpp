#pragma once

#include <string>
#include <vector>

namespace qlab {

using Label = int;

// A finite set of positive integer labels, kept strictly sorted.  Labels are
// arbitrary positive integers, not necessarily 1..n, so that injections
// between label sets are first-class.
class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(std::vector<Label> labels);
    static GroundSet range(int n);  // {1, ..., n}

    int size() const { return static_cast<int>(labels_.size()); }
    bool empty() const { return labels_.empty(); }
    bool contains(Label x) const;
    // Position of x in the sorted label list, -1 if absent.
    int index_of(Label x) const;
    Label label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<Label>& labels() const { return labels_; }

    bool operator==(const GroundSet&) const = default;

    auto begin() const { return labels_.begin(); }
    auto end() const { return labels_.end(); }

private:
    std::vector<Label> labels_;
};

GroundSet set_union(const GroundSet& a, const GroundSet& b);
GroundSet set_difference(const GroundSet& a, const GroundSet& b);

// An injective map between finite label sets.
class Injection {
public:
    Injection(GroundSet domain, GroundSet codomain, std::vector<Label> image);
    static Injection identity(const GroundSet& s);
    static Injection inclusion(const GroundSet& sub, const GroundSet& super);

    Label operator()(Label x) const;
    const GroundSet& domain() const { return domain_; }
    const GroundSet& codomain() const { return codomain_; }
    // image()[i] is the image of domain().labels()[i].
    const std::vector<Label>& image() const { return image_; }
    GroundSet image_set() const;

    bool operator==(const Injection&) const = default;

private:
    GroundSet domain_;
    GroundSet codomain_;
    std::vector<Label> image_;
};

// outer ∘ inner; inner's codomain must equal outer's domain.
Injection compose(const Injection& outer, const Injection& inner);

}  // namespace qlab
