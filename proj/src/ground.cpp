#include "qlab/ground.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qlab {

GroundSet::GroundSet(std::vector<Label> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
        throw std::invalid_argument("ground set labels must be distinct");
    if (!labels_.empty() && labels_.front() < 1)
        throw std::invalid_argument("ground set labels must be positive");
}

GroundSet GroundSet::range(int n) {
    if (n < 0) throw std::invalid_argument("ground set size must be nonnegative");
    std::vector<Label> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    return GroundSet(std::move(labels));
}

bool GroundSet::contains(Label x) const {
    return std::binary_search(labels_.begin(), labels_.end(), x);
}

int GroundSet::index_of(Label x) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), x);
    if (it == labels_.end() || *it != x) return -1;
    return static_cast<int>(it - labels_.begin());
}

GroundSet set_union(const GroundSet& a, const GroundSet& b) {
    std::vector<Label> out;
    out.reserve(a.labels().size() + b.labels().size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return GroundSet(std::move(out));
}

GroundSet set_difference(const GroundSet& a, const GroundSet& b) {
    std::vector<Label> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return GroundSet(std::move(out));
}

Injection::Injection(GroundSet domain, GroundSet codomain, std::vector<Label> image)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), image_(std::move(image)) {
    if (image_.size() != static_cast<std::size_t>(domain_.size()))
        throw std::invalid_argument("injection image has wrong length");
    std::vector<Label> sorted = image_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("injection image has repeated labels");
    for (Label y : image_)
        if (!codomain_.contains(y))
            throw std::invalid_argument("injection image leaves the codomain");
}

Injection Injection::identity(const GroundSet& s) {
    return Injection(s, s, s.labels());
}

Injection Injection::inclusion(const GroundSet& sub, const GroundSet& super) {
    for (Label x : sub)
        if (!super.contains(x))
            throw std::invalid_argument("inclusion domain is not a subset");
    return Injection(sub, super, sub.labels());
}

Label Injection::operator()(Label x) const {
    int i = domain_.index_of(x);
    if (i < 0) throw std::invalid_argument("label outside injection domain");
    return image_[static_cast<std::size_t>(i)];
}

GroundSet Injection::image_set() const {
    return GroundSet(image_);
}

Injection compose(const Injection& outer, const Injection& inner) {
    if (inner.codomain() != outer.domain())
        throw std::invalid_argument("injections are not composable");
    std::vector<Label> image;
    image.reserve(inner.image().size());
    for (Label y : inner.image()) image.push_back(outer(y));
    return Injection(inner.domain(), outer.codomain(), std::move(image));
}

}  // namespace qlab
