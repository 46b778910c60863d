#include "qlab/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qlab {

Permutation::Permutation(GroundSet ground)
    : ground_(std::move(ground)), image_(ground_.labels()) {}

Permutation::Permutation(GroundSet ground, std::vector<Label> image)
    : ground_(std::move(ground)), image_(std::move(image)) {
    if (image_.size() != static_cast<std::size_t>(ground_.size()))
        throw std::invalid_argument("permutation image has wrong length");
    std::vector<Label> sorted = image_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != ground_.labels())
        throw std::invalid_argument("permutation image is not a bijection of the ground set");
}

Permutation Permutation::from_cycles(const GroundSet& ground,
                                     const std::vector<std::vector<Label>>& cycles) {
    std::vector<Label> image = ground.labels();
    std::vector<char> seen(image.size(), 0);
    for (const auto& cycle : cycles) {
        if (cycle.size() < 2)
            throw std::invalid_argument("cycles must have length at least 2");
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            Label from = cycle[i];
            Label to = cycle[(i + 1) % cycle.size()];
            int idx = ground.index_of(from);
            if (idx < 0) throw std::invalid_argument("cycle label outside ground set");
            if (seen[static_cast<std::size_t>(idx)])
                throw std::invalid_argument("cycles are not disjoint");
            seen[static_cast<std::size_t>(idx)] = 1;
            image[static_cast<std::size_t>(idx)] = to;
        }
    }
    return Permutation(ground, std::move(image));
}

Label Permutation::operator()(Label x) const {
    int i = ground_.index_of(x);
    if (i < 0) throw std::invalid_argument("label outside permutation ground set");
    return image_[static_cast<std::size_t>(i)];
}

bool Permutation::is_identity() const {
    return image_ == ground_.labels();
}

Permutation Permutation::inverse() const {
    std::vector<Label> image(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
        int j = ground_.index_of(image_[i]);
        image[static_cast<std::size_t>(j)] = ground_.labels()[i];
    }
    return Permutation(ground_, std::move(image));
}

bool image_less(const Permutation& f, const Permutation& g) {
    return f.image() < g.image();
}

Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.ground() != g.ground())
        throw std::invalid_argument("ground-set mismatch");
    const auto& labels = f.ground().labels();
    std::vector<Label> image(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        image[i] = f(g.image()[i]);
    return Permutation(f.ground(), std::move(image));
}

CycleDecomposition cycle_decomposition(const Permutation& f) {
    const auto& labels = f.ground().labels();
    std::vector<char> visited(labels.size(), 0);
    CycleDecomposition out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (visited[i] || f.image()[i] == labels[i]) continue;
        std::vector<Label> cycle;
        Label x = labels[i];
        int idx = static_cast<int>(i);
        while (!visited[static_cast<std::size_t>(idx)]) {
            visited[static_cast<std::size_t>(idx)] = 1;
            cycle.push_back(x);
            x = f.image()[static_cast<std::size_t>(idx)];
            idx = f.ground().index_of(x);
        }
        out.cycles.push_back(std::move(cycle));
    }
    // Scanning labels in sorted order already yields cycles sorted by their
    // minimum label, each starting at that minimum.
    return out;
}

std::int64_t order(const Permutation& f) {
    std::int64_t m = 1;
    for (const auto& cycle : cycle_decomposition(f).cycles)
        m = std::lcm(m, static_cast<std::int64_t>(cycle.size()));
    return m;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool is_bounded_p_element(const Permutation& f, int p, int max_cycles) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (max_cycles < 1) throw std::invalid_argument("cycle bound must be positive");
    auto cycles = cycle_decomposition(f).cycles;
    if (cycles.empty()) return false;  // identity has order 1, never a vertex
    if (cycles.size() > static_cast<std::size_t>(max_cycles)) return false;
    for (const auto& cycle : cycles)
        if (cycle.size() != static_cast<std::size_t>(p)) return false;
    return true;
}

bool commutes(const Permutation& f, const Permutation& g) {
    if (f.ground() != g.ground())
        throw std::invalid_argument("ground-set mismatch");
    const auto& labels = f.ground().labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Label fg = f(g.image()[i]);
        Label gf = g(f.image()[i]);
        if (fg != gf) return false;
    }
    return true;
}

GroundSet support(const Permutation& f) {
    std::vector<Label> moved;
    const auto& labels = f.ground().labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (f.image()[i] != labels[i]) moved.push_back(labels[i]);
    return GroundSet(std::move(moved));
}

Permutation relabel(const Permutation& f, const Injection& j) {
    if (f.ground() != j.domain())
        throw std::invalid_argument("domain mismatch");
    std::vector<Label> image = j.codomain().labels();
    const auto& labels = f.ground().labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Label from = j.image()[i];
        Label to = j(f.image()[i]);
        int idx = j.codomain().index_of(from);
        image[static_cast<std::size_t>(idx)] = to;
    }
    return Permutation(j.codomain(), std::move(image));
}

std::string cycle_string(const Permutation& f) {
    auto decomposition = cycle_decomposition(f);
    if (decomposition.cycles.empty()) return "()";
    std::ostringstream out;
    for (const auto& cycle : decomposition.cycles) {
        out << '(';
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (i > 0) out << ' ';
            out << cycle[i];
        }
        out << ')';
    }
    return out.str();
}

}  // namespace qlab
