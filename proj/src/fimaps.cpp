#include "qlab/fimaps.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qlab {

namespace {

// Map every source vertex to its target index; fails loudly when the target
// does not contain an image vertex.
std::vector<std::int32_t> vertex_map(const Injection& j, const LabeledGraph& source,
                                     const LabeledGraph& target) {
    if (source.kind() != target.kind())
        throw std::invalid_argument("parameter mismatch between complexes: vertex kind");
    if (source.p() != target.p())
        throw std::invalid_argument("parameter mismatch between complexes: p");
    if (source.ground() != j.domain() || target.ground() != j.codomain())
        throw std::invalid_argument("injection does not connect the two ground sets");
    std::vector<std::int32_t> map;
    map.reserve(static_cast<std::size_t>(source.vertex_count()));
    if (source.kind() == VertexKind::BoundedPElement) {
        for (const Permutation& v : source.perm_vertices()) {
            int idx = target.find_perm_vertex(relabel(v, j));
            if (idx < 0)
                throw std::invalid_argument(
                    "parameter mismatch between complexes: image vertex missing");
            map.push_back(static_cast<std::int32_t>(idx));
        }
    } else {
        for (const auto& s : source.subset_vertices()) {
            std::vector<Label> image;
            image.reserve(s.size());
            for (Label x : s) image.push_back(j(x));
            std::sort(image.begin(), image.end());
            int idx = target.find_subset_vertex(image);
            if (idx < 0)
                throw std::invalid_argument(
                    "parameter mismatch between complexes: image vertex missing");
            map.push_back(static_cast<std::int32_t>(idx));
        }
    }
    return map;
}

// Sort a tuple in place and return the sign of the sorting permutation.
int sort_with_sign(std::vector<std::int32_t>& tuple) {
    int sign = 1;
    for (std::size_t i = 1; i < tuple.size(); ++i)
        for (std::size_t t = i; t > 0 && tuple[t - 1] > tuple[t]; --t) {
            std::swap(tuple[t - 1], tuple[t]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

ChainMap induced_simplicial_map(const Injection& j, const CliqueComplex& source,
                                const CliqueComplex& target) {
    if (target.max_dim() < source.max_dim())
        throw std::invalid_argument("target complex stores fewer dimensions than the source");
    auto vmap = vertex_map(j, source.graph(), target.graph());
    ChainMap out;
    out.max_degree = source.top_dim();
    out.degree.reserve(static_cast<std::size_t>(out.max_degree) + 1);
    std::vector<std::int32_t> image;
    for (int k = 0; k <= out.max_degree; ++k) {
        std::vector<Triplet> entries;
        entries.reserve(static_cast<std::size_t>(source.count(k)));
        for (std::int64_t idx = 0; idx < source.count(k); ++idx) {
            auto s = source.simplex(k, idx);
            image.assign(s.size(), 0);
            for (std::size_t i = 0; i < s.size(); ++i)
                image[i] = vmap[static_cast<std::size_t>(s[i])];
            // Relabelling need not preserve the vertex order, so the sign is
            // computed per simplex instead of being assumed +1.
            int sign = sort_with_sign(image);
            std::int64_t t = target.index_of(k, image);
            if (t < 0)
                throw std::logic_error("image of a simplex is not a simplex of the target");
            entries.push_back({t, idx, sign});
        }
        out.degree.emplace_back(target.count(k), source.count(k), std::move(entries));
    }
    // Commuting squares with the boundaries, augmentation included.
    for (int k = 0; k <= out.max_degree; ++k) {
        SparseIntMatrix lhs = multiply(boundary_matrix(target, k, true),
                                       out.degree[static_cast<std::size_t>(k)]);
        SparseIntMatrix rhs =
            k == 0 ? boundary_matrix(source, 0, true)
                   : multiply(out.degree[static_cast<std::size_t>(k) - 1],
                              boundary_matrix(source, k, true));
        if (!(lhs == rhs))
            throw std::logic_error("induced chain map does not commute with the boundary");
    }
    return out;
}

InducedHomologyMap induced_homology_map(const Injection& j, const CliqueComplex& source,
                                        const CliqueComplex& target, int k,
                                        const HomologyOptions& options) {
    if (k < 0 || k > source.max_dim() || k > target.max_dim())
        throw std::invalid_argument("degree outside the stored range");
    HomologyBasis basis =
        homology_basis(source.count(k), boundary_matrix(source, k, true),
                       boundary_matrix(source, k + 1, true), options);
    InducedHomologyMap out;
    out.source_generators = basis.size();
    if (basis.size() == 0) {
        out.matrix = SparseIntMatrix(0, 0);
        out.is_zero = true;
        return out;
    }
    ChainMap chain = induced_simplicial_map(j, source, target);
    const SparseIntMatrix& map_k = chain.degree[static_cast<std::size_t>(k)];
    std::vector<std::vector<Int>> images;
    auto push_image = [&](const std::vector<Int>& gen) {
        images.push_back(map_k.apply(gen));
    };
    for (const auto& [gen, order] : basis.torsion_generators) push_image(gen);
    for (const auto& gen : basis.free_generators) push_image(gen);

    const SparseIntMatrix bd_t = boundary_matrix(target, k, true);
    for (const auto& z : images) {
        auto residue = bd_t.apply(z);
        for (const Int& v : residue)
            if (v != 0) throw std::logic_error("chain map sent a cycle to a non-cycle");
    }

    // Dense transform route when the target fits the entry budget, otherwise
    // coreduce the target and classify against the core.
    const std::int64_t r = target.count(k), c = target.count(k + 1);
    const std::int64_t dense_cells = r * c + r * r + c * c;
    std::vector<std::vector<Int>> coords;
    std::vector<bool> bounds;
    std::int64_t generator_rows = 0;
    if (dense_cells <= options.budget.max_entries) {
        HomologyBasis target_basis =
            homology_basis(target.count(k), bd_t, boundary_matrix(target, k + 1, true), options);
        generator_rows = target_basis.size();
        std::vector<Triplet> gen_entries;
        std::int64_t col = 0;
        auto add_column = [&](const std::vector<Int>& v) {
            for (std::size_t row = 0; row < v.size(); ++row)
                if (v[row] != 0)
                    gen_entries.push_back({static_cast<std::int64_t>(row), col, v[row]});
            ++col;
        };
        for (const auto& [gen, order] : target_basis.torsion_generators) add_column(gen);
        for (const auto& gen : target_basis.free_generators) add_column(gen);
        SparseIntMatrix span_cols(target.count(k), col, std::move(gen_entries));
        SparseIntMatrix bd_in = boundary_matrix(target, k + 1, true);
        std::vector<Triplet> joined = span_cols.entries();
        for (const Triplet& t : bd_in.entries())
            joined.push_back({t.row, t.col + col, t.value});
        SparseIntMatrix span(target.count(k), col + bd_in.cols(), std::move(joined));
        std::vector<SolveResult> direct = solve_in_image_many(bd_in, images, options.budget);
        std::vector<SolveResult> mixed;
        if (col > 0) mixed = solve_in_image_many(span, images, options.budget);
        for (std::size_t i = 0; i < images.size(); ++i) {
            bounds.push_back(direct[i].solvable);
            if (col == 0) {
                coords.emplace_back();
                continue;
            }
            if (!mixed[i].solvable)
                throw std::logic_error("image cycle escapes the target homology basis");
            coords.emplace_back(mixed[i].witness.begin(), mixed[i].witness.begin() + col);
        }
    } else {
        CycleClassification cls = classify_cycles(target, k, images, options.budget);
        generator_rows = cls.core_basis.size();
        coords = std::move(cls.coordinates);
        bounds = std::move(cls.is_boundary);
    }

    std::vector<Triplet> entries;
    for (std::size_t col = 0; col < coords.size(); ++col)
        for (std::size_t row = 0; row < coords[col].size(); ++row)
            if (coords[col][row] != 0)
                entries.push_back({static_cast<std::int64_t>(row),
                                   static_cast<std::int64_t>(col), coords[col][row]});
    out.matrix = SparseIntMatrix(generator_rows, static_cast<std::int64_t>(images.size()),
                                 std::move(entries));
    out.is_zero = std::all_of(bounds.begin(), bounds.end(), [](bool b) { return b; });
    return out;
}

ConeCertificate cone_certificate(const Injection& j, const CliqueComplex& source, int p,
                                 CycleBound a, int threads) {
    LabeledGraph target = build_commuting_graph(j.codomain(), p, a, threads);
    return cone_certificate(j, source, target, threads);
}

ConeCertificate cone_certificate(const Injection& j, const CliqueComplex& source,
                                 const LabeledGraph& target, int threads) {
    const LabeledGraph& sg = source.graph();
    if (sg.kind() != VertexKind::BoundedPElement ||
        target.kind() != VertexKind::BoundedPElement)
        throw std::invalid_argument("cone certificates apply to commuting complexes");
    if (sg.p() != target.p())
        throw std::invalid_argument("parameter mismatch between complexes: p");
    const int p = sg.p();
    GroundSet missed = set_difference(target.ground(), j.image_set());
    if (missed.size() < p) throw std::invalid_argument("gap smaller than p");

    ConeCertificate cert;
    std::vector<Label> cone(missed.labels().begin(), missed.labels().begin() + p);
    cert.cone_labels = GroundSet(cone);
    cert.cone_vertex = Permutation::from_cycles(target.ground(), {cone});
    int sigma = target.find_perm_vertex(cert.cone_vertex);
    if (sigma < 0) throw std::logic_error("cone vertex is not a vertex of the target graph");

    auto vmap = vertex_map(j, sg, target);
    bool all_ok = true;
    std::int64_t checked = 0;
    for (int k = 0; k <= source.top_dim(); ++k) {
        const std::int64_t n = source.count(k);
#pragma omp parallel for schedule(static) num_threads(threads) \
    reduction(&& : all_ok) reduction(+ : checked)
        for (std::int64_t idx = 0; idx < n; ++idx) {
            auto s = source.simplex(k, idx);
            bool good = true;
            for (std::size_t i = 0; i < s.size() && good; ++i) {
                int vi = vmap[static_cast<std::size_t>(s[i])];
                if (vi == sigma || !target.adjacent(vi, sigma)) good = false;
                for (std::size_t t = i + 1; t < s.size() && good; ++t) {
                    int vt = vmap[static_cast<std::size_t>(s[t])];
                    if (vi == vt || !target.adjacent(vi, vt)) good = false;
                }
            }
            all_ok = all_ok && good;
            checked += 1;
        }
    }
    cert.simplices_checked = checked;
    cert.ok = all_ok;
    return cert;
}

nlohmann::json certificate_json(const ConeCertificate& cert, const Injection& j, int p, int a) {
    return nlohmann::json{{"p", p},
                          {"a", a},
                          {"S", j.domain().labels()},
                          {"T", j.codomain().labels()},
                          {"B", cert.cone_labels.labels()},
                          {"sigma", cycle_string(cert.cone_vertex)},
                          {"simplices_checked", cert.simplices_checked},
                          {"ok", cert.ok}};
}

GeneratorDegreeReport generator_degree_check(const CliqueComplex& cx, int k, int p, int a,
                                             int threads) {
    const LabeledGraph& g = cx.graph();
    if (g.kind() != VertexKind::BoundedPElement)
        throw std::invalid_argument("generator degree checks apply to commuting complexes");
    if (g.p() != p || g.a() != a)
        throw std::invalid_argument("complex parameters disagree with the requested (p, a)");
    GeneratorDegreeReport report;
    report.bound = static_cast<std::int64_t>(k + 1) * a * p;
    if (k < 0 || k > cx.top_dim() || cx.count(k) == 0) {
        report.ok = true;
        report.vacuous = true;
        return report;
    }
    const int n = g.ground().size();
    const std::int64_t total = cx.count(k);
    std::int64_t max_support = 0;
    if (n <= 64) {
        std::vector<std::uint64_t> masks(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int v = 0; v < g.vertex_count(); ++v) {
            const Permutation& perm = g.perm_vertices()[static_cast<std::size_t>(v)];
            for (int i = 0; i < n; ++i)
                if (perm.image_at(i) != g.ground().label(i))
                    masks[static_cast<std::size_t>(v)] |= 1ull << i;
        }
#pragma omp parallel for schedule(static) num_threads(threads) reduction(max : max_support)
        for (std::int64_t idx = 0; idx < total; ++idx) {
            auto s = cx.simplex(k, idx);
            std::uint64_t moved = 0;
            for (std::int32_t v : s) moved |= masks[static_cast<std::size_t>(v)];
            max_support = std::max(max_support,
                                   static_cast<std::int64_t>(std::popcount(moved)));
        }
    } else {
        for (std::int64_t idx = 0; idx < total; ++idx)
            max_support = std::max(
                max_support, static_cast<std::int64_t>(simplex_support(cx, k, idx).size()));
    }
    report.max_support = max_support;
    report.simplices_checked = total;
    report.ok = max_support <= report.bound;
    return report;
}

}  // namespace qlab
