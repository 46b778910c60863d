#include "qlab/homology.hpp"

#include <sstream>
#include <stdexcept>

namespace qlab {

std::string to_string(const HomologyGroup& g) {
    if (g.trivial()) return "0";
    std::ostringstream out;
    if (g.betti > 0 || g.torsion.empty())
        out << "Z^" << g.betti;
    else
        out << "Z^0";
    for (const Int& d : g.torsion) out << " + Z/" << d;
    return out.str();
}

nlohmann::json homology_json(const HomologyGroup& g) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const Int& d : g.torsion) {
        if (d <= Int(std::numeric_limits<std::int64_t>::max()))
            torsion.push_back(static_cast<std::int64_t>(d));
        else
            torsion.push_back(d.str());
    }
    return nlohmann::json{{"betti", g.betti}, {"torsion", std::move(torsion)}};
}

namespace {

void check_segment(std::int64_t dim_ck, const SparseIntMatrix& bd_k,
                   const SparseIntMatrix& bd_k1) {
    if (bd_k.cols() != dim_ck)
        throw std::invalid_argument("boundary d_k has wrong column count for C_k");
    if (bd_k1.rows() != dim_ck)
        throw std::invalid_argument("boundary d_{k+1} has wrong row count for C_k");
    if (!multiply(bd_k, bd_k1).is_zero())
        throw std::invalid_argument("boundary composition d_k * d_{k+1} is nonzero");
}

}  // namespace

HomologyGroup homology(std::int64_t dim_ck, const SparseIntMatrix& bd_k,
                       const SparseIntMatrix& bd_k1, const HomologyOptions& options) {
    check_segment(dim_ck, bd_k, bd_k1);
    std::int64_t rank_out =
        options.rank_fast_path
            ? integer_rank(bd_k, options.budget)
            : smith_normal_form(bd_k, {.budget = options.budget}).rank;
    SNFResult snf_in = smith_normal_form(bd_k1, {.budget = options.budget});
    HomologyGroup g;
    g.betti = dim_ck - rank_out - snf_in.rank;
    if (g.betti < 0) throw std::logic_error("negative betti number: inconsistent segment");
    for (const Int& d : snf_in.invariant_factors)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

HomologyGroup HomologyBasis::group() const {
    HomologyGroup g;
    g.betti = static_cast<std::int64_t>(free_generators.size());
    for (const auto& [cycle, order] : torsion_generators) g.torsion.push_back(order);
    return g;
}

HomologyBasis homology_basis(std::int64_t dim_ck, const SparseIntMatrix& bd_k,
                             const SparseIntMatrix& bd_k1, const HomologyOptions& options) {
    check_segment(dim_ck, bd_k, bd_k1);
    SnfOptions with_transforms{.with_transforms = true, .budget = options.budget};
    SNFResult snf_out = smith_normal_form(bd_k, with_transforms);

    // Kernel basis: the columns of V beyond the rank of d_k.
    const std::int64_t kernel_dim = dim_ck - snf_out.rank;
    std::vector<Triplet> kernel_entries;
    for (const Triplet& t : snf_out.V->entries())
        if (t.col >= snf_out.rank)
            kernel_entries.push_back({t.row, t.col - snf_out.rank, t.value});
    SparseIntMatrix kernel(dim_ck, kernel_dim, std::move(kernel_entries));

    // d_{k+1} expressed in kernel coordinates: the top rank rows of
    // V^-1 · d_{k+1} vanish because the image lies in the kernel.
    SparseIntMatrix lifted = multiply(*snf_out.V_inv, bd_k1);
    std::vector<Triplet> inside_entries;
    for (const Triplet& t : lifted.entries()) {
        if (t.row < snf_out.rank)
            throw std::logic_error("image of d_{k+1} is not contained in the kernel of d_k");
        inside_entries.push_back({t.row - snf_out.rank, t.col, t.value});
    }
    SparseIntMatrix inside(kernel_dim, bd_k1.cols(), std::move(inside_entries));

    // Cokernel of the lifted map: generator i is the class of column i of
    // U^-1, of order d_i for i < rank and free beyond.
    SNFResult snf_in = smith_normal_form(inside, with_transforms);
    std::vector<std::vector<Int>> uinv_cols(static_cast<std::size_t>(kernel_dim),
                                            std::vector<Int>(static_cast<std::size_t>(kernel_dim), Int(0)));
    for (const Triplet& t : snf_in.U_inv->entries())
        uinv_cols[static_cast<std::size_t>(t.col)][static_cast<std::size_t>(t.row)] = t.value;

    HomologyBasis basis;
    basis.dim_ck = dim_ck;
    for (std::int64_t i = 0; i < kernel_dim; ++i) {
        Int order = 0;  // 0 marks a free generator
        if (i < snf_in.rank) {
            order = snf_in.invariant_factors[static_cast<std::size_t>(i)];
            if (order == 1) continue;  // trivial class
        }
        std::vector<Int> chain = kernel.apply(uinv_cols[static_cast<std::size_t>(i)]);
        std::vector<Int> image = bd_k.apply(chain);
        for (const Int& v : image)
            if (v != 0) throw std::logic_error("homology generator is not a cycle");
        if (order == 0)
            basis.free_generators.push_back(std::move(chain));
        else
            basis.torsion_generators.emplace_back(std::move(chain), order);
    }
    return basis;
}

}  // namespace qlab
