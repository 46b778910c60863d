#include "qlab/cache.hpp"

#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

namespace qlab {

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::optional<std::string> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// Returns the verified file contents, or nullopt (with a warning when the
// file exists but fails its digest).
std::optional<std::string> load_verified(const std::filesystem::path& path) {
    auto body = slurp(path);
    if (!body) return std::nullopt;
    auto digest = slurp(path.string() + ".fnv");
    if (!digest || digest->find(fnv_hex(*body)) == std::string::npos) {
        std::cerr << "warning: cache entry " << path.string()
                  << " failed its digest; recomputing\n";
        return std::nullopt;
    }
    return body;
}

void store(const std::filesystem::path& path, const std::string& body) {
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << body;
    }
    std::ofstream digest(path.string() + ".fnv", std::ios::trunc);
    digest << fnv_hex(body) << '\n';
}

std::mutex log_mutex;

}  // namespace

std::string fnv_hex(std::string_view bytes) {
    std::ostringstream out;
    out << "fnv:" << std::hex << fnv1a(bytes);
    return out.str();
}

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

CliqueComplex Cache::get_complex(bool kneser, const GroundSet& ground, int p, CycleBound a,
                                 int max_dim, const Budget& budget, int threads,
                                 CacheInfo* info) {
    auto graph = std::make_shared<const LabeledGraph>(
        kneser ? build_kneser_graph(ground, p, threads)
               : build_commuting_graph(ground, p, a, threads));
    // Only canonical 1..n ground sets are cached; the key carries just n.
    const bool cacheable = enabled() && ground == GroundSet::range(ground.size());
    std::filesystem::path path;
    if (cacheable) {
        std::ostringstream name;
        name << (kneser ? "kneser" : "commuting") << "-n" << ground.size() << "-p" << p
             << "-a" << graph->a() << "-d" << max_dim << ".cx";
        path = dir_ / name.str();
        if (auto body = load_verified(path)) {
            try {
                std::istringstream in(*body);
                ComplexFile file = read_complex_file(in);
                if (file.n == ground.size() && file.p == p && file.a == graph->a() &&
                    file.max_dim == max_dim) {
                    if (info) *info = {true, true, fnv_hex(*body)};
                    return CliqueComplex(graph, max_dim, std::move(file.skeleton));
                }
                std::cerr << "warning: cache entry " << path.string()
                          << " has a mismatched header; recomputing\n";
            } catch (const std::exception& e) {
                std::cerr << "warning: cache entry " << path.string() << " unreadable ("
                          << e.what() << "); recomputing\n";
            }
        }
    }
    CliqueComplex cx = clique_complex(graph, max_dim, budget, threads);
    if (cacheable) {
        std::ostringstream body;
        write_complex_file(cx, body);
        store(path, body.str());
        if (info) *info = {true, false, fnv_hex(body.str())};
    } else if (info) {
        *info = {false, false, ""};
    }
    return cx;
}

SparseIntMatrix Cache::get_boundary(const CliqueComplex& cx, bool kneser, int k,
                                    CacheInfo* info) {
    const GroundSet& ground = cx.graph().ground();
    const bool cacheable =
        enabled() && k >= 1 && ground == GroundSet::range(ground.size());
    std::filesystem::path path;
    if (cacheable) {
        std::ostringstream name;
        name << (kneser ? "kneser" : "commuting") << "-n" << ground.size() << "-p"
             << cx.graph().p() << "-a" << cx.graph().a() << "-d" << cx.max_dim() << "-bd" << k
             << ".mx";
        path = dir_ / name.str();
        if (auto body = load_verified(path)) {
            try {
                std::istringstream in(*body);
                SparseIntMatrix m = read_matrix_file(in);
                if (m.rows() == cx.count(k - 1) && m.cols() == cx.count(k)) {
                    if (info) *info = {true, true, fnv_hex(*body)};
                    return m;
                }
                std::cerr << "warning: cache entry " << path.string()
                          << " has mismatched dimensions; recomputing\n";
            } catch (const std::exception& e) {
                std::cerr << "warning: cache entry " << path.string() << " unreadable ("
                          << e.what() << "); recomputing\n";
            }
        }
    }
    SparseIntMatrix m = boundary_matrix(cx, k, /*reduced=*/true);
    if (cacheable) {
        std::ostringstream body;
        write_matrix_file(m, body);
        store(path, body.str());
        if (info) *info = {true, false, fnv_hex(body.str())};
    } else if (info) {
        *info = {false, false, ""};
    }
    return m;
}

void Cache::append_result(const std::string& json_line) {
    if (!enabled()) return;
    std::lock_guard<std::mutex> lock(log_mutex);
    std::ofstream out(dir_ / "results.jsonl", std::ios::app);
    out << json_line << '\n';
}

}  // namespace qlab
