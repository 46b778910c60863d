#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlab/complex.hpp"
#include "qlab/fimaps.hpp"
#include "qlab/graph.hpp"

#include <sstream>

using namespace qlab;

TEST_CASE("parallel edge kernels match the serial reference") {
    for (int n : {5, 7, 9})
        for (int p : {2, 3})
            for (int a : {1, 2}) {
                auto vertices = bounded_p_elements(GroundSet::range(n), p, a);
                auto serial = commuting_edges_serial(vertices);
                for (int threads : {1, 2, 4})
                    CHECK(commuting_edges_parallel(vertices, threads) == serial);
            }
    for (int n : {6, 8}) {
        LabeledGraph g = build_kneser_graph(GroundSet::range(n), 2, 1);
        auto serial = disjointness_edges_serial(g.subset_vertices());
        for (int threads : {2, 4})
            CHECK(disjointness_edges_parallel(g.subset_vertices(), threads) == serial);
    }
}

TEST_CASE("parallel clique enumeration matches the serial reference") {
    for (int n : {6, 8})
        for (int a : {1, 2}) {
            LabeledGraph g =
                build_commuting_graph(GroundSet::range(n), 2, CycleBound::bounded(a), 2);
            auto serial = enumerate_cliques_serial(g, 4, {});
            for (int threads : {1, 2, 4})
                CHECK(enumerate_cliques_parallel(g, 4, {}, threads) == serial);
        }
}

TEST_CASE("complexes built under different thread counts are byte-identical") {
    for (int threads : {2, 4}) {
        auto g1 = std::make_shared<const LabeledGraph>(
            build_commuting_graph(GroundSet::range(7), 2, CycleBound::bounded(2), 1));
        auto gN = std::make_shared<const LabeledGraph>(
            build_commuting_graph(GroundSet::range(7), 2, CycleBound::bounded(2), threads));
        CliqueComplex c1 = clique_complex(g1, 2, {}, 1);
        CliqueComplex cN = clique_complex(gN, 2, {}, threads);
        std::ostringstream f1, fN;
        write_complex_file(c1, f1);
        write_complex_file(cN, fN);
        CHECK(f1.str() == fN.str());
        std::ostringstream m1, mN;
        write_matrix_file(boundary_matrix(c1, 2, true), m1);
        write_matrix_file(boundary_matrix(cN, 2, true), mN);
        CHECK(m1.str() == mN.str());
    }
}

TEST_CASE("certificate checks and support scans are schedule-independent") {
    CliqueComplex source = clique_complex(
        std::make_shared<const LabeledGraph>(
            build_commuting_graph(GroundSet::range(6), 2, CycleBound::bounded(2), 1)),
        2, {}, 1);
    Injection j = Injection::inclusion(GroundSet::range(6), GroundSet::range(9));
    ConeCertificate reference = cone_certificate(j, source, 2, CycleBound::bounded(2), 1);
    for (int threads : {2, 4}) {
        ConeCertificate cert = cone_certificate(j, source, 2, CycleBound::bounded(2), threads);
        CHECK(cert.ok == reference.ok);
        CHECK(cert.simplices_checked == reference.simplices_checked);
        CHECK(cert.cone_labels == reference.cone_labels);
    }
    GeneratorDegreeReport one = generator_degree_check(source, 2, 2, 2, 1);
    for (int threads : {2, 4}) {
        GeneratorDegreeReport report = generator_degree_check(source, 2, 2, 2, threads);
        CHECK(report.max_support == one.max_support);
        CHECK(report.ok == one.ok);
    }
}
