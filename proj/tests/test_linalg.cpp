#include <random>

#include <catch_amalgamated.hpp>

#include "dense_oracle.hpp"
#include "stringss/linalg.hpp"

using namespace stringss;

namespace {

SparseMatrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, double density, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<long long> num(-9, 9), den(1, 7);
    SparseMatrix m{f, rows, {}};
    for (std::size_t c = 0; c < cols; ++c) {
        SparseVector col;
        for (std::size_t r = 0; r < rows; ++r)
            if (u(rng) < density) {
                auto v = Scalar::fraction(f, num(rng), f.is_rational() ? den(rng) : 1);
                if (!v.is_zero()) col.emplace_back(r, v);
            }
        m.columns.push_back(std::move(col));
    }
    // duplicate a few columns so ranks are deficient
    if (cols > 3) {
        m.columns[cols - 1] = m.columns[0];
        SparseVector doubled;
        for (const auto& [r, v] : m.columns[cols - 2])
            if (auto w = v * Scalar::from_int(f, 2); !w.is_zero()) doubled.emplace_back(r, w);
        m.columns[cols - 2] = std::move(doubled);
    }
    return m;
}

}  // namespace

TEST_CASE("sparse rank equals dense oracle") {
    std::mt19937 rng(3);
    for (const auto& f : {Field::prime(2), Field::prime(3), Field::prime(7), Field::rational()}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(0, 25);
            const auto m = random_matrix(f, dim(rng), dim(rng), trial % 3 == 0 ? 0.5 : 0.15, rng);
            CHECK(rank(m) == oracle::dense_rank(m));
        }
    }
}

TEST_CASE("kernel vectors are independent solutions") {
    std::mt19937 rng(5);
    for (const auto& f : {Field::prime(3), Field::rational()}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto m = random_matrix(f, 12, 15, 0.25, rng);
            const auto ker = kernel(m);
            CHECK(ker.size() == m.cols() - rank(m));
            for (const auto& x : ker) CHECK(apply(m, x).empty());
            SparseMatrix k{f, m.cols(), ker};
            CHECK(rank(k) == ker.size());
        }
    }
}

TEST_CASE("span membership") {
    const auto f = Field::rational();
    const std::vector<SparseVector> cols{{{0, Scalar::one(f)}, {1, Scalar::one(f)}}};
    CHECK(in_span(f, cols, {{0, Scalar::fraction(f, 1, 2)}, {1, Scalar::fraction(f, 1, 2)}}));
    CHECK_FALSE(in_span(f, cols, {{0, Scalar::one(f)}}));
    CHECK(in_span(f, cols, {}));
}

TEST_CASE("zero and empty matrices") {
    SparseMatrix z{Field::prime(5), 3, {{}, {}}};
    CHECK(rank(z) == 0);
    CHECK(kernel(z).size() == 2);
    SparseMatrix e{Field::rational(), 0, {}};
    CHECK(rank(e) == 0);
}
