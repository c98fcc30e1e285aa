// SPDX-License-Identifier: Apache-2.0
//
// sixdma: movable-antenna-surface secrecy simulator and optimizer
// Copyright (C) 2026 The sixdma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sixdma/beamform.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace sixdma;
using Catch::Approx;

namespace
{

Eigen::MatrixXcd random_complex(Eigen::Index r, Eigen::Index c, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = {n(rng), n(rng)};
    return m;
}

// Phase-insensitive distance between two vectors of equal norm.
double phase_gap(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
    const cdouble ip = b.dot(a);
    const cdouble ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cdouble(1, 0);
    return (a - ph * b).norm();
}

} // namespace

TEST_CASE("allocate_user_powers")
{
    Eigen::MatrixXcd h(2, 3);
    h << 1, 0, 0, 0, 0, cdouble(0, 1);
    auto a = allocate_user_powers(h, 0.8, 10.0);
    CHECK(a.per_user_power[0] == Approx(4.0));
    CHECK(a.per_user_power[1] == Approx(4.0));
    CHECK(a.an_power == Approx(2.0));

    a = allocate_user_powers(h.topRows(1), 0.65, 10.0);
    CHECK(a.per_user_power[0] == Approx(6.5));

    Eigen::MatrixXcd g(2, 2);
    g << 1, 0, 0, std::sqrt(3.0);
    a = allocate_user_powers(g, 0.5, 10.0);
    CHECK(a.per_user_power[0] == Approx(1.25));
    CHECK(a.per_user_power[1] == Approx(3.75));

    CHECK_THROWS(allocate_user_powers(Eigen::MatrixXcd::Zero(2, 2), 0.5, 1.0));
    CHECK_THROWS(allocate_user_powers(g, 1.5, 1.0));
}

TEST_CASE("mmse_beamformer small cases")
{
    Eigen::MatrixXcd h(1, 2);
    h << 1, 0;
    PowerAllocation a;
    a.per_user_power = {3.0};
    const Eigen::MatrixXcd w = mmse_beamformer(h, a, 1.0);
    CHECK(std::abs(w(0, 0) - std::sqrt(3.0)) < 1e-14);
    CHECK(std::abs(w(1, 0)) < 1e-14);

    // orthogonal users: no cross talk, w_k parallel to h_k^H
    Eigen::MatrixXcd o(2, 4);
    o << 1, cdouble(0, 1), 0, 0, 0, 0, 2, -1;
    a.per_user_power = {1.0, 2.0};
    const Eigen::MatrixXcd wo = mmse_beamformer(o, a, 0.1);
    CHECK(std::abs((o.row(0) * wo.col(1)).value()) < 1e-12);
    CHECK(std::abs((o.row(1) * wo.col(0)).value()) < 1e-12);
    for (int k = 0; k < 2; ++k)
    {
        const Eigen::VectorXcd mf = o.row(k).adjoint().normalized() * std::sqrt(a.per_user_power[k]);
        CHECK(phase_gap(wo.col(k), mf) < 1e-12);
    }
}

TEST_CASE("mmse_beamformer matches the full-size regularized inverse")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 30; ++i)
    {
        const Eigen::MatrixXcd h = random_complex(3, 8, rng);
        const double s2 = 0.05 + 0.1 * i;
        const auto a = allocate_user_powers(h, 0.7, 5.0);
        const Eigen::MatrixXcd w = mmse_beamformer(h, a, s2);

        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
        for (int k = 0; k < 3; ++k)
            p(k, k) = a.per_user_power[static_cast<std::size_t>(k)];
        Eigen::MatrixXcd big = h.adjoint() * p * h;
        big.diagonal().array() += s2;
        const Eigen::MatrixXcd dir = big.inverse() * h.adjoint();
        for (int k = 0; k < 3; ++k)
        {
            const double pk = a.per_user_power[static_cast<std::size_t>(k)];
            REQUIRE(w.col(k).squaredNorm() == Approx(pk).epsilon(1e-12));
            REQUIRE((w.col(k) - dir.col(k).normalized() * std::sqrt(pk)).norm() < 1e-10);
        }
    }
}

TEST_CASE("mmse_beamformer tends to the matched filter for large noise")
{
    std::mt19937_64 rng(22);
    const Eigen::MatrixXcd h = random_complex(2, 6, rng);
    const auto a = allocate_user_powers(h, 0.9, 1.0);
    const Eigen::MatrixXcd w = mmse_beamformer(h, a, 1e8);
    for (int k = 0; k < 2; ++k)
    {
        const Eigen::VectorXcd mf = h.row(k).adjoint().normalized() * std::sqrt(a.per_user_power[k]);
        CHECK((w.col(k) - mf).norm() < 1e-6);
    }
}

TEST_CASE("null_space_basis")
{
    Eigen::MatrixXcd h(1, 3);
    h << 1, 0, 0;
    auto b = null_space_basis(h);
    REQUIRE(b.dimension() == 2);
    CHECK(b.rank == 1);
    CHECK(b.columns.row(0).norm() < 1e-15);

    std::mt19937_64 rng(23);
    CHECK(null_space_basis(random_complex(4, 4, rng)).dimension() == 0);

    for (int i = 0; i < 50; ++i)
    {
        const Eigen::MatrixXcd g = random_complex(2, 8, rng);
        b = null_space_basis(g);
        REQUIRE(b.dimension() == 6);
        REQUIRE((g * b.columns).norm() <= 1e-10);
        REQUIRE((b.columns.adjoint() * b.columns - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-12);
    }

    // rank-deficient rows
    Eigen::MatrixXcd d(2, 4);
    d.row(0) = random_complex(1, 4, rng);
    d.row(1) = cdouble(2, -1) * d.row(0);
    CHECK(null_space_basis(d).dimension() == 3);
}

TEST_CASE("dominant_eigenvector against a dense eigensolver")
{
    std::mt19937_64 rng(24);
    for (int i = 0; i < 30; ++i)
    {
        const Eigen::MatrixXcd b = random_complex(3, 5, rng);
        const auto dom = dominant_eigenvector(b);
        REQUIRE(dom.converged);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(b.adjoint() * b);
        REQUIRE(dom.value == Approx(eig.eigenvalues()[4]).epsilon(1e-9));
        REQUIRE(dom.vector.norm() == Approx(1.0));
        REQUIRE(phase_gap(dom.vector, eig.eigenvectors().col(4)) < 1e-5);
    }
    const auto zero = dominant_eigenvector(Eigen::MatrixXcd::Zero(2, 3));
    CHECK(zero.vector.norm() == Approx(1.0));
    CHECK(zero.value == 0.0);
}

TEST_CASE("an_beamformer hand-checked case")
{
    Eigen::MatrixXcd h(1, 3), he(1, 3);
    h << 1, 0, 0;
    he << 0, 1, 0;
    const auto an = an_beamformer(h, he, 0.6, 10.0);
    CHECK_FALSE(an.null_space_empty);
    CHECK(an.an_vector.squaredNorm() == Approx(4.0));
    Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(3);
    e2[1] = 2.0;
    CHECK(phase_gap(an.an_vector, e2) < 1e-10);

    // Eve outside the null space: leakage matrix vanishes, any unit direction will do
    Eigen::MatrixXcd he_in(1, 3);
    he_in << 3, 0, 0;
    const auto any = an_beamformer(h, he_in, 0.5, 2.0);
    CHECK(any.an_vector.squaredNorm() == Approx(1.0));
    CHECK((h * any.an_vector).norm() < 1e-14);

    // no eavesdroppers: no AN
    CHECK(an_beamformer(h, Eigen::MatrixXcd(0, 3), 0.5, 2.0).an_vector.norm() == 0.0);

    // full rank users: empty null space is flagged
    std::mt19937_64 rng(25);
    const auto full = an_beamformer(random_complex(3, 3, rng), he, 0.5, 2.0);
    CHECK(full.null_space_empty);
    CHECK(full.an_vector.norm() == 0.0);
}

TEST_CASE("AN properties and the projected fast path")
{
    std::mt19937_64 rng(26);
    std::uniform_int_distribution<int> kd(1, 5), ke(1, 3);
    std::uniform_real_distribution<double> al(0.5, 0.95);
    for (int i = 0; i < 200; ++i)
    {
        const Eigen::Index k = kd(rng), e = ke(rng);
        const Eigen::MatrixXcd h = random_complex(k, 8, rng), he = random_complex(e, 8, rng);
        const double alpha = al(rng), p = 10.0;
        const auto svd = an_beamformer(h, he, alpha, p);
        const auto proj = an_beamformer_projected(h, he, alpha, p);
        REQUIRE((h * svd.an_vector).norm() <= 1e-9 * h.norm() * svd.an_vector.norm());
        REQUIRE(std::abs(svd.an_vector.squaredNorm() - (1 - alpha) * p) <= 1e-9 * p);
        REQUIRE(std::abs(proj.an_vector.squaredNorm() - (1 - alpha) * p) <= 1e-9 * p);
        REQUIRE((h * proj.an_vector).norm() <= 1e-9 * h.norm() * proj.an_vector.norm());
        // same leakage; the direction is unique up to phase when the top eigenvalue is simple
        REQUIRE((he * proj.an_vector).squaredNorm() ==
                Approx((he * svd.an_vector).squaredNorm()).epsilon(1e-8));

        // no random null-space direction leaks more
        const auto basis = null_space_basis(h);
        const double best = (he * svd.an_vector).squaredNorm() / svd.an_vector.squaredNorm();
        for (int t = 0; t < 20; ++t)
        {
            const Eigen::VectorXcd z = random_complex(basis.dimension(), 1, rng).normalized();
            REQUIRE((he * (basis.columns * z)).squaredNorm() <= best * (1 + 1e-9));
        }
    }
}

TEST_CASE("beams_for_alpha spends the budget")
{
    std::mt19937_64 rng(27);
    const Eigen::MatrixXcd h = random_complex(3, 8, rng), he = random_complex(1, 8, rng);
    const auto b = beams_for_alpha(h, he, 0.75, 10.0, 1e-3);
    CHECK(b.transmit.squaredNorm() == Approx(7.5));
    CHECK(b.an_vector.squaredNorm() == Approx(2.5));
    CHECK(b.total_power() <= 10.0 + 1e-9);
}

TEST_CASE("AlphaGrid")
{
    AlphaGrid g;
    const auto v = g.values();
    REQUIRE(v.size() == 10);
    CHECK(v.front() == 0.5);
    CHECK(v.back() == Approx(0.95));
    AlphaGrid one{0.7, 0.1, 0.7};
    CHECK(one.values().size() == 1);
    CHECK_THROWS(AlphaGrid{0.0, 0.1, 0.5}.values());
    CHECK_THROWS(AlphaGrid{0.5, 0.1, 1.0}.values());
    CHECK_THROWS(AlphaGrid{0.5, 0.0, 0.9}.values());
}

TEST_CASE("power_split_search")
{
    std::mt19937_64 rng(28);
    const Eigen::MatrixXcd h = random_complex(2, 4, rng);
    const std::vector<double> un{0.1, 0.1};

    SECTION("single grid point")
    {
        const Eigen::MatrixXcd he = random_complex(1, 4, rng);
        const std::vector<double> en{0.1};
        const auto r = power_split_search(h, he, un, en, 5.0, 0.1, AlphaGrid{0.8, 0.05, 0.8});
        const auto b = beams_for_alpha(h, he, 0.8, 5.0, 0.1);
        CHECK(r.beams.alpha == 0.8);
        CHECK((r.beams.transmit - b.transmit).norm() < 1e-12);
        CHECK(r.grid_objective.size() == 1);
    }
    SECTION("no eavesdroppers: AN only burns power")
    {
        const auto r = power_split_search(h, Eigen::MatrixXcd(0, 4), un, {}, 5.0, 0.1, AlphaGrid{});
        for (std::size_t i = 1; i < r.grid_objective.size(); ++i)
            REQUIRE(r.grid_objective[i] >= r.grid_objective[i - 1]);
        CHECK(r.beams.alpha == Approx(0.95));
    }
    SECTION("a strong eavesdropper pulls alpha down")
    {
        Eigen::MatrixXcd hu(2, 4), he(1, 4);
        hu << 1, 0, 0, 0, 0, 1, 0, 0;
        he << 30, 30, 30, 30;
        const std::vector<double> n1{1.0, 1.0}, ne{1.0};
        const auto r = power_split_search(hu, he, n1, ne, 10.0, 1.0, AlphaGrid{});
        CHECK(r.beams.alpha < 0.95 - 1e-9);
        double best = -1e300;
        for (double v : r.grid_objective)
            best = std::max(best, v);
        CHECK(r.objective == best);
        CHECK(r.max_total_power <= 10.0 + 1e-9);
    }
}
