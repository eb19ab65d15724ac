// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference problems shared across the test files. Expected values were
// computed with an independent 40-digit arbitrary-precision implementation
// (Marcum Q from its integral definition, inversion via generic quadrature)
// and cross-checked by brute-force Monte Carlo before this library existed;
// they are frozen here as literals.

#include <cmath>

#include "gqf/model.hpp"

namespace fixtures {

// Single branch, A = B = 0, C = e^{j pi/4}, R = I, m = (e^{j pi/4}, 1).
// Everything about this problem is known in closed form: corrected parameters
// (w=0, v1=v2=1, alpha1=2, alpha2=0, a=b=1, p=1/2) and the as-published ones
// (alpha2=2, a=0, b=sqrt 2, p=e^{-1}/2).
inline gqf::ProblemSpec golden() {
    gqf::ProblemSpec s;
    s.A = 0.0;
    s.B = 0.0;
    s.C = gqf::cplx{M_SQRT1_2, M_SQRT1_2};
    s.R = gqf::Mat2::identity();
    s.means = {gqf::Vec2{gqf::cplx{M_SQRT1_2, M_SQRT1_2}, gqf::cplx{1.0, 0.0}}};
    return s;
}

// The golden problem with its branch duplicated (L = 2): a = b = sqrt(2),
// p = 1/2 by symmetry.
inline gqf::ProblemSpec golden_doubled() {
    gqf::ProblemSpec s = golden();
    s.means.push_back(s.means[0]);
    return s;
}

constexpr double kGoldenPAsPublished = 0.18393972058572116080; // e^{-1}/2

// Asymmetric two-branch problem exercising every complex path at once.
inline gqf::ProblemSpec asym2() {
    gqf::ProblemSpec s;
    s.A = 0.3;
    s.B = -0.5;
    s.C = gqf::cplx{0.4, 0.6};
    s.R = gqf::Mat2{{1.2, 0.0}, {0.3, -0.2}, {0.3, 0.2}, {0.9, 0.0}};
    s.means = {gqf::Vec2{{0.8, 0.1}, {-0.5, 0.7}},
               gqf::Vec2{{-0.3, 0.4}, {0.6, -0.2}}};
    return s;
}

constexpr double kAsym2Delta1 = 1.0162947095896819424;
constexpr double kAsym2Delta2 = -0.62629470958968194245;
constexpr double kAsym2A = 1.1361917648508654207;
constexpr double kAsym2B = 0.98955988034486364614;
constexpr double kAsym2P = 0.42784094100902419697;
constexpr double kAsym2W = 0.30636292223095051060;
constexpr double kAsym2V1 = 0.98396655080861263543;
constexpr double kAsym2V2 = 1.5966923952705136566;
constexpr double kAsym2PAsPublished = 0.73208830979279606014;
// sqrt of the reference radicands 2.0894811793417855132 / 0.47762269286368803912
constexpr double kAsym2AAsPublished = 1.4455037804660994774;
constexpr double kAsym2BAsPublished = 0.69110251979260503860;
constexpr double kAsym2MeanD = 0.524;    // E{D} = sum m^H Q m + L tr(RQ)
constexpr double kAsym2MeanD2 = 6.0875;  // E{D^2}

// asym2 plus a third branch.
inline gqf::ProblemSpec asym3() {
    gqf::ProblemSpec s = asym2();
    s.means.push_back(gqf::Vec2{{0.2, -0.9}, {-0.1, -0.3}});
    return s;
}

constexpr double kAsym3A = 1.2575011610947963103;
constexpr double kAsym3B = 1.2424024664594030753;
constexpr double kAsym3P = 0.35583177714581269949;

// Zero-mean variants of asym2 (the probability then depends only on the
// eigenvalue ratio).
inline gqf::ProblemSpec zero_mean(std::size_t L) {
    gqf::ProblemSpec s = asym2();
    s.means.assign(L, gqf::Vec2{});
    return s;
}

constexpr double kZeroMeanP1 = 0.38128500176421335104;
constexpr double kZeroMeanP3 = 0.28563330469379261851;

} // namespace fixtures
