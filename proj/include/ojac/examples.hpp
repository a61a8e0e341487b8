#pragma once

#include "ojac/algebroid.hpp"

namespace ojac::examples {

/// R^{1|1} with S = -P[xi] P[t], Q = -P[xi].
Chart superline_chart();
OddJacobiStructure superline();

/// Pi T* R^n x R^{0|1}: x1..xn even weight 0, xs1..xsn odd weight 1, tau
/// odd weight 1. S = sum P[xs_a] (P[x_a] + xs_a P[tau]), Q = -P[tau].
Chart odd_contact_chart(unsigned n);
OddJacobiStructure odd_contact(unsigned n);

/// Pi T R^n with coordinates x_a, d[x_a]; S = 0, Q = sum d[x_a] P[x_a].
Chart de_rham_chart(unsigned n);
OddJacobiStructure de_rham(unsigned n);

/// Pi T* R^n: x1..xn even, xs1..xsn odd weight 1, S = sum P[xs_a] P[x_a].
OddJacobiStructure odd_symplectic(unsigned n);

/// so(3) over a point: [e_a, e_b] = eps_abc e_c, fibres eta1..3 / xi1..3.
AlgebroidData lie_algebra_so3();

/// Lie-Schouten structure S = 1/2 (-1)^{a+b} pi^a pi^b Q^c_{ab} eta_c on
/// Pi g*, Q = 0. Only the constants of `lie` are used.
OddJacobiStructure lie_schouten(const AlgebroidData& lie);

/// Chevalley-Eilenberg field Q_g = 1/2 xi^a xi^b Q^c_{ba} d/dxi^c on Pi g
/// as an odd Jacobi structure with S = 0.
OddJacobiStructure lie_algebra_bracket(const AlgebroidData& lie);

/// g = span(e1, e2, e3) with Q^2_{32} = 1 and the cocycle phi = xi1 on Pi g*:
/// S = 1/2 (-1)^{a+b} pi^a pi^b Q^c_{ba} eta_c + pi^1 pi^c eta_c, Q = -pi^1.
OddJacobiStructure lie_algebra_cocycle();

/// Pi T R^1 with the Schouten structure P[xs] P[x] and homothety xs d/dxs.
ExactQSData exact_qs_1();
/// Pi T R^1 with Sbar = 0, Qbar = d[x] P[x] and homothety x d/dx.
ExactQSData exact_qs_2();

/// T R^n as an algebroid: base x_a, eta = xs_a, xi = xi_a, identity anchor.
AlgebroidData tangent_algebroid(unsigned n);

/// Two-dimensional Lie algebra over a point, Q^2_{21} = 1, with cocycle
/// components (q1, q2). Fibres eta1, eta2 / xi1, xi2.
AlgebroidData lie_algebra_2dim(const Rational& q1 = 0, const Rational& q2 = 0);

/// Constants Q^3_{21} = 1, Q^1_{31} = 1 over a point; they violate the
/// Jacobi identity.
AlgebroidData non_jacobi_3dim();

/// Pi T*M over the even weight-zero chart `base` with a one-form A = A_a d[x_a]:
/// eta = xs_<x>, xi = d[<x>], identity anchor,
/// Q^c_{ba} = A_a delta^c_b - A_b delta^c_a and Q_a = -A_a.
AlgebroidData flat_connection(const Chart& base, const std::vector<Poly>& A, std::string name = "flat_connection");

}  // namespace ojac::examples
