"""
Operator identities checked with exact polynomial calculus
===========================================================

Applying momentum operators to polynomial wave functions keeps every
coefficient exact, so operator identities become finite coefficient
comparisons instead of sampled approximations.  The key identity is the
minimal-coupling square

    (sigma . (p - qA/c))^2 = (p - qA/c)^2 - (hbar q / c) sigma . B,

whose right-hand side is where the magnetic-moment term of the Pauli
equation comes from.
"""

import numpy as np

from hamfactor import (
    FieldConfig,
    ParticleSpec,
    Polynomial,
    PolySpinor,
    apply_momentum,
    hamiltonian_equivalence_residual,
    kinetic_square_residual,
    random_spinor,
)

# A polynomial in (x, y, z) and its momentum image (hbar/i) d/dx.
poly = Polynomial(3, {(2, 0, 0): 1.0, (0, 1, 1): -2.0})
spinor = PolySpinor(1, [poly, Polynomial(3)])
print("component 0:", poly.coeffs)
print("after p_x:  ", apply_momentum(spinor, 1, 0).components[0].coeffs)

# The square identity at one site, uniform field in the symmetric gauge.
rng = np.random.default_rng(5)
field = FieldConfig((0.0, 0.0, 1.0))
electron = ParticleSpec(mass=1.0, charge=-1.0)
residual = kinetic_square_residual(field, electron, random_spinor(rng, 1, degree=3))
print(f"\nkinetic square residual (1 particle, degree 3): {residual:.2e}")

# The same check passes in any gauge with the right curl; here a Landau
# gauge A = (-B y, 0, 0) for the same field.
landau = FieldConfig((0.0, 0.0, 1.0), np.array([[0.0, -1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))
residual = kinetic_square_residual(landau, electron, random_spinor(rng, 1, degree=3))
print(f"kinetic square residual (Landau gauge):         {residual:.2e}")

# Full equivalence for two particles: the squared-block Hamiltonian
# expands into kinetic + potential + spin-field coupling terms.
particles = [ParticleSpec(1.0, -1.0), ParticleSpec(1836.15267, 1.0)]
fields = [FieldConfig((0.0, 0.0, 0.5)), FieldConfig((0.0, 0.0, 0.5))]
confinement = Polynomial(6, {(2, 0, 0, 0, 0, 0): 0.5, (0, 0, 0, 0, 2, 0): 0.5})
spinor = random_spinor(rng, 2, degree=2, max_terms=4)
residual = hamiltonian_equivalence_residual(particles, fields, confinement, spinor)
print(f"two-particle Hamiltonian equivalence residual:  {residual:.2e}")
