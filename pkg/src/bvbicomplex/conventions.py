"""Sign conventions fixed once for the whole package.

Left derivatives throughout, on both arguments of every bracket.  The Soloviev
bracket carries the prefactor ``(-1)^{(pa f_I + 1)(pa x_a + |J|)}``.  The
choices below are not forced by the bracket formula itself and are pinned here;
each was selected because it is the only one under which graded Jacobi,
antisymmetry and the ``iota``/``D`` identities hold simultaneously.
"""

from __future__ import annotations

# d(f, g) = (df, g) + (-1)^{pa f + D_DERIVATION_SHIFT} (f, dg)
D_DERIVATION_SHIFT = 1


# Which parity enters the functional antibracket prefactor (-1)^{(pa f + 1) pa(.)}:
# the parity of the field x_a ("field") or of its antifield ("antifield").
BV_PREFACTOR_PARITY = "field"


def bv_signs(ctx, field_slot, f_parity: int):
    """Signs of ``delta_x f delta_xi g`` and ``delta_xi f delta_x g`` in ``(∫f, ∫g)``."""
    px = ctx.slot_parity(field_slot)
    p = px if BV_PREFACTOR_PARITY == "field" else 1 - px
    base = -1 if ((f_parity + 1) * p) & 1 else 1
    return base, base * (-1 if f_parity else 1)


# Orientation of the constant ghosts u^i in the Chern-Simons covariant structure:
# d_u = d + CS_U_ORIENTATION u^i iota_i and D_u = CS_U_ORIENTATION u^i D_i.
# With G_i, iota_i = -1/2 sigma_i (E - 2) and the symmetric D_i as written one has
# (Pi, G_i) = -D_i, so the covariant equations close for the reversed orientation.
CS_U_ORIENTATION = -1
