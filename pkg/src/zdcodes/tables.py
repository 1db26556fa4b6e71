"""Structure-constant rings and the packaged fixture catalog.

A table ring is presented on an additive group Z_{m_1} x ... x Z_{m_k} by a
k x k matrix of generator products expanded over the basis; multiplication
is the bilinear extension.  The constructor validates the presentation
(commuting generator products, well-defined bilinear extension, basis
associativity) and then re-validates every ring axiom exhaustively over all
elements, so a bad structure constant cannot slip through.

The package ships eight fixture files: the seven exceptional local rings of
order 16 whose graphs have cut vertices but no total perfect code, plus the
order-8 local ring with squared-radical zero used by the mixed-product
examples.  Fixture files carry name/moduli/one/products and are addressable
from ring expressions as "@<slug>".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import numpy as np

from .rings import FiniteRing, RingError, _check_cap, _mixed_decode, _mixed_encode, validate_ring


@dataclass(frozen=True)
class TableRingSpec:
    name: str
    moduli: tuple[int, ...]
    one: tuple[int, ...]
    products: tuple[tuple[tuple[int, ...], ...], ...]  # products[i][j] over the basis

    @staticmethod
    def from_obj(obj: dict) -> "TableRingSpec":
        return TableRingSpec(
            name=str(obj["name"]),
            moduli=tuple(int(m) for m in obj["moduli"]),
            one=tuple(int(c) for c in obj["one"]),
            products=tuple(
                tuple(tuple(int(c) for c in cell) for cell in row) for row in obj["products"]
            ),
        )

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "moduli": list(self.moduli),
            "one": list(self.one),
            "products": [[list(cell) for cell in row] for row in self.products],
        }


class TableRingError(RingError):
    pass


def _spec_checks(spec: TableRingSpec) -> None:
    k = len(spec.moduli)
    if k == 0 or any(m < 1 for m in spec.moduli):
        raise TableRingError("moduli must be a nonempty sequence of positive integers")
    if len(spec.one) != k:
        raise TableRingError("the one vector must have one coordinate per modulus")
    if len(spec.products) != k or any(len(row) != k for row in spec.products):
        raise TableRingError("products must be a k x k matrix of coordinate vectors")
    for row in spec.products:
        for cell in row:
            if len(cell) != k:
                raise TableRingError("every generator product needs k coordinates")
    for i in range(k):
        for j in range(k):
            pij = tuple(c % m for c, m in zip(spec.products[i][j], spec.moduli))
            pji = tuple(c % m for c, m in zip(spec.products[j][i], spec.moduli))
            if pij != pji:
                raise TableRingError(f"generator products e{i}e{j} and e{j}e{i} differ")
    for i in range(k):
        for j in range(k):
            for c, (coeff, m) in enumerate(zip(spec.products[i][j], spec.moduli)):
                if (spec.moduli[i] * coeff) % m != 0:
                    raise TableRingError(
                        f"bilinear extension ill-defined: m_{i} * (e{i}e{j}) has "
                        f"nonzero coordinate {c}"
                    )


def _basis_mul(spec: TableRingSpec, vec: Sequence[int], gen: int) -> tuple[int, ...]:
    """(sum_t vec_t e_t) * e_gen expanded over the basis."""
    k = len(spec.moduli)
    out = [0] * k
    for t in range(k):
        if vec[t] == 0:
            continue
        for c in range(k):
            out[c] += vec[t] * spec.products[t][gen][c]
    return tuple(v % m for v, m in zip(out, spec.moduli))


def _basis_associativity(spec: TableRingSpec) -> None:
    k = len(spec.moduli)
    for i in range(k):
        for j in range(k):
            for l in range(k):
                left = _basis_mul(spec, spec.products[i][j], l)
                right_vec = spec.products[j][l]
                # e_i * (e_j e_l) via bilinearity in the second argument
                acc = [0] * k
                for t in range(k):
                    if right_vec[t] == 0:
                        continue
                    for c in range(k):
                        acc[c] += right_vec[t] * spec.products[i][t][c]
                right = tuple(v % m for v, m in zip(acc, spec.moduli))
                if left != right:
                    raise TableRingError(
                        f"basis associativity fails at (e{i}, e{j}, e{l})"
                    )


def make_table_ring(spec: TableRingSpec) -> FiniteRing:
    _spec_checks(spec)
    _basis_associativity(spec)
    k = len(spec.moduli)
    moduli = np.array(spec.moduli, dtype=np.int64)
    prods = np.array(
        [[list(cell) for cell in row] for row in spec.products], dtype=np.int64
    )  # (k, k, k)
    order = int(np.prod(moduli))
    _check_cap(order)
    radices = list(spec.moduli)

    def vadd(i, j):
        a = _mixed_decode(i, radices)
        b = _mixed_decode(j, radices)
        return _mixed_encode([(x + y) % m for x, y, m in zip(a, b, radices)], radices)

    def vmul(i, j):
        a = np.stack(np.broadcast_arrays(*_mixed_decode(i, radices)), axis=-1)
        b = np.stack(np.broadcast_arrays(*_mixed_decode(j, radices)), axis=-1)
        a, b = np.broadcast_arrays(a, b)
        coords = np.einsum("...i,...j,ijc->...c", a, b, prods)
        coords %= moduli
        return _mixed_encode([coords[..., c] for c in range(k)], radices)

    one_idx = int(_mixed_encode([np.int64(c % m) for c, m in zip(spec.one, radices)], radices))

    def elem_name(x: int) -> str:
        parts = _mixed_decode(np.int64(x), radices)
        return "(" + ",".join(str(int(t)) for t in parts) + ")"

    ring = FiniteRing(
        order=order,
        name=spec.name,
        kind="table",
        vec_add=vadd,
        vec_mul=vmul,
        one=one_idx,
        elem_name=elem_name,
        payload={"spec": spec},
    )
    if ring.mul(one_idx, one_idx) != one_idx:
        raise TableRingError("the designated one is not idempotent")
    validate_ring(ring)
    return ring


# -- packaged fixtures --------------------------------------------------------

#: slug -> fixture file; the first seven are the exceptional order-16 local
#: rings (cut vertices, no code), the last is the order-8 squared-radical ring.
CATALOG_FILES = {
    "Z4X-X2": "z4x-x2.json",
    "Z4X-X2p2X": "z4x-x2p2x.json",
    "Z8X-2X-X2p4": "z8x-2x-x2p4.json",
    "Z2XY-X2-Y2": "z2xy-x2-y2.json",
    "Z2XY-X2-Y2mXY": "z2xy-x2-y2mxy.json",
    "Z4XY-X2-Y2-XYm2-2X-2Y": "z4xy-x2-y2-xym2-2x-2y.json",
    "Z4XY-X2-Y2mXY-XYm2-2X-2Y": "z4xy-x2-y2mxy-xym2-2x-2y.json",
    "Z2XY-RAD2": "z2xy-rad2.json",
}

EXCEPTIONAL_SEVEN = tuple(list(CATALOG_FILES)[:7])


def catalog_names() -> tuple[str, ...]:
    return tuple(CATALOG_FILES)


def _slug_lookup(name: str) -> str:
    lowered = {k.lower(): k for k in CATALOG_FILES}
    key = lowered.get(name.lower())
    if key is None:
        known = ", ".join(CATALOG_FILES)
        raise TableRingError(f"unknown catalog ring {name!r}; known names: {known}")
    return key


def load_spec_file(path: str) -> TableRingSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return TableRingSpec.from_obj(json.load(fh))


def load_catalog_spec(name: str) -> TableRingSpec:
    key = _slug_lookup(name)
    data = resources.files("zdcodes.data").joinpath(CATALOG_FILES[key]).read_text("utf-8")
    return TableRingSpec.from_obj(json.loads(data))


def catalog_ring(name: str) -> FiniteRing:
    return make_table_ring(load_catalog_spec(name))
