"""Small hand-checkable relations used in examples, fixtures and tests.

* ``Z``      ``{(0, 0)}`` on ``C^1``
* ``MULT_I`` multiplication by ``i`` on ``C^1``
* ``G1``     ``span{(e1, e2)}`` on ``C^2``
* ``SA1``    graph of ``diag(1, 2)``
* ``SA2``    ``span{(e1, e1), (0, e2)}``, self-adjoint with ``SA2(0) = span{e2}``
* ``M0``     ``{0} × C^1``
* ``SWAP``   graph of the coordinate swap on ``C^2``
"""

from .gaussian import GaussianRational
from .relation import LinearRelation, from_matrix, from_pairs, zero_relation

__all__ = ["Z", "MULT_I", "G1", "SA1", "SA2", "M0", "SWAP", "CANNED"]

_0 = GaussianRational(0)
_1 = GaussianRational(1)
_I = GaussianRational(0, 1)

Z: LinearRelation = zero_relation(1)
MULT_I: LinearRelation = from_pairs(1, [((_1,), (_I,))])
G1: LinearRelation = from_pairs(2, [((_1, _0), (_0, _1))])
SA1: LinearRelation = from_matrix([[1, 0], [0, 2]])
SA2: LinearRelation = from_pairs(2, [((_1, _0), (_1, _0)), ((_0, _0), (_0, _1))])
M0: LinearRelation = from_pairs(1, [((_0,), (_1,))])
SWAP: LinearRelation = from_matrix([[0, 1], [1, 0]])

CANNED = {"Z": Z, "MULT_I": MULT_I, "G1": G1, "SA1": SA1, "SA2": SA2, "M0": M0, "SWAP": SWAP}
