"""Exact Fourier coefficients of degree-1/2 Siegel Eisenstein series and
machine checks of their mod-p divisibility."""

from .characters import QuadCharacter, gen_bernoulli, kronecker, quad_char
from .eisenstein import bernoulli_certificate, cohen_h, delta_expansion, eis1, eis2
from .exact import bernoulli, p_valuation, residue_mod_p
from .qexp import FourierExpansion
from .quadforms import BinaryHalfIntegral

__version__ = "0.1.0"

__all__ = [
    "BinaryHalfIntegral", "FourierExpansion", "QuadCharacter", "bernoulli",
    "bernoulli_certificate", "cohen_h", "delta_expansion", "eis1", "eis2",
    "gen_bernoulli", "kronecker", "p_valuation", "quad_char", "residue_mod_p",
]
