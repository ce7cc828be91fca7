"""pmcurrents: calculus of principal-value/residue currents on a chart.

Symbolic layer: exact normal forms for elementary currents (smooth
polynomial form x pv factors x residue factors) with the operators
dbar, dele, restriction, division, semi-meromorphic and Coleff-Herrera
products, contraction and Lie derivatives.

Oracle layer (pmcurrents.oracle): numerical evaluation of pairings with
test forms, regularized chi-limits, lambda-continuation, pushforwards
under monomial maps and Bochner-Martinelli pairings.
"""

from .context import VarContext, ContextMismatch
from .scalars import QQi
from .poly import Poly, Monomial
from .forms import SmoothForm
from .currents import (
    Current,
    Term,
    NormalizeError,
    MixedFactorError,
    RepeatedResidueError,
    normalize,
    normalize_parts,
    add,
    wedge,
    graded_product,
    bidegree,
    elementary_support,
    equals,
    pv_current,
    res_current,
    const_current,
    smooth_current,
)
from .calculus import (
    HoloVectorField,
    dbar,
    del_,
    mul_monomial,
    mul_poly,
    contract,
    lie,
    coeff_extract,
    wedge_dt_right,
)
from .geometry import (
    CoordinateVariety,
    LaurentForm,
    SepVerdict,
    SupportPreconditionError,
    restrict_to,
    restrict_complement,
    pv_divide,
    solve_divide,
    zss_of,
    asm_mul,
    dbar_asm_mul,
    ch_product,
    residue_of,
    sep_check,
    dimension_check,
)
from .render import render

__version__ = "0.1.0"

__all__ = [
    "VarContext",
    "ContextMismatch",
    "QQi",
    "Poly",
    "Monomial",
    "SmoothForm",
    "Current",
    "Term",
    "NormalizeError",
    "MixedFactorError",
    "RepeatedResidueError",
    "normalize",
    "normalize_parts",
    "add",
    "wedge",
    "graded_product",
    "bidegree",
    "elementary_support",
    "equals",
    "pv_current",
    "res_current",
    "const_current",
    "smooth_current",
    "HoloVectorField",
    "dbar",
    "del_",
    "mul_monomial",
    "mul_poly",
    "contract",
    "lie",
    "coeff_extract",
    "wedge_dt_right",
    "CoordinateVariety",
    "LaurentForm",
    "SepVerdict",
    "SupportPreconditionError",
    "restrict_to",
    "restrict_complement",
    "pv_divide",
    "solve_divide",
    "zss_of",
    "asm_mul",
    "dbar_asm_mul",
    "ch_product",
    "residue_of",
    "sep_check",
    "dimension_check",
    "render",
]
