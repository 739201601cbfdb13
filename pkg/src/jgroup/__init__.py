"""J-orders in KO~(CP^m) and the localised J-groups JO~(CP^m)_(p)."""
from .adams import (
    bott_coeffs,
    c_coeff,
    one_minus_psi_matrix,
    psi_apply,
    psi_y,
    theta_apply,
)
from .groups import (
    FinAbGroup,
    SNFResult,
    element_order_oracle,
    jo_group,
    jo_local_group,
    smith_normal_form,
    to_membership,
)
from .jorder import (
    ElementSpec,
    FormulaDisagreement,
    JOrderReport,
    full_jorder,
    generator_valuation_closed,
    jorder_valuation_formula1,
    jorder_valuation_formula2,
    m_values,
    prop36_valuation,
)
from .truncpoly import TruncPoly, monomial_to_mu, mu_poly
from .valuation import (
    INFINITY,
    LocalContext,
    find_kp,
    is_p_local,
    lemma31_valuation,
    lemma32_valuation,
    nu,
)

__version__ = "0.1.0"
