import typing as tp

from scipy.stats._distn_infrastructure import (
    rv_continuous,
    rv_discrete,
    rv_frozen,
)

FilterKind = tp.Literal[
    "henderson_exact", "rkhs_symmetric", "rkhs_asymmetric", "musgrave", "custom"
]
FamilyTypes = tp.Literal["rkhs", "musgrave"]
CriterionTypes = tp.Literal["total", "gain", "phase_cos", "phase_delay"]
BandTypes = tp.Literal["full", "signal"]
FrequencyTypes = tp.Literal["monthly", "quarterly"]
TurnKind = tp.Literal["upturn", "downturn"]
OutputFormat = tp.Literal["csv", "json"]
RandomVariable = tp.Union[rv_continuous, rv_discrete, rv_frozen]
Number = tp.Union[float, int]

CRITERIA: tp.Tuple[str, ...] = tp.get_args(CriterionTypes)
FAMILIES: tp.Tuple[str, ...] = tp.get_args(FamilyTypes)
OUTPUT_FORMATS: tp.Tuple[str, ...] = tp.get_args(OutputFormat)
