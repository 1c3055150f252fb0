from rkhs_trend.analysis.frames import ReportFrame
from rkhs_trend.analysis.porcupine import (
    PorcupineResult,
    porcupine,
)
from rkhs_trend.analysis.revisions import (
    RevisionReport,
    filter_time_path,
    mspe_ratio,
    relative_revisions,
    revision_report,
)
from rkhs_trend.analysis.studies import (
    LagStudyResult,
    RevisionStudyResult,
    lag_study,
    revision_study,
)
from rkhs_trend.analysis.turning import (
    TurningPoint,
    TurningReport,
    detect_turning_points,
    detection_lag,
    turning_report,
)

__all__ = [
    "ReportFrame",
    "PorcupineResult",
    "porcupine",
    "RevisionReport",
    "filter_time_path",
    "mspe_ratio",
    "relative_revisions",
    "revision_report",
    "LagStudyResult",
    "RevisionStudyResult",
    "lag_study",
    "revision_study",
    "TurningPoint",
    "TurningReport",
    "detect_turning_points",
    "detection_lag",
    "turning_report",
]
