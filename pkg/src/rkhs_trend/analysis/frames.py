import abc
from dataclasses import dataclass
import typing as tp

import numpy as np
import pandas as pd
from rich import box
from rich.table import Table

MISSING = "-"


def _cell(value: tp.Any, precision: int) -> str:
    if isinstance(value, (float, np.floating)):
        if np.isnan(value):
            return MISSING
        return f"{value:.{precision}f}"
    return str(value)


@dataclass
class ReportFrame:
    """A parent class for tabular analysis results"""

    @abc.abstractmethod
    def to_df(self) -> pd.DataFrame:
        raise NotImplementedError

    @property
    def caption(self) -> tp.Optional[str]:
        return getattr(self, "label", "") or None

    def summary(self, precision: int = 4) -> Table:
        df = self.to_df()
        table = Table(show_header=True, box=box.MARKDOWN, caption=self.caption)
        for column in df.columns:
            numeric = pd.api.types.is_numeric_dtype(df[column])
            table.add_column(
                str(column), style="magenta", justify="right" if numeric else "left"
            )
        for row in df.itertuples(index=False, name=None):
            table.add_row(*(_cell(value, precision) for value in row))
        return table
