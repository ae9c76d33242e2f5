"""a(x)-profiles of cycle functions as pandas tables."""

from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
import pandas as pd

from ..utils.logging_config import get_logger
from .cycle_function import CycleFunction

logger = get_logger(__name__)

PROFILE_COLUMNS = ['x', 'f', 'a', 'match', 'block']


def profile(f: CycleFunction) -> pd.DataFrame:
    """One row per x: f(x), a(x) = f(x) k^-x, whether f(x+1) = k f(x), and the block id.

    Blocks are maximal runs of constant a(x), numbered from 0 without wraparound.
    """
    a = f.a_values()
    block = np.concatenate([[0], np.cumsum(a[1:] != a[:-1])]) if len(a) else np.array([], dtype=int)
    return pd.DataFrame({
        'x': np.arange(f.modulus),
        'f': f.as_array(),
        'a': a,
        'match': f.match_flags(),
        'block': block.astype(int),
    })


def block_lengths(df: pd.DataFrame) -> List[int]:
    return [int(v) for v in df.groupby('block', sort=True).size().tolist()]


def summarize(df: pd.DataFrame) -> Dict[str, Any]:
    lengths = block_lengths(df)
    return {
        'points': int(len(df)),
        'matches': int(df['match'].sum()),
        'blocks': len(lengths),
        'longest_block': max(lengths) if lengths else 0,
        'mean_block': float(np.mean(lengths)) if lengths else 0.0,
        'distinct_a': int(df['a'].nunique()),
    }


def export_profile(df: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    logger.info(f"Profile with {len(df)} rows written to {path}")
    return path


def load_profile(path: Union[str, Path]) -> pd.DataFrame:
    df = pd.read_csv(path)
    missing = [c for c in PROFILE_COLUMNS if c not in df.columns]
    if missing:
        raise ValueError(f"{path}: missing profile columns {missing}")
    df['match'] = df['match'].astype(bool)
    return df
