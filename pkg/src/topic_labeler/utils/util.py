"""
Utility functions for topic_labeler.
Helpers for JSON serialization of numpy-heavy results.
"""
from typing import Any

import numpy as np
import pandas as pd


def clean_for_json(obj: Any) -> Any:
    """
    Recursively clean data structures for JSON serialization.
    Converts numpy scalars and arrays to Python values, and NaN/inf to None.

    Args:
        obj: Any Python object to clean

    Returns:
        JSON-serializable version of the object
    """
    if isinstance(obj, dict):
        return {str(k): clean_for_json(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [clean_for_json(item) for item in obj]
    elif isinstance(obj, np.ndarray):
        return clean_for_json(obj.tolist())
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        return None if np.isnan(value) or np.isinf(value) else value
    elif obj is None or isinstance(obj, (str, int)):
        return obj
    elif pd.api.types.is_scalar(obj) and pd.isna(obj):
        return None
    elif hasattr(obj, "isoformat"):
        try:
            return obj.isoformat()
        except (ValueError, AttributeError):
            return str(obj)
    else:
        return str(obj)
