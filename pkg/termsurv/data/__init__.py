from .loader import (
    COLUMNS,
    classify,
    from_start_stop,
    load_dataset,
    load_stanford,
    parse_csv,
    to_raw_subjects,
    write_csv,
)

__all__ = [
    "COLUMNS",
    "classify",
    "from_start_stop",
    "load_dataset",
    "load_stanford",
    "parse_csv",
    "to_raw_subjects",
    "write_csv",
]
