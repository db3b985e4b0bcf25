import pandas as pd

from tzlocal import get_localzone


SYSTEM_TIMEZONE = str(get_localzone())


def now(tz=SYSTEM_TIMEZONE):
    """
    Current instant in the given timezone (local by default), as a pandas Timestamp.
    """
    return pd.Timestamp.now(tz="UTC").tz_convert(tz)


def manifest_stamp(timestamp):
    """
    ISO-8601 representation of a timestamp with its UTC offset, to the second.
    """
    return pd.Timestamp(timestamp).isoformat(timespec="seconds")


def elapsed_seconds(started, finished):
    return (pd.Timestamp(finished) - pd.Timestamp(started)).total_seconds()
