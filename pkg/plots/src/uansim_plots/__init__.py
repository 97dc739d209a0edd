"""Figure generation for uansim results: grouped bars with mean +/- std."""

__version__ = "0.1.0"
