"""groupword: word maps, permutation support statistics, and nonsolvable length."""

__version__ = "0.1.0"
