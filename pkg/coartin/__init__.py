"""coartin - classification toolkit for co-artin subalgebras of K[x] containing x^m K[x]."""
__version__ = "1.0.0"
