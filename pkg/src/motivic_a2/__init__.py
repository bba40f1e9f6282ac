"""Motivic Ext over A(2): Steenrod arithmetic, May spectral sequence, minimal
resolutions, Yoneda and Massey products, charts, and weight bookkeeping for
the motivic Adams-Novikov spectral sequence of mmf."""

__version__ = "0.1.0"
