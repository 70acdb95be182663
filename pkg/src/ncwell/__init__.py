"""Deformed commutation relations and the gravitational quantum well.

``symalg`` and ``reps`` check the operator algebra exactly; ``airy``,
``spectrum``, ``fdcheck`` and ``bounds`` do the numerics in SI units.
"""

__version__ = "0.1.0"
