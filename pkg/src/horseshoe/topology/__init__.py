"""Combinatorial invariants of arcs in the annulus on exact polylines."""
from .geometry import (Polyline, TopologyError, DegeneratePosition, NoIntersection, EmptyI,
                       IncidenceMismatch, NotEssential, TooManyLifts, read_polyline)
from .invariants import (theta, theta_oracle, interval_property, nu, nu_oracle, mu, mu_oracle,
                         Rectangle4, Banner, homotopic_difference)
from .separation import sep, sep_oracle, sep_details, is_essential
