"""morphplay: an interactive engine for learning geometric transformations.

Students pick transformable parts of a house-model scene, drive translation
and rotation parameters through sliders and toggles, watch an always-rendered
preview with graphical annotations, and get feasibility feedback derived from
each part's physical degrees of freedom.
"""

__version__ = "0.1.0"
