"""
Operations of concept-homology: linear algebra over GF(2), homology,
persistence, complex builders, the indicator pipeline and rendering.
"""
